"""Synthetic binarized credit-screening data shared by the demo scripts.

Eight conditions binarize four underlying features; labels follow a
noisy two-rule ground truth so several distinct sparse trees score
almost equally well, which is exactly when a Rashomon set gets
interesting.
"""

import random

from rashomon_trees import Dataset, from_arrays

CONDITION_NAMES = [
    "income:>50k",
    "income:>20k",
    "debt:=0",
    "late_payments:>1",
    "late_payments:>3",
    "age:<30",
    "age:<45",
    "owns_home:=1",
]


def make_credit_dataset(n_samples: int = 220, seed: int = 7, noise: float = 0.10) -> Dataset:
    rng = random.Random(seed)
    samples, labels = [], []
    for _ in range(n_samples):
        income_high = rng.random() < 0.35
        income_mid = income_high or rng.random() < 0.45
        # home ownership tracks high income, so the two act as near-substitutes
        owner = income_high if rng.random() < 0.75 else rng.random() < 0.4
        debt_free = rng.random() < 0.4
        late1 = rng.random() < 0.45
        late3 = late1 and rng.random() < 0.5
        young = rng.random() < 0.35
        mid_age = young or rng.random() < 0.4
        row = [
            int(income_high),
            int(income_mid),
            int(debt_free),
            int(late1),
            int(late3),
            int(young),
            int(mid_age),
            int(owner),
        ]
        good = (income_high and not late3) or (debt_free and income_mid)
        if rng.random() < noise:
            good = not good
        samples.append(row)
        labels.append(int(good))
    return from_arrays(CONDITION_NAMES, samples, labels)
