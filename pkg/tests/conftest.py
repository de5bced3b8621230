"""Shared fixtures: the two reference toy datasets and random-instance helpers.

D1 has two features with y = f0.  D2 holds all eight combinations of
three features with y = f0 OR f1; both are small enough for exhaustive
ground truth.
"""

from itertools import product
import random

import pytest

from rashomon_trees import (
    Dataset,
    EnumerationConfig,
    RashomonSet,
    enumerate_rashomon,
    from_arrays,
)

D1_ROWS = [(0, 0, 0), (0, 1, 0), (1, 0, 1), (1, 1, 1)]


@pytest.fixture
def d1() -> Dataset:
    return from_arrays(["f0", "f1"], [r[:2] for r in D1_ROWS], [r[2] for r in D1_ROWS])


@pytest.fixture
def d2() -> Dataset:
    rows = list(product([0, 1], repeat=3))
    return from_arrays(["f0", "f1", "f2"], rows, [int(a or b) for a, b, _ in rows])


@pytest.fixture
def d2_set(d2) -> RashomonSet:
    return enumerate_rashomon(d2, EnumerationConfig(lam=0.05, epsilon=1.01, depth_cap=2))


@pytest.fixture
def d1_stump_set(d1) -> RashomonSet:
    return enumerate_rashomon(d1, EnumerationConfig(lam=0.1, epsilon=1.5, depth_cap=1))


def write_csv(path, header, rows):
    lines = [",".join(header)] + [",".join(str(v) for v in row) for row in rows]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


@pytest.fixture
def d1_csv(tmp_path):
    return write_csv(tmp_path / "d1.csv", ["f0", "f1", "label"], D1_ROWS)


def random_dataset(rng: random.Random, max_samples: int = 16, max_features: int = 4) -> Dataset:
    """A random small binary dataset; duplicate header pairs are avoided by indexing."""
    n = rng.randint(1, max_samples)
    f = rng.randint(1, max_features)
    names = [f"f{j}" for j in range(f)]
    samples = [[rng.randint(0, 1) for _ in range(f)] for _ in range(n)]
    labels = [rng.randint(0, 1) for _ in range(n)]
    return from_arrays(names, samples, labels)


def random_config(rng: random.Random, depth_cap: int = 2) -> EnumerationConfig:
    return EnumerationConfig(
        lam=rng.choice([0.0, 0.01, 0.05, 0.1, 0.25]),
        epsilon=rng.choice([1.0, 1.01, 1.1, 1.5, 2.0]),
        depth_cap=rng.randint(0, depth_cap),
    )
