"""Complete enumeration of near-optimal sparse decision trees.

Membership uses the regularized objective: a canonical tree ``t`` belongs
to the set when ``objective(t) <= epsilon * objective(t*)`` where ``t*``
is the best canonical tree under the depth cap.

Two independent routes are provided.  ``enumerate_rashomon`` is the fast
path: depth-first search over sample subsets (bitmasks) pruned with an
admissible bound taken from a memoized optimal-cost table.
``exhaustive_oracle`` recurses over every canonical tree shape with no
pruning at all and exists purely to ground-truth the fast path on small
instances.
"""

from __future__ import annotations

import json
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

from .dataset import Dataset, SplitCondition
from .errors import BudgetExceeded, OracleScopeError, ValidationError
from .trees import (
    Branch,
    DecisionTree,
    Leaf,
    TreeMetrics,
    TreeNode,
    canonical_serialization,
    evaluate,
    metrics_from_dict,
    metrics_to_dict,
    node_from_dict,
    node_to_dict,
)

MAX_DEPTH_CAP = 6
DEFAULT_NODE_BUDGET = 10_000_000
MEMBERSHIP_SLACK = 1e-12
# interior pruning keeps a wider margin than the final filter so float
# noise in budget propagation can never drop a legitimate member
_PRUNE_SLACK = 1e-9

ORACLE_MAX_FEATURES = 8
ORACLE_MAX_DEPTH = 3
ORACLE_MAX_SAMPLES = 64


@dataclass(frozen=True)
class EnumerationConfig:
    """Hyperparameters: sparsity penalty, loss tolerance, and depth cap."""

    lam: float
    epsilon: float
    depth_cap: int
    node_budget: int = DEFAULT_NODE_BUDGET

    def __post_init__(self):
        if self.lam < 0:
            raise ValidationError("lambda must be non-negative")
        if self.epsilon < 1:
            raise ValidationError("epsilon must be at least 1")
        if not 0 <= self.depth_cap <= MAX_DEPTH_CAP:
            raise ValidationError(f"depth_cap must be within [0, {MAX_DEPTH_CAP}]")
        if self.node_budget < 1:
            raise ValidationError("node_budget must be positive")


@dataclass(frozen=True)
class SetMember:
    tree: DecisionTree
    metrics: TreeMetrics


@dataclass(frozen=True, eq=False)
class RashomonSet:
    """All qualifying trees, sorted by canonical serialization."""

    config: EnumerationConfig
    dataset_hash: str
    conditions: tuple[SplitCondition, ...]
    optimal_objective: float
    members: tuple[SetMember, ...]
    _by_id: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        by_id = {member.tree.id: member for member in self.members}
        object.__setattr__(self, "_by_id", by_id)

    @property
    def size(self) -> int:
        return len(self.members)

    def tree_ids(self) -> list[int]:
        return [member.tree.id for member in self.members]

    def member(self, tree_id: int) -> SetMember | None:
        return self._by_id.get(tree_id)

    def canonical_keys(self) -> list[str]:
        return [canonical_serialization(member.tree.root) for member in self.members]


class _Meter:
    """Explored-subtree counter; aborts when the node budget runs out."""

    def __init__(self, budget: int):
        self.budget = budget
        self.used = 0
        self._lock = threading.Lock()

    def spend(self, amount: int = 1):
        with self._lock:
            self.used += amount
            if self.used > self.budget:
                raise BudgetExceeded(self.used, self.budget)


class _Workspace:
    """Bitmask view of a dataset: one int per condition, one for the labels."""

    def __init__(self, dataset: Dataset):
        self.n = dataset.n_samples
        self.n_features = dataset.n_features
        self.full_mask = (1 << self.n) - 1
        cols = []
        for c in range(self.n_features):
            mask = 0
            for i, v in enumerate(dataset.samples[:, c]):
                if v:
                    mask |= 1 << i
            cols.append(mask)
        self.col_masks = cols
        label_mask = 0
        for i, y in enumerate(dataset.labels):
            if y:
                label_mask |= 1 << i
        self.label_mask = label_mask

    def leaf_stats(self, mask: int) -> tuple[int, int]:
        """(majority prediction, misclassified count) for a leaf on this subset."""
        total = mask.bit_count()
        pos = (mask & self.label_mask).bit_count()
        neg = total - pos
        return (1 if pos > neg else 0), min(pos, neg)


def _min_cost(ws: _Workspace, lam: float, mask: int, depth: int, memo: dict, meter: _Meter) -> float:
    """Exact minimum cost (errors/N + lam*leaves) of any canonical subtree."""
    key = (mask, depth)
    hit = memo.get(key)
    if hit is not None:
        return hit
    meter.spend()
    _, err = ws.leaf_stats(mask)
    best = err / ws.n + lam
    if depth > 0:
        for col in ws.col_masks:
            true_side = mask & col
            false_side = mask & ~col
            if not true_side or not false_side:
                continue
            cost = _min_cost(ws, lam, false_side, depth - 1, memo, meter) + _min_cost(
                ws, lam, true_side, depth - 1, memo, meter
            )
            if cost < best:
                best = cost
    memo[key] = best
    return best


class _EnumCache:
    __slots__ = ("budget", "results")

    def __init__(self, budget: float, results: list):
        self.budget = budget
        self.results = results


def _enum_within(
    ws: _Workspace,
    lam: float,
    mask: int,
    depth: int,
    budget: float,
    cache: dict,
    cost_memo: dict,
    meter: _Meter,
) -> list[tuple[TreeNode, int, int]]:
    """All canonical subtrees on ``mask`` whose cost fits ``budget``.

    Results are (node, error count, leaf count) triples.  A cache entry
    computed at a larger budget is reused by filtering; a smaller one is
    recomputed and replaced.
    """
    key = (mask, depth)
    cached = cache.get(key)
    if cached is not None and cached.budget >= budget:
        return [
            triple
            for triple in cached.results
            if triple[1] / ws.n + lam * triple[2] <= budget + _PRUNE_SLACK
        ]
    meter.spend()
    results: list[tuple[TreeNode, int, int]] = []
    prediction, err = ws.leaf_stats(mask)
    if err / ws.n + lam <= budget + _PRUNE_SLACK:
        results.append((Leaf(prediction), err, 1))
    if depth > 0 and 2 * lam <= budget + _PRUNE_SLACK:
        for condition, col in enumerate(ws.col_masks):
            true_side = mask & col
            false_side = mask & ~col
            if not true_side or not false_side:
                continue
            false_floor = _min_cost(ws, lam, false_side, depth - 1, cost_memo, meter)
            true_floor = _min_cost(ws, lam, true_side, depth - 1, cost_memo, meter)
            if false_floor + true_floor > budget + _PRUNE_SLACK:
                continue
            for false_node, fe, fl in _enum_within(
                ws, lam, false_side, depth - 1, budget - true_floor, cache, cost_memo, meter
            ):
                false_cost = fe / ws.n + lam * fl
                if false_cost + true_floor > budget + _PRUNE_SLACK:
                    continue
                for true_node, te, tl in _enum_within(
                    ws, lam, true_side, depth - 1, budget - false_cost, cache, cost_memo, meter
                ):
                    if (
                        isinstance(false_node, Leaf)
                        and isinstance(true_node, Leaf)
                        and false_node.prediction == true_node.prediction
                    ):
                        continue
                    err_total = fe + te
                    leaves_total = fl + tl
                    if err_total / ws.n + lam * leaves_total <= budget + _PRUNE_SLACK:
                        results.append((Branch(condition, false_node, true_node), err_total, leaves_total))
    cache[key] = _EnumCache(budget, results)
    return results


def _root_candidates(
    ws: _Workspace, config: EnumerationConfig, threshold: float, meter: _Meter, workers: int
) -> list[tuple[TreeNode, int, int]]:
    """Enumerate at the root, optionally splitting root conditions across threads."""
    lam, depth = config.lam, config.depth_cap
    found: list[tuple[TreeNode, int, int]] = []
    prediction, err = ws.leaf_stats(ws.full_mask)
    if err / ws.n + lam <= threshold + _PRUNE_SLACK:
        found.append((Leaf(prediction), err, 1))
    if depth == 0 or 2 * lam > threshold + _PRUNE_SLACK:
        return found

    def expand_root(condition: int) -> list[tuple[TreeNode, int, int]]:
        col = ws.col_masks[condition]
        true_side = ws.full_mask & col
        false_side = ws.full_mask & ~col
        if not true_side or not false_side:
            return []
        cache: dict = {}
        cost_memo: dict = {}
        out: list[tuple[TreeNode, int, int]] = []
        false_floor = _min_cost(ws, lam, false_side, depth - 1, cost_memo, meter)
        true_floor = _min_cost(ws, lam, true_side, depth - 1, cost_memo, meter)
        if false_floor + true_floor > threshold + _PRUNE_SLACK:
            return []
        for false_node, fe, fl in _enum_within(
            ws, lam, false_side, depth - 1, threshold - true_floor, cache, cost_memo, meter
        ):
            false_cost = fe / ws.n + lam * fl
            if false_cost + true_floor > threshold + _PRUNE_SLACK:
                continue
            for true_node, te, tl in _enum_within(
                ws, lam, true_side, depth - 1, threshold - false_cost, cache, cost_memo, meter
            ):
                if (
                    isinstance(false_node, Leaf)
                    and isinstance(true_node, Leaf)
                    and false_node.prediction == true_node.prediction
                ):
                    continue
                if (fe + te) / ws.n + lam * (fl + tl) <= threshold + _PRUNE_SLACK:
                    out.append((Branch(condition, false_node, true_node), fe + te, fl + tl))
        return out

    conditions = range(ws.n_features)
    if workers <= 1:
        for condition in conditions:
            found.extend(expand_root(condition))
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for chunk in pool.map(expand_root, conditions):
                found.extend(chunk)
    return found


def _assemble(
    dataset: Dataset, config: EnumerationConfig, candidates: list[tuple[TreeNode, int, int]]
) -> RashomonSet:
    """Exact-filter candidates, sort canonically, assign ids, compute metrics."""
    n = dataset.n_samples
    keyed: dict[str, tuple[TreeNode, float]] = {}
    for node, err, leaves in candidates:
        objective = err / n + config.lam * leaves
        keyed.setdefault(canonical_serialization(node), (node, objective))
    optimal = min(objective for _, objective in keyed.values())
    threshold = config.epsilon * optimal + MEMBERSHIP_SLACK
    members = []
    for key in sorted(k for k, (_, obj) in keyed.items() if keyed[k][1] <= threshold):
        node, _ = keyed[key]
        tree = DecisionTree(id=len(members), root=node)
        members.append(SetMember(tree=tree, metrics=evaluate(tree, dataset, config.lam)))
    return RashomonSet(
        config=config,
        dataset_hash=dataset.content_hash,
        conditions=dataset.conditions,
        optimal_objective=min(m.metrics.objective for m in members),
        members=tuple(members),
    )


def enumerate_rashomon(
    dataset: Dataset, config: EnumerationConfig, workers: int | None = None
) -> RashomonSet:
    """Find every canonical tree within epsilon of the optimal objective.

    ``workers`` > 1 splits root conditions across threads; the merged
    output is sorted canonically, so results are identical for any
    worker count.
    """
    ws = _Workspace(dataset)
    meter = _Meter(config.node_budget)
    optimal_floor = _min_cost(ws, config.lam, ws.full_mask, config.depth_cap, {}, meter)
    threshold = config.epsilon * optimal_floor
    candidates = _root_candidates(ws, config, threshold, meter, workers or 1)
    return _assemble(dataset, config, candidates)


def optimal_objective(dataset: Dataset, lam: float, depth_cap: int) -> tuple[float, DecisionTree]:
    """The global minimum objective and its canonically-first witness tree."""
    best_set = enumerate_rashomon(dataset, EnumerationConfig(lam=lam, epsilon=1.0, depth_cap=depth_cap))
    floor = best_set.optimal_objective
    for member in best_set.members:  # canonical order; first hit wins ties
        if member.metrics.objective <= floor + MEMBERSHIP_SLACK:
            return best_set.optimal_objective, member.tree
    raise AssertionError("set cannot be empty")


def _all_canonical_trees(ws: _Workspace, mask: int, depth: int) -> Iterator[tuple[TreeNode, int, int]]:
    """Unpruned recursion over every canonical subtree shape."""
    prediction, err = ws.leaf_stats(mask)
    yield Leaf(prediction), err, 1
    if depth == 0:
        return
    for condition, col in enumerate(ws.col_masks):
        true_side = mask & col
        false_side = mask & ~col
        if not true_side or not false_side:
            continue
        for false_node, fe, fl in _all_canonical_trees(ws, false_side, depth - 1):
            for true_node, te, tl in _all_canonical_trees(ws, true_side, depth - 1):
                if (
                    isinstance(false_node, Leaf)
                    and isinstance(true_node, Leaf)
                    and false_node.prediction == true_node.prediction
                ):
                    continue
                yield Branch(condition, false_node, true_node), fe + te, fl + tl


def exhaustive_oracle(dataset: Dataset, config: EnumerationConfig) -> RashomonSet:
    """Ground-truth enumeration by full recursion; hard desk-scale limits."""
    if dataset.n_features > ORACLE_MAX_FEATURES:
        raise OracleScopeError(f"oracle limited to {ORACLE_MAX_FEATURES} conditions")
    if config.depth_cap > ORACLE_MAX_DEPTH:
        raise OracleScopeError(f"oracle limited to depth {ORACLE_MAX_DEPTH}")
    if dataset.n_samples > ORACLE_MAX_SAMPLES:
        raise OracleScopeError(f"oracle limited to {ORACLE_MAX_SAMPLES} samples")
    ws = _Workspace(dataset)
    candidates = list(_all_canonical_trees(ws, ws.full_mask, config.depth_cap))
    return _assemble(dataset, config, candidates)


def set_document(rset: RashomonSet) -> dict:
    return {
        "config": {
            "lambda": rset.config.lam,
            "epsilon": rset.config.epsilon,
            "depth_cap": rset.config.depth_cap,
            "node_budget": rset.config.node_budget,
        },
        "dataset_hash": rset.dataset_hash,
        "conditions": [
            {"id": c.id, "source_feature": c.source_feature, "range_label": c.range_label}
            for c in rset.conditions
        ],
        "optimal_objective": rset.optimal_objective,
        "trees": [
            {
                "id": member.tree.id,
                "tree": node_to_dict(member.tree.root),
                "metrics": metrics_to_dict(member.metrics),
            }
            for member in rset.members
        ],
    }


def set_from_document(doc: dict) -> RashomonSet:
    cfg = doc["config"]
    config = EnumerationConfig(
        lam=float(cfg["lambda"]),
        epsilon=float(cfg["epsilon"]),
        depth_cap=int(cfg["depth_cap"]),
        node_budget=int(cfg.get("node_budget", DEFAULT_NODE_BUDGET)),
    )
    conditions = tuple(
        SplitCondition(id=int(c["id"]), source_feature=c["source_feature"], range_label=c["range_label"])
        for c in doc["conditions"]
    )
    members = tuple(
        SetMember(
            tree=DecisionTree(id=int(entry["id"]), root=node_from_dict(entry["tree"])),
            metrics=metrics_from_dict(entry["metrics"]),
        )
        for entry in doc["trees"]
    )
    return RashomonSet(
        config=config,
        dataset_hash=doc["dataset_hash"],
        conditions=conditions,
        optimal_objective=float(doc["optimal_objective"]),
        members=members,
    )


def set_bytes(rset: RashomonSet) -> bytes:
    return (json.dumps(set_document(rset), sort_keys=True, separators=(",", ":")) + "\n").encode("utf-8")


def save_set(rset: RashomonSet, path: str | Path) -> Path:
    path = Path(path)
    path.write_bytes(set_bytes(rset))
    return path


def load_set(path: str | Path) -> RashomonSet:
    return set_from_document(json.loads(Path(path).read_text(encoding="utf-8")))
