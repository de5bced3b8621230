"""Canonical sparse binary decision trees and their training-set metrics.

A tree is either a ``Leaf`` carrying a 0/1 prediction or a ``Branch``
testing one split condition, with the false child kept before the true
child everywhere.  Canonical form additionally forbids repeating a
condition along a root-to-leaf path, sibling leaves with identical
predictions, and leaves that capture no training samples.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .dataset import Dataset
from .errors import DimensionError


@dataclass(frozen=True)
class Leaf:
    prediction: int


@dataclass(frozen=True)
class Branch:
    condition: int
    false_child: "TreeNode"
    true_child: "TreeNode"


TreeNode = Union[Leaf, Branch]


@dataclass(frozen=True)
class DecisionTree:
    """A tree plus the id it received in its enumeration order."""

    id: int
    root: TreeNode


def node_to_dict(node: TreeNode) -> dict:
    if isinstance(node, Leaf):
        return {"type": "leaf", "prediction": node.prediction}
    return {
        "type": "branch",
        "condition": node.condition,
        "false": node_to_dict(node.false_child),
        "true": node_to_dict(node.true_child),
    }


def node_from_dict(doc: dict) -> TreeNode:
    kind = doc.get("type")
    if kind == "leaf":
        return Leaf(prediction=int(doc["prediction"]))
    if kind == "branch":
        return Branch(
            condition=int(doc["condition"]),
            false_child=node_from_dict(doc["false"]),
            true_child=node_from_dict(doc["true"]),
        )
    raise ValueError(f"unknown tree node type: {kind!r}")


def canonical_serialization(node: TreeNode) -> str:
    """Sorted-key, whitespace-free JSON; defines tree identity."""
    return json.dumps(node_to_dict(node), sort_keys=True, separators=(",", ":"))


def height(node: TreeNode) -> int:
    if isinstance(node, Leaf):
        return 0
    return 1 + max(height(node.false_child), height(node.true_child))


def leaf_count(node: TreeNode) -> int:
    if isinstance(node, Leaf):
        return 1
    return leaf_count(node.false_child) + leaf_count(node.true_child)


def conditions_used(node: TreeNode) -> set[int]:
    if isinstance(node, Leaf):
        return set()
    return {node.condition} | conditions_used(node.false_child) | conditions_used(node.true_child)


def predict(tree: DecisionTree, sample: Sequence[int], n_features: int | None = None) -> int:
    """Route one sample to a leaf: follow the true child iff the tested cell is 1."""
    if n_features is not None and len(sample) != n_features:
        raise DimensionError(f"sample has {len(sample)} values, expected {n_features}")
    node = tree.root
    while isinstance(node, Branch):
        if node.condition >= len(sample):
            raise DimensionError(
                f"tree tests condition {node.condition} but sample has only {len(sample)} values"
            )
        node = node.true_child if int(sample[node.condition]) == 1 else node.false_child
    return node.prediction


@dataclass(frozen=True)
class NodeStats:
    """Per-node sample statistics, in preorder (node, false subtree, true subtree)."""

    kind: str  # "branch" | "leaf"
    sample_count: int
    sample_fraction: float
    correct_count: int | None = None
    leaf_accuracy: float | None = None


@dataclass(frozen=True)
class TreeMetrics:
    accuracy: float
    objective: float
    height: int
    leaf_count: int
    node_stats: tuple[NodeStats, ...]


@dataclass(frozen=True)
class PathStep:
    condition: int
    direction: bool  # True = true child taken


@dataclass(frozen=True)
class DecisionPath:
    """One root-to-leaf rule: the ordered condition tests plus the outcome."""

    steps: tuple[PathStep, ...]
    prediction: int
    leaf_accuracy: float
    sample_fraction: float

    @property
    def feature_sequence(self) -> tuple[int, ...]:
        return tuple(step.condition for step in self.steps)


def evaluate(tree: DecisionTree, dataset: Dataset, lam: float) -> TreeMetrics:
    """Compute accuracy, the regularized objective, and per-node statistics.

    The objective is ``error_rate + lam * leaf_count`` with the error rate
    taken as misclassified / N.
    """
    n = dataset.n_samples
    used = conditions_used(tree.root)
    if used and max(used) >= dataset.n_features:
        raise DimensionError(
            f"tree tests condition {max(used)} but the dataset has {dataset.n_features} conditions"
        )
    stats: list[NodeStats] = []
    labels = dataset.labels

    def walk(node: TreeNode, mask: np.ndarray) -> int:
        count = int(mask.sum())
        if isinstance(node, Leaf):
            correct = int((labels[mask] == node.prediction).sum())
            stats.append(
                NodeStats(
                    kind="leaf",
                    sample_count=count,
                    sample_fraction=count / n,
                    correct_count=correct,
                    leaf_accuracy=correct / count if count else 0.0,
                )
            )
            return correct
        stats.append(NodeStats(kind="branch", sample_count=count, sample_fraction=count / n))
        on = dataset.samples[:, node.condition] == 1
        return walk(node.false_child, mask & ~on) + walk(node.true_child, mask & on)

    total_correct = walk(tree.root, np.ones(n, dtype=bool))
    leaves = leaf_count(tree.root)
    return TreeMetrics(
        accuracy=total_correct / n,
        objective=(n - total_correct) / n + lam * leaves,
        height=height(tree.root),
        leaf_count=leaves,
        node_stats=tuple(stats),
    )


def extract_paths(tree: DecisionTree, metrics: TreeMetrics) -> tuple[DecisionPath, ...]:
    """One path per leaf, false-side leaves before true-side leaves."""
    paths: list[DecisionPath] = []
    cursor = iter(range(len(metrics.node_stats)))

    def walk(node: TreeNode, steps: tuple[PathStep, ...]):
        index = next(cursor)
        if isinstance(node, Leaf):
            stat = metrics.node_stats[index]
            paths.append(
                DecisionPath(
                    steps=steps,
                    prediction=node.prediction,
                    leaf_accuracy=stat.leaf_accuracy or 0.0,
                    sample_fraction=stat.sample_fraction,
                )
            )
            return
        walk(node.false_child, steps + (PathStep(node.condition, False),))
        walk(node.true_child, steps + (PathStep(node.condition, True),))

    walk(tree.root, ())
    return tuple(paths)


def canonical_violations(node: TreeNode, dataset: Dataset, depth_cap: int) -> list[str]:
    """List every canonical-form rule the tree breaks (empty = canonical)."""
    problems: list[str] = []
    if height(node) > depth_cap:
        problems.append(f"height {height(node)} exceeds depth cap {depth_cap}")

    def walk(sub: TreeNode, mask: np.ndarray, seen: frozenset[int]):
        if isinstance(sub, Leaf):
            if int(mask.sum()) < 1:
                problems.append("leaf captures no training samples")
            return
        if sub.condition in seen:
            problems.append(f"condition {sub.condition} repeats along a path")
        if isinstance(sub.false_child, Leaf) and isinstance(sub.true_child, Leaf):
            if sub.false_child.prediction == sub.true_child.prediction:
                problems.append(f"redundant split on condition {sub.condition}")
        on = dataset.samples[:, sub.condition] == 1
        walk(sub.false_child, mask & ~on, seen | {sub.condition})
        walk(sub.true_child, mask & on, seen | {sub.condition})

    walk(node, np.ones(dataset.n_samples, dtype=bool), frozenset())
    return problems


def metrics_to_dict(metrics: TreeMetrics) -> dict:
    doc = {
        "accuracy": metrics.accuracy,
        "objective": metrics.objective,
        "height": metrics.height,
        "leaf_count": metrics.leaf_count,
        "node_stats": [],
    }
    for stat in metrics.node_stats:
        entry: dict = {
            "kind": stat.kind,
            "sample_count": stat.sample_count,
            "sample_fraction": stat.sample_fraction,
        }
        if stat.kind == "leaf":
            entry["correct_count"] = stat.correct_count
            entry["leaf_accuracy"] = stat.leaf_accuracy
        doc["node_stats"].append(entry)
    return doc


def metrics_from_dict(doc: dict) -> TreeMetrics:
    stats = tuple(
        NodeStats(
            kind=entry["kind"],
            sample_count=int(entry["sample_count"]),
            sample_fraction=float(entry["sample_fraction"]),
            correct_count=entry.get("correct_count"),
            leaf_accuracy=entry.get("leaf_accuracy"),
        )
        for entry in doc["node_stats"]
    )
    return TreeMetrics(
        accuracy=float(doc["accuracy"]),
        objective=float(doc["objective"]),
        height=int(doc["height"]),
        leaf_count=int(doc["leaf_count"]),
        node_stats=stats,
    )
