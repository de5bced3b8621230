"""Prefix tree over the decision paths of every tree in a Rashomon set.

Keys are split-condition ids with branch directions dropped, so the two
children of one test share a node; a terminal ``_leaf`` marker ends each
rule and records which trees contain it.  Every node tracks the distinct
trees that descend through it, which is what sector sizing consumes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .dataset import SplitCondition
from .enumeration import RashomonSet
from .errors import EmptySetError, PrefixNotFound, UnknownTreeId
from .trees import extract_paths

LEAF_KEY = "_leaf"
ROOT_KEY = "_root"

TrieKey = int | str


@dataclass(frozen=True)
class TreeSummary:
    accuracy: float
    objective: float
    height: int
    leaf_count: int


class TrieNode:
    """One trie position: a condition id or the leaf marker."""

    __slots__ = ("key", "children", "descendant_tree_ids", "tree_paths")

    def __init__(
        self,
        key: TrieKey,
        children: tuple["TrieNode", ...],
        descendant_tree_ids: frozenset[int],
        tree_paths: dict[int, int] | None = None,
    ):
        self.key = key
        self.children = children
        self.descendant_tree_ids = descendant_tree_ids
        self.tree_paths = dict(tree_paths) if tree_paths else {}

    @property
    def is_leaf(self) -> bool:
        return self.key == LEAF_KEY

    @property
    def tree_count(self) -> int:
        return len(self.descendant_tree_ids)

    @property
    def path_link_count(self) -> int:
        return sum(self.tree_paths.values())

    @property
    def linked_tree_ids(self) -> frozenset[int]:
        return frozenset(self.tree_paths)

    def child(self, key: TrieKey) -> "TrieNode | None":
        for node in self.children:
            if node.key == key:
                return node
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, TrieNode):
            return NotImplemented
        return (
            self.key == other.key
            and self.descendant_tree_ids == other.descendant_tree_ids
            and self.tree_paths == other.tree_paths
            and self.children == other.children
        )

    def __repr__(self) -> str:
        return f"TrieNode({self.key!r}, trees={sorted(self.descendant_tree_ids)})"


@dataclass(frozen=True, eq=False)
class RuleTrie:
    root: TrieNode
    height: int
    total_trees: int
    total_path_links: int
    conditions: tuple[SplitCondition, ...]
    tree_summaries: dict[int, TreeSummary]

    def __eq__(self, other) -> bool:
        if not isinstance(other, RuleTrie):
            return NotImplemented
        return (
            self.root == other.root
            and self.height == other.height
            and self.total_trees == other.total_trees
            and self.total_path_links == other.total_path_links
        )


class _Draft:
    __slots__ = ("key", "children", "tree_ids", "tree_paths")

    def __init__(self, key: TrieKey):
        self.key = key
        self.children: dict[TrieKey, _Draft] = {}
        self.tree_ids: set[int] = set()
        self.tree_paths: dict[int, int] = {}


def _feature_index(conditions: Sequence[SplitCondition]) -> dict[str, int]:
    order: dict[str, int] = {}
    for cond in conditions:
        order.setdefault(cond.source_feature, len(order))
    return order


def order_children(nodes: Iterable[TrieNode], conditions: Sequence[SplitCondition]) -> tuple[TrieNode, ...]:
    """Leaf marker first, then feature groups by falling tree count.

    Groups sharing a source feature stay adjacent; groups are ordered by
    their summed tree counts (feature first-appearance on ties), members
    within a group by tree count (condition id on ties).
    """
    nodes = list(nodes)
    leaves = [n for n in nodes if n.is_leaf]
    interior = [n for n in nodes if not n.is_leaf]
    feature_of = {c.id: c.source_feature for c in conditions}
    findex = _feature_index(conditions)
    groups: dict[str, list[TrieNode]] = {}
    for node in interior:
        groups.setdefault(feature_of[node.key], []).append(node)
    ordered: list[TrieNode] = list(leaves)
    group_rank = sorted(
        groups,
        key=lambda feat: (-sum(n.tree_count for n in groups[feat]), findex[feat]),
    )
    for feat in group_rank:
        ordered.extend(sorted(groups[feat], key=lambda n: (-n.tree_count, n.key)))
    return tuple(ordered)


def _freeze(draft: _Draft, conditions: Sequence[SplitCondition]) -> TrieNode:
    children = tuple(_freeze(child, conditions) for child in draft.children.values())
    return TrieNode(
        key=draft.key,
        children=order_children(children, conditions),
        descendant_tree_ids=frozenset(draft.tree_ids),
        tree_paths=draft.tree_paths,
    )


def build_trie(rset: RashomonSet) -> RuleTrie:
    """Insert every decision path of every member tree."""
    if rset.size == 0:
        raise EmptySetError("cannot build a trie from an empty Rashomon set")
    root = _Draft(ROOT_KEY)
    for member in rset.members:
        tree_id = member.tree.id
        for path in extract_paths(member.tree, member.metrics):
            node = root
            node.tree_ids.add(tree_id)
            for condition in path.feature_sequence:
                node = node.children.setdefault(condition, _Draft(condition))
                node.tree_ids.add(tree_id)
            leaf = node.children.setdefault(LEAF_KEY, _Draft(LEAF_KEY))
            leaf.tree_ids.add(tree_id)
            leaf.tree_paths[tree_id] = leaf.tree_paths.get(tree_id, 0) + 1
    summaries = {
        member.tree.id: TreeSummary(
            accuracy=member.metrics.accuracy,
            objective=member.metrics.objective,
            height=member.metrics.height,
            leaf_count=member.metrics.leaf_count,
        )
        for member in rset.members
    }
    frozen = _freeze(root, rset.conditions)
    return RuleTrie(
        root=frozen,
        height=max(s.height for s in summaries.values()),
        total_trees=rset.size,
        total_path_links=sum(s.leaf_count for s in summaries.values()),
        conditions=rset.conditions,
        tree_summaries=summaries,
    )


def _sum_path_links(node: TrieNode) -> int:
    if node.is_leaf:
        return node.path_link_count
    return sum(_sum_path_links(child) for child in node.children)


def subtrie(trie: RuleTrie, prefix: Sequence[int]) -> RuleTrie:
    """Re-root at the node addressed by a condition-id prefix."""
    if len(prefix) == 0:
        return trie
    node = trie.root
    for key in prefix:
        if key == LEAF_KEY:
            raise PrefixNotFound("a prefix cannot address the leaf marker")
        found = node.child(key)
        if found is None or found.is_leaf:
            raise PrefixNotFound(f"no trie node at prefix {list(prefix)!r}")
        node = found
    kept = node.descendant_tree_ids
    summaries = {tid: s for tid, s in trie.tree_summaries.items() if tid in kept}
    return RuleTrie(
        root=node,
        height=max((s.height for s in summaries.values()), default=0),
        total_trees=len(kept),
        total_path_links=_sum_path_links(node),
        conditions=trie.conditions,
        tree_summaries=summaries,
    )


def _filter_node(node: TrieNode, keep: frozenset[int], conditions) -> TrieNode | None:
    kept_ids = node.descendant_tree_ids & keep
    if not kept_ids and node.key != ROOT_KEY:
        return None
    children = [
        filtered
        for child in node.children
        if (filtered := _filter_node(child, keep, conditions)) is not None
    ]
    return TrieNode(
        key=node.key,
        children=order_children(children, conditions),
        descendant_tree_ids=kept_ids,
        tree_paths={tid: n for tid, n in node.tree_paths.items() if tid in keep},
    )


def restrict(trie: RuleTrie, keep: Iterable[int]) -> RuleTrie:
    """Rebuild the trie over a subset of tree ids, dropping emptied nodes."""
    keep = frozenset(keep)
    unknown = keep - set(trie.tree_summaries)
    if unknown:
        raise UnknownTreeId(f"unknown tree ids: {sorted(unknown)}")
    root = _filter_node(trie.root, keep, trie.conditions)
    assert root is not None
    summaries = {tid: s for tid, s in trie.tree_summaries.items() if tid in keep}
    return RuleTrie(
        root=root,
        height=max((s.height for s in summaries.values()), default=0),
        total_trees=len(keep),
        total_path_links=_sum_path_links(root),
        conditions=trie.conditions,
        tree_summaries=summaries,
    )


def _node_document(node: TrieNode) -> dict:
    doc: dict = {"k": node.key, "n": node.tree_count}
    if node.is_leaf:
        doc["p"] = node.path_link_count
        doc["t"] = sorted(node.tree_paths)
    else:
        doc["c"] = [_node_document(child) for child in node.children]
    return doc


def hierarchy_document(trie: RuleTrie) -> dict:
    """Nested rule hierarchy plus condition metadata and tree summaries."""
    return {
        "height": trie.height,
        "total_trees": trie.total_trees,
        "total_path_links": trie.total_path_links,
        "root": _node_document(trie.root),
        "conditions": {
            str(c.id): {
                "display_name": c.display_name,
                "source_feature": c.source_feature,
                "range_label": c.range_label,
            }
            for c in trie.conditions
        },
        "trees": {
            str(tid): {
                "accuracy": s.accuracy,
                "objective": s.objective,
                "height": s.height,
                "leaf_count": s.leaf_count,
            }
            for tid, s in sorted(trie.tree_summaries.items())
        },
    }
