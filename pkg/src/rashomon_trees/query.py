"""Filtering and feature-importance queries over a Rashomon set.

Feature constraints bind to source features, so forbidding "age" rejects
a tree that tests any binarized age condition at an in-scope depth.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .enumeration import RashomonSet, SetMember
from .errors import UnknownFeature, ValidationError
from .sunburst import layout, layout_document
from .trees import Branch, TreeNode
from .trie import RuleTrie, restrict

MUST_USE = "must_use"
MUST_NOT_USE = "must_not_use"
ALL_DEPTHS = "all"


@dataclass(frozen=True)
class FeatureConstraint:
    source_feature: str
    mode: str  # MUST_USE | MUST_NOT_USE
    depth_scope: str | frozenset[int] = ALL_DEPTHS

    def __post_init__(self):
        if self.mode not in (MUST_USE, MUST_NOT_USE):
            raise ValidationError(f"unknown constraint mode {self.mode!r}")
        if self.depth_scope != ALL_DEPTHS:
            object.__setattr__(self, "depth_scope", frozenset(int(d) for d in self.depth_scope))

    def in_scope(self, depth: int) -> bool:
        return self.depth_scope == ALL_DEPTHS or depth in self.depth_scope


@dataclass(frozen=True)
class FilterSpec:
    accuracy_range: tuple[float, float] = (0.0, 1.0)
    min_leaf_samples: int = 0
    allowed_heights: frozenset[int] = frozenset()  # empty = all heights
    feature_constraints: tuple[FeatureConstraint, ...] = ()

    def __post_init__(self):
        lo, hi = self.accuracy_range
        if not (0.0 <= lo <= hi <= 1.0):
            raise ValidationError(f"accuracy range [{lo}, {hi}] must be ordered within [0, 1]")
        if self.min_leaf_samples < 0:
            raise ValidationError("min_leaf_samples must be non-negative")
        object.__setattr__(self, "allowed_heights", frozenset(int(h) for h in self.allowed_heights))
        object.__setattr__(self, "feature_constraints", tuple(self.feature_constraints))


def _branch_uses(node: TreeNode, depth: int = 0) -> list[tuple[int, int]]:
    """(condition id, depth) for every branch node."""
    if not isinstance(node, Branch):
        return []
    uses = [(node.condition, depth)]
    uses.extend(_branch_uses(node.false_child, depth + 1))
    uses.extend(_branch_uses(node.true_child, depth + 1))
    return uses


def _validate(rset: RashomonSet, spec: FilterSpec):
    known = {c.source_feature for c in rset.conditions}
    for constraint in spec.feature_constraints:
        if constraint.source_feature not in known:
            raise UnknownFeature(f"unknown source feature {constraint.source_feature!r}")
        if constraint.depth_scope != ALL_DEPTHS:
            bad = [d for d in constraint.depth_scope if not 0 <= d < rset.config.depth_cap]
            if bad:
                raise ValidationError(
                    f"depth scope {sorted(bad)} outside [0, {rset.config.depth_cap})"
                )


def _matches(member: SetMember, spec: FilterSpec, feature_of: dict[int, str]) -> bool:
    metrics = member.metrics
    lo, hi = spec.accuracy_range
    if not lo <= metrics.accuracy <= hi:
        return False
    if spec.min_leaf_samples > 0:
        for stat in metrics.node_stats:
            if stat.kind == "leaf" and stat.sample_count < spec.min_leaf_samples:
                return False
    if spec.allowed_heights and metrics.height not in spec.allowed_heights:
        return False
    if spec.feature_constraints:
        uses = [(feature_of[cid], depth) for cid, depth in _branch_uses(member.tree.root)]
        for constraint in spec.feature_constraints:
            hit = any(
                feat == constraint.source_feature and constraint.in_scope(depth)
                for feat, depth in uses
            )
            if constraint.mode == MUST_USE and not hit:
                return False
            if constraint.mode == MUST_NOT_USE and hit:
                return False
    return True


def apply_filter(rset: RashomonSet, spec: FilterSpec) -> frozenset[int]:
    """Ids of every member tree satisfying all fields of the spec."""
    _validate(rset, spec)
    feature_of = {c.id: c.source_feature for c in rset.conditions}
    return frozenset(
        member.tree.id for member in rset.members if _matches(member, spec, feature_of)
    )


@dataclass(frozen=True)
class FeatureImportance:
    root_usage_count: int
    any_depth_usage_count: int
    root_fraction: float
    any_depth_fraction: float


def feature_importance(rset: RashomonSet) -> dict[str, FeatureImportance]:
    """Per source feature: how many distinct trees use it, at the root or anywhere."""
    if rset.size == 0:
        raise ValidationError("feature importance needs a non-empty set")
    feature_of = {c.id: c.source_feature for c in rset.conditions}
    features = list(dict.fromkeys(c.source_feature for c in rset.conditions))
    root_counts = {feat: 0 for feat in features}
    any_counts = {feat: 0 for feat in features}
    for member in rset.members:
        uses = _branch_uses(member.tree.root)
        used_features = {feature_of[cid] for cid, _ in uses}
        for feat in used_features:
            any_counts[feat] += 1
        root_uses = {feature_of[cid] for cid, depth in uses if depth == 0}
        for feat in root_uses:
            root_counts[feat] += 1
    return {
        feat: FeatureImportance(
            root_usage_count=root_counts[feat],
            any_depth_usage_count=any_counts[feat],
            root_fraction=root_counts[feat] / rset.size,
            any_depth_fraction=any_counts[feat] / rset.size,
        )
        for feat in features
    }


def filtered_hierarchy(
    rset: RashomonSet, trie: RuleTrie, spec: FilterSpec, depth_limit: int | float | None = None
) -> dict:
    """Layout of the trie restricted to trees passing the filter."""
    kept = apply_filter(rset, spec)
    return layout_document(layout(restrict(trie, kept), depth_limit))


def spec_from_wire(body: dict) -> FilterSpec:
    """Decode the query wire form, naming the offending field on errors."""
    if not isinstance(body, dict):
        raise ValidationError("filter body must be an object")
    known = {"acc", "min_leaf", "heights", "features"}
    for key in body:
        if key not in known:
            raise ValidationError(f"unknown filter field {key!r}")
    acc = body.get("acc", [0.0, 1.0])
    if not (isinstance(acc, (list, tuple)) and len(acc) == 2):
        raise ValidationError("field 'acc' must be a [min, max] pair")
    try:
        acc_range = (float(acc[0]), float(acc[1]))
    except (TypeError, ValueError):
        raise ValidationError("field 'acc' must contain numbers") from None
    min_leaf = body.get("min_leaf", 0)
    if not isinstance(min_leaf, int) or isinstance(min_leaf, bool):
        raise ValidationError("field 'min_leaf' must be an integer")
    heights = body.get("heights", [])
    if not isinstance(heights, list) or any(not isinstance(h, int) for h in heights):
        raise ValidationError("field 'heights' must be a list of integers")
    raw_features = body.get("features", [])
    if not isinstance(raw_features, list):
        raise ValidationError("field 'features' must be a list")
    constraints = []
    for i, entry in enumerate(raw_features):
        if not isinstance(entry, dict) or "name" not in entry or "mode" not in entry:
            raise ValidationError(f"features[{i}] needs 'name' and 'mode'")
        depths = entry.get("depths", ALL_DEPTHS)
        if depths != ALL_DEPTHS:
            if not isinstance(depths, list) or any(not isinstance(d, int) for d in depths):
                raise ValidationError(f"features[{i}].depths must be \"all\" or a list of integers")
            depths = frozenset(depths)
        constraints.append(
            FeatureConstraint(source_feature=entry["name"], mode=entry["mode"], depth_scope=depths)
        )
    return FilterSpec(
        accuracy_range=acc_range,
        min_leaf_samples=min_leaf,
        allowed_heights=frozenset(heights),
        feature_constraints=tuple(constraints),
    )


def spec_to_wire(spec: FilterSpec) -> dict:
    return {
        "acc": [spec.accuracy_range[0], spec.accuracy_range[1]],
        "min_leaf": spec.min_leaf_samples,
        "heights": sorted(spec.allowed_heights),
        "features": [
            {
                "name": c.source_feature,
                "mode": c.mode,
                "depths": ALL_DEPTHS if c.depth_scope == ALL_DEPTHS else sorted(c.depth_scope),
            }
            for c in spec.feature_constraints
        ],
    }
