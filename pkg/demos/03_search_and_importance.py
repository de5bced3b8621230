"""Query the set: sliders, height checkboxes, and feature-use constraints.

Filters compose conjunctively and only ever shrink the result, mirroring
the search panel of the explorer UI.  Feature importance falls out of
the set structure: a feature used by many accurate trees matters.
"""

from rashomon_trees import (
    EnumerationConfig,
    FeatureConstraint,
    FilterSpec,
    apply_filter,
    build_trie,
    enumerate_rashomon,
    feature_importance,
    filtered_hierarchy,
)

from toydata import make_credit_dataset

dataset = make_credit_dataset()
rset = enumerate_rashomon(dataset, EnumerationConfig(lam=0.008, epsilon=1.3, depth_cap=3))
trie = build_trie(rset)
print(f"set size: {rset.size}")
print()

print("feature importance (fraction of trees using the feature):")
for feature, imp in feature_importance(rset).items():
    bar = "#" * round(imp.any_depth_fraction * 30)
    print(f"  {feature:>13}  root {imp.root_fraction:5.2f}  any {imp.any_depth_fraction:5.2f}  {bar}")
print()

queries = {
    "accuracy >= 0.90": FilterSpec(accuracy_range=(0.90, 1.0)),
    "every leaf >= 10 samples": FilterSpec(min_leaf_samples=10),
    "height exactly 2": FilterSpec(allowed_heights=frozenset({2})),
    "never tests age": FilterSpec(
        feature_constraints=(FeatureConstraint("age", "must_not_use"),)
    ),
    "age-free AND robust": FilterSpec(
        min_leaf_samples=10,
        feature_constraints=(FeatureConstraint("age", "must_not_use"),),
    ),
    "income at the root": FilterSpec(
        feature_constraints=(FeatureConstraint("income", "must_use", frozenset({0})),)
    ),
}
for label, spec in queries.items():
    kept = apply_filter(rset, spec)
    print(f"  {label:>28}: {len(kept):3d} trees")
print()

spec = FilterSpec(feature_constraints=(FeatureConstraint("age", "must_not_use"),))
doc = filtered_hierarchy(rset, trie, spec, depth_limit=1)
print("first ring after filtering out age-using trees:")
for sector in doc["sectors"]:
    name = (
        "(leaf)"
        if sector["kind"] == "leaf"
        else rset.conditions[sector["node_path"][-1]].display_name
    )
    span = sector["end_angle"] - sector["start_angle"]
    print(f"  {name:>20}: {sector['tree_count']:3d} trees, {span:.2f} rad")
