"""Bookmark trustworthy trees, export them, and deploy the saved file.

Exported curation files are self-contained: reloading one reproduces
the original predictions bit-for-bit without the set file or dataset.
"""

import tempfile
from pathlib import Path

from rashomon_trees import (
    CurationStore,
    EnumerationConfig,
    FeatureConstraint,
    FilterSpec,
    apply_filter,
    bookmark,
    enumerate_rashomon,
    export_curation,
    import_curation,
    list_bookmarks,
    load_and_predict,
    predict,
)

from toydata import make_credit_dataset

dataset = make_credit_dataset()
rset = enumerate_rashomon(dataset, EnumerationConfig(lam=0.008, epsilon=1.3, depth_cap=3))

# curate: accurate, robust, and never looking at age
spec = FilterSpec(
    accuracy_range=(0.88, 1.0),
    min_leaf_samples=8,
    feature_constraints=(FeatureConstraint("age", "must_not_use"),),
)
candidates = sorted(apply_filter(rset, spec))
print(f"{len(candidates)} candidate trees satisfy the curation query")

workdir = Path(tempfile.mkdtemp(prefix="curation-demo-"))
store = CurationStore(rset, workdir / "session")
for tree_id in candidates[:3]:
    member = rset.member(tree_id)
    bookmark(
        store,
        tree_id,
        f"age-free, accuracy {member.metrics.accuracy:.3f}, {member.metrics.leaf_count} leaves",
    )
print("bookmarked:")
for record in list_bookmarks(store):
    print(f"  tree {record.tree_id}: {record.comment}")
print()

model_path = workdir / "curated-trees.json"
export_curation(store, model_path)
print(f"exported to {model_path}")

reloaded = import_curation(model_path)
tree_id = candidates[0]
labels = load_and_predict(reloaded, tree_id, dataset.samples.tolist())
direct = [predict(rset.member(tree_id).tree, x) for x in dataset.samples]
print(f"reloaded tree {tree_id} predictions match the live tree: {labels == direct}")
print(f"first ten labels: {labels[:10]}")
