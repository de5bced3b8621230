import json
import random

import pytest

from rashomon_trees import (
    Branch,
    DecisionTree,
    DimensionError,
    Leaf,
    canonical_serialization,
    evaluate,
    extract_paths,
    predict,
)
from rashomon_trees.trees import metrics_from_dict, metrics_to_dict, node_from_dict, node_to_dict

from conftest import random_dataset

STUMP_F0 = DecisionTree(id=0, root=Branch(0, Leaf(0), Leaf(1)))
SINGLE_LEAF_0 = DecisionTree(id=0, root=Leaf(0))
# root f0: true -> leaf 1; false -> branch f1 (true -> leaf 1, false -> leaf 0)
D2_TREE_A = DecisionTree(id=0, root=Branch(0, Branch(1, Leaf(0), Leaf(1)), Leaf(1)))


def test_predict_stump():
    assert predict(STUMP_F0, (1, 0)) == 1
    assert predict(STUMP_F0, (0, 1)) == 0


def test_predict_single_leaf():
    assert predict(DecisionTree(id=0, root=Leaf(1)), (0, 0)) == 1


def test_predict_d2_tree_a():
    assert predict(D2_TREE_A, (0, 1, 1)) == 1
    assert predict(D2_TREE_A, (0, 0, 1)) == 0
    assert predict(D2_TREE_A, (1, 0, 0)) == 1


def test_predict_wrong_width():
    with pytest.raises(DimensionError):
        predict(STUMP_F0, (1, 0, 0), n_features=2)
    with pytest.raises(DimensionError):
        predict(STUMP_F0, ())


def test_evaluate_stump_on_d1(d1):
    metrics = evaluate(STUMP_F0, d1, lam=0.1)
    assert metrics.accuracy == 1.0
    assert metrics.objective == pytest.approx(0.2, abs=1e-12)
    assert metrics.height == 1
    assert metrics.leaf_count == 2


def test_evaluate_single_leaf_on_d1(d1):
    metrics = evaluate(SINGLE_LEAF_0, d1, lam=0.1)
    assert metrics.accuracy == 0.5
    assert metrics.objective == pytest.approx(0.6, abs=1e-12)
    assert metrics.leaf_count == 1
    assert metrics.height == 0


def test_evaluate_d2_tree_a(d2):
    metrics = evaluate(D2_TREE_A, d2, lam=0.05)
    assert metrics.accuracy == 1.0
    assert metrics.leaf_count == 3
    assert metrics.objective == pytest.approx(0.15, abs=1e-12)
    leaf_counts = sorted(s.sample_count for s in metrics.node_stats if s.kind == "leaf")
    assert leaf_counts == [2, 2, 4]


def test_metrics_invariants(d2):
    n = d2.n_samples
    metrics = evaluate(D2_TREE_A, d2, lam=0.05)
    leaves = [s for s in metrics.node_stats if s.kind == "leaf"]
    assert sum(s.sample_count for s in leaves) == n
    assert metrics.node_stats[0].sample_fraction == 1.0
    assert metrics.accuracy == sum(s.correct_count for s in leaves) / n
    # a branch's samples split exactly across its children (root = false + true)
    assert metrics.node_stats[0].sample_count == (
        metrics.node_stats[1].sample_count + metrics.node_stats[4].sample_count
    )


def test_evaluate_rejects_out_of_range_condition(d1):
    tall = DecisionTree(id=0, root=Branch(7, Leaf(0), Leaf(1)))
    with pytest.raises(DimensionError):
        evaluate(tall, d1, lam=0.1)


def test_extract_paths_single_leaf(d1):
    metrics = evaluate(SINGLE_LEAF_0, d1, lam=0.1)
    paths = extract_paths(SINGLE_LEAF_0, metrics)
    assert len(paths) == 1
    assert paths[0].steps == ()
    assert paths[0].sample_fraction == 1.0


def test_extract_paths_stump(d1):
    metrics = evaluate(STUMP_F0, d1, lam=0.1)
    paths = extract_paths(STUMP_F0, metrics)
    assert [p.feature_sequence for p in paths] == [(0,), (0,)]
    assert [p.steps[0].direction for p in paths] == [False, True]
    assert [p.prediction for p in paths] == [0, 1]


def test_extract_paths_d2_tree_a(d2):
    metrics = evaluate(D2_TREE_A, d2, lam=0.05)
    paths = extract_paths(D2_TREE_A, metrics)
    assert len(paths) == metrics.leaf_count
    assert sorted(p.feature_sequence for p in paths) == [(0,), (0, 1), (0, 1)]
    # false-side leaves come first
    assert paths[0].feature_sequence == (0, 1)
    assert paths[-1].feature_sequence == (0,)


def test_paths_cover_all_samples(d2):
    metrics = evaluate(D2_TREE_A, d2, lam=0.05)
    paths = extract_paths(D2_TREE_A, metrics)
    assert sum(p.sample_fraction for p in paths) == pytest.approx(1.0, abs=1e-12)


def test_predict_agrees_with_path_replay(d2):
    """A sample satisfying every step of a path gets that path's prediction."""
    metrics = evaluate(D2_TREE_A, d2, lam=0.05)
    paths = extract_paths(D2_TREE_A, metrics)
    for sample in d2.samples:
        for path in paths:
            if all(int(sample[s.condition]) == int(s.direction) for s in path.steps):
                assert predict(D2_TREE_A, sample) == path.prediction
                break
        else:
            pytest.fail("no path matched a training sample")


def test_accuracy_matches_brute_force_loop():
    rng = random.Random(7)
    for _ in range(25):
        ds = random_dataset(rng)
        tree = STUMP_F0 if ds.n_features >= 2 else SINGLE_LEAF_0
        metrics = evaluate(tree, ds, lam=0.05)
        correct = sum(
            1 for x, y in zip(ds.samples, ds.labels) if predict(tree, x) == int(y)
        )
        assert metrics.accuracy == correct / ds.n_samples


def test_serialization_round_trip():
    doc = node_to_dict(D2_TREE_A.root)
    assert doc["type"] == "branch"
    assert doc["condition"] == 0
    assert node_from_dict(doc) == D2_TREE_A.root


def test_canonical_serialization_is_compact_sorted():
    text = canonical_serialization(STUMP_F0.root)
    assert " " not in text
    assert json.loads(text) == node_to_dict(STUMP_F0.root)
    assert text.index('"condition"') < text.index('"false"') < text.index('"true"')


def test_metrics_round_trip(d2):
    metrics = evaluate(D2_TREE_A, d2, lam=0.05)
    assert metrics_from_dict(metrics_to_dict(metrics)) == metrics
