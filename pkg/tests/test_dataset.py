import numpy as np
import pytest

from rashomon_trees import (
    SchemaError,
    ValidationError,
    describe,
    from_arrays,
    load_dataset,
    save_dataset,
)

from conftest import write_csv


def test_load_d1(d1_csv):
    ds = load_dataset(d1_csv)
    assert ds.n_samples == 4
    assert ds.n_features == 2
    assert [c.display_name for c in ds.conditions] == ["f0", "f1"]
    assert ds.samples.tolist() == [[0, 0], [0, 1], [1, 0], [1, 1]]
    assert ds.labels.tolist() == [0, 0, 1, 1]


def test_header_with_ranges(tmp_path):
    path = write_csv(
        tmp_path / "ranged.csv",
        ["prior:>3", "prior:=0", "age:<26", "label"],
        [(0, 1, 0, 0), (1, 0, 1, 1)],
    )
    ds = load_dataset(path)
    assert len(ds.conditions) == 3
    assert ds.conditions[0].source_feature == "prior"
    assert ds.conditions[0].range_label == ">3"
    assert ds.conditions[0].display_name == "prior>3"
    assert ds.source_features() == ["prior", "age"]


def test_non_binary_cell_names_position(tmp_path):
    path = write_csv(tmp_path / "bad.csv", ["f0", "label"], [(0, 0), (2, 1)])
    with pytest.raises(ValidationError) as err:
        load_dataset(path)
    assert "row 2" in str(err.value)
    assert "'f0'" in str(err.value)


def test_duplicate_header_rejected(tmp_path):
    path = write_csv(tmp_path / "dup.csv", ["f0", "f0", "label"], [(0, 1, 0)])
    with pytest.raises(SchemaError):
        load_dataset(path)


def test_empty_file_rejected(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("")
    with pytest.raises(SchemaError):
        load_dataset(path)


def test_header_only_rejected(tmp_path):
    path = tmp_path / "header.csv"
    path.write_text("f0,label\n")
    with pytest.raises(SchemaError):
        load_dataset(path)


def test_ragged_row_rejected(tmp_path):
    path = tmp_path / "ragged.csv"
    path.write_text("f0,f1,label\n0,1\n")
    with pytest.raises(ValidationError):
        load_dataset(path)


def test_round_trip_bit_exact(tmp_path, d1_csv):
    ds = load_dataset(d1_csv)
    saved = save_dataset(ds, tmp_path / "again.csv")
    again = load_dataset(saved)
    assert again.content_hash == ds.content_hash
    assert again.conditions == ds.conditions
    assert np.array_equal(again.samples, ds.samples)
    assert np.array_equal(again.labels, ds.labels)


def test_round_trip_preserves_ranges(tmp_path):
    ds = from_arrays(["prior:>3", "prior:=0"], [[1, 0], [0, 1]], [1, 0])
    again = load_dataset(save_dataset(ds, tmp_path / "r.csv"))
    assert again.content_hash == ds.content_hash
    assert again.conditions == ds.conditions


def test_hash_stable_across_loads(tmp_path, d1_csv):
    assert load_dataset(d1_csv).content_hash == load_dataset(d1_csv).content_hash


def test_describe_d1(d1):
    summary = describe(d1)
    assert summary.n_samples == 4
    assert summary.n_features == 2
    assert summary.positives == 2
    assert summary.label_balance == 0.5


def test_describe_d2(d2):
    summary = describe(d2)
    assert (summary.n_samples, summary.n_features, summary.positives) == (8, 3, 6)


def test_describe_groups():
    ds = from_arrays(["prior:>3", "prior:=0"], [[1, 0]], [1])
    summary = describe(ds)
    assert summary.feature_groups == {"prior": (0, 1)}


def test_describe_matches_brute_force(d2):
    summary = describe(d2)
    assert summary.positives == sum(int(y) for y in d2.labels)
    assert summary.negatives == sum(1 for y in d2.labels if y == 0)
    assert summary.n_samples == len(d2.samples)


def test_dataset_is_immutable(d1):
    with pytest.raises(ValueError):
        d1.samples[0, 0] = 1


def test_non_binary_array_rejected():
    with pytest.raises(ValidationError):
        from_arrays(["f0"], [[3]], [0])
