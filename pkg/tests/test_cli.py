import json

import pytest

from rashomon_trees.cli import main

from conftest import D1_ROWS, write_csv


@pytest.fixture
def d1_csv(tmp_path):
    return write_csv(tmp_path / "d1.csv", ["f0", "f1", "label"], D1_ROWS)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def enumerate_d1(tmp_path, capsys, d1_csv, **overrides):
    out = tmp_path / "set.json"
    args = {
        "--data": str(d1_csv),
        "--lambda": "0.1",
        "--epsilon": "1.5",
        "--max-depth": "1",
        "--out": str(out),
    }
    args.update(overrides)
    argv = ["enumerate"]
    for key, value in args.items():
        argv += [key, value]
    code, stdout, stderr = run(capsys, *argv)
    return code, stdout, stderr, out


def test_enumerate_d1(tmp_path, capsys, d1_csv):
    code, stdout, _, out = enumerate_d1(tmp_path, capsys, d1_csv)
    assert code == 0
    assert stdout.strip() == "trees=1 optimal_objective=0.2"
    doc = json.loads(out.read_text())
    assert len(doc["trees"]) == 1
    assert doc["optimal_objective"] == 0.2


def test_enumerate_missing_lambda_is_usage_error(tmp_path, capsys, d1_csv):
    with pytest.raises(SystemExit) as err:
        main(
            [
                "enumerate",
                "--data",
                str(d1_csv),
                "--epsilon",
                "1.5",
                "--max-depth",
                "1",
                "--out",
                str(tmp_path / "s.json"),
            ]
        )
    assert err.value.code == 64


def test_unknown_command_is_usage_error(capsys):
    with pytest.raises(SystemExit) as err:
        main(["frobnicate"])
    assert err.value.code == 64


def test_enumerate_budget_exceeded_exit_2(tmp_path, capsys, d1_csv):
    code, _, stderr, _ = enumerate_d1(
        tmp_path, capsys, d1_csv, **{"--node-budget": "1", "--epsilon": "2.0"}
    )
    assert code == 2
    assert "node budget" in stderr


def test_enumerate_missing_file_exit_1(tmp_path, capsys):
    code, _, stderr, _ = enumerate_d1(tmp_path, capsys, tmp_path / "absent.csv")
    assert code == 1
    assert "error" in stderr


def test_enumerate_invalid_epsilon_exit_1(tmp_path, capsys, d1_csv):
    code, _, stderr, _ = enumerate_d1(tmp_path, capsys, d1_csv, **{"--epsilon": "0.5"})
    assert code == 1
    assert "epsilon" in stderr


def test_hierarchy_file_to_file(tmp_path, capsys, d1_csv):
    _, _, _, set_path = enumerate_d1(tmp_path, capsys, d1_csv)
    out = tmp_path / "layout.json"
    code, stdout, _ = run(
        capsys, "hierarchy", "--set", str(set_path), "--out", str(out), "--depth", "2"
    )
    assert code == 0
    doc = json.loads(out.read_text())
    paths = [tuple(s["node_path"]) for s in doc["sectors"]]
    assert paths == [(0,), (0, "_leaf")]
    assert "sectors=2" in stdout


def test_favorites_and_predict_round_trip(tmp_path, capsys, d1_csv):
    _, _, _, set_path = enumerate_d1(tmp_path, capsys, d1_csv)
    session = str(tmp_path / "session")

    code, stdout, _ = run(
        capsys,
        "favorites", "add",
        "--set", str(set_path),
        "--session", session,
        "--tree-id", "0",
        "--comment", "the stump",
    )
    assert code == 0

    code, stdout, _ = run(capsys, "favorites", "list", "--session", session)
    assert code == 0
    assert "the stump" in stdout

    model = tmp_path / "curated.json"
    code, stdout, _ = run(capsys, "favorites", "export", "--session", session, "--out", str(model))
    assert code == 0
    assert model.exists()

    code, stdout, _ = run(
        capsys, "predict", "--model", str(model), "--tree-id", "0", "--data", str(d1_csv)
    )
    assert code == 0
    assert stdout.split() == ["0", "0", "1", "1"]


def test_predict_unlabeled_data(tmp_path, capsys, d1_csv):
    _, _, _, set_path = enumerate_d1(tmp_path, capsys, d1_csv)
    session = str(tmp_path / "session")
    run(capsys, "favorites", "add", "--set", str(set_path), "--session", session, "--tree-id", "0")
    model = tmp_path / "curated.json"
    run(capsys, "favorites", "export", "--session", session, "--out", str(model))
    bare = write_csv(tmp_path / "bare.csv", ["f0", "f1"], [(1, 1), (0, 0)])
    code, stdout, _ = run(
        capsys, "predict", "--model", str(model), "--tree-id", "0", "--data", str(bare)
    )
    assert code == 0
    assert stdout.split() == ["1", "0"]


def test_predict_unknown_tree_exit_1(tmp_path, capsys, d1_csv):
    _, _, _, set_path = enumerate_d1(tmp_path, capsys, d1_csv)
    session = str(tmp_path / "session")
    run(capsys, "favorites", "add", "--set", str(set_path), "--session", session, "--tree-id", "0")
    model = tmp_path / "curated.json"
    run(capsys, "favorites", "export", "--session", session, "--out", str(model))
    code, _, stderr = run(
        capsys, "predict", "--model", str(model), "--tree-id", "9", "--data", str(d1_csv)
    )
    assert code == 1
    assert "9" in stderr


def test_favorites_remove(tmp_path, capsys, d1_csv):
    _, _, _, set_path = enumerate_d1(tmp_path, capsys, d1_csv)
    session = str(tmp_path / "session")
    run(capsys, "favorites", "add", "--set", str(set_path), "--session", session, "--tree-id", "0")
    code, _, _ = run(
        capsys, "favorites", "remove", "--set", str(set_path), "--session", session, "--tree-id", "0"
    )
    assert code == 0
    code, stdout, _ = run(capsys, "favorites", "list", "--session", session)
    assert code == 0
    assert "no favorites" in stdout or stdout.strip() == ""


def test_favorites_export_empty_exit_1(tmp_path, capsys):
    code, _, stderr = run(
        capsys,
        "favorites", "export",
        "--session", str(tmp_path / "nothing"),
        "--out", str(tmp_path / "out.json"),
    )
    assert code == 1


def test_set_file_validates_against_schema(tmp_path, capsys, d1_csv):
    import test_service

    _, _, _, set_path = enumerate_d1(tmp_path, capsys, d1_csv)
    test_service.validate("rashomon_set.schema.json", json.loads(set_path.read_text()))


def test_layout_file_validates_against_schema(tmp_path, capsys, d1_csv):
    import test_service

    _, _, _, set_path = enumerate_d1(tmp_path, capsys, d1_csv)
    out = tmp_path / "layout.json"
    run(capsys, "hierarchy", "--set", str(set_path), "--out", str(out))
    test_service.validate("layout.schema.json", json.loads(out.read_text()))
