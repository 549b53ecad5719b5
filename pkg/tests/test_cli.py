import json

import pytest
from typer.testing import CliRunner

from twistloop.main import app
from twistloop.matrep import MatS

runner = CliRunner()


@pytest.fixture
def invoke(tmp_path):
    config = str(tmp_path / "config.json")

    def run(*args):
        return runner.invoke(app, ["--config", config, *args])
    return run


def json_lines(result):
    return [json.loads(line) for line in result.output.splitlines() if line.startswith("{")]


def test_fold(invoke):
    result = invoke("fold", "--type", "a", "--rank", "4", "--r", "2", "--json")
    assert result.exit_code == 0, result.output
    (data,) = json_lines(result)
    assert data["folded_type"] == "B2"
    assert data["orbits"] == [[1, 4], [2, 3]]
    assert [row["image"] for row in data["roots"][:3]] == [[1, 0], [0, 1], [1, 1]]


def test_fold_table(invoke):
    result = invoke("fold", "--rank", "2")
    assert result.exit_code == 0
    assert "fiber" in result.output


def test_affine_gcm(invoke):
    result = invoke("affine-gcm", "--json")
    assert result.exit_code == 0, result.output
    (data,) = json_lines(result)
    assert data["matrix"] == [[2, -1], [-4, 2]]
    assert data["null_vector"] == [2, 1]
    assert data["zk_exponents"] == [2, 1]
    assert data["matches_form"]


def test_constants(invoke):
    result = invoke("constants", "--rank", "3", "--r", "1", "--json")
    assert result.exit_code == 0, result.output
    (data,) = json_lines(result)
    assert all(row["value"] == 1 for row in data["k"])
    assert {row["value"] for row in data["N"]} <= {1, -1}


def test_unsupported_case(invoke):
    result = invoke("fold", "--type", "D", "--rank", "5", "--r", "3")
    assert result.exit_code == 2


def test_verify(invoke):
    result = invoke("verify", "--suite", "signs", "--suite", "center", "--samples", "2", "--json")
    assert result.exit_code == 0, result.output
    records = json_lines(result)
    assert [rec["suite"] for rec in records] == ["center", "signs"]
    assert all(rec["status"] == "pass" for rec in records)


def test_verify_table(invoke):
    result = invoke("verify", "--suite", "su3", "--rank", "3")
    assert result.exit_code == 0
    assert "skip" in result.output


def test_verify_unknown_suite(invoke):
    assert invoke("verify", "--suite", "nope").exit_code == 2


def test_su3_round_trip(invoke, tmp_path):
    result = invoke("su3", "random-word", "--len", "5", "--seed", "3")
    assert result.exit_code == 0, result.output
    (data,) = json_lines(result)
    path = tmp_path / "m.json"
    path.write_text(json.dumps(data["matrix"]), encoding="utf-8")

    check = invoke("su3", "check", str(path))
    assert check.exit_code == 0
    assert json_lines(check) == [{"su3": True}]

    out = invoke("su3", "decompose", str(path), "--trace")
    assert out.exit_code == 0, out.output
    (decomp,) = json_lines(out)
    assert "trace" in decomp
    assert isinstance(decomp["word"], list)


def test_su3_rejects_non_members(invoke, tmp_path):
    path = tmp_path / "m.json"
    M = MatS(2, [[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    path.write_text(json.dumps(M.to_json()), encoding="utf-8")
    check = invoke("su3", "check", str(path))
    assert check.exit_code == 1
    assert json_lines(check) == [{"su3": False}]
    assert invoke("su3", "decompose", str(path)).exit_code == 1


def test_bad_matrix_file(invoke, tmp_path):
    path = tmp_path / "m.json"
    path.write_text("{\"r\": 2}", encoding="utf-8")
    assert invoke("su3", "check", str(path)).exit_code == 2
    assert invoke("su3", "check", str(tmp_path / "missing.json")).exit_code == 2


@pytest.mark.parametrize("matrix", [MatS.identity(2, 2), MatS.identity(1, 3)], ids=["2x2", "r=1"])
def test_su3_needs_a_3x3_matrix_over_r2(invoke, tmp_path, matrix):
    path = tmp_path / "m.json"
    path.write_text(json.dumps(matrix.to_json()), encoding="utf-8")
    assert invoke("su3", "check", str(path)).exit_code == 2
    assert invoke("su3", "decompose", str(path)).exit_code == 2
