import json

import pytest

from gmacdonald.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_table1_rows(capsys):
    code, out, _ = run(capsys, "table1", "--type", "E7")
    row = json.loads(out)["rows"][0]
    assert code == 0 and row["chains_display"] == "(0<)w1<w6, w7<w2"
    assert (row["num_weights"], row["num_chains"]) == (4, 2)
    code, out, _ = run(capsys, "table1", "--type", "D5")
    row = json.loads(out)["rows"][0]
    assert (row["num_weights"], row["num_chains"]) == (5, 4)
    code, out, _ = run(capsys, "table1", "--format", "latex")
    assert code == 0 and "\\begin{tabular}" in out and "E_8" not in out


def test_polynomial_outputs(capsys):
    code, out, _ = run(capsys, "polynomial", "0,0", "--type", "B2")
    doc = json.loads(out)
    assert code == 0 and doc["schema_version"] == 1
    assert doc["coefficients"] == [{"mu": [0, 0], "coefficient": "1"}]
    code, out, _ = run(capsys, "polynomial", "0,1", "--type", "B2", "--mode", "S_equals_R")
    assert [c["mu"] for c in json.loads(out)["coefficients"]] == [[0, 1]]
    code, out, _ = run(capsys, "polynomial", "1,1", "--type", "A2", "--format", "latex")
    assert out.startswith("p_{\\omega_{1}+\\omega_{2}} = m_{\\omega_{1}+\\omega_{2}} + ")


def test_unreachable_weight_hint(capsys):
    code, _, err = run(capsys, "polynomial", "0,1", "--type", "G2")
    assert code == 2 and "--k" in err
    code, out, _ = run(capsys, "polynomial", "0,1", "--type", "G2", "--k", "1")
    assert code == 0 and json.loads(out)["construction"] == "gram_schmidt"


def test_deterministic_json(capsys):
    argv = ["verify", "duality", "--type", "A2", "--seed", "3", "--max-height", "2"]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first[0] == 0 and first[1] == second[1]


def test_verify_examples(capsys):
    code, _, err = run(capsys, "verify", "symmetry", "--type", "A2", "--k", "1")
    assert code == 2 and "k >= 2" in err
    code, out, _ = run(capsys, "verify", "lemmas", "--type", "A3", "--mode", "S_equals_R")
    doc = json.loads(out)
    assert code == 0 and doc["passed"] and doc["reports"][0]["details"]["vacuous"]
    code, out, _ = run(capsys, "verify", "lemmas", "--type", "G2", "--format", "text")
    assert code == 0 and out.count("PASS") == 2


def test_verify_all_b2(capsys):
    code, out, _ = run(capsys, "verify", "all", "--type", "B2", "--seed", "7", "--max-height", "2")
    doc = json.loads(out)
    assert code == 0 and doc["passed"]
    assert {r["claim"] for r in doc["reports"]} >= {"diagonalization", "symmetry", "commutativity",
                                                     "duality", "pieri", "lr", "lemmas"}


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"type": "A2", "seed": 5, "format": "text"}))
    code, out, _ = run(capsys, "polynomial", "1,1", "--config", str(cfg))
    assert code == 0 and out.startswith("[1, 1]: 1")
    code, out, _ = run(capsys, "polynomial", "1,1", "--config", str(cfg), "--format", "json")
    assert json.loads(out)["parameters"]["seed"] == 5
    cfg.write_text(json.dumps({"colour": "red"}))
    assert run(capsys, "table1", "--config", str(cfg))[0] == 2


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "nonsense", "--type", "A2"])
    assert exc.value.code == 2
    assert run(capsys, "polynomial", "1,x", "--type", "A2")[0] == 2
    assert run(capsys, "polynomial", "1", "--type", "A2")[0] == 2
    assert run(capsys, "verify", "lemmas")[0] == 2
    assert run(capsys, "pieri", "2,2", "0,1", "--type", "B2")[0] == 2


def test_pieri_and_lr_tables(capsys, tmp_path):
    out_file = tmp_path / "pieri.tex"
    code, _, _ = run(capsys, "pieri", "1,0", "0,1", "--type", "B2", "--format", "latex", "--out", str(out_file))
    assert code == 0 and "P_{\\lambda+\\nu}" in out_file.read_text()
    code, out, _ = run(capsys, "lr", "1,0", "1,0", "--type", "A2")
    doc = json.loads(out)
    assert code == 0 and [t["nu"] for t in doc["terms"]] == [[-1, 1], [1, 0]]
