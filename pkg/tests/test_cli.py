import json
import subprocess
import sys

import pytest

from dcurrent.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_normalize(capsys):
    code, out, _ = run(capsys, "normalize", "X+(1)*X-(2)")
    assert code == 0
    assert out.strip() == "X-(2)*X+(1) + J(3) - Q*J(4)"


def test_normalize_json_deterministic(capsys):
    _, a, _ = run(capsys, "normalize", "(X+(0)+J(1))^2*X-(0)", "--json")
    _, b, _ = run(capsys, "normalize", "(X+(0)+J(1))^2*X-(0)", "--json")
    assert a == b
    assert json.loads(a)["input"] == "(X+(0)+J(1))^2*X-(0)"


def test_exit_codes(capsys):
    assert run(capsys, "normalize", "X+(1")[0] == 2
    assert run(capsys, "normalize", "(X+(0)+X-(0)+J(0))^5", "--ceiling", "10")[0] == 3
    assert run(capsys, "relations", "--m", "3", "--Q", "1")[0] == 2
    code, _, err = run(capsys, "module", "build", '{"phi": [[]], "beta": ["5"]}', "--Q", "0")
    assert code == 2 and "Q_1 = 0" in err
    assert run(capsys, "identities", "--only", "nope")[0] == 2


def test_relations_report(capsys, tmp_path):
    out = tmp_path / "rel.json"
    code, _, _ = run(capsys, "relations", "--m", "2", "--Q", "1/2", "--degree-bound", "1", "--out", str(out))
    assert code == 0
    first = out.read_bytes()
    run(capsys, "relations", "--m", "2", "--Q", "1/2", "--degree-bound", "1", "--out", str(out))
    assert out.read_bytes() == first
    assert json.loads(first)["ok"] is True


def test_identities_subset(capsys):
    code, out, _ = run(capsys, "identities", "--only", "comm_rel", "--st-max", "0", "--bc-max", "2")
    assert code == 0
    assert "comm_rel:" in out and "[PASS]" in out


def test_module_build_then_classify(capsys, tmp_path):
    path = tmp_path / "mod.json"
    datum = '{"phi": [["1", "3"]], "beta": ["1/2"]}'
    code, _, _ = run(capsys, "module", "build", datum, "--Q", "1/2", "--out", str(path))
    assert code == 0
    built = json.loads(path.read_text())
    assert built["highest_weight_matches_formula"] and built["relations_ok"]
    code, out, _ = run(capsys, "module", "classify", str(path))
    assert code == 0
    got = json.loads(out)
    assert got["simple"] is True
    assert got["datum"]["beta"] == ["1/2"]
    assert got["datum"]["phi"] == built["canonical_datum"]["phi"]


def test_module_radical(capsys):
    code, out, _ = run(capsys, "module", "radical", "--Q", "1", "--gamma", "1")
    assert code == 0
    rep = json.loads(out)
    assert rep["radical_dim"] == 1
    assert rep["quotient"]["datum"]["beta"] == ["1/1"]
    assert rep["submodule"]["datum"]["beta"] == ["-1/1"]


def test_python_m_entry():
    proc = subprocess.run([sys.executable, "-m", "dcurrent", "normalize", "J(1)*J(0)"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "J(0)*J(1)"
