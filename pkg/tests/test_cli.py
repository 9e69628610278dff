import json

import pytest

from lcsalg.cli import main
from lcsalg.liealg import LieAlgebra, signature
from lcsalg.notation import parse_structure_notation


def run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


def test_parse(capsys):
    rc, out, _ = run(capsys, "parse", "(0,0,12,13)")
    assert rc == 0 and "canonical: (0,0,12,13)" in out
    rc, out, _ = run(capsys, "parse", "--json", "(0,0,0,12)")
    assert json.loads(out)["algebra"]["dim"] == 4


def test_parse_error_rc2(capsys):
    rc, _, err = run(capsys, "parse", "(0,0,1x)")
    assert rc == 2 and err.startswith("error:")


def test_verify(capsys):
    rc, out, _ = run(capsys, "verify", "(0,0,0,12)", "--omega", "e3", "--eta", "e4")
    assert rc == 0 and "lcs_first_kind: ok" in out
    rc, out, _ = run(capsys, "verify", "(0,0,0,0)", "--omega", "e1", "--eta", "e2")
    assert rc == 1 and "rejected:" in out
    rc, out, _ = run(capsys, "verify", "--json", "(0,0,12)", "--theta", "e3")
    assert rc == 0 and json.loads(out)["ok"] is True


def test_verify_complex_failure(capsys):
    rc, out, _ = run(capsys, "verify", "g4-group", "--J", "[[0,-1,0,0],[1,0,0,0],[0,0,0,-1],[0,0,1,0]]")
    assert rc == 1 and "complex: not integrable, N(e1, e3)" in out


def test_verify_nothing_rc2(capsys):
    assert run(capsys, "verify", "(0,0,12)")[0] == 2
    assert run(capsys, "verify", "no-such-algebra", "--theta", "e1")[0] == 2


def test_classify(capsys):
    rc, out, _ = run(capsys, "classify", "d41", "--omega", "e2", "--phi", "2*e12+e34")
    assert rc == 0 and "kind: SecondKind" in out and "dim g_phi: 1" in out


def test_cohomology(capsys):
    rc, out, _ = run(capsys, "cohomology", "--json", "(0,0,12)")
    assert rc == 0 and json.loads(out)["betti"] == [1, 2, 2, 1]
    rc, out, _ = run(capsys, "cohomology", "--json", "(0,0,12)", "--twist", "e1", "--dixmier")
    assert rc == 0 and json.loads(out)["dixmier_vanishing"]


def test_extend(capsys):
    rc, out, _ = run(capsys, "extend", "--json", "lcs", "(0,0)", "--sigma", "e12")
    data = json.loads(out)
    assert rc == 0 and signature(LieAlgebra.from_json(data["algebra"])) == signature(parse_structure_notation("(0,0,0,12)"))
    assert data["lcs"]
    assert run(capsys, "extend", "semidirect", "(0,0,12)")[0] == 2
    assert run(capsys, "extend", "semidirect", "(0,0,12)", "--D", "[[1]]")[0] == 2


def test_scan_seed_env(capsys, monkeypatch):
    monkeypatch.setenv("LCS_SEED", "5")
    rc, out, _ = run(capsys, "scan", "--json", "(0,0,0,12)")
    data = json.loads(out)
    assert rc == 0 and data["seed"] == 5 and data["results"][0]["lcs_first_kind"] == "Exists"
    rc2, out2, _ = run(capsys, "scan", "--json", "(0,0,0,12)")
    assert out2 == out
    monkeypatch.setenv("LCS_SEED", "abc")
    assert run(capsys, "scan", "(0,0,0,12)")[0] == 2


def test_scan_needs_target(capsys):
    assert run(capsys, "scan")[0] == 2


def test_polycheck(capsys, tmp_path):
    rc, out, _ = run(capsys, "polycheck", "group:G6")
    assert rc == 0 and out.rstrip().endswith("result: PASS")
    model = {"coords": ["x"], "mul": ["x+x'+x*x'^2"], "forms": {}}
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(model))
    assert run(capsys, "polycheck", str(p))[0] == 1
    assert run(capsys, "polycheck", "group:nothing")[0] == 2


def test_report(capsys, tmp_path):
    rc, out, _ = run(capsys, "report", "--scope", "dim4", "--format", "csv", "--no-figures")
    assert rc == 0 and out.startswith("key,label,dim")
    assert run(capsys, "report", "--checks", "bogus")[0] == 2
    assert run(capsys, "report", "--scope", "")[0] == 0
    target = tmp_path / "sub" / "r.md"
    rc, _, err = run(capsys, "report", "--scope", "dim4", "--out", str(target))
    assert rc == 0 and target.exists() and "figure:" in err
