import csv
import io
import json
from dataclasses import replace

import pytest

from lcsalg.catalog import DERIVED, PAPER, TABLE1, TABLE1_B1, get_entry, load_catalog, load_groups, select
from lcsalg.cohomology import betti_numbers
from lcsalg.notation import parse_structure_notation, to_structure_notation
from lcsalg.report import matches, normalize_checks, render_figures, run_entry, run_report

T1 = [e for e in load_catalog() if "table1" in e.tags]


def test_table1_has_eleven_entries():
    assert len(TABLE1) == 11 and len(T1) == 11
    assert len(select("dim6")) == 11
    assert {e.key for e in select("dim6")} == {e.key for e in T1}


@pytest.mark.parametrize("row, entry, b1", list(zip(TABLE1, T1, TABLE1_B1)), ids=[r[4] for r in TABLE1])
def test_table1_entries_match_rows(row, entry, b1):
    assert to_structure_notation(entry.algebra) == to_structure_notation(parse_structure_notation(row[0]))
    assert entry.expected["symplectic"].value == row[5]
    assert entry.expected["symplectic"].provenance == PAPER
    assert entry.expected["betti1"].provenance == DERIVED
    assert betti_numbers(entry.algebra, bases=False).betti[1] == b1


def test_keys_unique_and_lookup():
    keys = [e.key for e in load_catalog()]
    assert len(keys) == len(set(keys))
    assert len({g.key for g in load_groups()}) == len(load_groups())
    with pytest.raises(KeyError):
        get_entry("no-such-entry")


def test_select_scopes():
    assert select("") == []
    assert all(e.dim == 4 for e in select("dim=4")) and select("dim=4")
    assert [e.key for e in select("d41")] == ["d41"]
    assert len(select("all")) == len(load_catalog())


def test_report_dim6_all_pass():
    rep = run_report("dim6", "lcs,symplectic,betti")
    assert len(rep.rows) == 11 and rep.all_pass
    assert all(len(r.cells) == 3 for r in rep.rows)


def test_report_dim4_and_empty():
    assert run_report("dim4").all_pass
    empty = run_report("")
    assert empty.rows == [] and empty.group_rows == [] and empty.all_pass


def test_report_formats():
    rep = run_report("dim4", "lcs,betti1")
    data = json.loads(rep.render("json"))
    assert data["status"] == "PASS" and data["entries"]
    rows = list(csv.DictReader(io.StringIO(rep.render("csv"))))
    assert rows and {r["status"] for r in rows} == {"PASS"}
    assert set(rows[0]) == {"key", "label", "dim", "check", "expected", "computed", "provenance", "status"}
    md = rep.render("md")
    assert md.startswith("# Report") and "checks passed: PASS" in md


def test_report_group_rows():
    rep = run_report("group:G6", "groups")
    assert len(rep.group_rows) == 1 and rep.group_rows[0].ok


def test_failing_expectation_is_reported():
    e = get_entry("table1-01")
    broken = replace(e.expected["betti1"], value=e.expected["betti1"].value + 1)
    e2 = replace(e, expected={"betti1": broken})
    row = run_entry(e2, ("betti1",))
    assert not row.ok and row.cells[0].computed == e.expected["betti1"].value


def test_checks_validation():
    assert normalize_checks("b1,search") == ("betti1", "lcs_search")
    with pytest.raises(ValueError):
        normalize_checks("bogus")


def test_search_not_exists_matching():
    assert matches("lcs_search", "NotExists", "NoCertificate")
    assert not matches("lcs_search", "NotExists", "Exists")
    assert matches("betti1", 3, 3)


def test_figures(tmp_path):
    paths = render_figures("dim4", str(tmp_path))
    assert paths
    for p in paths:
        with open(p, "rb") as fh:
            assert fh.read(8) == b"\x89PNG\r\n\x1a\n"
    assert render_figures("", str(tmp_path / "none")) == []
