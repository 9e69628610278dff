"""Run catalog checks against expected verdicts and render the results."""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass, field

from .catalog import CatalogEntry, GroupEntry, select, select_groups
from .cohomology import betti_numbers, solve_exactness
from .nilpotent import characteristic_filtration, is_nilpotent, is_unimodular, lcs_filtration_obstruction
from .search import EXISTS, contact_exists, lcs_first_kind_search, symplectic_exists
from .structures import (StructureError, check_complex_structure, classify_kind, verify_contact,
                         verify_lcs_first_kind, verify_symplectic)

ALL_CHECKS = ("lcs", "symplectic", "betti1", "kind", "exact", "gphi_dim", "nilpotent", "unimodular",
              "filtration", "lcs_search", "contact", "complex")
ALIASES = {"betti": "betti1", "b1": "betti1", "search": "lcs_search"}


def _phi_omega(entry: CatalogEntry):
    c = entry.certificates
    if "phi" in c:
        return c["phi"], c["omega"]
    st = verify_lcs_first_kind(entry.algebra, c["omega"], c["eta"])
    return st.phi, st.omega


def _check_lcs(entry, seed):
    c = entry.certificates
    try:
        verify_lcs_first_kind(entry.algebra, c["omega"], c["eta"])
        return True
    except StructureError:
        return False


def _check_symplectic(entry, seed):
    if "sigma" in entry.certificates:
        verify_symplectic(entry.algebra, entry.certificates["sigma"])
    v = symplectic_exists(entry.algebra, seed=seed)
    return True if v.exists else (False if v.result == "ProvedImpossible" else v.result)


def _check_contact(entry, seed):
    if "theta" in entry.certificates:
        try:
            verify_contact(entry.algebra, entry.certificates["theta"])
        except StructureError:
            return False
    v = contact_exists(entry.algebra, seed=seed)
    return True if v.exists else (False if v.result == "ProvedImpossible" else v.result)


def _check_search(entry, seed):
    v = lcs_first_kind_search(entry.algebra, seed=seed)
    return v.result


def _check_kind(entry, seed):
    phi, omega = _phi_omega(entry)
    return classify_kind(entry.algebra, phi, omega).kind


def _check_exact(entry, seed):
    phi, omega = _phi_omega(entry)
    return solve_exactness(entry.algebra, phi, omega) is not None


def _check_gphi(entry, seed):
    phi, omega = _phi_omega(entry)
    return classify_kind(entry.algebra, phi, omega).dim


def _check_complex(entry, seed):
    return check_complex_structure(entry.algebra, entry.certificates["J"]).integrable


CHECKS = {
    "lcs": _check_lcs,
    "symplectic": _check_symplectic,
    "betti1": lambda e, s: betti_numbers(e.algebra, bases=False).betti[1],
    "kind": _check_kind,
    "exact": _check_exact,
    "gphi_dim": _check_gphi,
    "nilpotent": lambda e, s: is_nilpotent(e.algebra),
    "unimodular": lambda e, s: is_unimodular(e.algebra),
    "filtration": lambda e, s: lcs_filtration_obstruction(e.algebra).verdict.value,
    "lcs_search": _check_search,
    "contact": _check_contact,
    "complex": _check_complex,
}


def matches(check: str, expected, computed) -> bool:
    # a search that finds nothing is consistent with a proof of non-existence elsewhere
    if check == "lcs_search" and expected == "NotExists":
        return computed != EXISTS
    return expected == computed


@dataclass
class Cell:
    check: str
    expected: object
    computed: object
    provenance: str
    ok: bool

    def to_json(self):
        return {"check": self.check, "expected": self.expected, "computed": self.computed,
                "provenance": self.provenance, "status": "PASS" if self.ok else "FAIL"}


@dataclass
class Row:
    key: str
    label: str
    dim: int
    cells: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.cells)

    def to_json(self):
        return {"key": self.key, "label": self.label, "dim": self.dim,
                "status": "PASS" if self.ok else "FAIL", "checks": [c.to_json() for c in self.cells]}


@dataclass
class Report:
    scope: str
    checks: tuple
    rows: list = field(default_factory=list)
    group_rows: list = field(default_factory=list)
    seed: int = 0

    @property
    def all_pass(self) -> bool:
        return all(r.ok for r in self.rows) and all(r.ok for r in self.group_rows)

    def to_json(self):
        return {"scope": self.scope, "checks": list(self.checks), "seed": self.seed,
                "status": "PASS" if self.all_pass else "FAIL",
                "entries": [r.to_json() for r in self.rows],
                "groups": [r.to_json() for r in self.group_rows]}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "label", "dim", "check", "expected", "computed", "provenance", "status"])
        for r in self.rows + self.group_rows:
            for c in r.cells:
                w.writerow([r.key, r.label, r.dim, c.check, _show(c.expected), _show(c.computed),
                            c.provenance, "PASS" if c.ok else "FAIL"])
        return buf.getvalue()

    def to_markdown(self) -> str:
        lines = [f"# Report: scope `{self.scope}`", ""]
        if self.rows:
            cols = [c for c in self.checks if any(cell.check == c for r in self.rows for cell in r.cells)]
            lines.append("| entry | dim | " + " | ".join(cols) + " | status |")
            lines.append("|---|---|" + "---|" * len(cols) + "---|")
            for r in self.rows:
                by = {c.check: c for c in r.cells}
                cells = []
                for c in cols:
                    if c in by:
                        x = by[c]
                        cells.append(f"{_show(x.computed)} [{x.provenance}]" + ("" if x.ok else f" FAIL (expected {_show(x.expected)})"))
                    else:
                        cells.append("-")
                lines.append(f"| {r.label} | {r.dim} | " + " | ".join(cells) + f" | {'PASS' if r.ok else 'FAIL'} |")
            lines.append("")
        if self.group_rows:
            lines += ["## Group models", "", "| model | identities | failed | status |", "|---|---|---|---|"]
            for r in self.group_rows:
                bad = ", ".join(c.check for c in r.cells if not c.ok) or "-"
                lines.append(f"| {r.label} | {len(r.cells)} | {bad} | {'PASS' if r.ok else 'FAIL'} |")
            lines.append("")
        total = sum(len(r.cells) for r in self.rows + self.group_rows)
        failed = sum(1 for r in self.rows + self.group_rows for c in r.cells if not c.ok)
        lines.append(f"{total - failed}/{total} checks passed: {'PASS' if self.all_pass else 'FAIL'}")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.to_json(), indent=2) + "\n"
        if fmt == "csv":
            return self.to_csv()
        return self.to_markdown()


def _show(v) -> str:
    if v is True:
        return "yes"
    if v is False:
        return "no"
    return str(v)


def normalize_checks(checks: str | None) -> tuple:
    if not checks or checks == "all":
        return ALL_CHECKS + ("groups",)
    out = []
    for c in checks.split(","):
        c = ALIASES.get(c.strip(), c.strip())
        if not c:
            continue
        if c not in CHECKS and c != "groups":
            raise ValueError(f"unknown check {c!r}; choose from {', '.join(ALL_CHECKS + ('groups',))}")
        out.append(c)
    return tuple(out)


def run_entry(entry: CatalogEntry, checks, seed: int = 0) -> Row:
    row = Row(entry.key, entry.label, entry.dim)
    for name in checks:
        if name not in CHECKS or name not in entry.expected:
            continue
        exp = entry.expected[name]
        try:
            got = CHECKS[name](entry, seed)
        except StructureError as exc:
            got = f"error: {exc}"
        row.cells.append(Cell(name, exp.value, got, exp.provenance, matches(name, exp.value, got)))
    return row


def run_group(g: GroupEntry) -> Row:
    row = Row(g.key, g.label, g.model.law.dim if g.model else 0)
    for r in g.run_checks():
        row.cells.append(Cell(r.name, True, r.ok, g.provenance, r.ok))
    return row


def run_report(scope: str, checks: str | None = None, seed: int = 0) -> Report:
    names = normalize_checks(checks)
    rep = Report(scope, tuple(c for c in names if c != "groups"), seed=seed)
    for e in select(scope):
        row = run_entry(e, names, seed)
        if row.cells:
            rep.rows.append(row)
    if "groups" in names:
        rep.group_rows = [run_group(g) for g in select_groups(scope)]
    return rep


# ---------------------------------------------------------------------------
# figures


def render_figures(scope: str, outdir: str) -> list[str]:
    """Betti-number heatmap and filtration profiles of the selected entries, as PNG files."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    entries = [e for e in select(scope) if e.dim <= 10]
    os.makedirs(outdir, exist_ok=True)
    paths = []
    if not entries:
        return paths
    maxdim = max(e.dim for e in entries)
    grid = []
    for e in entries:
        b = list(betti_numbers(e.algebra, bases=False).betti)
        grid.append(b + [float("nan")] * (maxdim + 1 - len(b)))
    fig, ax = plt.subplots(figsize=(1 + 0.6 * (maxdim + 1), 1 + 0.35 * len(entries)))
    im = ax.imshow(grid, aspect="auto", cmap="viridis")
    for i, row in enumerate(grid):
        for j, v in enumerate(row):
            if v == v:
                ax.text(j, i, str(int(v)), ha="center", va="center", color="white", fontsize=7)
    ax.set_yticks(range(len(entries)), [e.label for e in entries], fontsize=7)
    ax.set_xticks(range(maxdim + 1))
    ax.set_xlabel("degree k")
    ax.set_title("Betti numbers b_k")
    fig.colorbar(im, ax=ax)
    fig.tight_layout()
    p = os.path.join(outdir, "betti_heatmap.png")
    fig.savefig(p, dpi=120)
    plt.close(fig)
    paths.append(p)

    nil = [e for e in entries if is_nilpotent(e.algebra) and not e.algebra.is_abelian()]
    if nil:
        fig, ax = plt.subplots(figsize=(7, 1 + 0.35 * len(nil)))
        for i, e in enumerate(nil):
            prof = characteristic_filtration(e.algebra).profile
            left = 0
            for k, f in enumerate(prof):
                ax.barh(i, f, left=left, color=f"C{k % 10}", edgecolor="black")
                ax.text(left + f / 2, i, str(f), ha="center", va="center", fontsize=7)
                left += f
        ax.set_yticks(range(len(nil)), [e.label for e in nil], fontsize=7)
        ax.set_xlabel("dim W_k / W_{k-1}, stacked by k")
        ax.set_title("Characteristic filtration profiles")
        fig.tight_layout()
        p = os.path.join(outdir, "filtration_profiles.png")
        fig.savefig(p, dpi=120)
        plt.close(fig)
        paths.append(p)
    return paths


__all__ = ["ALL_CHECKS", "CHECKS", "Cell", "Row", "Report", "normalize_checks", "run_entry", "run_group",
           "run_report", "render_figures", "matches"]
