"""The ten acceptance criteria, one test each.

Every test prints ``criterion N: PASS`` or ``criterion N: FAIL (...)``; run
``pytest tests/test_acceptance.py -v`` to see the lines, or execute this file
directly for the bare list.
"""

import sys

import pytest

from lcsalg.catalog import (TABLE1, g2n_complex_structure, get_entry, get_group, h_family, heis_plus_r,
                            load_catalog, load_groups)
from lcsalg.cohomology import betti_numbers, dixmier_check, twisted_differential
from lcsalg.extensions import extract_lcs_extension_data, lcs_extension
from lcsalg.liealg import KForm, basis_vector, ce_differential, form_basis, lie_derivative, lie_derivative_direct
from lcsalg.nilpotent import center, is_nilpotent, is_unimodular, lcs_filtration_obstruction
from lcsalg.notation import parse_form_expr, parse_structure_notation
from lcsalg.search import EXISTS, PROVED_IMPOSSIBLE, lcs_first_kind_search, symplectic_exists
from lcsalg.structures import (StructureError, check_complex_structure, classify_kind, join_from_contact,
                               lee_vector_is_central, split_to_contact, verify_lcs_first_kind)

CATALOG = load_catalog()
FIRST_KIND = [e for e in CATALOG if "omega" in e.certificates and "eta" in e.certificates]


def _structure(e):
    return verify_lcs_first_kind(e.algebra, e.certificates["omega"], e.certificates["eta"])


def criterion_1():
    bad = []
    for row in TABLE1:
        alg = parse_structure_notation(row[0])
        try:
            verify_lcs_first_kind(alg, parse_form_expr(row[1], 6), parse_form_expr(row[2], 6))
        except StructureError as exc:
            bad.append(f"{row[4]}: {exc}")
    return bad


def criterion_2():
    dim4 = [e for e in CATALOG if e.dim == 4 and is_nilpotent(e.algebra)]
    # g4-group is g2 and heis3+R is g1, in other bases
    distinct = {e.key: e for e in dim4 if e.key in ("g1", "g2", "R4")}
    bad = []
    if len(distinct) != 3:
        bad.append(f"expected g1, g2, R4 in the catalog, got {sorted(distinct)}")
    for key, want in (("g1", EXISTS), ("g2", EXISTS), ("R4", PROVED_IMPOSSIBLE)):
        v = lcs_first_kind_search(distinct[key].algebra)
        if v.result != want:
            bad.append(f"{key}: {v.summary()}")
        if v.exists:
            verify_lcs_first_kind(distinct[key].algebra, v.certificate.omega, v.certificate.eta)
    return bad


def criterion_3():
    bad = []
    for row in TABLE1:
        got = symplectic_exists(parse_structure_notation(row[0])).exists
        if got != row[5]:
            bad.append(f"{row[4]}: got {got}")
    for n, want in ((3, EXISTS), (4, PROVED_IMPOSSIBLE), (5, PROVED_IMPOSSIBLE)):
        v = symplectic_exists(h_family(n, True))
        if v.result != want:
            bad.append(f"g_{2 * n}: {v.summary()}")
    return bad


def criterion_4():
    def b1(alg):
        return betti_numbers(alg, bases=False).betti[1]
    cases = [(f"heis_{2 * n - 1}+R", heis_plus_r(n), 2 * n - 1) for n in (2, 3, 4)]
    cases.append(("L622", get_entry("L622-coframe").algebra, 2))
    cases += [(f"g_{2 * n}", h_family(n, True), 2 * n - 2) for n in (3, 4)]
    cases.append(("h5 (contact part)", get_entry("h5-second").algebra, 3))
    return [f"{name}: b1 = {b1(alg)}, want {want}" for name, alg, want in cases if b1(alg) != want]


def criterion_5():
    bad = []
    for e in CATALOG:
        if not is_nilpotent(e.algebra):
            continue
        for i in range(e.dim):
            w = KForm.basis(e.dim, i)
            if ce_differential(e.algebra, w).is_zero() and not dixmier_check(e.algebra, w):
                bad.append(f"{e.key}, e{i + 1}")
    return bad


def criterion_6():
    alg = parse_structure_notation("(12+34,0,-23,0)")
    phi, omega = parse_form_expr("2*e12+e34", 4), KForm.basis(4, 1)
    rep = classify_kind(alg, phi, omega)
    bad = []
    if not rep.exact or rep.eta is None:
        return ["not exact"]
    if twisted_differential(alg, rep.eta, omega) != phi:
        bad.append("solver eta does not satisfy d_omega eta = phi")
    if rep.eta != KForm.basis(4, 0):
        bad.append(f"eta = {rep.eta}, want e1")
    if (rep.kind, rep.dim) != ("SecondKind", 1):
        bad.append(f"{rep.kind}, dim {rep.dim}")
    return bad


def criterion_7():
    bad = []
    for e in FIRST_KIND:
        s = _structure(e)
        sp = split_to_contact(s)
        t = join_from_contact(sp.h, sp.theta, sp.D)
        if (s.algebra.change_basis(sp.basis).brackets != t.algebra.brackets
                or s.omega.pullback(sp.basis) != t.omega or s.eta.pullback(sp.basis) != t.eta):
            bad.append(f"{e.key}: join(split) differs")
        sp2 = split_to_contact(t)
        if (sp2.h.brackets, sp2.theta, sp2.D) != (sp.h.brackets, sp.theta, sp.D):
            bad.append(f"{e.key}: split(join) differs")
        if lee_vector_is_central(s):
            data = extract_lcs_extension_data(s)
            g, st = lcs_extension(data.s, data.sigma, data.Ds)
            if g.brackets != s.algebra.change_basis(data.basis).brackets or st.omega != s.omega.pullback(data.basis):
                bad.append(f"{e.key}: lcs_extension(extract) differs")
    return bad


def criterion_8():
    bad = []
    for g in load_groups():
        for r in g.run_checks():
            if not r.ok:
                bad.append(f"{g.key} {r.name}: {r.detail}")
    # both families of strict contactomorphisms and both lattices are present
    for key, name in (("group:H3", "phi_t"), ("group:H5-second", "phi_s")):
        names = {r.name for r in get_group(key).run_checks()}
        for need in (f"preserves:{name}:theta", f"lattice:{name}"):
            if need not in names:
                bad.append(f"{key}: missing {need}")
    chi = {r.name for r in get_group("group:G6").run_checks() if r.name.startswith("chi")}
    if len(chi) < 3:
        bad.append(f"group:G6: chi identities {sorted(chi)}")
    return bad


def criterion_9():
    bad = []
    for e in CATALOG:
        g = e.algebra
        try:
            g.check_jacobi()
        except Exception as exc:
            bad.append(f"{e.key}: Jacobi {exc}")
        for k in range(g.dim):
            for idx in form_basis(g.dim, k):
                f = KForm.basis(g.dim, *idx)
                if not ce_differential(g, ce_differential(g, f)).is_zero():
                    bad.append(f"{e.key}: d^2 e{idx}")
        if g.dim <= 7:
            for k in (1, 2):
                for idx in form_basis(g.dim, k):
                    f = KForm.basis(g.dim, *idx)
                    for i in range(g.dim):
                        x = basis_vector(g.dim, i)
                        if lie_derivative(g, x, f) != lie_derivative_direct(g, x, f):
                            bad.append(f"{e.key}: Cartan at e{i + 1}, {idx}")
    for e in FIRST_KIND:
        s = _structure(e)
        if is_nilpotent(e.algebra):
            if not lcs_filtration_obstruction(e.algebra).passes:
                bad.append(f"{e.key}: filtration obstruction")
            if not lee_vector_is_central(s):
                bad.append(f"{e.key}: Lee vector not central")
            if len(center(split_to_contact(s).h)) != 1:
                bad.append(f"{e.key}: center of ker omega")
    lcs = [(e, _structure(e).phi, e.certificates["omega"]) for e in FIRST_KIND]
    d41 = get_entry("d41")
    lcs.append((d41, d41.certificates["phi"], d41.certificates["omega"]))
    for e, phi, omega in lcs:
        if is_unimodular(e.algebra):
            rep = classify_kind(e.algebra, phi, omega)
            if rep.exact and rep.kind != "FirstKind":
                bad.append(f"{e.key}: unimodular and exact but {rep.kind}")
    return bad


def criterion_10():
    bad = []
    for n in (3, 4):
        v = check_complex_structure(h_family(n, True), g2n_complex_structure(n))
        if not v.integrable:
            bad.append(f"g_{2 * n}: N = {v.violation}")
    g4 = get_entry("g4-group")
    if check_complex_structure(g4.algebra, g4.certificates["J"]).integrable:
        bad.append("g4-group J is integrable")
    return bad


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def run(fn):
    try:
        bad = fn()
    except Exception as exc:  # a crash is a failure, reported on the same line
        bad = [f"{type(exc).__name__}: {exc}"]
    n = fn.__name__.split("_")[1]
    line = f"criterion {n}: PASS" if not bad else f"criterion {n}: FAIL ({'; '.join(bad)[:400]})"
    return bad, line


@pytest.mark.parametrize("fn", CRITERIA, ids=lambda f: f.__name__)
def test_criterion(fn, capsys):
    bad, line = run(fn)
    with capsys.disabled():
        print(f"\n{line}")
    assert not bad, line


if __name__ == "__main__":
    ok = True
    for fn in CRITERIA:
        bad, line = run(fn)
        ok = ok and not bad
        print(line)
    sys.exit(0 if ok else 1)
