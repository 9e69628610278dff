import json
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from lcsalg import polyforms as pf
from lcsalg.catalog import PHI_S5, get_entry, get_group, h2n1_law, load_groups
from lcsalg.exactmath import PolyParseError, SparsePoly, parse_poly
from lcsalg.liealg import signature
from lcsalg.notation import parse_structure_notation

XYZ = ("x", "y", "z")
HEIS = pf.GroupLaw(XYZ, ["x+x'", "y+y'", "z+z'+y*x'"], label="Heisenberg")
THETA = pf.PolyForm.parse(XYZ, "dz-y*dx")


def one(coords, text):
    return pf.PolyForm.parse(coords, text)


def test_d_examples():
    assert THETA.d() == one(XYZ, "dx").wedge(one(XYZ, "dy"))
    assert one(XYZ, "3*dx-dz").d().is_zero()
    c = ("x", "y", "z", "t")
    alpha, beta, omega = one(c, "dx-t*dy"), one(c, "dy"), one(c, "dt")
    assert alpha.d() == beta.wedge(omega)


def test_pullback_examples():
    ident = pf.PolyMap.of(XYZ, list(XYZ))
    assert ident.pullback(THETA) == THETA
    phi_t = pf.PolyMap.of(XYZ, ["x+t*y", "y", "z+t*y^2/2"])
    assert phi_t.pullback(THETA) == THETA
    c5 = ("x", "y", "z", "t", "w")
    theta5 = one(c5, "dw-y*dz+(x*y-t)*dx")
    assert pf.PolyMap.of(c5, PHI_S5).pullback(theta5) == theta5


def test_left_invariance_examples():
    assert pf.verify_left_invariance(HEIS, THETA).ok
    assert not pf.verify_left_invariance(HEIS, one(XYZ, "dz")).ok
    add = pf.GroupLaw(XYZ, ["x+x'", "y+y'", "z+z'"])
    assert pf.verify_left_invariance(add, one(XYZ, "2*dx-dy+5*dz")).ok


def test_group_law_examples():
    assert pf.verify_group_law(get_group("group:G4").model.law).ok
    for n in (3, 4):
        assert pf.verify_group_law(h2n1_law(n)).ok
    assert pf.verify_group_law(pf.GroupLaw(XYZ, ["x+x'", "y+y'", "z+z'"])).ok
    bad = pf.GroupLaw(("x",), ["x+x'+x*x'^2"])
    assert not pf.verify_group_law(bad).ok
    with_inv = pf.GroupLaw(XYZ, HEIS.mul, inverse=["-x", "-y", "-z+x*y"])
    assert pf.verify_group_law(with_inv).ok
    wrong_inv = pf.GroupLaw(XYZ, HEIS.mul, inverse=["-x", "-y", "-z"])
    assert not pf.verify_group_law(wrong_inv).ok


def test_cocycle_examples():
    R2 = pf.GroupLaw(("x", "y"), ["x+x'", "y+y'"])
    assert pf.verify_cocycle(R2, "y*x'").ok
    assert pf.verify_cocycle(R2, "0").ok
    S4 = pf.GroupLaw(("x", "y", "z", "t"), ["x+x'", "y+y'", "z+z'+x*x'", "t+t'+y*x'"])
    assert pf.verify_cocycle(S4, "y*z'+t*x'").ok
    assert not pf.verify_cocycle(R2, "x^2*y'").ok


def test_chi_examples():
    R2 = pf.GroupLaw(("x", "y"), ["x+x'", "y+y'"])
    act = pf.PolyMap.of(R2.coords, ["x+t*y", "y"])
    assert all(r.ok for r in pf.verify_chi_identities(R2, "y*x'", act, "t*y^2/2", "t"))
    trivial = pf.PolyMap.of(R2.coords, ["x", "y"])
    assert all(r.ok for r in pf.verify_chi_identities(R2, "0", trivial, "0", "t"))
    S4 = pf.GroupLaw(("x", "y", "z", "t"), ["x+x'", "y+y'", "z+z'+x*x'", "t+t'+y*x'"])
    act4 = pf.PolyMap.of(S4.coords, PHI_S5[:4])
    chi = "s*(x*z+y^2/2-x^3/3)+s^2*x*y+s^3*x^2/3"
    assert all(r.ok for r in pf.verify_chi_identities(S4, "y*z'+t*x'", act4, chi, "s"))
    # a wrong lift breaks at least one identity
    assert not all(r.ok for r in pf.verify_chi_identities(R2, "y*x'", act, "t*y^2", "t"))


def test_lattice_examples():
    phi1 = pf.PolyMap.of(XYZ, ["x+t*y", "y", "z+t*y^2/2"])
    lat = pf.LatticeSpec((1, 2, 2))
    assert pf.verify_lattice_invariance(phi1, lat, ["t"]).ok
    # phi_1(m, 2n, 2p) = (m + 2n, 2n, 2p + 2n^2)
    assert phi1.subs({"t": 1}).apply([3, 4, 6]) == (7, 4, 14)
    assert not pf.verify_lattice_invariance(phi1, pf.LatticeSpec((1, 1, 1)), ["t"]).ok
    ident = pf.PolyMap.of(XYZ, list(XYZ))
    assert pf.verify_lattice_invariance(ident, pf.LatticeSpec((3, 5, 7))).ok
    c5 = ("x", "y", "z", "t", "w")
    phis = pf.PolyMap.of(c5, PHI_S5)
    assert pf.verify_lattice_invariance(phis, pf.LatticeSpec((6, 2, 1, 1, 1)), ["s"]).ok
    assert not pf.verify_lattice_invariance(phis, pf.LatticeSpec((1, 1, 1, 1, 1)), ["s"]).ok


def test_integer_valued_is_exact():
    # n(n+1)/2 is integer valued although its coefficients are not integers
    assert pf._integer_valued(parse_poly("k^2/2+k/2"), ["k"])
    assert not pf._integer_valued(parse_poly("k^2/2"), ["k"])
    assert pf._integer_valued(parse_poly("k^3/6-k/6"), ["k"])
    with pytest.raises(ValueError):
        pf._integer_valued(parse_poly("k*s/2"), ["k"])


@pytest.mark.parametrize("group", load_groups(), ids=lambda g: g.key)
def test_group_models(group):
    bad = [r for r in group.run_checks() if not r.ok]
    assert not bad, bad


def test_coframe_algebras():
    alg = pf.coframe_algebra(get_group("group:G6").model.law,
                             [get_group("group:G6").model.forms[k] for k in get_group("group:G6").model.coframe])
    assert alg.brackets == parse_structure_notation("(0,0,-12,-13,-14+23,25-34)").brackets
    heis = pf.lie_algebra_of_group(HEIS)
    assert signature(heis) == signature(parse_structure_notation("(0,0,12)"))


def test_semidirect_assembly_gives_g4_law():
    phi_t = pf.PolyMap.of(XYZ, ["x+t*y", "y", "z+t*y^2/2"])
    built = pf.semidirect_group_law(HEIS, phi_t, "t")
    assert pf.same_law(built, get_group("group:G4").model.law)


def test_cocycle_two_form_sign():
    R2 = pf.GroupLaw(("x", "y"), ["x+x'", "y+y'"])
    sig = pf.cocycle_two_form(R2, "y*x'")
    assert sig[0, 1] == -1 and sig[1, 0] == 1


def test_model_json_roundtrip(tmp_path):
    m = get_group("group:H5-second").model
    data = json.loads(json.dumps(m.to_json()))
    back = pf.GroupModel.from_json(data)
    assert [r.ok for r in back.run_checks()] == [r.ok for r in m.run_checks()]
    law = pf.GroupLaw.from_json(HEIS.to_json())
    assert pf.same_law(law, HEIS)


# properties

COORDS = ("x", "y", "z")


def monomials(top):
    return st.tuples(st.integers(-3, 3), st.integers(0, top), st.integers(0, top), st.integers(0, top))


@st.composite
def polys(draw, top=2):
    p = SparsePoly.zero(COORDS)
    for c, a, b, e in draw(st.lists(monomials(top), max_size=4)):
        p = p + c * SparsePoly.var("x", COORDS) ** a * SparsePoly.var("y", COORDS) ** b * \
            SparsePoly.var("z", COORDS) ** e
    return p


# map components stay of low degree so substitution does not explode
MAPS = st.lists(polys(1), min_size=3, max_size=3)


@st.composite
def polyforms(draw, degree):
    return pf.PolyForm(COORDS, degree, {I: draw(polys()) for I in combinations(range(3), degree)})


@given(st.integers(0, 2).flatmap(polyforms))
def test_d_squared_zero(f):
    assert f.d().d().is_zero()


@given(st.integers(0, 2).flatmap(polyforms), MAPS)
def test_pullback_commutes_with_d(f, comps):
    m = pf.PolyMap.of(COORDS, comps)
    assert m.pullback(f.d()) == m.pullback(f).d()


@given(polyforms(1), polyforms(1), MAPS)
def test_pullback_respects_wedge(a, b, comps):
    m = pf.PolyMap.of(COORDS, comps)
    assert m.pullback(a.wedge(b)) == m.pullback(a).wedge(m.pullback(b))


@given(polyforms(1), MAPS, MAPS)
def test_pullback_functorial(f, c1, c2):
    m1, m2 = pf.PolyMap.of(COORDS, c1), pf.PolyMap.of(COORDS, c2)
    # (m1 o m2)^* = m2^* m1^*
    assert m1.compose(m2).pullback(f) == m2.pullback(m1.pullback(f))


@given(st.text(max_size=25))
def test_parse_poly_fuzz(text):
    try:
        parse_poly(text)
    except (PolyParseError, ZeroDivisionError):
        pass


def test_parse_one_form_errors():
    with pytest.raises(ValueError):
        pf.parse_one_form(XYZ, "dx*dy")
    with pytest.raises(ValueError):
        pf.parse_one_form(XYZ, "x+dy")


def test_catalog_l622_matches_coframe():
    assert get_entry("L622-coframe").algebra.brackets == pf.coframe_algebra(
        get_group("group:G6").model.law,
        [get_group("group:G6").model.forms[k] for k in get_group("group:G6").model.coframe]).brackets
