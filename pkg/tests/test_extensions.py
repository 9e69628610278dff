from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from lcsalg.catalog import get_entry, load_catalog
from lcsalg.exactmath import RatMatrix, kernel_basis
from lcsalg.extensions import (CompatibilityFailed, NotDerivation, central_extend, derivation_algebra_basis,
                               double_extension, double_extension_composed, dstar_sigma, extract_lcs_extension_data,
                               extract_symplectic_derivation, is_contact_derivation, is_derivation, is_inner,
                               is_nilpotent_derivation, is_symplectic_derivation, lcs_extension,
                               lcs_extension_composed, lift_derivation, semidirect_extend)
from lcsalg.liealg import KForm, abelian, signature
from lcsalg.nilpotent import is_nilpotent
from lcsalg import polyforms as pf
from lcsalg.notation import parse_form_expr, parse_structure_notation
from lcsalg.structures import lee_vector_is_central, split_to_contact, verify_contact, verify_lcs_first_kind

H3 = parse_structure_notation("(0,0,12)")
THETA3 = KForm.basis(3, 2)
SHEAR = RatMatrix([[0, 1], [0, 0]])
SIGMA2 = KForm.basis(2, 0, 1)
# D(B) = A on heis_3 in the basis (A, B, V)
D31 = RatMatrix.from_columns([[0, 0, 0], [1, 0, 0], [0, 0, 0]])


def test_predicates_zero():
    Z = RatMatrix.zeros(3, 3)
    assert is_derivation(H3, Z) and is_contact_derivation(H3, THETA3, Z)
    assert is_nilpotent_derivation(H3, Z)
    assert is_symplectic_derivation(abelian(2), SIGMA2, RatMatrix.zeros(2, 2))
    ok, x = is_inner(H3, Z)
    assert ok


def test_predicates_heisenberg_shear():
    assert is_contact_derivation(H3, THETA3, D31)
    assert is_nilpotent_derivation(H3, D31)
    assert is_inner(H3, D31) == (False, None)
    # D e1 = e3 lands in the center, so it is a derivation; diag(1, 0, 0) is not
    assert is_derivation(H3, RatMatrix.from_columns([[0, 0, 1], [0, 0, 0], [0, 0, 0]]))
    assert not is_derivation(H3, RatMatrix([[1, 0, 0], [0, 0, 0], [0, 0, 0]]))


def test_traceless_diagonal_is_symplectic():
    assert is_symplectic_derivation(abelian(2), SIGMA2, RatMatrix([[1, 0], [0, -1]]))
    assert not is_symplectic_derivation(abelian(2), SIGMA2, RatMatrix.identity(2))


def test_semidirect_examples():
    assert semidirect_extend(abelian(3), RatMatrix.zeros(3, 3)).is_abelian()
    g = semidirect_extend(H3, D31)
    assert signature(g) == signature(parse_structure_notation("(0,0,12,13)"))
    with pytest.raises(NotDerivation):
        semidirect_extend(H3, RatMatrix([[1, 0, 0], [0, 0, 0], [0, 0, 0]]))


def test_semidirect_reproduces_l622():
    # split L_{6,22} along (omega, eta); the contact part is the dim-5 h and the semidirect product gives it back
    e = get_entry("L622-coframe")
    s = verify_lcs_first_kind(e.algebra, e.certificates["omega"], e.certificates["eta"])
    sp = split_to_contact(s)
    assert signature(sp.h) == signature(get_entry("h5-second").algebra)
    assert signature(semidirect_extend(sp.h, sp.D)) == signature(parse_structure_notation("(0,0,12,13,14+23,25-34)"))


def test_central_examples():
    h, c = central_extend(abelian(2), SIGMA2)
    assert signature(h) == signature(H3) and c is not None
    h5, c5 = central_extend(abelian(4), parse_form_expr("e12+e34", 4))
    assert signature(h5) == signature(parse_structure_notation("(0,0,0,0,12+34)"))
    verify_contact(h5, c5.theta)
    z, cz = central_extend(abelian(3), KForm.zero(3, 2))
    assert z.is_abelian() and z.dim == 4 and cz is None


@pytest.mark.parametrize("ds", [RatMatrix.zeros(2, 2), SHEAR, RatMatrix([[1, 0], [0, -1]])])
def test_lift_derivation(ds):
    h, c = central_extend(abelian(2), SIGMA2)
    D = lift_derivation(abelian(2), SIGMA2, ds)
    assert is_contact_derivation(h, c.theta, D)
    assert D.is_zero() == ds.is_zero()
    assert extract_symplectic_derivation(h, c.theta, D) == ds


def test_lcs_extension_examples():
    g, _ = lcs_extension(abelian(2), SIGMA2, RatMatrix.zeros(2, 2))
    assert signature(g) == signature(parse_structure_notation("(0,0,0,12)"))
    g, st_ = lcs_extension(abelian(2), SIGMA2, SHEAR)
    assert signature(g) == signature(parse_structure_notation("(0,0,12,13)"))
    assert lee_vector_is_central(st_)


def _symplectic_derivations(alg, sigma):
    der = derivation_algebra_basis(alg)
    if not der:
        return []
    cols = [dstar_sigma(sigma, D).coeff_vector() for D in der]
    ker = kernel_basis(RatMatrix.from_columns(cols))
    out = []
    for v in ker:
        M = RatMatrix.zeros(alg.dim, alg.dim)
        for c, D in zip(v, der):
            if c:
                M = M + D.scale(c)
        out.append(M)
    return out


BASES = [
    (abelian(2), SIGMA2),
    (abelian(4), parse_form_expr("e12+e34", 4)),
    (parse_structure_notation("(0,0,0,12)"), parse_form_expr("e14+e23", 4)),
    (parse_structure_notation("(0,0,12,13)"), parse_form_expr("e14+e23", 4)),
]
SYMP_DERS = [_symplectic_derivations(a, s) for a, s in BASES]


@given(st.integers(0, len(BASES) - 1).flatmap(
    lambda i: st.tuples(st.just(i), st.lists(st.integers(-2, 2), min_size=len(SYMP_DERS[i]),
                                             max_size=len(SYMP_DERS[i])))))
def test_lcs_extension_routes_agree(data):
    i, coeffs = data
    alg, sigma = BASES[i]
    D = RatMatrix.zeros(alg.dim, alg.dim)
    for c, B in zip(coeffs, SYMP_DERS[i]):
        D = D + B.scale(c)
    assert is_symplectic_derivation(alg, sigma, D)
    g, st_ = lcs_extension(alg, sigma, D)
    assert g.brackets == lcs_extension_composed(alg, sigma, D).brackets
    back = extract_lcs_extension_data(st_)
    assert back.s.brackets == alg.brackets and back.sigma == sigma and back.Ds == D
    if is_nilpotent(alg) and is_nilpotent_derivation(alg, D):
        assert is_nilpotent(g)


@given(st.integers(-3, 3), st.integers(-3, 3).filter(bool))
def test_nilpotent_ds_on_plane_gives_nilpotent(a, b):
    # [[a, b], [c, -a]] with a^2 + bc = 0 is nilpotent and lies in sp(2)
    c = Fraction(-a * a, b)
    D = RatMatrix([[a, b], [c, -a]])
    g, _ = lcs_extension(abelian(2), SIGMA2, D)
    assert is_nilpotent(g)


@pytest.mark.parametrize("entry", [e for e in load_catalog() if "omega" in e.certificates and "eta" in e.certificates],
                         ids=lambda e: e.key)
def test_extract_then_extend_reproduces(entry):
    s = verify_lcs_first_kind(entry.algebra, entry.certificates["omega"], entry.certificates["eta"])
    if not lee_vector_is_central(s):
        pytest.skip("Lee vector not central")
    data = extract_lcs_extension_data(s)
    g, t = lcs_extension(data.s, data.sigma, data.Ds)
    assert g.brackets == s.algebra.change_basis(data.basis).brackets
    assert t.omega == s.omega.pullback(data.basis)


def test_double_extension_examples():
    z = RatMatrix.zeros(2, 2)
    g, sigma = double_extension(abelian(2), SIGMA2, z, (0, 0))
    assert g.is_abelian() and g.dim == 4
    assert sigma == KForm.basis(4, 0, 3) + KForm.basis(4, 1, 2)
    # S1 = R^2 (x, z), Z1 = (0, 1): compare with the Lie algebra of the 4-dim group S
    g, sigma = double_extension(abelian(2), SIGMA2, z, (0, 1))
    S4 = pf.GroupLaw(("x", "y", "z", "t"), ["x+x'", "y+y'", "z+z'+x*x'", "t+t'+y*x'"])
    assert signature(g) == signature(pf.lie_algebra_of_group(S4))
    assert g.brackets == double_extension_composed(abelian(2), SIGMA2, z, (0, 1)).brackets


def test_double_extension_incompatible():
    # i_Z1 sigma1 = e4 is not closed on g1 while D = 0
    g1 = parse_structure_notation("(0,0,0,12)")
    with pytest.raises(CompatibilityFailed):
        double_extension(g1, parse_form_expr("e14+e23", 4), RatMatrix.zeros(4, 4), (1, 0, 0, 0))


@given(st.lists(st.integers(-2, 2), min_size=len(SYMP_DERS[3]), max_size=len(SYMP_DERS[3])))
def test_double_extension_nilpotent(coeffs):
    alg, sigma = BASES[3]
    D = RatMatrix.zeros(4, 4)
    for c, B in zip(coeffs, SYMP_DERS[3]):
        D = D + B.scale(c)
    assume(is_nilpotent_derivation(alg, D))
    # Z1 = 0 needs (D*)^2 sigma = 0, which holds for symplectic D
    g, sig = double_extension(alg, sigma, D, (0, 0, 0, 0))
    assert is_nilpotent(g)


def test_dstar_sigma_examples():
    assert dstar_sigma(SIGMA2, RatMatrix([[1, 0], [0, -1]])).is_zero()
    assert dstar_sigma(SIGMA2, RatMatrix.identity(2)) == SIGMA2.scale(2)
    assert dstar_sigma(SIGMA2, SHEAR).is_zero()
