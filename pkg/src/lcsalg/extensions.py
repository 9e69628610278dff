"""Derivations and the extension constructions.

Basis order of every output is (center slot, base slots..., semidirect
slot); a construction without one of the slots simply omits it.  Matrices
act on column vectors: column j of D is D(e_j).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactmath import RatMatrix, as_matrix, frac, inverse, is_nilpotent_matrix, kernel_basis, solve
from .liealg import KForm, LieAlgebra, LieError, basis_vector, ce_differential
from .structures import (ContactStructure, LcsStructure, StructureRejected, induced_algebra,
                         kernel_of_covector, verify_contact, verify_lcs_first_kind, verify_symplectic)


class NotDerivation(LieError):
    pass


class NotCocycle(LieError):
    pass


class CompatibilityFailed(LieError):
    def __init__(self, residual: KForm):
        self.residual = residual
        super().__init__(f"d(i_Z1 sigma1) + (D*)^2 sigma1 = {residual} is not zero")


def _mat(D, n: int) -> RatMatrix:
    D = as_matrix(D)
    if D.shape != (n, n):
        raise LieError(f"expected a {n}x{n} matrix, got {D.shape[0]}x{D.shape[1]}")
    return D


# ---------------------------------------------------------------------------
# predicates


def derivation_defect(alg: LieAlgebra, D) -> tuple[int, int, tuple] | None:
    """First basis pair where D[x,y] != [Dx,y] + [x,Dy], or None."""
    n = alg.dim
    D = _mat(D, n)
    cols = D.columns()
    for i in range(n):
        for j in range(i + 1, n):
            lhs = D @ alg.bracket_basis(i, j)
            rhs = tuple(a + b for a, b in zip(alg.bracket(cols[i], basis_vector(n, j)),
                                              alg.bracket(basis_vector(n, i), cols[j])))
            if lhs != rhs:
                return (i, j, tuple(a - b for a, b in zip(lhs, rhs)))
    return None


def is_derivation(alg: LieAlgebra, D) -> bool:
    return derivation_defect(alg, D) is None


def derivation_algebra_basis(alg: LieAlgebra) -> list[RatMatrix]:
    """Basis of Der(g) by solving the derivation equations for all n^2 entries."""
    n = alg.dim
    rows = []
    # unknown D[a][b] at position a*n + b; equation for coefficient k of pair (i, j)
    for i in range(n):
        for j in range(i + 1, n):
            cij = alg.bracket_basis(i, j)
            for k in range(n):
                row = [Fraction(0)] * (n * n)
                for m in range(n):
                    if cij[m]:
                        row[k * n + m] += cij[m]
                for m in range(n):
                    # [D e_i, e_j]_k = sum_m D[m][i] c^k_mj
                    c = alg.bracket_basis(m, j)[k]
                    if c:
                        row[m * n + i] -= c
                    c = alg.bracket_basis(i, m)[k]
                    if c:
                        row[m * n + j] -= c
                rows.append(row)
    if not rows:
        ker = [basis_vector(n * n, t) for t in range(n * n)]
    else:
        ker = kernel_basis(RatMatrix(rows, n * n))
    return [RatMatrix([v[a * n:(a + 1) * n] for a in range(n)], n) for v in ker]


def is_inner(alg: LieAlgebra, D) -> tuple[bool, tuple | None]:
    """(True, X) with ad_X = D, or (False, None)."""
    n = alg.dim
    D = _mat(D, n)
    rows, rhs = [], []
    for j in range(n):
        for k in range(n):
            rows.append([alg.bracket_basis(i, j)[k] for i in range(n)])
            rhs.append(D[k, j])
    x = solve(RatMatrix(rows, n), rhs) if rows else None
    if x is None:
        return False, None
    return True, x


def is_contact_derivation(alg: LieAlgebra, theta: KForm, D) -> bool:
    """D is a derivation with D* theta = theta o D = 0."""
    D = _mat(D, alg.dim)
    if not is_derivation(alg, D):
        return False
    t = theta.vector()
    return all(not sum((t[k] * D[k, j] for k in range(alg.dim)), Fraction(0)) for j in range(alg.dim))


def is_symplectic_derivation(alg: LieAlgebra, sigma: KForm, D) -> bool:
    """D is a derivation with sigma(DX, Y) + sigma(X, DY) = 0."""
    D = _mat(D, alg.dim)
    if not is_derivation(alg, D):
        return False
    return dstar_sigma(sigma, D).is_zero()


def is_nilpotent_derivation(alg: LieAlgebra, D) -> bool:
    D = _mat(D, alg.dim)
    return is_derivation(alg, D) and is_nilpotent_matrix(D)[0]


def dstar_sigma(sigma: KForm, D) -> KForm:
    """(D* sigma)(X, Y) = sigma(DX, Y) + sigma(X, DY)."""
    n = sigma.dim
    D = _mat(D, n)
    M = sigma.to_matrix()
    # matrix of sigma(D., .) is D^T M
    A = D.T @ M
    return KForm.from_matrix(A + A.T.scale(-1)) if n else KForm.zero(0, 2)


def dstar_form(f: KForm, D) -> KForm:
    """D* acting as a derivation on forms of any degree: sum_i f(.., D x_i, ..)."""
    n = f.dim
    D = _mat(D, n)
    out = KForm.zero(n, f.degree)
    for idx, c in f.coeffs.items():
        for s, i in enumerate(idx):
            # e^i o D = sum_j D[i][j] e^j
            for j in range(n):
                if D[i, j]:
                    mono = KForm.basis(n, *(idx[:s] + (j,) + idx[s + 1:]))
                    out = out + mono.scale(c * D[i, j])
    return out


# ---------------------------------------------------------------------------
# constructors


def semidirect_extend(h: LieAlgebra, D, label: str | None = None) -> LieAlgebra:
    """h x R with [(X,a),(Y,b)] = (a D(Y) - b D(X) + [X,Y], 0)."""
    n = h.dim
    D = _mat(D, n)
    defect = derivation_defect(h, D)
    if defect is not None:
        i, j, r = defect
        raise NotDerivation(f"D fails the Leibniz rule on (e{i + 1}, e{j + 1})")
    br = {k: dict(v) for k, v in h.brackets.items()}
    u = n
    for j in range(n):
        col = D.column(j)
        v = {k: c for k, c in enumerate(col) if c}
        if v:
            br[(j, u)] = {k: -c for k, c in v.items()}   # [e_j, U] = -D e_j
    return LieAlgebra(n + 1, br, label, check=False)


def central_extend(s: LieAlgebra, sigma: KForm, label: str | None = None) -> tuple[LieAlgebra, ContactStructure | None]:
    """R x s with [(u,X),(u',X')] = (sigma(X,X'), [X,X']); e0 is the new central vector.

    Returns the algebra and, when sigma is nondegenerate, the contact form
    dual to e0.
    """
    n = s.dim
    if sigma.degree != 2 or sigma.dim != n:
        raise LieError("sigma must be a 2-form on s")
    if not ce_differential(s, sigma).is_zero():
        raise NotCocycle("sigma is not closed")
    br = {}
    for (i, j), v in s.brackets.items():
        br[(i + 1, j + 1)] = {k + 1: c for k, c in v.items()}
    for (i, j), c in sigma.coeffs.items():
        br.setdefault((i + 1, j + 1), {})[0] = c
    h = LieAlgebra(n + 1, br, label, check=False)
    theta = KForm.basis(n + 1, 0)
    contact = None
    if n % 2 == 0:
        try:
            contact = verify_contact(h, theta)
        except StructureRejected:
            contact = None
    return h, contact


def lift_derivation(s: LieAlgebra, sigma: KForm, Ds) -> RatMatrix:
    """D(a, X) = (0, Ds X) on the central extension R x s."""
    n = s.dim
    Ds = _mat(Ds, n)
    if not is_symplectic_derivation(s, sigma, Ds):
        raise NotDerivation("Ds is not a symplectic derivation")
    rows = [[Fraction(0)] * (n + 1)]
    for i in range(n):
        rows.append([Fraction(0)] + list(Ds.rows[i]))
    return RatMatrix(rows, n + 1)


def extract_symplectic_derivation(h: LieAlgebra, theta: KForm, D) -> RatMatrix | None:
    """Converse of lift: D on R x s kills e0 and theta, and acts on s as a symplectic derivation.

    Returns the block Ds, or None when D is not of lifted form.
    """
    n = h.dim - 1
    D = _mat(D, n + 1)
    if not is_contact_derivation(h, theta, D):
        return None
    if any(D.column(0)) or any(D.rows[0]):
        return None
    Ds = RatMatrix([r[1:] for r in D.rows[1:]], n)
    s = LieAlgebra(n, {(i - 1, j - 1): {k - 1: c for k, c in v.items() if k > 0}
                       for (i, j), v in h.brackets.items() if i > 0 and any(k > 0 for k in v)}, check=False)
    sigma = KForm(n, 2, {(i - 1, j - 1): v[0] for (i, j), v in h.brackets.items() if i > 0 and 0 in v})
    return Ds if is_symplectic_derivation(s, sigma, Ds) else None


def lcs_extension(s: LieAlgebra, sigma: KForm, Ds, label: str | None = None) -> tuple[LieAlgebra, LcsStructure]:
    """R x s x R with the bracket
    [(a,X,a'),(b,Y,b')] = (sigma(X,Y), a' Ds Y - b' Ds X + [X,Y]_s, 0),
    omega = last coordinate and eta = first coordinate.
    """
    n = s.dim
    Ds = _mat(Ds, n)
    verify_symplectic(s, sigma)
    if not is_symplectic_derivation(s, sigma, Ds):
        raise NotDerivation("Ds is not a symplectic derivation")
    N = n + 2
    u = N - 1
    br: dict = {}
    for (i, j), v in s.brackets.items():
        br[(i + 1, j + 1)] = {k + 1: c for k, c in v.items()}
    for (i, j), c in sigma.coeffs.items():
        br.setdefault((i + 1, j + 1), {})[0] = c
    for j in range(n):
        v = {k + 1: -c for k, c in enumerate(Ds.column(j)) if c}
        if v:
            br[(j + 1, u)] = v
    g = LieAlgebra(N, br, label)
    omega = KForm.basis(N, u)
    eta = KForm.basis(N, 0)
    return g, verify_lcs_first_kind(g, omega, eta)


def lcs_extension_composed(s: LieAlgebra, sigma: KForm, Ds, label: str | None = None) -> LieAlgebra:
    """Same algebra as lcs_extension, built as semidirect(central(s, sigma), lift(Ds))."""
    h, _ = central_extend(s, sigma)
    return semidirect_extend(h, lift_derivation(s, sigma, Ds), label)


@dataclass(frozen=True)
class CentralLeeData:
    s: LieAlgebra
    sigma: KForm
    Ds: RatMatrix
    basis: RatMatrix

    def to_json(self):
        return {"s": self.s.to_json(), "sigma": self.sigma.to_json(), "Ds": self.Ds.to_json(),
                "basis": self.basis.to_json()}


def extract_lcs_extension_data(st: LcsStructure) -> CentralLeeData:
    """Recover (s, sigma, Ds) from an lcs structure whose Lee vector V is central.

    The adapted basis is (V, basis of ker omega cap ker eta, U); in it the
    algebra coincides with lcs_extension(s, sigma, Ds).
    """
    g = st.algebra
    n = g.dim
    for i in range(n):
        if any(g.bracket(st.V, basis_vector(n, i))):
            raise LieError("the Lee vector is not central")
    sb = kernel_basis(RatMatrix([st.omega.vector(), st.eta.vector()], n))
    full = RatMatrix.from_columns([st.V] + sb + [st.U])
    pinv = inverse(full)
    k = len(sb)
    br: dict = {}
    sig: dict = {}
    for a in range(k):
        for b in range(a + 1, k):
            c = pinv @ g.bracket(sb[a], sb[b])
            assert not c[-1]
            if c[0]:
                sig[(a, b)] = c[0]
            v = {t - 1: c[t] for t in range(1, k + 1) if c[t]}
            if v:
                br[(a, b)] = v
    s = LieAlgebra(k, br, None)
    sigma = KForm(k, 2, sig)
    cols = []
    for b in sb:
        c = pinv @ g.bracket(st.U, b)
        assert not c[0] and not c[-1]
        cols.append(c[1:-1])
    Ds = RatMatrix.from_columns(cols)
    return CentralLeeData(s, sigma, Ds, full)


def double_extension_compatibility(s1: LieAlgebra, sigma1: KForm, D, Z1) -> KForm:
    """Residual d(i_Z1 sigma1) + (D*)^2 sigma1; zero iff the data are compatible."""
    n = s1.dim
    D = _mat(D, n)
    z = tuple(frac(x) for x in Z1)
    lhs = ce_differential(s1, sigma1.interior(z))
    rhs = dstar_sigma(dstar_sigma(sigma1, D), D)
    return lhs + rhs


def double_extension(s1: LieAlgebra, sigma1: KForm, D, Z1, label: str | None = None) -> tuple[LieAlgebra, KForm]:
    """Symplectic double extension of (s1, sigma1) by a derivation D and Z1 in s1.

    Bracket on R x s1 x R:
    [(a1,X1,a1'),(b1,Y1,b1')] = ((D*sigma1)(X1,Y1) - a1' sigma1(Z1,Y1) + b1' sigma1(Z1,X1),
                                 -a1' D Y1 + b1' D X1 + [X1,Y1], 0)
    and sigma = a1 b1' - a1' b1 + sigma1(X1, Y1).
    """
    n = s1.dim
    D = _mat(D, n)
    z = tuple(frac(x) for x in Z1)
    verify_symplectic(s1, sigma1)
    if not is_derivation(s1, D):
        raise NotDerivation("D is not a derivation of s1")
    residual = double_extension_compatibility(s1, sigma1, D, z)
    if not residual.is_zero():
        raise CompatibilityFailed(residual)
    N = n + 2
    u = N - 1
    ds = dstar_sigma(sigma1, D)
    izs = sigma1.interior(z)         # X -> sigma1(Z1, X)
    br: dict = {}
    for (i, j), v in s1.brackets.items():
        br[(i + 1, j + 1)] = {k + 1: c for k, c in v.items()}
    for (i, j), c in ds.coeffs.items():
        br.setdefault((i + 1, j + 1), {})[0] = br.get((i + 1, j + 1), {}).get(0, 0) + c
    for j in range(n):
        # [(0,0,1),(0,Y,0)] = (-sigma1(Z1,Y), -D Y, 0), so [Y, U] = (sigma1(Z1,Y), D Y)
        v = {k + 1: c for k, c in enumerate(D.column(j)) if c}
        c0 = izs.coeffs.get((j,), Fraction(0))
        if c0:
            v[0] = c0
        if v:
            br[(j + 1, u)] = v
    g = LieAlgebra(N, br, label)
    sigma = KForm.basis(N, 0, u) + KForm(N, 2, {(i + 1, j + 1): c for (i, j), c in sigma1.coeffs.items()})
    verify_symplectic(g, sigma)
    return g, sigma


def double_extension_derivation(s1: LieAlgebra, sigma1: KForm, D, Z1) -> RatMatrix:
    """The map E(a, X) = (-sigma1(Z1, X), -D X) on h1 = R x s1 that drives the semidirect step."""
    n = s1.dim
    D = _mat(D, n)
    z = tuple(frac(x) for x in Z1)
    izs = sigma1.interior(z)
    rows = [[Fraction(0)] + [-izs.coeffs.get((j,), Fraction(0)) for j in range(n)]]
    for i in range(n):
        rows.append([Fraction(0)] + [-x for x in D.rows[i]])
    return RatMatrix(rows, n + 1)


def double_extension_composed(s1: LieAlgebra, sigma1: KForm, D, Z1) -> LieAlgebra:
    """Double extension built as semidirect(h1, E) with h1 the central extension by D* sigma1."""
    ds = dstar_sigma(sigma1, _mat(D, s1.dim))
    h1, _ = central_extend(s1, ds)
    E = double_extension_derivation(s1, sigma1, D, Z1)
    return semidirect_extend(h1, E)


__all__ = [
    "NotDerivation", "NotCocycle", "CompatibilityFailed", "derivation_defect", "is_derivation",
    "derivation_algebra_basis", "is_inner", "is_contact_derivation", "is_symplectic_derivation",
    "is_nilpotent_derivation", "dstar_sigma", "dstar_form", "semidirect_extend", "central_extend",
    "lift_derivation", "extract_symplectic_derivation", "lcs_extension", "lcs_extension_composed",
    "CentralLeeData", "extract_lcs_extension_data", "double_extension_compatibility",
    "double_extension", "double_extension_derivation", "double_extension_composed",
]
