"""Symplectic, contact, lcs and complex structures: construction and checking.

An lcs structure of the first kind is produced from a pair (omega, eta) with
omega closed, rank(d eta) < 2n and omega ^ eta ^ (d eta)^(n-1) nonzero.  The
lcs form is ``Phi = d eta - omega ^ eta`` (so Phi = d_omega eta and
d Phi = omega ^ Phi).  U and V are the vectors with
omega(U) = 1, eta(U) = 0, omega(V) = 0, eta(V) = 1, both in ker d eta.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cohomology import NonClosedTwist, solve_exactness
from .exactmath import RatMatrix, as_matrix, inverse, kernel_basis, rank, solve
from .liealg import (KForm, LieAlgebra, LieError, basis_vector, ce_differential,
                     lie_derivative)


class StructureError(LieError):
    pass


class OddDimension(StructureError):
    pass


class EvenDimension(StructureError):
    pass


class NotAlmostComplex(StructureError):
    pass


class NotLcs(StructureError):
    pass


class StructureRejected(StructureError):
    """A candidate structure fails one of its defining conditions."""

    def __init__(self, condition: str, detail: str = ""):
        self.condition = condition
        self.detail = detail
        super().__init__(f"{condition}: {detail}" if detail else condition)


def _half_dim(alg: LieAlgebra, even: bool) -> int:
    if even and alg.dim % 2:
        raise OddDimension(f"dimension {alg.dim} is odd")
    if not even and alg.dim % 2 == 0:
        raise EvenDimension(f"dimension {alg.dim} is even")
    return alg.dim // 2 if even else (alg.dim + 1) // 2


def _check_form(alg: LieAlgebra, f: KForm, degree: int, name: str) -> None:
    if f.dim != alg.dim or f.degree != degree:
        raise StructureError(f"{name} must be a {degree}-form on a {alg.dim}-dimensional algebra")


@dataclass(frozen=True)
class SymplecticStructure:
    algebra: LieAlgebra
    sigma: KForm

    def to_json(self):
        return {"type": "symplectic", "sigma": self.sigma.to_json()}


@dataclass(frozen=True)
class ContactStructure:
    algebra: LieAlgebra
    theta: KForm
    reeb: tuple

    def to_json(self):
        return {"type": "contact", "theta": self.theta.to_json(), "reeb": [str(x) for x in self.reeb]}


@dataclass(frozen=True)
class LcsStructure:
    algebra: LieAlgebra
    omega: KForm
    eta: KForm
    phi: KForm
    U: tuple
    V: tuple
    kind: str = "FirstKind"
    exact: bool = True

    def to_json(self):
        return {"type": "lcs", "kind": self.kind, "exact": self.exact,
                "omega": self.omega.to_json(), "eta": self.eta.to_json(), "phi": self.phi.to_json(),
                "U": [str(x) for x in self.U], "V": [str(x) for x in self.V]}


def verify_symplectic(alg: LieAlgebra, sigma: KForm) -> SymplecticStructure:
    n = _half_dim(alg, True)
    _check_form(alg, sigma, 2, "sigma")
    if not ce_differential(alg, sigma).is_zero():
        raise StructureRejected("NotClosed", f"d sigma = {ce_differential(alg, sigma)}")
    if not sigma.power(n).top_coefficient():
        raise StructureRejected("Degenerate", f"sigma^{n} = 0")
    return SymplecticStructure(alg, sigma)


def reeb_vector(alg: LieAlgebra, theta: KForm) -> tuple | None:
    dtheta = ce_differential(alg, theta)
    m = dtheta.to_matrix()
    # rows: (i_R d theta)_j = sum_i R_i m[i][j]; last row theta(R) = 1
    rows = [list(m.column(j)) for j in range(alg.dim)] + [list(theta.vector())]
    rhs = [Fraction(0)] * alg.dim + [Fraction(1)]
    return solve(RatMatrix(rows, alg.dim), rhs)


def verify_contact(alg: LieAlgebra, theta: KForm) -> ContactStructure:
    n = _half_dim(alg, False)
    _check_form(alg, theta, 1, "theta")
    vol = theta.wedge(ce_differential(alg, theta).power(n - 1))
    if not vol.top_coefficient():
        raise StructureRejected("NotContact", f"theta ^ (d theta)^{n - 1} = 0")
    r = reeb_vector(alg, theta)
    if r is None:
        raise StructureRejected("NoReeb", "no vector R with i_R d theta = 0 and theta(R) = 1")
    return ContactStructure(alg, theta, r)


def _solve_dual_vector(alg: LieAlgebra, dform: KForm, conds: Sequence[tuple[KForm, int]]) -> tuple | None:
    """Vector X in ker(dform) with prescribed values on the given 1-forms."""
    n = alg.dim
    m = dform.to_matrix()
    rows = [list(m.column(j)) for j in range(n)]
    rhs = [Fraction(0)] * n
    for f, val in conds:
        rows.append(list(f.vector()))
        rhs.append(Fraction(val))
    return solve(RatMatrix(rows, n), rhs)


def verify_lcs_first_kind(alg: LieAlgebra, omega: KForm, eta: KForm) -> LcsStructure:
    n = _half_dim(alg, True)
    if n < 1:
        raise StructureError("lcs structures need positive dimension")
    _check_form(alg, omega, 1, "omega")
    _check_form(alg, eta, 1, "eta")
    if not ce_differential(alg, omega).is_zero():
        raise StructureRejected("OmegaNotClosed", f"d omega = {ce_differential(alg, omega)}")
    deta = ce_differential(alg, eta)
    if deta.power(n).top_coefficient():
        raise StructureRejected("RankTooLarge", f"rank(d eta) = {alg.dim}")
    vol = omega.wedge(eta).wedge(deta.power(n - 1))
    if not vol.top_coefficient():
        raise StructureRejected("Degenerate", f"omega ^ eta ^ (d eta)^{n - 1} = 0")
    U = _solve_dual_vector(alg, deta, [(omega, 1), (eta, 0)])
    V = _solve_dual_vector(alg, deta, [(omega, 0), (eta, 1)])
    if U is None or V is None:
        raise StructureRejected("NoCharacteristicVectors", "U or V does not exist")
    if any(alg.bracket(U, V)):
        raise StructureRejected("UVNotCommuting", f"[U, V] = {alg.bracket(U, V)}")
    phi = deta - omega.wedge(eta)
    # consistency: d Phi = omega ^ Phi, Phi^n = n (d eta)^(n-1) ^ eta ^ omega != 0
    assert ce_differential(alg, phi) == omega.wedge(phi)
    top = phi.power(n)
    assert top == deta.power(n - 1).wedge(eta).wedge(omega).scale(n)
    assert top.top_coefficient()
    for i in range(alg.dim):
        for j in range(i + 1, alg.dim):
            assert not omega.evaluate(alg.bracket_basis(i, j)), "[g, g] not in ker omega"
    return LcsStructure(alg, omega, eta, phi, U, V)


def verify_lcs(alg: LieAlgebra, phi: KForm, omega: KForm) -> None:
    n = _half_dim(alg, True)
    _check_form(alg, phi, 2, "phi")
    _check_form(alg, omega, 1, "omega")
    if not ce_differential(alg, omega).is_zero():
        raise NotLcs("omega is not closed")
    if ce_differential(alg, phi) != omega.wedge(phi):
        raise NotLcs("d phi != omega ^ phi")
    if not phi.power(n).top_coefficient():
        raise NotLcs("phi is degenerate")


@dataclass(frozen=True)
class AutomorphismReport:
    dim: int
    basis: tuple
    lee_values: tuple
    kind: str
    exact: bool
    eta: KForm | None = field(default=None, compare=False)

    def to_json(self):
        return {"dim_g_phi": self.dim, "basis": [[str(x) for x in b] for b in self.basis],
                "lee_values": [str(x) for x in self.lee_values], "kind": self.kind, "exact": self.exact,
                "eta": self.eta.to_json() if self.eta is not None else None}


def infinitesimal_automorphisms(alg: LieAlgebra, phi: KForm) -> list[tuple]:
    """Basis of g_phi = {X : L_X phi = 0}."""
    n = alg.dim
    cols = [lie_derivative(alg, basis_vector(n, i), phi).coeff_vector() for i in range(n)]
    return kernel_basis(RatMatrix.from_columns(cols))


def classify_kind(alg: LieAlgebra, phi: KForm, omega: KForm) -> AutomorphismReport:
    verify_lcs(alg, phi, omega)
    basis = infinitesimal_automorphisms(alg, phi)
    values = tuple(omega.evaluate(b) for b in basis)
    kind = "FirstKind" if any(values) else "SecondKind"
    eta = solve_exactness(alg, phi, omega)
    return AutomorphismReport(len(basis), tuple(basis), values, kind, eta is not None, eta)


# ---------------------------------------------------------------------------
# splitting an lcs structure of the first kind


@dataclass(frozen=True)
class ContactSplit:
    """ker omega with its contact form and the derivation ad_U restricted to it.

    ``basis`` has the ker omega basis in its first columns and U last, so the
    original algebra written in this basis is exactly the semidirect product.
    """
    h: LieAlgebra
    theta: KForm
    D: RatMatrix
    basis: RatMatrix
    U: tuple

    def to_json(self):
        return {"h": self.h.to_json(), "theta": self.theta.to_json(), "D": self.D.to_json(),
                "basis": self.basis.to_json()}


def kernel_of_covector(omega: KForm) -> list[tuple]:
    return kernel_basis(RatMatrix([omega.vector()], omega.dim))


def induced_algebra(alg: LieAlgebra, sub: Sequence[Sequence], full: RatMatrix, label: str | None = None) -> LieAlgebra:
    """Algebra on span(sub), projecting brackets with the coordinates of ``full``.

    The columns of ``full`` start with ``sub``; components of brackets outside
    the first len(sub) coordinates are dropped, which gives the quotient or
    the subalgebra depending on the complement chosen.
    """
    k = len(sub)
    pinv = inverse(full)
    br = {}
    for i in range(k):
        for j in range(i + 1, k):
            c = pinv @ alg.bracket(sub[i], sub[j])
            v = {t: c[t] for t in range(k) if c[t]}
            if v:
                br[(i, j)] = v
    return LieAlgebra(k, br, label)


def split_to_contact(s: LcsStructure) -> ContactSplit:
    g = s.algebra
    hb = kernel_of_covector(s.omega)
    full = RatMatrix.from_columns(hb + [s.U])
    pinv = inverse(full)
    for i in range(len(hb)):
        for j in range(i + 1, len(hb)):
            c = pinv @ g.bracket(hb[i], hb[j])
            assert not c[-1], "ker omega is not a subalgebra"
    h = induced_algebra(g, hb, full, label=f"ker omega in {g.label}" if g.label else None)
    theta = s.eta.restrict(hb)
    dcols = []
    for b in hb:
        c = pinv @ g.bracket(s.U, b)
        assert not c[-1]
        dcols.append(c[:-1])
    D = RatMatrix.from_columns(dcols)
    return ContactSplit(h, theta, D, full, s.U)


def join_from_contact(h: LieAlgebra, theta: KForm, D) -> LcsStructure:
    """lcs structure of the first kind on h semidirect R from a contact derivation D."""
    from .extensions import is_contact_derivation, semidirect_extend
    D = as_matrix(D)
    verify_contact(h, theta)
    if not is_contact_derivation(h, theta, D):
        raise StructureRejected("NotContactDerivation", "D is not a derivation with theta o D = 0")
    g = semidirect_extend(h, D)
    n = g.dim
    omega = KForm.basis(n, n - 1)
    eta = KForm(n, 1, {(i,): c for (i,), c in theta.coeffs.items()})
    return verify_lcs_first_kind(g, omega, eta)


def lee_vector_is_central(s: LcsStructure) -> bool:
    g = s.algebra
    return all(not any(g.bracket(s.V, basis_vector(g.dim, i))) for i in range(g.dim))


# ---------------------------------------------------------------------------
# complex structures


@dataclass(frozen=True)
class ComplexVerdict:
    integrable: bool
    violation: tuple | None = None   # (i, j, N(e_i, e_j)) with 1-based indices

    def to_json(self):
        v = None
        if self.violation:
            i, j, val = self.violation
            v = {"i": i, "j": j, "N": [str(x) for x in val]}
        return {"integrable": self.integrable, "violation": v}


def nijenhuis(alg: LieAlgebra, J: RatMatrix, x: Sequence, y: Sequence) -> tuple:
    """N(X, Y) = [JX, JY] - J[JX, Y] - J[X, JY] - [X, Y]."""
    jx, jy = J @ x, J @ y
    a = alg.bracket(jx, jy)
    b = J @ alg.bracket(jx, y)
    c = J @ alg.bracket(x, jy)
    d = alg.bracket(x, y)
    return tuple(p - q - r - s for p, q, r, s in zip(a, b, c, d))


def check_complex_structure(alg: LieAlgebra, J) -> ComplexVerdict:
    J = as_matrix(J)
    n = alg.dim
    if J.shape != (n, n):
        raise NotAlmostComplex("J has the wrong shape")
    if J @ J != RatMatrix.identity(n).scale(-1):
        raise NotAlmostComplex("J^2 != -1")
    for i in range(n):
        for j in range(i + 1, n):
            val = nijenhuis(alg, J, basis_vector(n, i), basis_vector(n, j))
            if any(val):
                return ComplexVerdict(False, (i + 1, j + 1, val))
    return ComplexVerdict(True)


def structure_rank(f: KForm) -> int:
    return rank(f.to_matrix())


__all__ = [
    "StructureError", "OddDimension", "EvenDimension", "NotAlmostComplex", "NotLcs", "StructureRejected",
    "SymplecticStructure", "ContactStructure", "LcsStructure", "verify_symplectic", "verify_contact",
    "reeb_vector", "verify_lcs_first_kind", "verify_lcs", "AutomorphismReport", "classify_kind",
    "infinitesimal_automorphisms", "ContactSplit", "split_to_contact", "join_from_contact",
    "kernel_of_covector", "induced_algebra", "lee_vector_is_central", "ComplexVerdict",
    "nijenhuis", "check_complex_structure", "structure_rank", "NonClosedTwist",
]
