"""Chevalley-Eilenberg cohomology, trivial and twisted.

The twisted (Lichnerowicz) differential for a closed 1-form omega is
``d_omega(alpha) = d alpha - omega ^ alpha``; on constants it gives
``d_omega(1) = -omega``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exactmath import RatMatrix, image_basis, kernel_basis, rank, solve
from .liealg import KForm, LieAlgebra, LieError, ce_differential, differential_matrix, form_basis


class NonClosedTwist(LieError):
    pass


class NotCocycle(LieError):
    pass


class NotNilpotent(LieError):
    pass


def _check_twist(alg: LieAlgebra, omega: KForm | None) -> None:
    if omega is None:
        return
    if omega.degree != 1 or omega.dim != alg.dim:
        raise LieError("the twist must be a 1-form on the algebra")
    if not ce_differential(alg, omega).is_zero():
        raise NonClosedTwist(f"twist {omega} is not closed")


def twisted_differential(alg: LieAlgebra, form: KForm, omega: KForm) -> KForm:
    _check_twist(alg, omega)
    return ce_differential(alg, form) - omega.wedge(form)


@dataclass
class CohomologyReport:
    dim: int
    twist: KForm | None
    betti: list[int]
    cocycles: list[list[KForm]] = field(repr=False)
    coboundaries: list[list[KForm]] = field(repr=False)

    def to_json(self):
        return {
            "dim": self.dim,
            "twist": self.twist.to_json() if self.twist is not None else None,
            "betti": self.betti,
            "cocycle_basis": [[f.to_json() for f in fs] for fs in self.cocycles],
            "coboundary_basis": [[f.to_json() for f in fs] for fs in self.coboundaries],
        }

    def euler_characteristic(self) -> int:
        return sum((-1) ** p * b for p, b in enumerate(self.betti))

    def markdown(self) -> str:
        head = "| p | " + " | ".join(str(p) for p in range(len(self.betti))) + " |"
        sep = "|---|" + "---|" * len(self.betti)
        row = "| b_p | " + " | ".join(str(b) for b in self.betti) + " |"
        return "\n".join([head, sep, row])


def betti_numbers(alg: LieAlgebra, twist: KForm | None = None, bases: bool = True) -> CohomologyReport:
    """Betti numbers b_0..b_n of d (twist None) or d_omega."""
    _check_twist(alg, twist)
    n = alg.dim
    mats = [differential_matrix(alg, p, twist) for p in range(n)]
    ranks = [rank(m) for m in mats]
    betti = []
    cocycles: list[list[KForm]] = []
    coboundaries: list[list[KForm]] = []
    for p in range(n + 1):
        size = len(form_basis(n, p))
        r_out = ranks[p] if p < n else 0
        r_in = ranks[p - 1] if p > 0 else 0
        betti.append(size - r_out - r_in)
        if bases:
            if p < n:
                z = kernel_basis(mats[p])
            else:
                z = [tuple(Fraction(int(i == j)) for j in range(size)) for i in range(size)]
            cocycles.append([KForm.from_coeff_vector(n, p, v) for v in z])
            b = image_basis(mats[p - 1]) if p > 0 else []
            coboundaries.append([KForm.from_coeff_vector(n, p, v) for v in b])
    if not bases:
        cocycles = coboundaries = []
    return CohomologyReport(n, twist, betti, cocycles, coboundaries)


def dixmier_check(alg: LieAlgebra, omega: KForm) -> bool:
    """All twisted Betti numbers vanish for nilpotent ``alg`` and nonzero closed ``omega``."""
    from .nilpotent import lower_central_series
    if not lower_central_series(alg).is_nilpotent:
        raise NotNilpotent(f"{alg.label or 'algebra'} is not nilpotent")
    _check_twist(alg, omega)
    if omega.is_zero():
        raise LieError("Dixmier vanishing needs a nonzero twist")
    report = betti_numbers(alg, omega, bases=False)
    return all(b == 0 for b in report.betti)


def solve_exactness(alg: LieAlgebra, phi: KForm, omega: KForm) -> KForm | None:
    """A 1-form eta with d_omega eta = phi, or None when phi is not d_omega-exact."""
    _check_twist(alg, omega)
    if phi.degree != 2:
        raise LieError("exactness is solved for 2-forms")
    if not twisted_differential(alg, phi, omega).is_zero():
        raise NotCocycle("phi is not d_omega-closed")
    m = differential_matrix(alg, 1, omega)
    x = solve(m, phi.coeff_vector())
    if x is None:
        return None
    return KForm.from_coeff_vector(alg.dim, 1, x)


def closed_one_forms(alg: LieAlgebra) -> list[KForm]:
    """Basis of Z^1 = ker d on g*, taken from the reduced echelon form."""
    n = alg.dim
    if n == 0:
        return []
    m = differential_matrix(alg, 1)
    return [KForm.from_coeff_vector(n, 1, v) for v in kernel_basis(m)]


def closed_two_forms(alg: LieAlgebra) -> list[KForm]:
    n = alg.dim
    if n < 2:
        return []
    if n == 2:
        return [KForm.basis(n, 0, 1)]
    m = differential_matrix(alg, 2)
    return [KForm.from_coeff_vector(n, 2, v) for v in kernel_basis(m)]
