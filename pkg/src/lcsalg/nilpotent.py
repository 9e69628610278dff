"""Nilpotency, the characteristic filtration and the f_m obstruction.

The characteristic filtration of the dual is W_1 = ker d and
W_k = d^{-1}(Lambda^2 W_{k-1}); for an m-step nilpotent algebra it reaches
g* after m steps.  A nilpotent Lie algebra carrying an lcs structure of the
first kind must have f_m = dim W_m / W_{m-1} equal to 1.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .cohomology import NotNilpotent
from .exactmath import RatMatrix, independent_subset, kernel_basis, preimage, trace
from .liealg import KForm, LieAlgebra, basis_vector, differential_matrix


@dataclass(frozen=True)
class LowerCentralSeries:
    dims: tuple
    is_nilpotent: bool
    step: int | None

    def to_json(self):
        return {"dims": list(self.dims), "is_nilpotent": self.is_nilpotent, "step": self.step}


def _span_basis(vectors):
    vectors = [v for v in vectors if any(v)]
    if not vectors:
        return []
    return [vectors[i] for i in independent_subset(vectors)]


def lower_central_series(alg: LieAlgebra) -> LowerCentralSeries:
    """dims of g^1 = g, g^{k+1} = [g, g^k] until the series stabilises."""
    n = alg.dim
    current = [basis_vector(n, i) for i in range(n)]
    dims = [n]
    while current:
        nxt = _span_basis([alg.bracket(basis_vector(n, i), y) for i in range(n) for y in current])
        if len(nxt) == len(current):
            return LowerCentralSeries(tuple(dims), False, None)
        current = nxt
        dims.append(len(current))
    step = len(dims) - 1
    return LowerCentralSeries(tuple(dims), True, step)


def derived_series(alg: LieAlgebra) -> list[int]:
    n = alg.dim
    current = [basis_vector(n, i) for i in range(n)]
    dims = [n]
    while current:
        nxt = _span_basis([alg.bracket(x, y) for a, x in enumerate(current) for y in current[a + 1:]])
        if len(nxt) == len(current):
            break
        current = nxt
        dims.append(len(current))
    return dims


def center(alg: LieAlgebra) -> list[tuple]:
    """Basis of the center."""
    n = alg.dim
    if n == 0:
        return []
    rows = []
    for j in range(n):
        for k in range(n):
            # coefficient of e_k in [x, e_j] = sum_i x_i c^k_ij
            rows.append([alg.bracket_basis(i, j)[k] for i in range(n)])
    return kernel_basis(RatMatrix(rows, n))


def derived_algebra(alg: LieAlgebra) -> list[tuple]:
    n = alg.dim
    return _span_basis([alg.bracket_basis(i, j) for i in range(n) for j in range(i + 1, n)])


def is_unimodular(alg: LieAlgebra) -> bool:
    return all(trace(alg.ad_basis(i)) == 0 for i in range(alg.dim))


@dataclass(frozen=True)
class Filtration:
    subspaces: tuple           # bases of W_1, W_2, ... as coefficient vectors in g*
    profile: tuple             # f_k = dim W_k - dim W_{k-1}

    @property
    def step(self) -> int:
        return len(self.profile)

    def to_json(self):
        return {"profile": list(self.profile),
                "dims": [len(w) for w in self.subspaces]}


def characteristic_filtration(alg: LieAlgebra) -> Filtration:
    n = alg.dim
    if n == 0:
        return Filtration((), ())
    d1 = differential_matrix(alg, 1)
    w = kernel_basis(d1)
    spaces = [w]
    while len(w) < n:
        # Lambda^2 W as coefficient vectors in the e^ij basis
        forms = [KForm.covector(n, w[a]).wedge(KForm.covector(n, w[b]))
                 for a in range(len(w)) for b in range(a + 1, len(w))]
        gens = [f.coeff_vector() for f in forms if f]
        nxt = preimage(d1, gens) if gens else kernel_basis(d1)
        if len(nxt) == len(w):
            raise NotNilpotent(f"{alg.label or 'algebra'} is not nilpotent: filtration stalls at dimension {len(w)}")
        w = nxt
        spaces.append(w)
    dims = [len(s) for s in spaces]
    profile = tuple(d - p for d, p in zip(dims, [0] + dims[:-1]))
    return Filtration(tuple(tuple(s) for s in spaces), profile)


class ObstructionVerdict(enum.Enum):
    PASSES = "Passes"
    OBSTRUCTED_FM_TOO_BIG = "ObstructedFmTooBig"
    ABELIAN = "AbelianNoLcsFirstKind"
    ODD_DIMENSION = "OddDimension"


@dataclass(frozen=True)
class ObstructionReport:
    verdict: ObstructionVerdict
    profile: tuple
    step: int

    @property
    def passes(self) -> bool:
        return self.verdict is ObstructionVerdict.PASSES

    def to_json(self):
        return {"verdict": self.verdict.value, "profile": list(self.profile), "step": self.step}


def lcs_filtration_obstruction(alg: LieAlgebra) -> ObstructionReport:
    """Necessary condition f_m = 1 for first-kind lcs on a nilpotent algebra.

    Abelian input gets its own verdict: the filtration has a single step and
    the algebra carries no lcs structure of the first kind for another reason
    (every ker omega is abelian, so its center is never 1-dimensional).
    """
    filt = characteristic_filtration(alg)
    if alg.dim % 2:
        return ObstructionReport(ObstructionVerdict.ODD_DIMENSION, filt.profile, filt.step)
    if alg.is_abelian():
        return ObstructionReport(ObstructionVerdict.ABELIAN, filt.profile, filt.step)
    fm = filt.profile[-1]
    v = ObstructionVerdict.PASSES if fm == 1 else ObstructionVerdict.OBSTRUCTED_FM_TOO_BIG
    return ObstructionReport(v, filt.profile, filt.step)


def is_nilpotent(alg: LieAlgebra) -> bool:
    return lower_central_series(alg).is_nilpotent


__all__ = [
    "LowerCentralSeries", "lower_central_series", "derived_series", "center", "derived_algebra",
    "is_unimodular", "Filtration", "characteristic_filtration", "ObstructionVerdict",
    "ObstructionReport", "lcs_filtration_obstruction", "is_nilpotent", "NotNilpotent",
]
