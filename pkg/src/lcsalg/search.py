"""Existence decisions with certificates.

Every positive answer carries a structure that has been re-verified from
scratch; every negative answer is a proof (a polynomial that vanishes
identically, or a structural obstruction).  When neither is reached within
the budget the answer is ``NoCertificateFound`` together with the trial log.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .cohomology import closed_one_forms, closed_two_forms
from .exactmath import RatMatrix, SparsePoly, inverse, pfaffian_generic, solve, MAX_PFAFFIAN_SIZE
from .liealg import KForm, LieAlgebra, LieError, ce_differential
from .nilpotent import (ObstructionVerdict, center, lcs_filtration_obstruction,
                        lower_central_series)
from .structures import (EvenDimension, OddDimension, StructureRejected, induced_algebra,
                         kernel_of_covector, verify_contact, verify_lcs_first_kind, verify_symplectic)

EXISTS = "Exists"
PROVED_IMPOSSIBLE = "ProvedImpossible"
NO_CERTIFICATE = "NoCertificateFound"

PFAFFIAN_ZERO = "PfaffianIdenticallyZero"
FILTER_OBSTRUCTION = "FilterObstruction"
CENTER_OBSTRUCTION = "CenterObstruction"
CONTACT_POLY_ZERO = "ContactPolynomialZero"
NO_CLOSED_FORM = "NoClosedOneForm"


class DimensionCap(LieError):
    pass


@dataclass
class ExistenceVerdict:
    kind: str
    result: str
    certificate: object = None
    reason: str | None = None
    log: list = field(default_factory=list)

    @property
    def exists(self) -> bool:
        return self.result == EXISTS

    def to_json(self):
        cert = self.certificate.to_json() if self.certificate is not None else None
        return {"kind": self.kind, "result": self.result, "reason": self.reason,
                "certificate": cert, "trials": len(self.log), "log": self.log}

    def summary(self) -> str:
        if self.result == PROVED_IMPOSSIBLE:
            return f"{self.result}({self.reason})"
        return self.result


def _points(nvars: int, rng: random.Random) -> Iterator[tuple]:
    """Candidate evaluation points: unit vectors, then 0/1 patterns, then random integers."""
    for i in range(nvars):
        yield tuple(Fraction(int(j == i)) for j in range(nvars))
    for i, j in itertools.combinations(range(nvars), 2):
        yield tuple(Fraction(int(k in (i, j))) for k in range(nvars))
    yield tuple(Fraction(1) for _ in range(nvars))
    while True:
        yield tuple(Fraction(rng.randint(-5, 5)) for _ in range(nvars))


def _nonzero_point(poly: SparsePoly, names, rng: random.Random, limit: int = 2000):
    for count, p in enumerate(_points(len(names), rng)):
        if count >= limit:
            return None
        if poly.evaluate(dict(zip(names, p))):
            yield p


# ---------------------------------------------------------------------------
# symplectic


def symplectic_polynomial(alg: LieAlgebra) -> tuple[SparsePoly, list[KForm]]:
    """Pf(sum t_i B_i) over a basis B_i of closed 2-forms."""
    if alg.dim % 2:
        raise OddDimension(f"dimension {alg.dim} is odd")
    if alg.dim > MAX_PFAFFIAN_SIZE:
        raise DimensionCap(f"dimension {alg.dim} exceeds the Pfaffian cap {MAX_PFAFFIAN_SIZE}")
    z2 = closed_two_forms(alg)
    return pfaffian_generic([f.to_matrix() for f in z2]), z2


def symplectic_exists(alg: LieAlgebra, seed: int = 0) -> ExistenceVerdict:
    pf, z2 = symplectic_polynomial(alg)
    log = [{"step": "pfaffian", "closed_2_forms": len(z2), "terms": len(pf.terms)}]
    if pf.is_zero():
        return ExistenceVerdict("symplectic", PROVED_IMPOSSIBLE, None, PFAFFIAN_ZERO, log)
    rng = random.Random(seed)
    names = pf.vars
    for p in _nonzero_point(pf, names, rng):
        sigma = KForm.zero(alg.dim, 2)
        for c, f in zip(p, z2):
            if c:
                sigma = sigma + f.scale(c)
        cert = verify_symplectic(alg, sigma)
        log.append({"step": "witness", "sigma": str(sigma)})
        return ExistenceVerdict("symplectic", EXISTS, cert, None, log)
    return ExistenceVerdict("symplectic", NO_CERTIFICATE, None, None, log)  # pragma: no cover


# ---------------------------------------------------------------------------
# contact


def contact_polynomial(alg: LieAlgebra) -> SparsePoly:
    """Top coefficient of theta ^ (d theta)^(n-1) for theta = sum c_i e^i."""
    m = alg.dim
    if m % 2 == 0:
        raise EvenDimension(f"dimension {m} is even")
    n = (m + 1) // 2
    names = tuple(f"c{i + 1}" for i in range(m))
    theta = KForm(m, 1, {(i,): SparsePoly.var(names[i], names) for i in range(m)})
    dtheta = ce_differential(alg, theta)
    vol = theta.wedge(dtheta.power(n - 1))
    top = vol.top_coefficient()
    if not isinstance(top, SparsePoly):
        top = SparsePoly.const(top, names)
    return top


def _contact_obstruction(alg: LieAlgebra) -> str | None:
    if lower_central_series(alg).is_nilpotent and len(center(alg)) != 1:
        return CENTER_OBSTRUCTION
    return None


def contact_witnesses(alg: LieAlgebra, poly: SparsePoly, rng: random.Random, limit: int = 2000):
    names = tuple(f"c{i + 1}" for i in range(alg.dim))
    for p in _nonzero_point(poly, names, rng, limit):
        yield KForm.covector(alg.dim, p)


def contact_exists(alg: LieAlgebra, seed: int = 0) -> ExistenceVerdict:
    if alg.dim % 2 == 0:
        raise EvenDimension(f"dimension {alg.dim} is even")
    reason = _contact_obstruction(alg)
    if reason:
        return ExistenceVerdict("contact", PROVED_IMPOSSIBLE, None, reason,
                                [{"step": "center", "center_dim": len(center(alg))}])
    poly = contact_polynomial(alg)
    log = [{"step": "contact_polynomial", "terms": len(poly.terms)}]
    if poly.is_zero():
        return ExistenceVerdict("contact", PROVED_IMPOSSIBLE, None, CONTACT_POLY_ZERO, log)
    for theta in contact_witnesses(alg, poly, random.Random(seed)):
        cert = verify_contact(alg, theta)
        log.append({"step": "witness", "theta": str(theta)})
        return ExistenceVerdict("contact", EXISTS, cert, None, log)
    return ExistenceVerdict("contact", NO_CERTIFICATE, None, None, log)  # pragma: no cover


# ---------------------------------------------------------------------------
# lcs of the first kind


def _projective_key(v: tuple) -> tuple:
    lead = next(x for x in v if x)
    return tuple(x / lead for x in v)


def omega_candidates(z1: list[KForm], omega_bound: int, rng: random.Random) -> Iterator[KForm]:
    """Basis of Z^1, then integer combinations in [-b, b], then random rationals."""
    if not z1:
        return
    dim = z1[0].dim
    vecs = [f.vector() for f in z1]
    seen = set()

    def emit(coeffs):
        v = tuple(sum((c * w[i] for c, w in zip(coeffs, vecs)), Fraction(0)) for i in range(dim))
        if not any(v):
            return None
        key = _projective_key(v)
        if key in seen:
            return None
        seen.add(key)
        return KForm.covector(dim, v)

    k = len(vecs)
    for i in range(k):
        f = emit([Fraction(int(j == i)) for j in range(k)])
        if f is not None:
            yield f
    rng_vals = range(-omega_bound, omega_bound + 1)
    for coeffs in itertools.product(rng_vals, repeat=k):
        f = emit([Fraction(c) for c in coeffs])
        if f is not None:
            yield f
    while True:
        coeffs = [Fraction(rng.randint(-16, 16), rng.randint(1, 8)) for _ in range(k)]
        f = emit(coeffs)
        if f is not None:
            yield f


def _lcs_from_omega(alg: LieAlgebra, omega: KForm, rng: random.Random, theta_retries: int):
    """Try to complete omega to (omega, eta); returns (structure or None, log entry)."""
    n = alg.dim
    hb = kernel_of_covector(omega)
    w = omega.vector()
    k0 = next(i for i, x in enumerate(w) if x)
    u0 = tuple(Fraction(int(i == k0)) / w[k0] for i in range(n))
    full = RatMatrix.from_columns(hb + [u0])
    h = induced_algebra(alg, hb, full)
    entry = {"omega": str(omega)}
    reason = _contact_obstruction(h)
    if reason:
        entry["outcome"] = f"ker omega: {reason}"
        return None, entry
    poly = contact_polynomial(h)
    if poly.is_zero():
        entry["outcome"] = f"ker omega: {CONTACT_POLY_ZERO}"
        return None, entry
    pinv = inverse(full)
    tried = 0
    for theta in contact_witnesses(h, poly, rng):
        if tried >= theta_retries:
            break
        tried += 1
        # theta0 on g: theta in the h coordinates, 0 on u0
        t = theta.vector()
        theta0 = tuple(sum((t[a] * pinv[a, i] for a in range(len(hb))), Fraction(0)) for i in range(n))
        # unknown U: omega(U) = 1 and theta0([U, X]) = 0 for X in the basis of ker omega
        rows = [list(w)]
        rhs = [Fraction(1)]
        for x in hb:
            row = []
            for i in range(n):
                ei = tuple(Fraction(int(j == i)) for j in range(n))
                br = alg.bracket(ei, x)
                row.append(sum((a * b for a, b in zip(theta0, br)), Fraction(0)))
            rows.append(row)
            rhs.append(Fraction(0))
        U = solve(RatMatrix(rows, n), rhs)
        if U is None:
            continue
        c = sum((a * b for a, b in zip(theta0, U)), Fraction(0))
        eta = KForm.covector(n, [a - c * b for a, b in zip(theta0, w)])
        try:
            st = verify_lcs_first_kind(alg, omega, eta)
        except StructureRejected as exc:  # pragma: no cover - guarded by construction
            entry.setdefault("rejected", []).append(str(exc))
            continue
        entry["outcome"] = "certificate"
        entry["theta_tries"] = tried
        return st, entry
    entry["outcome"] = f"no contact derivation found in {tried} theta tries"
    return None, entry


def lcs_first_kind_search(alg: LieAlgebra, budget: int = 200, seed: int = 0, omega_bound: int = 2,
                          theta_retries: int = 16) -> ExistenceVerdict:
    if alg.dim % 2:
        raise OddDimension(f"dimension {alg.dim} is odd")
    log: list = []
    if lower_central_series(alg).is_nilpotent:
        obs = lcs_filtration_obstruction(alg)
        log.append({"step": "filtration", "verdict": obs.verdict.value, "profile": list(obs.profile)})
        if obs.verdict is ObstructionVerdict.OBSTRUCTED_FM_TOO_BIG:
            return ExistenceVerdict("lcs_first_kind", PROVED_IMPOSSIBLE, None, FILTER_OBSTRUCTION, log)
        zdim = len(center(alg))
        if obs.verdict is ObstructionVerdict.ABELIAN or zdim >= 3:
            # every ker omega contains a center of dimension >= 2, never contact
            log.append({"step": "center", "center_dim": zdim})
            return ExistenceVerdict("lcs_first_kind", PROVED_IMPOSSIBLE, None, CENTER_OBSTRUCTION, log)
    z1 = closed_one_forms(alg)
    if not z1:
        return ExistenceVerdict("lcs_first_kind", PROVED_IMPOSSIBLE, None, NO_CLOSED_FORM, log)
    rng = random.Random(seed)
    trials = 0
    for omega in omega_candidates(z1, omega_bound, rng):
        if trials >= budget:
            break
        trials += 1
        st, entry = _lcs_from_omega(alg, omega, rng, theta_retries)
        log.append(entry)
        if st is not None:
            return ExistenceVerdict("lcs_first_kind", EXISTS, st, None, log)
    return ExistenceVerdict("lcs_first_kind", NO_CERTIFICATE, None, None, log)


__all__ = [
    "ExistenceVerdict", "DimensionCap", "symplectic_polynomial", "symplectic_exists",
    "contact_polynomial", "contact_exists", "contact_witnesses", "omega_candidates",
    "lcs_first_kind_search", "EXISTS", "PROVED_IMPOSSIBLE", "NO_CERTIFICATE", "PFAFFIAN_ZERO",
    "FILTER_OBSTRUCTION", "CENTER_OBSTRUCTION", "CONTACT_POLY_ZERO", "NO_CLOSED_FORM",
]
