"""Polynomial differential forms on R^k and group-level verification.

Coordinates are variable names; any other variable appearing in a
coefficient (a group element g_x, a flow parameter t, ...) is a formal
parameter whose differential is not taken.  Group laws use the convention
that the right factor carries primed names: ``x'`` for the coordinate ``x``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .exactmath import RatMatrix, SparsePoly, frac, inverse, parse_poly
from .liealg import KForm, LieAlgebra, algebra_from_differentials

PolyFunc = SparsePoly


def P(x) -> SparsePoly:
    """Coerce strings, numbers and polynomials to SparsePoly."""
    if isinstance(x, SparsePoly):
        return x
    if isinstance(x, str):
        return parse_poly(x)
    return SparsePoly.const(frac(x))


def _merge_sign(a: tuple, b: tuple) -> int:
    if set(a) & set(b):
        return 0
    inv = sum(1 for x in a for y in b if x > y)
    return -1 if inv % 2 else 1


class PolyForm:
    """sum_I f_I dx^I with polynomial coefficients; I indexes ``coords``."""

    __slots__ = ("coords", "degree", "terms")

    def __init__(self, coords: Sequence[str], degree: int, terms: Mapping | None = None):
        self.coords = tuple(coords)
        self.degree = degree
        clean = {}
        for idx, c in (terms or {}).items():
            idx = tuple(idx)
            if len(idx) != degree or any(a >= b for a, b in zip(idx, idx[1:])):
                raise ValueError(f"bad index {idx} for degree {degree}")
            c = P(c)
            if c:
                clean[idx] = c
        self.terms = clean

    @classmethod
    def function(cls, coords, f) -> "PolyForm":
        return cls(coords, 0, {(): P(f)})

    @classmethod
    def parse(cls, coords: Sequence[str], spec: Mapping[str, str] | str) -> "PolyForm":
        """Build a 1-form from ``{"dx": "1", "dz": "-y"}`` or ``"dz - y*dx"``-style text."""
        coords = tuple(coords)
        if isinstance(spec, str):
            return parse_one_form(coords, spec)
        terms = {}
        for k, v in spec.items():
            name = k[1:] if k.startswith("d") else k
            terms[(coords.index(name),)] = P(v)
        return cls(coords, 1, terms)

    def __add__(self, other: "PolyForm") -> "PolyForm":
        if other.coords != self.coords or other.degree != self.degree:
            raise ValueError("incompatible forms")
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out[k] + c if k in out else c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return PolyForm._raw(self.coords, self.degree, out)

    @classmethod
    def _raw(cls, coords, degree, terms):
        f = cls.__new__(cls)
        f.coords, f.degree, f.terms = coords, degree, terms
        return f

    def __neg__(self):
        return PolyForm._raw(self.coords, self.degree, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, f) -> "PolyForm":
        f = P(f)
        out = {}
        for k, c in self.terms.items():
            v = c * f
            if v:
                out[k] = v
        return PolyForm._raw(self.coords, self.degree, out)

    def wedge(self, other: "PolyForm") -> "PolyForm":
        if other.coords != self.coords:
            raise ValueError("forms on different coordinates")
        out: dict = {}
        for I, a in self.terms.items():
            for J, b in other.terms.items():
                s = _merge_sign(I, J)
                if not s:
                    continue
                K = tuple(sorted(I + J))
                v = a * b if s > 0 else -(a * b)
                if K in out:
                    v = out[K] + v
                if v:
                    out[K] = v
                else:
                    out.pop(K, None)
        return PolyForm._raw(self.coords, self.degree + other.degree, out)

    def d(self) -> "PolyForm":
        out: dict = {}
        for I, c in self.terms.items():
            for j, x in enumerate(self.coords):
                if j in I:
                    continue
                dc = c.deriv(x)
                if not dc:
                    continue
                s = _merge_sign((j,), I)
                K = tuple(sorted((j,) + I))
                v = dc if s > 0 else -dc
                if K in out:
                    v = out[K] + v
                if v:
                    out[K] = v
                else:
                    out.pop(K, None)
        return PolyForm._raw(self.coords, self.degree + 1, out)

    def subs(self, mapping: Mapping) -> "PolyForm":
        """Substitute values for parameters (not coordinates) in the coefficients."""
        return PolyForm(self.coords, self.degree, {k: c.subs(mapping) for k, c in self.terms.items()})

    def at(self, point: Mapping) -> dict:
        """Constant coefficients at a point (all variables must be given or be parameters)."""
        return {k: c.subs(point) for k, c in self.terms.items()}

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, PolyForm):
            return NotImplemented
        return self.coords == other.coords and self.degree == other.degree and (self - other).is_zero()

    __hash__ = None

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for I in sorted(self.terms):
            name = "^".join("d" + self.coords[i] for i in I) or "1"
            parts.append(f"({self.terms[I]})*{name}")
        return " + ".join(parts)

    __repr__ = __str__


def parse_one_form(coords: Sequence[str], text: str) -> PolyForm:
    """Parse ``dz - y*dx + (x*y - t)*dx`` by treating each ``dX`` as a fresh symbol."""
    coords = tuple(coords)
    marks = {c: f"__d_{i}" for i, c in enumerate(coords)}
    names = sorted(coords, key=len, reverse=True)
    pattern = re.compile(r"\bd(" + "|".join(re.escape(c) for c in names) + r")(?![A-Za-z0-9_'])")
    poly = parse_poly(pattern.sub(lambda m: marks[m.group(1)], text))
    terms = {}
    for i, c in enumerate(coords):
        mark = marks[c]
        coeff = poly.deriv(mark)
        if coeff.used_vars() & set(marks.values()):
            raise ValueError("form expression is not linear in the differentials")
        if coeff:
            terms[(i,)] = coeff
    rest = poly.subs({m: 0 for m in marks.values()})
    if rest:
        raise ValueError("form expression has a term without a differential")
    return PolyForm(coords, 1, terms)


@dataclass
class PolyMap:
    """Polynomial map R^src -> R^tgt, components in source coordinates and parameters."""
    source: tuple
    target: tuple
    components: tuple

    def __post_init__(self):
        self.source = tuple(self.source)
        self.target = tuple(self.target)
        self.components = tuple(P(c) for c in self.components)
        if len(self.components) != len(self.target):
            raise ValueError("one component per target coordinate")

    @classmethod
    def of(cls, coords: Sequence[str], components: Sequence, target: Sequence[str] | None = None) -> "PolyMap":
        return cls(tuple(coords), tuple(target or coords), tuple(components))

    def pullback(self, form: PolyForm) -> PolyForm:
        if form.coords != self.target:
            raise ValueError("form is not on the target coordinates")
        sub = dict(zip(self.target, self.components))
        dcomp = [PolyForm(self.source, 0, {(): c}).d() for c in self.components]
        result = PolyForm(self.source, form.degree, {})
        for I, c in form.terms.items():
            t = PolyForm(self.source, 0, {(): c.subs(sub)})
            for i in I:
                t = t.wedge(dcomp[i])
            result = result + t
        return result

    def compose(self, other: "PolyMap") -> "PolyMap":
        """self o other."""
        sub = dict(zip(self.source, other.components))
        return PolyMap(other.source, self.target, tuple(c.subs(sub) for c in self.components))

    def apply(self, values: Sequence) -> tuple:
        sub = dict(zip(self.source, [P(v) for v in values]))
        return tuple(c.subs(sub) for c in self.components)

    def subs(self, mapping: Mapping) -> "PolyMap":
        return PolyMap(self.source, self.target, tuple(c.subs(mapping) for c in self.components))


def prime(name: str, k: int = 1) -> str:
    return name + "'" * k


def _rename(coords, suffix):
    return {c: f"{c}{suffix}" for c in coords}


@dataclass
class GroupLaw:
    """Polynomial group law; mul[i] is in the coordinates and their primed copies."""
    coords: tuple
    mul: tuple
    inverse: tuple | None = None
    unit: tuple | None = None
    label: str | None = None

    def __post_init__(self):
        self.coords = tuple(self.coords)
        self.mul = tuple(P(m) for m in self.mul)
        if self.inverse is not None:
            self.inverse = tuple(P(m) for m in self.inverse)
        self.unit = tuple(frac(u) for u in (self.unit or [0] * len(self.coords)))

    @property
    def dim(self) -> int:
        return len(self.coords)

    def product(self, a: Sequence, b: Sequence) -> tuple:
        """Product of two points given as tuples of polynomials."""
        sub = {}
        for c, x in zip(self.coords, a):
            sub[c] = P(x)
        for c, x in zip(self.coords, b):
            sub[prime(c)] = P(x)
        return tuple(m.subs(sub) for m in self.mul)

    def point(self, suffix: str) -> tuple:
        return tuple(SparsePoly.var(f"{c}{suffix}") for c in self.coords)

    def coords_point(self) -> tuple:
        return tuple(SparsePoly.var(c) for c in self.coords)

    def left_translation(self, suffix: str = "_g") -> PolyMap:
        g = self.point(suffix)
        return PolyMap(self.coords, self.coords, self.product(g, self.coords_point()))

    def permuted(self, order: Sequence[str]) -> "GroupLaw":
        """The same law with the coordinates listed in another order."""
        idx = [self.coords.index(c) for c in order]
        return GroupLaw(tuple(order), tuple(self.mul[i] for i in idx), label=self.label)

    def to_json(self):
        return {"coords": list(self.coords), "mul": [str(m) for m in self.mul],
                "inverse": [str(m) for m in self.inverse] if self.inverse else None,
                "unit": [str(u) for u in self.unit]}

    @classmethod
    def from_json(cls, data) -> "GroupLaw":
        return cls(tuple(data["coords"]), tuple(data["mul"]), data.get("inverse"), data.get("unit"), data.get("label"))


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""

    def to_json(self):
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


def _diff(lhs: Sequence[SparsePoly], rhs: Sequence[SparsePoly]) -> list[SparsePoly]:
    return [a - b for a, b in zip(lhs, rhs)]


def verify_group_law(law: GroupLaw) -> CheckResult:
    a, b, c = law.point("_a"), law.point("_b"), law.point("_c")
    assoc = _diff(law.product(law.product(a, b), c), law.product(a, law.product(b, c)))
    if any(assoc):
        return CheckResult("group_law", False, f"associativity residual {[str(r) for r in assoc]}")
    e = tuple(SparsePoly.const(u) for u in law.unit)
    if any(_diff(law.product(e, a), a)) or any(_diff(law.product(a, e), a)):
        return CheckResult("group_law", False, "unit fails")
    if law.inverse is not None:
        sub = {x: y for x, y in zip(law.coords, a)}
        inv = tuple(m.subs(sub) for m in law.inverse)
        if any(_diff(law.product(a, inv), e)) or any(_diff(law.product(inv, a), e)):
            return CheckResult("group_law", False, "inverse fails")
    return CheckResult("group_law", True)


def verify_left_invariance(law: GroupLaw, form: PolyForm) -> CheckResult:
    L = law.left_translation()
    diff = L.pullback(form) - form
    if diff.is_zero():
        return CheckResult("left_invariance", True)
    return CheckResult("left_invariance", False, f"L_g^* f - f = {diff}")


def verify_invariance(m: PolyMap, form: PolyForm, name: str = "invariance") -> CheckResult:
    diff = m.pullback(form) - form
    return CheckResult(name, diff.is_zero(), "" if diff.is_zero() else f"residual {diff}")


def verify_homomorphism(law: GroupLaw, m: PolyMap) -> CheckResult:
    """m(a b) = m(a) m(b) for all a, b."""
    a, b = law.point("_a"), law.point("_b")
    lhs = m.apply(law.product(a, b))
    rhs = law.product(m.apply(a), m.apply(b))
    d = _diff(lhs, rhs)
    return CheckResult("homomorphism", not any(d), "" if not any(d) else str([str(x) for x in d]))


def verify_one_parameter(m: PolyMap, param: str) -> CheckResult:
    """m_{t+t'} = m_t o m_{t'} and m_0 = id."""
    t2 = param + "_2"
    lhs = m.subs({param: SparsePoly.var(param) + SparsePoly.var(t2)})
    rhs = m.compose(m.subs({param: SparsePoly.var(t2)}))
    ident = m.subs({param: 0})
    ok = not any(_diff(lhs.components, rhs.components)) and \
        not any(_diff(ident.components, [SparsePoly.var(c) for c in m.source]))
    return CheckResult("one_parameter_group", ok)


def verify_cocycle(law: GroupLaw, phi) -> CheckResult:
    """phi(s,s') - phi(s,s's'') + phi(ss',s'') - phi(s',s'') = 0."""
    phi = P(phi)

    def ev(a, b):
        sub = {c: x for c, x in zip(law.coords, a)}
        sub.update({prime(c): x for c, x in zip(law.coords, b)})
        return phi.subs(sub)

    s, s1, s2 = law.point("_a"), law.point("_b"), law.point("_c")
    r = ev(s, s1) - ev(s, law.product(s1, s2)) + ev(law.product(s, s1), s2) - ev(s1, s2)
    return CheckResult("cocycle", r.is_zero(), "" if r.is_zero() else f"residual {r}")


@dataclass(frozen=True)
class LatticeSpec:
    """Gamma = {(m_1 k_1 + o_1, ..., m_n k_n + o_n) : k in Z^n}."""
    moduli: tuple
    offsets: tuple = ()

    def offset(self, i: int) -> Fraction:
        return frac(self.offsets[i]) if self.offsets else Fraction(0)


def _integer_valued(poly: SparsePoly, int_vars: Sequence[str]) -> bool:
    """Exact test that poly takes integer values on all of Z^vars.

    Fast path: all coefficients integral.  Otherwise use the finite-difference
    criterion: a polynomial of degree <= d_i in each variable is integer
    valued iff it is integral on the grid prod {0..d_i}.
    """
    extra = poly.used_vars() - set(int_vars)
    if extra:
        raise ValueError(f"non-integer parameters {sorted(extra)} in a lattice test")
    if all(c.denominator == 1 for c in poly.terms.values()):
        return True
    names = sorted(poly.used_vars())
    ranges = [range(poly.degree_in(v) + 1) for v in names]
    for pt in itertools.product(*ranges):
        if poly.evaluate(dict(zip(names, pt))).denominator != 1:
            return False
    return True


def verify_lattice_invariance(m: PolyMap, lattice: LatticeSpec, int_params: Sequence[str] = (),
                              target: LatticeSpec | None = None) -> CheckResult:
    """m maps the lattice into ``target`` (default: itself) for all integer parameter values."""
    target = target or lattice
    ks = [f"k_{c}" for c in m.source]
    sub = {c: SparsePoly.var(k) * lattice.moduli[i] + lattice.offset(i) for i, (c, k) in enumerate(zip(m.source, ks))}
    for j, comp in enumerate(m.components):
        q = (comp.subs(sub) - target.offset(j)) / target.moduli[j]
        if not _integer_valued(q, ks + list(int_params)):
            return CheckResult("lattice_invariance", False, f"component {m.target[j]} leaves the lattice")
    return CheckResult("lattice_invariance", True)


def _doubled(law: GroupLaw, lattice: LatticeSpec):
    both = tuple(law.coords) + tuple(prime(c) for c in law.coords)
    offs = tuple(lattice.offsets) * 2 if lattice.offsets else ()
    return both, LatticeSpec(tuple(lattice.moduli) * 2, offs)


def verify_cocycle_lattice(law: GroupLaw, phi, lattice: LatticeSpec, modulus=1) -> CheckResult:
    """phi restricted to lattice x lattice takes values in modulus * Z."""
    both, lat2 = _doubled(law, lattice)
    m = PolyMap(both, ("value",), (P(phi),))
    r = verify_lattice_invariance(m, lat2, target=LatticeSpec((frac(modulus),)))
    return CheckResult("cocycle_lattice", r.ok, r.detail)


def verify_lattice_subgroup(law: GroupLaw, lattice: LatticeSpec) -> CheckResult:
    """The product of two lattice points is a lattice point."""
    both, lat2 = _doubled(law, lattice)
    r = verify_lattice_invariance(PolyMap(both, law.coords, law.mul), lat2, target=lattice)
    return CheckResult("lattice_subgroup", r.ok, r.detail)


def verify_chi_identities(law: GroupLaw, phi, action: PolyMap, chi, param: str = "t") -> list[CheckResult]:
    """The three identities for the lift chi~ of a symplectic action to R (.)_phi S."""
    phi, chi = P(phi), P(chi)
    s, s1 = law.point("_a"), law.point("_b")
    t, t2 = SparsePoly.var(param), SparsePoly.var(param + "_2")

    def chi_at(point, tval):
        sub = {c: x for c, x in zip(law.coords, point)}
        sub[param] = tval
        return chi.subs(sub)

    def act(point, tval=None):
        sub = {c: x for c, x in zip(action.source, point)}
        if tval is not None:
            sub[param] = tval
        return tuple(comp.subs(sub) for comp in action.components)

    def phi_at(a, b):
        sub = {c: x for c, x in zip(law.coords, a)}
        sub.update({prime(c): x for c, x in zip(law.coords, b)})
        return phi.subs(sub)

    out = []
    r1 = chi_at(s, t + t2) - chi_at(s, t) - chi_at(act(s, t), t2)
    out.append(CheckResult("chi_tilde_1", r1.is_zero(), "" if r1.is_zero() else str(r1)))
    r2 = (chi_at(law.product(s, s1), t) - chi_at(s, t) - chi_at(s1, t)
          - phi_at(act(s), act(s1)) + phi_at(s, s1))
    out.append(CheckResult("chi_tilde_2", r2.is_zero(), "" if r2.is_zero() else str(r2)))
    unit = {c: u for c, u in zip(law.coords, law.unit)}
    bad = []
    for c in law.coords:
        v = chi.deriv(c).deriv(param).subs(unit).subs({param: 0})
        if v:
            bad.append(f"{c}: {v}")
    out.append(CheckResult("chi_tilde_3", not bad, "; ".join(bad)))
    return out


def verify_double_chi_identities(law1: GroupLaw, phi1, action1: PolyMap, chi, sigma1, Z1,
                                 param: str = "t", rparam: str = "r") -> list[CheckResult]:
    """The three identities for chi in a symplectic double extension of S1.

    ``action1`` is phi_1(r) with parameter ``rparam``; ``sigma1`` is the
    matrix of sigma1 on the coordinate basis at the unit.
    """
    phi1, chi = P(phi1), P(chi)
    s, s1 = law1.point("_a"), law1.point("_b")
    t, t2 = SparsePoly.var(param), SparsePoly.var(param + "_2")
    r = SparsePoly.var(rparam)

    def chi_at(point, tval):
        sub = {c: x for c, x in zip(law1.coords, point)}
        sub[param] = tval
        return chi.subs(sub)

    def act(point, rval):
        sub = {c: x for c, x in zip(action1.source, point)}
        sub[rparam] = rval
        return tuple(comp.subs(sub) for comp in action1.components)

    def phi_at(a, b):
        sub = {c: x for c, x in zip(law1.coords, a)}
        sub.update({prime(c): x for c, x in zip(law1.coords, b)})
        return phi1.subs(sub)

    out = []
    r1 = chi_at(s, t + t2) - chi_at(s, t) - chi_at(act(s, -t), t2)
    out.append(CheckResult("double_chi_1", r1.is_zero(), "" if r1.is_zero() else str(r1)))
    g = phi_at(act(s, r), act(s1, r)).deriv(rparam)
    rhs = g.subs({rparam: -t}) - g.subs({rparam: 0})
    r2 = chi_at(law1.product(s, s1), t) - chi_at(s, t) - chi_at(s1, t) - rhs
    out.append(CheckResult("double_chi_2", r2.is_zero(), "" if r2.is_zero() else str(r2)))
    unit = {c: u for c, u in zip(law1.coords, law1.unit)}
    sig = sigma1 if isinstance(sigma1, RatMatrix) else RatMatrix(sigma1)
    z = [frac(x) for x in Z1]
    bad = []
    for i, c in enumerate(law1.coords):
        lhs = chi.deriv(c).deriv(param).subs(unit).subs({param: 0})
        val = -sum((z[a] * sig[a, i] for a in range(len(z))), Fraction(0))
        if lhs != val:
            bad.append(f"{c}: {lhs} != {val}")
    out.append(CheckResult("double_chi_3", not bad, "; ".join(bad)))
    return out


def cocycle_two_form(law: GroupLaw, phi) -> RatMatrix:
    """sigma(X, Y) from phi: mixed second derivatives at (e, e), antisymmetrised."""
    phi = P(phi)
    unit = {c: u for c, u in zip(law.coords, law.unit)}
    unit.update({prime(c): u for c, u in zip(law.coords, law.unit)})
    n = law.dim
    H = [[phi.deriv(law.coords[i]).deriv(prime(law.coords[j])).subs(unit).constant_value() for j in range(n)]
         for i in range(n)]
    return RatMatrix([[H[i][j] - H[j][i] for j in range(n)] for i in range(n)])


# ---------------------------------------------------------------------------
# constructions of group laws


def central_group_law(law: GroupLaw, phi, u: str = "u", label: str | None = None) -> GroupLaw:
    """R (.)_phi S with (u, s)(u', s') = (u + u' + phi(s, s'), s s')."""
    phi = P(phi)
    first = SparsePoly.var(u) + SparsePoly.var(prime(u)) + phi
    return GroupLaw((u,) + law.coords, (first,) + law.mul, label=label)


def semidirect_group_law(law: GroupLaw, action: PolyMap, param: str, label: str | None = None) -> GroupLaw:
    """H x_phi R with (h, t)(h', t') = (h phi_t(h'), t + t'); the action is on H's coordinates."""
    h = law.coords_point()
    hp = tuple(SparsePoly.var(prime(c)) for c in law.coords)
    acted = tuple(comp.subs({**{c: x for c, x in zip(action.source, hp)}, param: SparsePoly.var(param)})
                  for comp in action.components)
    mul = law.product(h, acted) + (SparsePoly.var(param) + SparsePoly.var(prime(param)),)
    return GroupLaw(law.coords + (param,), mul, label=label)


def same_law(a: GroupLaw, b: GroupLaw) -> bool:
    return a.coords == b.coords and not any(_diff(a.mul, b.mul))


def lie_algebra_of_group(law: GroupLaw, label: str | None = None) -> LieAlgebra:
    """Structure constants of the left-invariant fields X_i = d/dh_i (g h)|_{h=e}.

    The commutator of left-invariant fields is left-invariant, so it is
    enough to evaluate it at the unit.
    """
    n = law.dim
    coords = law.coords
    unit_p = {prime(c): u for c, u in zip(coords, law.unit)}
    # X_i(g) has components d mul_k / d x'_i at x' = e
    fields = [[m.deriv(prime(coords[i])).subs(unit_p) for m in law.mul] for i in range(n)]
    unit = {c: u for c, u in zip(coords, law.unit)}
    frame = RatMatrix([[fields[i][k].subs(unit).constant_value() for i in range(n)] for k in range(n)])
    finv = inverse(frame)
    br = {}
    for i in range(n):
        for j in range(i + 1, n):
            comm = []
            for k in range(n):
                v = SparsePoly.zero()
                for a in range(n):
                    v = v + fields[i][a] * fields[j][k].deriv(coords[a]) - fields[j][a] * fields[i][k].deriv(coords[a])
                comm.append(v.subs(unit).constant_value())
            c = finv @ comm
            if any(c):
                br[(i, j)] = {k: x for k, x in enumerate(c) if x}
    return LieAlgebra(n, br, label)


def coframe_algebra(law: GroupLaw, coframe: Sequence[PolyForm], label: str | None = None) -> LieAlgebra:
    """The algebra whose dual basis is the given left-invariant coframe.

    d of each coframe form, evaluated at the unit and written in the coframe
    basis, gives d e^k; forms are assumed left-invariant (check separately).
    """
    n = law.dim
    unit = {c: u for c, u in zip(law.coords, law.unit)}
    A = RatMatrix([[f.terms.get((j,), SparsePoly.zero()).subs(unit).constant_value() for j in range(n)]
                   for f in coframe])
    Ainv = inverse(A)   # dx_j = sum_k Ainv[j][k] theta_k at the unit
    dforms = []
    for f in coframe:
        df = f.d()
        coeffs = {}
        for (i, j), c in df.terms.items():
            cv = c.subs(unit).constant_value()
            if not cv:
                continue
            # dx_i ^ dx_j = sum_{a,b} Ainv[i][a] Ainv[j][b] theta_a ^ theta_b
            for a in range(n):
                for b in range(n):
                    if a == b:
                        continue
                    w = cv * Ainv[i, a] * Ainv[j, b]
                    if not w:
                        continue
                    key, sgn = ((a, b), 1) if a < b else ((b, a), -1)
                    coeffs[key] = coeffs.get(key, 0) + sgn * w
        dforms.append(KForm(n, 2, coeffs))
    return algebra_from_differentials(n, dforms, label)


@dataclass
class GroupModel:
    """A group law with named left-invariant forms, maps and lattice data."""
    law: GroupLaw
    forms: dict = field(default_factory=dict)
    coframe: list = field(default_factory=list)     # names of forms in basis order
    lattice: LatticeSpec | None = None
    maps: dict = field(default_factory=dict)        # name -> (PolyMap, parameter or None)
    invariant: dict = field(default_factory=dict)   # map name -> list of form names it preserves
    label: str | None = None

    @classmethod
    def from_json(cls, data) -> "GroupModel":
        law = GroupLaw(tuple(data["coords"]), tuple(data["mul"]), data.get("inverse"), data.get("unit"))
        forms = {k: PolyForm.parse(law.coords, v) for k, v in data.get("forms", {}).items()}
        lat = data.get("lattice")
        lattice = LatticeSpec(tuple(frac(m) for m in lat["moduli"]), tuple(frac(o) for o in lat.get("offsets", []))) if lat else None
        maps = {}
        for k, v in data.get("maps", {}).items():
            maps[k] = (PolyMap.of(law.coords, v["components"]), v.get("param"))
        return cls(law, forms, list(data.get("coframe", list(forms))), lattice, maps,
                   {k: list(v) for k, v in data.get("invariant", {}).items()}, data.get("label"))

    def to_json(self):
        out = {"label": self.label, "coords": list(self.law.coords), "mul": [str(m) for m in self.law.mul],
               "forms": {k: {f"d{f.coords[i[0]]}": str(c) for i, c in f.terms.items()} for k, f in self.forms.items()},
               "coframe": self.coframe}
        if self.lattice:
            out["lattice"] = {"moduli": [str(m) for m in self.lattice.moduli],
                              "offsets": [str(o) for o in self.lattice.offsets]}
        if self.maps:
            out["maps"] = {k: {"components": [str(c) for c in m.components], "param": p}
                           for k, (m, p) in self.maps.items()}
        if self.invariant:
            out["invariant"] = self.invariant
        return out

    def run_checks(self) -> list[CheckResult]:
        results = [verify_group_law(self.law)]
        for name, f in self.forms.items():
            r = verify_left_invariance(self.law, f)
            results.append(CheckResult(f"left_invariant:{name}", r.ok, r.detail))
        for name, (m, param) in self.maps.items():
            if param:
                r = verify_one_parameter(m, param)
                results.append(CheckResult(f"one_parameter:{name}", r.ok, r.detail))
            r = verify_homomorphism(self.law, m)
            results.append(CheckResult(f"automorphism:{name}", r.ok, r.detail))
            for fname in self.invariant.get(name, []):
                r = verify_invariance(m, self.forms[fname])
                results.append(CheckResult(f"preserves:{name}:{fname}", r.ok, r.detail))
            if self.lattice is not None:
                r = verify_lattice_invariance(m, self.lattice, [param] if param else [])
                results.append(CheckResult(f"lattice:{name}", r.ok, r.detail))
        if self.lattice is not None:
            r = verify_lattice_subgroup(self.law, self.lattice)
            results.append(CheckResult("lattice_subgroup", r.ok, r.detail))
        return results
