"""Lie algebras given by structure constants, and their exterior algebra.

Indices are 0-based internally and 1-based in every textual or JSON form.
The Chevalley-Eilenberg differential on left-invariant 1-forms is
``(d alpha)(X, Y) = -alpha([X, Y])``, so the notation slot ``de^4 = e^12``
means ``[e1, e2] = -e4``.  Forms are stored as dictionaries from strictly
increasing index tuples to coefficients; ``e^I(e_I) = 1`` (determinant
convention).  Coefficients are usually ``Fraction`` but any ring element with
``+``, ``*`` and truthiness works, which is how the search module builds
forms with polynomial coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .exactmath import RatMatrix, det, frac, format_rational, solve


class LieError(ValueError):
    pass


class JacobiViolation(LieError):
    def __init__(self, triple, residual):
        self.triple = triple
        self.residual = residual
        res = ", ".join(format_rational(x) for x in residual)
        super().__init__(f"Jacobi identity fails on e{triple[0]}, e{triple[1]}, e{triple[2]}: residual ({res})")


class DegreeError(LieError):
    pass


def zero_vector(n: int) -> tuple:
    return (Fraction(0),) * n


def basis_vector(n: int, i: int) -> tuple:
    return tuple(Fraction(int(k == i)) for k in range(n))


def vec(values: Iterable) -> tuple:
    return tuple(frac(x) for x in values)


def _add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _scale(c, v):
    return tuple(c * a for a in v)


# ---------------------------------------------------------------------------
# forms


def _merge_sign(a: tuple, b: tuple) -> int:
    """Sign of the shuffle sorting a+b, or 0 when they share an index."""
    sb = set(b)
    if any(x in sb for x in a):
        return 0
    inv = 0
    for x in a:
        for y in b:
            if x > y:
                inv += 1
    return -1 if inv % 2 else 1


class KForm:
    """Element of Lambda^k g* in the monomial basis e^I."""

    __slots__ = ("dim", "degree", "coeffs")

    def __init__(self, dim: int, degree: int, coeffs: Mapping | None = None):
        self.dim = dim
        self.degree = degree
        clean = {}
        for idx, c in (coeffs or {}).items():
            idx = tuple(idx)
            if len(idx) != degree:
                raise DegreeError(f"index {idx} has wrong length for degree {degree}")
            if any(a >= b for a, b in zip(idx, idx[1:])):
                raise LieError(f"index {idx} is not strictly increasing")
            if idx and (idx[0] < 0 or idx[-1] >= dim):
                raise LieError(f"index {idx} out of range for dimension {dim}")
            if isinstance(c, (int, str)):
                c = frac(c)
            if c:
                clean[idx] = c
        self.coeffs = clean

    @classmethod
    def _raw(cls, dim, degree, coeffs):
        f = cls.__new__(cls)
        f.dim = dim
        f.degree = degree
        f.coeffs = coeffs
        return f

    @classmethod
    def zero(cls, dim: int, degree: int) -> "KForm":
        return cls._raw(dim, degree, {})

    @classmethod
    def one(cls, dim: int) -> "KForm":
        return cls._raw(dim, 0, {(): Fraction(1)})

    @classmethod
    def covector(cls, dim: int, values: Sequence) -> "KForm":
        return cls(dim, 1, {(i,): frac(x) if isinstance(x, (int, str)) else x for i, x in enumerate(values)})

    @classmethod
    def basis(cls, dim: int, *idx: int) -> "KForm":
        """The monomial e^{i1...ik} for 0-based indices (any order, sign applied)."""
        order = sorted(range(len(idx)), key=lambda a: idx[a])
        s = tuple(idx[a] for a in order)
        if len(set(s)) != len(s):
            return cls.zero(dim, len(idx))
        inv = sum(1 for a in range(len(order)) for b in range(a + 1, len(order)) if order[a] > order[b])
        return cls(dim, len(idx), {s: Fraction(-1 if inv % 2 else 1)})

    @classmethod
    def from_matrix(cls, m) -> "KForm":
        """2-form with f(e_i, e_j) = m[i][j]."""
        m = m if isinstance(m, RatMatrix) else RatMatrix(m)
        n = m.nrows
        return cls(n, 2, {(i, j): m[i, j] for i in range(n) for j in range(i + 1, n)})

    def to_matrix(self) -> RatMatrix:
        if self.degree != 2:
            raise DegreeError("only 2-forms have a matrix")
        n = self.dim
        rows = [[Fraction(0)] * n for _ in range(n)]
        for (i, j), c in self.coeffs.items():
            rows[i][j] = c
            rows[j][i] = -c
        return RatMatrix(rows, n)

    def vector(self) -> tuple:
        """Coefficients of a 1-form as a vector over the dual basis."""
        if self.degree != 1:
            raise DegreeError("only 1-forms are vectors")
        return tuple(self.coeffs.get((i,), Fraction(0)) for i in range(self.dim))

    def coeff_vector(self) -> tuple:
        return tuple(self.coeffs.get(I, Fraction(0)) for I in combinations(range(self.dim), self.degree))

    @classmethod
    def from_coeff_vector(cls, dim: int, degree: int, values: Sequence) -> "KForm":
        return cls(dim, degree, dict(zip(combinations(range(dim), degree), values)))

    def _check(self, other: "KForm"):
        if self.dim != other.dim:
            raise LieError("forms live on algebras of different dimension")

    def __add__(self, other: "KForm") -> "KForm":
        self._check(other)
        if other.degree != self.degree:
            raise DegreeError("adding forms of different degree")
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            v = out[k] + c if k in out else c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return KForm._raw(self.dim, self.degree, out)

    def __neg__(self):
        return KForm._raw(self.dim, self.degree, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other: "KForm") -> "KForm":
        return self + (-other)

    def scale(self, c) -> "KForm":
        if isinstance(c, (int, str)):
            c = frac(c)
        out = {}
        for k, v in self.coeffs.items():
            w = c * v
            if w:
                out[k] = w
        return KForm._raw(self.dim, self.degree, out)

    def __mul__(self, c):
        if isinstance(c, KForm):
            return self.wedge(c)
        return self.scale(c)

    def __rmul__(self, c):
        return self.scale(c)

    def __xor__(self, other: "KForm") -> "KForm":
        return self.wedge(other)

    def wedge(self, other: "KForm") -> "KForm":
        self._check(other)
        deg = self.degree + other.degree
        out: dict = {}
        if deg > self.dim:
            return KForm._raw(self.dim, deg, out)
        for I, a in self.coeffs.items():
            for J, b in other.coeffs.items():
                s = _merge_sign(I, J)
                if not s:
                    continue
                K = tuple(sorted(I + J))
                v = a * b
                if s < 0:
                    v = -v
                if K in out:
                    v = out[K] + v
                    if v:
                        out[K] = v
                    else:
                        del out[K]
                else:
                    out[K] = v
        return KForm._raw(self.dim, deg, out)

    def power(self, k: int) -> "KForm":
        result = KForm._raw(self.dim, 0, {(): Fraction(1)})
        for _ in range(k):
            result = result.wedge(self)
        return result

    def interior(self, v: Sequence) -> "KForm":
        if self.degree == 0:
            raise DegreeError("interior product of a 0-form")
        out: dict = {}
        for I, c in self.coeffs.items():
            for s, i in enumerate(I):
                x = v[i]
                if not x:
                    continue
                K = I[:s] + I[s + 1:]
                w = c * x
                if s % 2:
                    w = -w
                if K in out:
                    w = out[K] + w
                    if w:
                        out[K] = w
                    else:
                        del out[K]
                else:
                    out[K] = w
        return KForm._raw(self.dim, self.degree - 1, out)

    def evaluate(self, *vectors):
        """f(v1, ..., vk) via the determinant formula."""
        if len(vectors) != self.degree:
            raise DegreeError("wrong number of arguments")
        if self.degree == 0:
            return self.coeffs.get((), Fraction(0))
        total = Fraction(0)
        for I, c in self.coeffs.items():
            minor = RatMatrix([[v[i] for v in vectors] for i in I])
            d = det(minor)
            if d:
                total = total + c * d
        return total

    def __call__(self, *vectors):
        return self.evaluate(*vectors)

    def top_coefficient(self):
        if self.degree != self.dim:
            raise DegreeError("not a top-degree form")
        return self.coeffs.get(tuple(range(self.dim)), Fraction(0))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, KForm):
            return NotImplemented
        return self.dim == other.dim and self.degree == other.degree and (self - other).is_zero()

    def __hash__(self):
        return hash((self.dim, self.degree, frozenset(self.coeffs.items())))

    def pullback(self, p) -> "KForm":
        """Pull back along the linear map with matrix ``p`` (columns = images)."""
        p = p if isinstance(p, RatMatrix) else RatMatrix(p)
        m = p.ncols
        ones = [KForm._raw(m, 1, {(i,): p[j, i] for i in range(m) if p[j, i]}) for j in range(self.dim)]
        result = KForm.zero(m, self.degree)
        for I, c in self.coeffs.items():
            t = KForm._raw(m, 0, {(): c})
            for i in I:
                t = t.wedge(ones[i])
            result = result + t
        return result

    def restrict(self, basis: Sequence[Sequence]) -> "KForm":
        return self.pullback(RatMatrix.from_columns(list(basis), self.dim))

    def __str__(self):
        return format_form(self)

    def __repr__(self):
        return f"KForm({self.degree}, {format_form(self)})"

    def to_json(self):
        return {"degree": self.degree,
                "terms": [{"idx": [i + 1 for i in I], "c": _coeff_str(c)} for I, c in sorted(self.coeffs.items())]}

    @classmethod
    def from_json(cls, dim: int, data) -> "KForm":
        deg = int(data["degree"])
        out = {}
        for t in data.get("terms", []):
            idx = [int(i) - 1 for i in t["idx"]]
            f = KForm.basis(dim, *idx).scale(frac(t["c"]))
            for k, v in f.coeffs.items():
                out[k] = out.get(k, 0) + v
        return cls(dim, deg, out)


def _coeff_str(c) -> str:
    if isinstance(c, Fraction):
        return format_rational(c)
    return str(c)


def format_form(f: KForm) -> str:
    if not f.coeffs:
        return "0"
    wide = f.dim > 9
    parts = []
    for I in sorted(f.coeffs):
        c = f.coeffs[I]
        name = "e" + ("(" + ",".join(str(i + 1) for i in I) + ")" if wide else "".join(str(i + 1) for i in I))
        if not I:
            name = "1"
        if isinstance(c, Fraction):
            if c == 1:
                s = name
            elif c == -1:
                s = "-" + name
            else:
                s = f"{format_rational(c)}*{name}" if I else format_rational(c)
        else:
            s = f"({c})*{name}"
        parts.append(s)
    out = parts[0]
    for p in parts[1:]:
        out += p if p.startswith("-") else "+" + p
    return out


# ---------------------------------------------------------------------------
# algebras


class LieAlgebra:
    """Finite-dimensional real Lie algebra with rational structure constants.

    ``brackets`` maps 0-based pairs (i, j), i < j, to sparse vectors
    ``{k: c}`` meaning ``[e_i, e_j] = sum_k c e_k``.  Jacobi is checked on
    construction.
    """

    def __init__(self, dim: int, brackets: Mapping | None = None, label: str | None = None,
                 check: bool = True):
        if dim < 0:
            raise LieError("negative dimension")
        self.dim = dim
        self.label = label
        table = [[None] * dim for _ in range(dim)]
        zero = zero_vector(dim)
        sparse = {}
        for (i, j), v in (brackets or {}).items():
            if i == j:
                raise LieError("bracket of a basis vector with itself must vanish")
            if not (0 <= i < dim and 0 <= j < dim):
                raise LieError(f"bracket index ({i + 1},{j + 1}) out of range")
            if isinstance(v, Mapping):
                items = {int(k): frac(c) for k, c in v.items()}
            else:
                items = {k: frac(c) for k, c in enumerate(v)}
            if any(k < 0 or k >= dim for k in items):
                raise LieError("bracket value index out of range")
            if i > j:
                i, j = j, i
                items = {k: -c for k, c in items.items()}
            items = {k: c for k, c in items.items() if c}
            if (i, j) in sparse:
                raise LieError(f"bracket ({i + 1},{j + 1}) given twice")
            if items:
                sparse[(i, j)] = items
        for i in range(dim):
            for j in range(dim):
                table[i][j] = zero
        for (i, j), items in sparse.items():
            v = tuple(items.get(k, Fraction(0)) for k in range(dim))
            table[i][j] = v
            table[j][i] = tuple(-x for x in v)
        self._table = table
        self.brackets = sparse
        if check:
            self.check_jacobi()

    # basic operations
    def bracket_basis(self, i: int, j: int) -> tuple:
        return self._table[i][j]

    def bracket(self, x: Sequence, y: Sequence) -> tuple:
        n = self.dim
        out = [Fraction(0)] * n
        for i in range(n):
            a = x[i]
            if not a:
                continue
            row = self._table[i]
            for j in range(n):
                b = y[j]
                if not b:
                    continue
                v = row[j]
                ab = a * b
                for k in range(n):
                    if v[k]:
                        out[k] += ab * v[k]
        return tuple(out)

    def ad(self, x: Sequence) -> RatMatrix:
        n = self.dim
        cols = [self.bracket(x, basis_vector(n, j)) for j in range(n)]
        return RatMatrix.from_columns(cols, n) if n else RatMatrix([], 0)

    def ad_basis(self, i: int) -> RatMatrix:
        return RatMatrix.from_columns([self._table[i][j] for j in range(self.dim)], self.dim)

    def check_jacobi(self) -> None:
        n = self.dim
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    ei, ej, ek = (basis_vector(n, t) for t in (i, j, k))
                    r = _add(_add(self.bracket(self._table[i][j], ek), self.bracket(self._table[j][k], ei)),
                             self.bracket(self._table[k][i], ej))
                    if any(r):
                        raise JacobiViolation((i + 1, j + 1, k + 1), r)

    def is_abelian(self) -> bool:
        return not self.brackets

    def structure_constants(self) -> dict:
        return {k: dict(v) for k, v in self.brackets.items()}

    def __eq__(self, other):
        return isinstance(other, LieAlgebra) and self.dim == other.dim and self.brackets == other.brackets

    def __hash__(self):
        return hash((self.dim, frozenset((k, frozenset(v.items())) for k, v in self.brackets.items())))

    def __repr__(self):
        name = f" {self.label}" if self.label else ""
        return f"<LieAlgebra{name} dim={self.dim} {self.notation_safe()}>"

    def notation_safe(self) -> str:
        try:
            from .notation import to_structure_notation
            return to_structure_notation(self)
        except Exception:
            return f"{len(self.brackets)} brackets"

    # exterior algebra
    def d_covector(self, k: int) -> KForm:
        """d e^k = -sum_{i<j} c^k_ij e^ij."""
        return self._dcov()[k]

    def _dcov(self):
        if not hasattr(self, "_dcov_cache"):
            n = self.dim
            out = []
            for k in range(n):
                coeffs = {}
                for (i, j), v in self.brackets.items():
                    c = v.get(k)
                    if c:
                        coeffs[(i, j)] = -c
                out.append(KForm._raw(n, 2, coeffs))
            self._dcov_cache = out
        return self._dcov_cache

    def d_monomial(self, idx: tuple) -> KForm:
        cache = self.__dict__.setdefault("_dmono_cache", {})
        if idx in cache:
            return cache[idx]
        n = self.dim
        result = KForm.zero(n, len(idx) + 1)
        dc = self._dcov()
        for s, i in enumerate(idx):
            left = KForm._raw(n, s, {idx[:s]: Fraction(1)})
            right = KForm._raw(n, len(idx) - s - 1, {idx[s + 1:]: Fraction(1)})
            term = left.wedge(dc[i]).wedge(right)
            result = result - term if s % 2 else result + term
        cache[idx] = result
        return result

    def change_basis(self, p, label: str | None = None) -> "LieAlgebra":
        """Same algebra written in the basis given by the columns of ``p``."""
        from .exactmath import inverse
        p = p if isinstance(p, RatMatrix) else RatMatrix(p)
        n = self.dim
        if p.shape != (n, n):
            raise LieError("change of basis must be square")
        pinv = inverse(p)
        cols = p.columns()
        br = {}
        for i in range(n):
            for j in range(i + 1, n):
                v = pinv @ self.bracket(cols[i], cols[j])
                if any(v):
                    br[(i, j)] = {k: c for k, c in enumerate(v) if c}
        return LieAlgebra(n, br, label or self.label, check=False)

    def to_json(self):
        return {"dim": self.dim,
                "brackets": [{"i": i + 1, "j": j + 1, "c": {str(k + 1): format_rational(c) for k, c in sorted(v.items())}}
                             for (i, j), v in sorted(self.brackets.items())],
                "label": self.label}

    @classmethod
    def from_json(cls, data) -> "LieAlgebra":
        br = {}
        for b in data.get("brackets", []):
            i, j = int(b["i"]) - 1, int(b["j"]) - 1
            br[(i, j)] = {int(k) - 1: frac(c) for k, c in b["c"].items()}
        return cls(int(data["dim"]), br, data.get("label"))


def make_algebra(dim: int, brackets: Mapping | None = None, label: str | None = None) -> LieAlgebra:
    """Build an algebra from 1-based brackets ``{(i, j): {k: c}}``."""
    br = {}
    for (i, j), v in (brackets or {}).items():
        br[(i - 1, j - 1)] = {int(k) - 1: c for k, c in v.items()}
    return LieAlgebra(dim, br, label)


def algebra_from_differentials(dim: int, dforms: Mapping[int, KForm] | Sequence, label: str | None = None) -> LieAlgebra:
    """Algebra whose dual basis satisfies d e^k = dforms[k] (0-based k)."""
    items = dforms.items() if isinstance(dforms, Mapping) else enumerate(dforms)
    br: dict = {}
    for k, f in items:
        if f is None:
            continue
        if f.degree != 2 or f.dim != dim:
            raise LieError("differentials of covectors must be 2-forms on the same dimension")
        for (i, j), c in f.coeffs.items():
            br.setdefault((i, j), {})[k] = -c
    return LieAlgebra(dim, br, label)


def ce_differential(alg: LieAlgebra, f: KForm) -> KForm:
    if f.dim != alg.dim:
        raise LieError("form and algebra dimensions differ")
    result = KForm.zero(alg.dim, f.degree + 1)
    if f.degree == 0:
        return result
    for I, c in f.coeffs.items():
        result = result + alg.d_monomial(I).scale(c)
    return result


def wedge(a: KForm, b: KForm) -> KForm:
    return a.wedge(b)


def interior(v: Sequence, f: KForm) -> KForm:
    return f.interior(v)


def lie_derivative(alg: LieAlgebra, v: Sequence, f: KForm) -> KForm:
    """Cartan formula L_v = i_v d + d i_v."""
    df = ce_differential(alg, f)
    out = df.interior(v)
    if f.degree > 0:
        out = out + ce_differential(alg, f.interior(v))
    return out


def lie_derivative_direct(alg: LieAlgebra, v: Sequence, f: KForm) -> KForm:
    """(L_v f)(Y1..Yk) = -sum_i f(Y1, .., [v, Y_i], .., Yk), evaluated on basis tuples."""
    n = alg.dim
    k = f.degree
    basis = [basis_vector(n, i) for i in range(n)]
    adv = [alg.bracket(v, b) for b in basis]
    coeffs = {}
    for I in combinations(range(n), k):
        total = Fraction(0)
        for s in range(k):
            args = [basis[i] for i in I]
            args[s] = adv[I[s]]
            total -= f.evaluate(*args)
        if total:
            coeffs[I] = total
    return KForm(n, k, coeffs)


def form_basis(dim: int, degree: int) -> list[tuple]:
    return list(combinations(range(dim), degree))


@lru_cache(maxsize=None)
def _index_map(dim: int, degree: int):
    return {I: r for r, I in enumerate(combinations(range(dim), degree))}


def differential_matrix(alg: LieAlgebra, degree: int, twist: KForm | None = None) -> RatMatrix:
    """Matrix of d (or d_omega) from Lambda^degree to Lambda^(degree+1)."""
    n = alg.dim
    src = form_basis(n, degree)
    tgt = _index_map(n, degree + 1)
    rows = [[Fraction(0)] * len(src) for _ in range(len(tgt))]
    for col, I in enumerate(src):
        img = ce_differential(alg, KForm._raw(n, degree, {I: Fraction(1)}))
        if twist is not None:
            img = img - twist.wedge(KForm._raw(n, degree, {I: Fraction(1)}))
        for K, c in img.coeffs.items():
            rows[tgt[K]][col] = c
    return RatMatrix(rows, len(src))


def direct_sum(a: LieAlgebra, b: LieAlgebra, label: str | None = None) -> LieAlgebra:
    n = a.dim
    br = {k: dict(v) for k, v in a.brackets.items()}
    for (i, j), v in b.brackets.items():
        br[(i + n, j + n)] = {k + n: c for k, c in v.items()}
    if label is None and a.label and b.label:
        label = f"{a.label}+{b.label}"
    return LieAlgebra(n + b.dim, br, label, check=False)


def abelian(dim: int, label: str | None = None) -> LieAlgebra:
    return LieAlgebra(dim, {}, label or f"R^{dim}")


def span_bracket(alg: LieAlgebra, xs: Sequence[Sequence], ys: Sequence[Sequence]) -> list[tuple]:
    return [alg.bracket(x, y) for x in xs for y in ys]


@dataclass(frozen=True)
class InvariantSignature:
    dim: int
    betti: tuple
    lower_central: tuple
    derived: tuple
    center_dim: int
    filtration: tuple | None

    def to_json(self):
        return {"dim": self.dim, "betti": list(self.betti), "lower_central": list(self.lower_central),
                "derived": list(self.derived), "center_dim": self.center_dim,
                "filtration": list(self.filtration) if self.filtration is not None else None}


def signature(alg: LieAlgebra) -> InvariantSignature:
    """Isomorphism invariants used to compare algebras built in different ways."""
    from .cohomology import betti_numbers
    from .nilpotent import center, characteristic_filtration, derived_series, lower_central_series
    lcs = lower_central_series(alg)
    filt = characteristic_filtration(alg).profile if lcs.is_nilpotent else None
    return InvariantSignature(
        dim=alg.dim,
        betti=tuple(betti_numbers(alg).betti),
        lower_central=tuple(lcs.dims),
        derived=tuple(derived_series(alg)),
        center_dim=len(center(alg)),
        filtration=tuple(filt) if filt is not None else None,
    )


def solve_vector(rows: Sequence[Sequence], rhs: Sequence) -> tuple | None:
    """Solve the linear system whose equations are the given coefficient rows."""
    if not rows:
        return None
    return solve(RatMatrix(rows), rhs)
