"""Dense rational matrices and exact Gaussian elimination.

Matrices are immutable tuples of rows of ``Fraction``.  Elimination runs on
sparse row dictionaries; the pivot in each column is the candidate entry of
smallest bit size, which keeps intermediate numbers small on the very sparse
matrices that come out of structure constants.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple  # tuple[Fraction, ...]


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not accepted in exact arithmetic")
    return Fraction(x)


def format_rational(q: Fraction) -> str:
    q = frac(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _bits(q: Fraction) -> int:
    return q.numerator.bit_length() + q.denominator.bit_length()


class RatMatrix:
    """Immutable ``rows x cols`` rational matrix."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(frac(x) for x in r) for r in rows)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        for r in data:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
        self.rows = data
        self.nrows = len(data)
        self.ncols = ncols

    @classmethod
    def zeros(cls, m: int, n: int) -> "RatMatrix":
        return cls([[0] * n for _ in range(m)], n)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int | None = None) -> "RatMatrix":
        if not cols:
            return cls([[] for _ in range(nrows or 0)], 0)
        m = len(cols[0])
        return cls([[cols[j][i] for j in range(len(cols))] for i in range(m)], len(cols))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "RatMatrix":
        return RatMatrix(zip(*self.rows), self.nrows) if self.nrows else RatMatrix([], 0)

    T = property(transpose)

    def __matmul__(self, other):
        if isinstance(other, RatMatrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch")
            cols = other.columns()
            return RatMatrix([[sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)) for c in cols]
                              for r in self.rows], other.ncols)
        v = tuple(other)
        if len(v) != self.ncols:
            raise ValueError("shape mismatch")
        return tuple(sum((a * b for a, b in zip(r, v) if a and b), Fraction(0)) for r in self.rows)

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        return RatMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return RatMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def scale(self, c) -> "RatMatrix":
        c = frac(c)
        return RatMatrix([[c * a for a in r] for r in self.rows], self.ncols)

    def __neg__(self):
        return self.scale(-1)

    def __eq__(self, other):
        return isinstance(other, RatMatrix) and self.rows == other.rows and self.ncols == other.ncols

    def __hash__(self):
        return hash((self.rows, self.ncols))

    def is_zero(self) -> bool:
        return all(not x for r in self.rows for x in r)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(x) for x in r) for r in self.rows)
        return f"RatMatrix([{body}])"

    def to_json(self):
        return [[format_rational(x) for x in r] for r in self.rows]

    @classmethod
    def from_json(cls, data) -> "RatMatrix":
        return cls([[frac(x) for x in r] for r in data])


def as_matrix(m) -> RatMatrix:
    return m if isinstance(m, RatMatrix) else RatMatrix(m)


def _sparse_rows(m: RatMatrix) -> list[dict[int, Fraction]]:
    return [{j: x for j, x in enumerate(r) if x} for r in m.rows]


def _eliminate(rows: list[dict[int, Fraction]], ncols: int, stop_col: int | None = None):
    """Reduce ``rows`` in place to reduced row echelon form.

    Returns the list of (row_index, pivot_column) pairs.  Columns >= stop_col
    are never used as pivots (used for augmented systems).
    """
    limit = ncols if stop_col is None else stop_col
    pivots: list[tuple[int, int]] = []
    free_rows = list(range(len(rows)))
    for col in range(limit):
        best = None
        for ri in free_rows:
            x = rows[ri].get(col)
            if x:
                if best is None or _bits(x) < _bits(rows[best][col]):
                    best = ri
        if best is None:
            continue
        free_rows.remove(best)
        prow = rows[best]
        inv = 1 / prow[col]
        if inv != 1:
            for k in prow:
                prow[k] *= inv
        for ri in range(len(rows)):
            if ri == best:
                continue
            r = rows[ri]
            f = r.get(col)
            if not f:
                continue
            for k, v in prow.items():
                nv = r.get(k, 0) - f * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
        pivots.append((best, col))
    return pivots


def rref(m) -> tuple[RatMatrix, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    m = as_matrix(m)
    rows = _sparse_rows(m)
    pivots = _eliminate(rows, m.ncols)
    out = []
    for ri, _ in pivots:
        out.append([rows[ri].get(j, Fraction(0)) for j in range(m.ncols)])
    return RatMatrix(out, m.ncols), [c for _, c in pivots]


def rank(m) -> int:
    m = as_matrix(m)
    if m.nrows == 0 or m.ncols == 0:
        return 0
    rows = _sparse_rows(m)
    return len(_eliminate(rows, m.ncols))


def kernel_basis(m) -> list[Vector]:
    """Basis of the right kernel, one vector per free column, in column order."""
    m = as_matrix(m)
    n = m.ncols
    rows = _sparse_rows(m)
    pivots = _eliminate(rows, n)
    pivot_cols = {c: ri for ri, c in pivots}
    basis = []
    for free in range(n):
        if free in pivot_cols:
            continue
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for ri, c in pivots:
            x = rows[ri].get(free)
            if x:
                v[c] = -x
        basis.append(tuple(v))
    return basis


def solve(m, b) -> Vector | None:
    """One solution of ``m x = b`` (free variables set to 0) or None."""
    m = as_matrix(m)
    b = tuple(frac(x) for x in b)
    if len(b) != m.nrows:
        raise ValueError("right-hand side has wrong length")
    n = m.ncols
    rows = _sparse_rows(m)
    for r, x in zip(rows, b):
        if x:
            r[n] = x
    pivots = _eliminate(rows, n + 1, stop_col=n)
    used = {ri for ri, _ in pivots}
    for ri, r in enumerate(rows):
        if ri not in used and r.get(n):
            return None
    x = [Fraction(0)] * n
    for ri, c in pivots:
        x[c] = rows[ri].get(n, Fraction(0))
    return tuple(x)


def image_basis(m) -> list[Vector]:
    """Basis of the column space, taken from the pivot columns of ``m``."""
    m = as_matrix(m)
    _, piv = rref(m)
    return [m.column(j) for j in piv]


def span_rank(vectors: Sequence[Sequence]) -> int:
    if not vectors:
        return 0
    return rank(RatMatrix(vectors))


def independent_subset(vectors: Sequence[Sequence]) -> list[int]:
    """Indices of a maximal independent prefix-greedy subset."""
    if not vectors:
        return []
    _, piv = rref(RatMatrix.from_columns(vectors))
    return piv


def in_span(vectors: Sequence[Sequence], v: Sequence) -> bool:
    if not vectors:
        return all(not x for x in v)
    return solve(RatMatrix.from_columns(vectors), v) is not None


def annihilator(vectors: Sequence[Sequence], n: int) -> list[Vector]:
    """Basis of linear functionals (as coefficient vectors) vanishing on the span."""
    if not vectors:
        return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    return kernel_basis(RatMatrix(vectors, n))


def preimage(m, subspace: Sequence[Sequence]) -> list[Vector]:
    """Basis of ``{x : m x in span(subspace)}``."""
    m = as_matrix(m)
    ann = annihilator(subspace, m.nrows)
    if not ann:
        return [tuple(Fraction(int(i == j)) for j in range(m.ncols)) for i in range(m.ncols)]
    return kernel_basis(RatMatrix(ann, m.nrows) @ m)


def inverse(m) -> RatMatrix:
    m = as_matrix(m)
    if not m.is_square():
        raise ValueError("inverse of a non-square matrix")
    n = m.nrows
    rows = _sparse_rows(m)
    for i, r in enumerate(rows):
        r[n + i] = Fraction(1)
    pivots = _eliminate(rows, 2 * n, stop_col=n)
    if len(pivots) != n:
        raise ZeroDivisionError("singular matrix")
    out = [None] * n
    for ri, c in pivots:
        out[c] = [rows[ri].get(n + j, Fraction(0)) for j in range(n)]
    return RatMatrix(out, n)


def det(m) -> Fraction:
    m = as_matrix(m)
    if not m.is_square():
        raise ValueError("determinant of a non-square matrix")
    a = [list(r) for r in m.rows]
    n = len(a)
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d *= a[c][c]
        inv = 1 / a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] * inv
            if f:
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
    return d


def is_nilpotent_matrix(m) -> tuple[bool, int | None]:
    """(True, k) with k the least index such that m^k = 0, else (False, None)."""
    m = as_matrix(m)
    if not m.is_square():
        raise ValueError("nilpotency test on a non-square matrix")
    n = m.nrows
    p = m
    for k in range(1, n + 1):
        if p.is_zero():
            return True, k
        p = p @ m
    return (True, n + 1) if p.is_zero() else (False, None)


def charpoly(m) -> list[Fraction]:
    """Coefficients c_0..c_n of det(x I - m) by Faddeev-LeVerrier."""
    m = as_matrix(m)
    n = m.nrows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = RatMatrix.zeros(n, n)
    ident = RatMatrix.identity(n)
    for k in range(1, n + 1):
        mk = m @ (mk + ident.scale(coeffs[n - k + 1]))
        tr = sum((mk[i, i] for i in range(n)), Fraction(0))
        coeffs[n - k] = -tr / k
    return coeffs


def trace(m) -> Fraction:
    m = as_matrix(m)
    return sum((m[i, i] for i in range(m.nrows)), Fraction(0))
