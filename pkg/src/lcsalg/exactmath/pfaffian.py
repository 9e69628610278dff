"""Pfaffians of skew-symmetric matrices, numeric and generic.

Both versions expand along the first remaining row and memoise on the set of
remaining indices, so a 2m x 2m Pfaffian touches at most 2^(2m) minors
instead of the (2m-1)!! perfect matchings.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .matrix import RatMatrix, as_matrix
from .poly import SparsePoly

MAX_PFAFFIAN_SIZE = 12


class PfaffianError(ValueError):
    pass


def _check_skew(m: RatMatrix) -> None:
    if not m.is_square():
        raise PfaffianError("matrix is not square")
    n = m.nrows
    for i in range(n):
        if m[i, i]:
            raise PfaffianError("matrix is not skew-symmetric")
        for j in range(i + 1, n):
            if m[i, j] != -m[j, i]:
                raise PfaffianError("matrix is not skew-symmetric")


def _expand(entry, n: int, zero, one):
    memo: dict = {}

    def pf(idx: tuple):
        if not idx:
            return one
        if idx in memo:
            return memo[idx]
        i = idx[0]
        rest = idx[1:]
        total = zero
        for pos, j in enumerate(rest):
            a = entry(i, j)
            if not a:
                continue
            sub = pf(rest[:pos] + rest[pos + 1:])
            if not sub:
                continue
            term = a * sub
            total = total + term if pos % 2 == 0 else total - term
        memo[idx] = total
        return total

    return pf(tuple(range(n)))


def pfaffian(m) -> Fraction:
    """Pfaffian of a rational skew-symmetric matrix (zero for odd size)."""
    m = as_matrix(m)
    _check_skew(m)
    n = m.nrows
    if n % 2:
        return Fraction(0)
    return _expand(lambda i, j: m[i, j], n, Fraction(0), Fraction(1))


def pfaffian_generic(family: Sequence) -> SparsePoly:
    """Pf(t_1 B_1 + ... + t_k B_k) as a polynomial in t1..tk.

    ``family`` is a list of skew-symmetric matrices of equal even size at
    most 12.  The empty family yields the zero polynomial.
    """
    mats = [as_matrix(b) for b in family]
    names = tuple(f"t{i + 1}" for i in range(len(mats)))
    if not mats:
        return SparsePoly.zero(names)
    n = mats[0].nrows
    for b in mats:
        _check_skew(b)
        if b.nrows != n:
            raise PfaffianError("matrices in the family have different sizes")
    if n % 2:
        raise PfaffianError("odd size")
    if n > MAX_PFAFFIAN_SIZE:
        raise PfaffianError(f"size {n} exceeds the cap {MAX_PFAFFIAN_SIZE}")
    k = len(mats)
    entries = {}
    for i in range(n):
        for j in range(i + 1, n):
            terms = {}
            for t, b in enumerate(mats):
                if b[i, j]:
                    e = [0] * k
                    e[t] = 1
                    terms[tuple(e)] = b[i, j]
            if terms:
                entries[(i, j)] = SparsePoly(names, terms)
    zero = SparsePoly.zero(names)
    one = SparsePoly.const(1, names)
    return _expand(lambda i, j: entries.get((i, j), zero), n, zero, one)
