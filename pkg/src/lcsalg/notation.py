"""Parsers and printers for the compact notations.

Structure notation lists d e^k slot by slot: ``(0,0,0,12,14+23)`` means
d e^4 = e^12 and d e^5 = e^14 + e^23.  Indices are single digits, so the
notation covers dimensions up to 9.  Form expressions look like
``2*e12+e34`` or ``-1/2*e135``.
"""

from __future__ import annotations

from fractions import Fraction

from .liealg import KForm, LieAlgebra, algebra_from_differentials


class ParseError(ValueError):
    def __init__(self, message: str, position: int, expected: str | None = None):
        self.position = position
        self.expected = expected
        msg = f"{message} at position {position}"
        if expected:
            msg += f" (expected {expected})"
        super().__init__(msg)


class IndexOutOfRange(ParseError):
    pass


class MixedDegree(ParseError):
    pass


def _isdigit(ch: str) -> bool:
    # ASCII only: str.isdigit accepts superscripts and other scripts
    return len(ch) == 1 and "0" <= ch <= "9"


class _Cursor:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self) -> str:
        ch = self.peek()
        if ch:
            self.pos += 1
        return ch

    def expect(self, ch: str):
        if self.peek() != ch:
            raise ParseError(f"unexpected {self.peek()!r}" if self.peek() else "unexpected end of input",
                             self.pos, repr(ch))
        self.pos += 1


def parse_structure_notation(text: str, label: str | None = None) -> LieAlgebra:
    cur = _Cursor(text)
    cur.expect("(")
    slots: list[list[tuple[int, int, int, int]]] = []
    while True:
        slots.append(_parse_slot(cur))
        ch = cur.peek()
        if ch == ",":
            cur.take()
            continue
        if ch == ")":
            cur.take()
            break
        raise ParseError(f"unexpected {ch!r}" if ch else "unexpected end of input", cur.pos, "',' or ')'")
    if cur.peek():
        raise ParseError("trailing characters", cur.pos)
    dim = len(slots)
    if dim > 9:
        raise ParseError("structure notation supports at most 9 dimensions", cur.pos)
    dforms = []
    for terms in slots:
        coeffs: dict = {}
        for sign, i, j, pos in terms:
            if i > dim or j > dim:
                raise IndexOutOfRange(f"index exceeds dimension {dim}", pos)
            key = (i - 1, j - 1)
            coeffs[key] = coeffs.get(key, 0) + sign
        dforms.append(KForm(dim, 2, coeffs))
    return algebra_from_differentials(dim, dforms, label)


def _parse_slot(cur: _Cursor):
    terms = []
    if cur.peek() == "0":
        cur.take()
        return terms
    while True:
        ch = cur.peek()
        sign = 1
        if ch and ch in "+-":
            if ch == "+" and not terms:
                raise ParseError("leading '+' is not allowed", cur.pos, "digit or '-'")
            sign = -1 if ch == "-" else 1
            cur.take()
        cur.skip()
        start = cur.pos
        a = cur.take()
        b = cur.take()
        if not (_isdigit(a) and _isdigit(b)) or a == "0" or b == "0":
            raise ParseError("expected a pair of digits 1-9", start, "index pair")
        i, j = int(a), int(b)
        if i >= j:
            raise ParseError("first index of a pair must be smaller than the second", start, "increasing pair")
        terms.append((sign, i, j, start))
        nxt = cur.peek()
        if not nxt or nxt not in "+-":
            return terms


def to_structure_notation(alg: LieAlgebra) -> str:
    """Canonical notation; raises ValueError when it cannot express the algebra."""
    n = alg.dim
    if n > 9:
        raise ValueError("structure notation supports at most 9 dimensions")
    slots = []
    for k in range(n):
        f = alg.d_covector(k)
        if not f.coeffs:
            slots.append("0")
            continue
        s = ""
        for (i, j) in sorted(f.coeffs):
            c = f.coeffs[(i, j)]
            if c not in (1, -1):
                raise ValueError("coefficients other than +-1 have no structure notation")
            sign = "-" if c < 0 else ("+" if s else "")
            s += f"{sign}{i + 1}{j + 1}"
        slots.append(s)
    return "(" + ",".join(slots) + ")"


def parse_form_expr(text: str, dim: int) -> KForm:
    """Parse ``2*e12+e34``-style expressions into a form on a ``dim``-dimensional algebra.

    A bare ``0`` is the zero 1-form; ``1`` is the constant 0-form.
    """
    cur = _Cursor(text)
    degree = None
    total: KForm | None = None
    first = True
    if cur.peek() == "":
        raise ParseError("empty form expression", 0, "term")
    while cur.peek():
        ch = cur.peek()
        sign = Fraction(1)
        if ch in "+-":
            sign = Fraction(-1) if ch == "-" else Fraction(1)
            cur.take()
        elif not first:
            raise ParseError(f"unexpected {ch!r}", cur.pos, "'+' or '-'")
        coef, idx, pos = _parse_term(cur, dim)
        if idx is None:
            term_deg = 0 if coef else None
        else:
            term_deg = len(idx)
        if term_deg is not None:
            if degree is None:
                degree = term_deg
            elif degree != term_deg:
                raise MixedDegree(f"term of degree {term_deg} in a form of degree {degree}", pos)
        if idx is None:
            f = KForm(dim, 0, {(): sign * coef}) if term_deg == 0 else None
        else:
            f = KForm.basis(dim, *[i - 1 for i in idx]).scale(sign * coef)
        if f is not None:
            total = f if total is None else total + f
        first = False
    if total is None:
        return KForm.zero(dim, 1 if degree is None else degree)
    return total


def _parse_term(cur: _Cursor, dim: int):
    cur.skip()
    start = cur.pos
    coef = None
    if _isdigit(cur.peek()):
        num = _read_int(cur)
        den = 1
        if cur.peek() == "/":
            cur.take()
            if not _isdigit(cur.peek()):
                raise ParseError("expected denominator", cur.pos, "integer")
            den = _read_int(cur)
            if den == 0:
                raise ParseError("zero denominator", cur.pos)
        coef = Fraction(num, den)
        if cur.peek() == "*":
            cur.take()
        else:
            return coef, None, start
    if cur.peek() != "e":
        raise ParseError(f"unexpected {cur.peek()!r}" if cur.peek() else "unexpected end of input", cur.pos, "'e'")
    cur.take()
    idx_pos = cur.pos
    if cur.peek() == "(":
        cur.take()
        idx = [_read_int(cur)]
        while cur.peek() == ",":
            cur.take()
            idx.append(_read_int(cur))
        cur.expect(")")
    else:
        digits = ""
        while cur.pos < len(cur.text) and _isdigit(cur.text[cur.pos]):
            digits += cur.text[cur.pos]
            cur.pos += 1
        if not digits:
            raise ParseError("expected index digits after 'e'", idx_pos, "digits")
        idx = [int(c) for c in digits]
    for i in idx:
        if i < 1 or i > dim:
            raise IndexOutOfRange(f"index {i} outside 1..{dim}", idx_pos)
    if any(a >= b for a, b in zip(idx, idx[1:])):
        raise ParseError("indices of a monomial must be strictly increasing", idx_pos, "ascending indices")
    return (coef if coef is not None else Fraction(1)), idx, start


def _read_int(cur: _Cursor) -> int:
    cur.skip()
    start = cur.pos
    while cur.pos < len(cur.text) and _isdigit(cur.text[cur.pos]):
        cur.pos += 1
    if start == cur.pos:
        raise ParseError("expected integer", start, "integer")
    return int(cur.text[start:cur.pos])
