"""Sparse multivariate polynomials with rational coefficients.

A polynomial carries an ordered tuple of variable names and a dictionary
from exponent tuples to nonzero ``Fraction`` coefficients.  Binary operations
between polynomials over different variable lists first embed both into the
union of the lists, so comparisons never depend on how a value was built.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Mapping

from .matrix import frac, format_rational


class SparsePoly:
    __slots__ = ("vars", "terms")

    def __init__(self, variables=(), terms: Mapping | None = None):
        self.vars = tuple(variables)
        clean = {}
        if terms:
            n = len(self.vars)
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n:
                    raise ValueError("exponent length does not match variables")
                c = frac(c)
                if c:
                    clean[e] = clean.get(e, 0) + c
                    if not clean[e]:
                        del clean[e]
        self.terms = clean

    # construction
    @classmethod
    def const(cls, c, variables=()) -> "SparsePoly":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, name: str, variables=None) -> "SparsePoly":
        variables = tuple(variables) if variables is not None else (name,)
        e = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {e: 1})

    @classmethod
    def zero(cls, variables=()) -> "SparsePoly":
        return cls(variables, {})

    def _with_vars(self, variables) -> "SparsePoly":
        if variables == self.vars:
            return self
        pos = {v: i for i, v in enumerate(variables)}
        n = len(variables)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * n
            for v, k in zip(self.vars, e):
                if k:
                    if v not in pos:
                        raise ValueError(f"variable {v} missing from target list")
                    ne[pos[v]] = k
            out[tuple(ne)] = c
        p = SparsePoly.__new__(SparsePoly)
        p.vars = tuple(variables)
        p.terms = out
        return p

    def _align(self, other):
        if not isinstance(other, SparsePoly):
            other = SparsePoly.const(other, self.vars)
        if other.vars == self.vars:
            return self, other
        union = self.vars + tuple(v for v in other.vars if v not in self.vars)
        return self._with_vars(union), other._with_vars(union)

    @staticmethod
    def _raw(variables, terms) -> "SparsePoly":
        p = SparsePoly.__new__(SparsePoly)
        p.vars = variables
        p.terms = terms
        return p

    # arithmetic
    def __add__(self, other):
        a, b = self._align(other)
        out = dict(a.terms)
        for e, c in b.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return SparsePoly._raw(a.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, SparsePoly):
            other = SparsePoly.const(other, self.vars)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, SparsePoly):
            c = frac(other)
            if not c:
                return SparsePoly._raw(self.vars, {})
            return SparsePoly._raw(self.vars, {e: c * v for e, v in self.terms.items()})
        a, b = self._align(other)
        out: dict = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    del out[e]
        return SparsePoly._raw(a.vars, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = frac(other)
        return self * (1 / c)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = SparsePoly.const(1, self.vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # predicates
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, SparsePoly):
            try:
                other = SparsePoly.const(frac(other), self.vars)
            except (TypeError, ValueError):
                return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(frozenset(self._normal_items()))

    def _normal_items(self):
        items = []
        for e, c in self.terms.items():
            items.append((tuple(sorted((v, k) for v, k in zip(self.vars, e) if k)), c))
        return items

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()), Fraction(0))

    def used_vars(self) -> set[str]:
        return {v for e in self.terms for v, k in zip(self.vars, e) if k}

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        if name not in self.vars:
            return 0 if self.terms else -1
        i = self.vars.index(name)
        return max((e[i] for e in self.terms), default=-1)

    # calculus and substitution
    def deriv(self, name: str) -> "SparsePoly":
        if name not in self.vars:
            return SparsePoly._raw(self.vars, {})
        i = self.vars.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return SparsePoly._raw(self.vars, out)

    def subs(self, mapping: Mapping) -> "SparsePoly":
        """Substitute polynomials or rationals for variables simultaneously."""
        if not mapping:
            return self
        images = {}
        for v in self.vars:
            if v in mapping:
                t = mapping[v]
                images[v] = t if isinstance(t, SparsePoly) else SparsePoly.const(frac(t))
            else:
                images[v] = SparsePoly.var(v)
        power_cache: dict = {}

        def power(v, k):
            key = (v, k)
            if key not in power_cache:
                power_cache[key] = images[v] ** k
            return power_cache[key]

        result = SparsePoly.zero()
        for e, c in self.terms.items():
            term = SparsePoly.const(c)
            for v, k in zip(self.vars, e):
                if k:
                    term = term * power(v, k)
            result = result + term
        return result

    def evaluate(self, point: Mapping) -> Fraction:
        total = Fraction(0)
        vals = [frac(point[v]) if v in point else None for v in self.vars]
        for e, c in self.terms.items():
            t = c
            for x, k in zip(vals, e):
                if k:
                    if x is None:
                        raise KeyError("missing value for a variable")
                    t *= x ** k
            total += t
        return total

    def coefficient(self, monomial: Mapping[str, int]) -> Fraction:
        e = tuple(monomial.get(v, 0) for v in self.vars)
        if any(k and v not in self.vars for v, k in monomial.items()):
            return Fraction(0)
        return self.terms.get(e, Fraction(0))

    def rename(self, mapping: Mapping[str, str]) -> "SparsePoly":
        new = tuple(mapping.get(v, v) for v in self.vars)
        if len(set(new)) != len(new):
            return self.subs({v: SparsePoly.var(w) for v, w in mapping.items()})
        return SparsePoly._raw(new, dict(self.terms))

    # presentation
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (-sum(e), tuple(-k for k in e))):
            c = self.terms[e]
            mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k)
            if not mono:
                s = format_rational(c)
            elif c == 1:
                s = mono
            elif c == -1:
                s = "-" + mono
            else:
                s = f"{format_rational(c)}*{mono}"
            parts.append(s)
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def __repr__(self):
        return f"SparsePoly({self})"

    def to_json(self):
        items = []
        for e, c in sorted(self.terms.items()):
            items.append({"exp": {v: k for v, k in zip(self.vars, e) if k}, "c": format_rational(c)})
        return items

    @classmethod
    def from_json(cls, data) -> "SparsePoly":
        if isinstance(data, str):
            return parse_poly(data)
        result = SparsePoly.zero()
        for t in data:
            term = SparsePoly.const(frac(t["c"]))
            for v, k in t.get("exp", {}).items():
                term = term * SparsePoly.var(v) ** int(k)
            result = result + term
        return result


def poly_vars(names) -> list[SparsePoly]:
    names = tuple(names)
    return [SparsePoly.var(n, names) for n in names]


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*'*)|(.))")


class PolyParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def parse_poly(text: str) -> SparsePoly:
    """Parse an expression such as ``z+z'+t*y'^2/2 - x^3/3``.

    Grammar: sums of products of factors; a factor is an integer, a name
    (letters, digits, underscores, trailing primes) or a parenthesised
    expression, optionally raised to a nonnegative integer power.  Division is
    only allowed by rational constants.
    """
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(3) is not None and m.group(3).isspace():
            pos = m.end()
            continue
        start = m.start(1) if m.group(1) else m.start(2) if m.group(2) else m.start(3)
        tokens.append((m.group(1) or m.group(2) or m.group(3), start, "num" if m.group(1) else "name" if m.group(2) else "op"))
        pos = m.end()
    tokens.append(("", len(text), "end"))
    idx = [0]

    def peek():
        return tokens[idx[0]]

    def take():
        t = tokens[idx[0]]
        idx[0] += 1
        return t

    def expr():
        sign = 1
        if peek()[0] in "+-" and peek()[2] == "op":
            sign = -1 if take()[0] == "-" else 1
        acc = term() * sign
        while peek()[2] == "op" and peek()[0] in "+-":
            op = take()[0]
            t = term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term():
        acc = power()
        while peek()[2] == "op" and peek()[0] in "*/":
            op, p, _ = take()
            f = power()
            if op == "*":
                acc = acc * f
            else:
                if not f.is_constant() or not f:
                    raise PolyParseError("division by a non-constant", p)
                acc = acc / f.constant_value()
        return acc

    def power():
        base = atom()
        if peek()[0] == "^":
            take()
            tok, p, kind = take()
            if kind != "num":
                raise PolyParseError("expected integer exponent", p)
            base = base ** int(tok)
        return base

    def atom():
        tok, p, kind = take()
        if kind == "num":
            return SparsePoly.const(int(tok))
        if kind == "name":
            return SparsePoly.var(tok)
        if tok == "(":
            v = expr()
            if take()[0] != ")":
                raise PolyParseError("expected ')'", p)
            return v
        if tok == "-":
            return -power()
        raise PolyParseError(f"unexpected {tok!r}", p)

    result = expr()
    if peek()[2] != "end":
        raise PolyParseError(f"unexpected {peek()[0]!r}", peek()[1])
    return result
