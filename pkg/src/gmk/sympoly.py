"""Sparse polynomials in the commuting indeterminates A, B, M, and the two
sides of the binomial identity that controls the universal iterate.

The identity compares

    LHS_i = sum_{j<=i} sum_{k<=j} C(i,j) C(j,k) C(M+j,k) k! (-1)^(i-j) A^k B^j
    RHS_i = (-1)^i sum_{k<=i} C(i,k) (-AB)^k k!
            sum_{j<=k} C(M+k,k-j) C(i-k,j) (1-B)^(i-k-j) (-B)^j

where C(M+j, k) is the degree-k polynomial in M.
"""

from __future__ import annotations

import math
from fractions import Fraction

VARS = ("A", "B", "M")


class SymPoly:
    """Polynomial over Q in A, B, M stored as {(a, b, m): coefficient}."""

    __slots__ = ("terms",)
    __hash__ = None

    def __init__(self, terms=None):
        clean = {}
        for mono, c in (terms or {}).items():
            if len(mono) != 3 or any(e < 0 for e in mono):
                raise ValueError(f"bad monomial {mono}")
            if c:
                clean[tuple(mono)] = Fraction(c)
        self.terms = clean

    @classmethod
    def const(cls, c) -> SymPoly:
        return cls({(0, 0, 0): c})

    @classmethod
    def var(cls, name: str) -> SymPoly:
        mono = [0, 0, 0]
        mono[VARS.index(name)] = 1
        return cls({tuple(mono): 1})

    @staticmethod
    def _coerce(x) -> SymPoly:
        if isinstance(x, SymPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return SymPoly.const(x)
        raise TypeError(f"cannot use {type(x).__name__} as a polynomial")

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            out[mono] = out.get(mono, 0) + c
        return SymPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return SymPoly({mono: -c for mono, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                out[mono] = out.get(mono, 0) + c1 * c2
        return SymPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> SymPoly:
        if e < 0:
            raise ValueError("negative powers are not polynomials")
        result, base = SymPoly.const(1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def __call__(self, A=0, B=0, M=0):
        """Evaluate at numbers (exact for int / Fraction inputs)."""
        total = 0
        for (a, b, m), c in self.terms.items():
            total += c * A ** a * B ** b * M ** m
        return total

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, c in sorted(self.terms.items()):
            vars_ = "*".join(f"{v}^{e}" if e > 1 else v for v, e in zip(VARS, mono) if e)
            parts.append(f"{c}*{vars_}" if vars_ else str(c))
        return " + ".join(parts)


A = SymPoly.var("A")
B = SymPoly.var("B")
M = SymPoly.var("M")


def binom_poly(x: SymPoly, k: int) -> SymPoly:
    """C(x, k) = x (x-1) ... (x-k+1) / k! as a polynomial."""
    out = SymPoly.const(1)
    for t in range(k):
        out = out * (x - t)
    return out * Fraction(1, math.factorial(k))


def binom_lemma_lhs(i: int) -> SymPoly:
    if i < 0:
        raise ValueError("i must be non-negative")
    total = SymPoly()
    for j in range(i + 1):
        sign = (-1) ** (i - j)
        for k in range(j + 1):
            c = sign * math.comb(i, j) * math.comb(j, k) * math.factorial(k)
            total = total + binom_poly(M + j, k) * A ** k * B ** j * c
    return total


def binom_lemma_rhs(i: int) -> SymPoly:
    if i < 0:
        raise ValueError("i must be non-negative")
    total = SymPoly()
    one_minus_b = 1 - B
    for k in range(i + 1):
        inner = SymPoly()
        for j in range(min(k, i - k) + 1):
            inner = inner + (binom_poly(M + k, k - j) * one_minus_b ** (i - k - j)
                             * (-B) ** j * math.comb(i - k, j))
        total = total + inner * (-A * B) ** k * (math.comb(i, k) * math.factorial(k))
    return total * (-1) ** i


# -- direct numeric evaluation, independent of SymPoly ----------------------------


def _binom_num(x, k: int):
    """C(x, k) for an integer or rational x; integer x stays in exact integers."""
    if isinstance(x, int):
        out = 1
        for t in range(k):
            out *= x - t
        return out // math.factorial(k)
    out = Fraction(1)
    for t in range(k):
        out = out * (x - t) / (t + 1)
    return out


def lemma_lhs_value(i: int, a, b, m):
    """LHS_i at numbers a, b, m (exact for rationals)."""
    total = 0
    for j in range(i + 1):
        for k in range(j + 1):
            total += ((-1) ** (i - j) * math.comb(i, j) * math.comb(j, k) * math.factorial(k)
                      * _binom_num(m + j, k) * a ** k * b ** j)
    return total


def lemma_rhs_value(i: int, a, b, m):
    total = 0
    for k in range(i + 1):
        inner = 0
        for j in range(min(k, i - k) + 1):
            inner += _binom_num(m + k, k - j) * math.comb(i - k, j) * (1 - b) ** (i - k - j) * (-b) ** j
        total += math.comb(i, k) * (-a * b) ** k * math.factorial(k) * inner
    return (-1) ** i * total
