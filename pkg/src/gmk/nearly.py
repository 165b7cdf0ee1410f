"""Nearly overconvergent forms in Serre-Tate coordinates.

A form is sum_{m, nu} c_(m,nu) (1+q)^nu X_(k,m) where X is either the
geometric basis V_(k,m) or the normalised basis W_(k,m) = p^(2nm) V_(k,m).
The Gauss-Manin connection acts by

    nabla(c (1+q)^nu W_(k,m)) = nu c (1+q)^nu W_(k+2,m) + (w - m) c (1+q)^nu W_(k+2,m+1)

with w the weight value (the integer k, or w_n + a for the universal weight
shifted by a).  In the V basis the second term carries p^(2n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .iwasawa import IwasawaSeries, build_wn_prime
from .padic import binom_general, check_prime, is_zero
from .qexp import QExpansion

BASES = ("V", "W")


@dataclass(frozen=True)
class FormWeight:
    """Weight of a nearly form: an integer k, or the universal weight w_n + shift.

    The universal weight value is p^-1 log(1+T) truncated at ``trunc``.
    """

    p: int
    k: int | None = None
    n: int = 1
    trunc: int = 0
    shift: int = 0

    @classmethod
    def classical(cls, p: int, k: int) -> FormWeight:
        return cls(p, k=k)

    @classmethod
    def universal(cls, p: int, n: int, trunc: int, shift: int = 0) -> FormWeight:
        return cls(p, None, n, trunc, shift)

    @property
    def is_classical(self) -> bool:
        return self.k is not None

    def value(self):
        if self.is_classical:
            return self.k
        return build_wn_prime(self.p, self.n, self.trunc) + self.shift

    def plus(self, a: int) -> FormWeight:
        if self.is_classical:
            return FormWeight(self.p, k=self.k + a)
        return FormWeight(self.p, None, self.n, self.trunc, self.shift + a)

    def __add__(self, other: FormWeight) -> FormWeight:
        if self.is_classical and other.is_classical:
            return FormWeight(self.p, k=self.k + other.k)
        raise ValueError("products of universal weights are outside the one-variable model")

    def label(self) -> str:
        return str(self.k) if self.is_classical else f"w_{self.n}+{self.shift}"


def _add_into(grid: dict, key, c):
    if key in grid:
        grid[key] = grid[key] + c
    else:
        grid[key] = c


class NearlyForm:
    """Finite grid (m, nu) -> coefficient at a fixed weight, level and basis."""

    __slots__ = ("weight", "basis", "n", "grid")
    __hash__ = None

    def __init__(self, weight: FormWeight, grid=None, basis: str = "W", n: int = 1):
        if basis not in BASES:
            raise ValueError(f"basis must be one of {BASES}")
        check_prime(weight.p)
        clean = {}
        for (m, nu), c in (grid or {}).items():
            if m < 0 or nu < 0:
                raise ValueError("filtration index and exponent must be non-negative")
            if not is_zero(c):
                clean[(m, nu)] = c
        object.__setattr__(self, "weight", weight)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "grid", dict(sorted(clean.items())))

    def __setattr__(self, name, value):
        raise AttributeError("NearlyForm is immutable")

    @property
    def p(self) -> int:
        return self.weight.p

    @classmethod
    def from_qexp(cls, f: QExpansion, weight: FormWeight, m: int = 0, basis: str = "W", n: int = 1) -> NearlyForm:
        """f * X_(k,m)."""
        return cls(weight, {(m, nu): c for nu, c in f.terms.items()}, basis, n)

    @property
    def filtration(self) -> int:
        """Largest m present (-1 for the zero form)."""
        return max((m for m, _ in self.grid), default=-1)

    def component(self, m: int) -> dict:
        """The q-expansion coefficients of X_(k,m), as a dict nu -> c."""
        return {nu: c for (mm, nu), c in self.grid.items() if mm == m}

    def _like(self, grid, weight=None) -> NearlyForm:
        return NearlyForm(weight or self.weight, grid, self.basis, self.n)

    def _check(self, other: NearlyForm):
        if other.weight != self.weight or other.basis != self.basis or other.n != self.n:
            raise ValueError("forms differ in weight, basis or level")

    def __add__(self, other):
        if not isinstance(other, NearlyForm):
            return NotImplemented
        self._check(other)
        out = dict(self.grid)
        for key, c in other.grid.items():
            _add_into(out, key, c)
        return self._like(out)

    def __neg__(self):
        return self._like({key: -c for key, c in self.grid.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> NearlyForm:
        return self._like({key: a * c for key, a in self.grid.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __mul__(self, other):
        """Product of forms: exponents add, filtration indices add, weights add."""
        if not isinstance(other, NearlyForm):
            return self.scale(other)
        if other.basis != self.basis or other.n != self.n:
            raise ValueError("forms differ in basis or level")
        out = {}
        for (m1, a), c1 in self.grid.items():
            for (m2, b), c2 in other.grid.items():
                _add_into(out, (m1 + m2, a + b), c1 * c2)
        return NearlyForm(self.weight + other.weight, out, self.basis, self.n)

    def map_q(self, fn) -> NearlyForm:
        """Apply a coefficient-level q-operator fn(QExpansion) -> QExpansion per filtration piece."""
        N = max((nu for _, nu in self.grid), default=0) + 1
        out = {}
        for m in sorted({m for m, _ in self.grid}):
            g = fn(QExpansion(self.p, N * self.p + 1, self.component(m)))
            for nu, c in g.terms.items():
                out[(m, nu)] = c
        return self._like(out)

    def to_basis(self, basis: str) -> NearlyForm:
        """Rescale along W_(k,m) = p^(2nm) V_(k,m)."""
        if basis == self.basis:
            return self
        if basis not in BASES:
            raise ValueError(f"basis must be one of {BASES}")
        p2n = Fraction(self.p) ** (2 * self.n)
        sign = 1 if basis == "V" else -1
        return NearlyForm(self.weight, {(m, nu): c * p2n ** (sign * m) for (m, nu), c in self.grid.items()},
                          basis, self.n)

    def is_zero(self) -> bool:
        return not self.grid

    def __eq__(self, other):
        if not isinstance(other, NearlyForm):
            return NotImplemented
        if other.basis != self.basis:
            other = other.to_basis(self.basis)
        try:
            return (self - other).is_zero()
        except ValueError:
            return False

    def __repr__(self):
        X = self.basis
        body = " + ".join(f"({c})(1+q)^{nu}{X}_{m}" for (m, nu), c in self.grid.items())
        return f"NearlyForm[k={self.weight.label()},n={self.n}]({body or '0'})"


def nabla(F: NearlyForm) -> NearlyForm:
    """One step of the Gauss-Manin connection; the weight rises by 2."""
    w = F.weight.value()
    factor = 1 if F.basis == "W" else F.p ** (2 * F.n)
    out = {}
    for (m, nu), c in F.grid.items():
        if nu:
            _add_into(out, (m, nu), c * nu)
        _add_into(out, (m + 1, nu), (w - m) * c * factor)
    return NearlyForm(F.weight.plus(2), out, F.basis, F.n)


def nabla_pow(F: NearlyForm, s: int) -> NearlyForm:
    """nabla^s by the closed form

    nabla^s(f X_(k,m)) = sum_i P^i binom(s,i) binom(w+s-m-1,i) i! d^(s-i) f X_(k+2s,m+i),

    with P = p^(2n) in the V basis and 1 in the W basis.
    """
    if s < 0:
        raise ValueError("s must be non-negative")
    if s == 0:
        return F
    w = F.weight.value()
    P = 1 if F.basis == "W" else F.p ** (2 * F.n)
    out = {}
    binoms = {}
    for (m, nu), c in F.grid.items():
        for i in range(s + 1):
            key = (m, i)
            if key not in binoms:
                binoms[key] = binom_general(w + (s - m - 1), i)
            coef = binoms[key] * (P ** i * math.comb(s, i) * math.factorial(i) * nu ** (s - i))
            if is_zero(coef):
                continue
            _add_into(out, (m + i, nu), coef * c)
    return NearlyForm(F.weight.plus(2 * s), out, F.basis, F.n)


def nabla_iter(F: NearlyForm, s: int) -> NearlyForm:
    """nabla applied s times (the composition the closed form must match)."""
    for _ in range(s):
        F = nabla(F)
    return F


def graded_raise(F: NearlyForm, m: int) -> dict:
    """The map Gr_m -> Gr_(m+1) induced by nabla, applied to the m-th piece of F.

    Returns nu -> coefficient of X_(k+2,m+1); it should be (w - m) (times p^(2n)
    in the V basis) times the m-th component of F.
    """
    piece = NearlyForm(F.weight, {(mm, nu): c for (mm, nu), c in F.grid.items() if mm == m}, F.basis, F.n)
    return nabla(piece).component(m + 1)
