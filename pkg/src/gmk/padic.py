"""Capped-precision p-adic scalars and the primitives built on them.

A :class:`PadicScalar` stores ``p**val * unit`` known modulo ``p**prec``.
Precision only ever shrinks under arithmetic: sums keep the smaller
absolute precision, products and quotients keep the smaller relative
precision.  The exact zero (``val = prec = inf``) is the only exact value;
it never consumes precision.

Plain ``int`` and ``Fraction`` operands are treated as exact.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction
from functools import lru_cache

INF = math.inf


class PrecisionError(ArithmeticError):
    """Raised when a computation has no tracked digits left."""


def default_prec() -> int:
    return int(os.environ.get("GMK_DEFAULT_PREC", "20"))


@lru_cache(maxsize=None)
def check_prime(p: int) -> int:
    if p == 2:
        raise ValueError("p = 2 is not supported; an odd prime is required")
    if p < 3 or any(p % d == 0 for d in range(2, math.isqrt(p) + 1)):
        raise ValueError(f"{p} is not an odd prime")
    return p


def vp_int(x: int, p: int) -> int:
    if x == 0:
        raise ValueError("valuation of 0")
    e = 0
    while x % p == 0:
        x //= p
        e += 1
    return e


def valuation(x, p: int):
    """p-adic valuation of an int, Fraction or any object with ``valuation()``.

    Returns ``INF`` for an exact zero.
    """
    if isinstance(x, (int, Fraction)):
        if x == 0:
            return INF
        x = Fraction(x)
        return vp_int(x.numerator, p) - vp_int(x.denominator, p)
    return x.valuation()


def is_zero(x) -> bool:
    if isinstance(x, (int, Fraction)):
        return x == 0
    return x.is_zero()


def _split_rational(x: Fraction, p: int) -> tuple[int, Fraction]:
    """Write nonzero x as p**e * u with u a p-adic unit."""
    num, den = x.numerator, x.denominator
    e = 0
    while num % p == 0:
        num //= p
        e += 1
    while den % p == 0:
        den //= p
        e -= 1
    return e, Fraction(num, den)


class PadicScalar:
    """Element of Q_p known modulo ``p**prec``."""

    __slots__ = ("p", "val", "unit", "prec")
    __hash__ = None  # equality is only up to precision

    def __init__(self, p: int, val, unit: int, prec):
        check_prime(p)
        if val == INF:
            if unit != 0 or prec != INF:
                raise ValueError("exact zero must have unit 0 and infinite precision")
        elif unit == 0:
            if val != prec:
                raise ValueError("an inexact zero has val == prec")
        else:
            if unit % p == 0:
                raise ValueError("unit part must be prime to p")
            if not val < prec:
                raise ValueError("nonzero value needs val < prec")
            if not 0 < unit < p ** (prec - val):
                raise ValueError("unit part must be reduced modulo p^(prec - val)")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "val", val)
        object.__setattr__(self, "unit", unit)
        object.__setattr__(self, "prec", prec)

    def __setattr__(self, name, value):
        raise AttributeError("PadicScalar is immutable")

    # -- construction -----------------------------------------------------

    @classmethod
    def exact_zero(cls, p: int) -> PadicScalar:
        return cls(p, INF, 0, INF)

    @classmethod
    def bigoh(cls, p: int, prec: int) -> PadicScalar:
        return cls(p, prec, 0, prec)

    @classmethod
    def one(cls, p: int, prec: int | None = None) -> PadicScalar:
        return cls.from_rational(1, p, prec)

    @classmethod
    def from_rational(cls, x, p: int, prec: int | None = None) -> PadicScalar:
        """The rational ``x`` reduced modulo ``p**prec`` (absolute)."""
        if isinstance(x, PadicScalar):
            return x if prec is None else x.add_bigoh(prec)
        x = Fraction(x)
        if x == 0:
            return cls.exact_zero(p)
        if prec is None:
            prec = default_prec()
        e, u = _split_rational(x, p)
        return _from_unit(p, e, u, prec)

    @classmethod
    def from_rational_rel(cls, x, p: int, relprec: int) -> PadicScalar:
        """The rational ``x`` with ``relprec`` significant p-adic digits."""
        x = Fraction(x)
        if x == 0:
            return cls.exact_zero(p)
        e, u = _split_rational(x, p)
        return _from_unit(p, e, u, e + relprec)

    # -- inspection -------------------------------------------------------

    def is_exact_zero(self) -> bool:
        return self.val == INF

    def is_zero(self) -> bool:
        return self.unit == 0

    def is_unit(self) -> bool:
        return self.unit != 0 and self.val == 0

    def valuation(self):
        """Valuation; for an inexact zero this is the lower bound ``prec``."""
        return self.val

    @property
    def relprec(self):
        if self.val == INF:
            return INF
        return self.prec - self.val

    def lift(self) -> Fraction:
        if self.unit == 0:
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.p) ** self.val

    def add_bigoh(self, prec) -> PadicScalar:
        """Cap the absolute precision at ``prec``."""
        if prec >= self.prec:
            return self
        if self.val >= prec:
            return PadicScalar.bigoh(self.p, prec)
        return PadicScalar(self.p, self.val, self.unit % self.p ** (prec - self.val), prec)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other, prec) -> PadicScalar:
        if isinstance(other, PadicScalar):
            if other.p != self.p:
                raise ValueError(f"prime mismatch: {self.p} vs {other.p}")
            return other
        if isinstance(other, (int, Fraction)):
            if prec == INF:
                prec = default_prec()
            return PadicScalar.from_rational(other, self.p, prec)
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, (int, Fraction)) and other == 0:
            return self
        o = self._coerce(other, self.prec)
        if o is NotImplemented:
            return NotImplemented
        if self.val == INF:
            return o
        if o.val == INF:
            return self
        p = self.p
        prec = min(self.prec, o.prec)
        e = min(self.val, o.val)
        if e >= prec:
            return PadicScalar.bigoh(p, prec)
        s = self.unit * p ** (self.val - e) + o.unit * p ** (o.val - e)
        return _normalize(p, e, s, prec)

    __radd__ = __add__

    def __neg__(self):
        if self.unit == 0:
            return self
        return PadicScalar(self.p, self.val, (-self.unit) % self.p ** (self.prec - self.val), self.prec)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, (PadicScalar, int, Fraction)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        p = self.p
        if isinstance(other, (int, Fraction)):
            if other == 0 or self.val == INF:
                return PadicScalar.exact_zero(p)
            e, u = _split_rational(Fraction(other), p)
            if self.unit == 0:
                return PadicScalar.bigoh(p, self.prec + e)
            rel = self.prec - self.val
            mod = p ** rel
            uu = u.numerator * pow(u.denominator, -1, mod) % mod
            return PadicScalar(p, self.val + e, self.unit * uu % mod, self.prec + e)
        if not isinstance(other, PadicScalar):
            return NotImplemented
        if other.p != p:
            raise ValueError(f"prime mismatch: {p} vs {other.p}")
        if self.val == INF or other.val == INF:
            return PadicScalar.exact_zero(p)
        val = self.val + other.val
        rel = min(self.prec - self.val, other.prec - other.val)
        if rel <= 0:
            return PadicScalar.bigoh(p, val + max(rel, 0))
        return PadicScalar(p, val, self.unit * other.unit % p ** rel, val + rel)

    __rmul__ = __mul__

    def inverse(self) -> PadicScalar:
        if self.val == INF:
            raise ZeroDivisionError("division by exact zero")
        if self.unit == 0:
            raise PrecisionError("division by an inexact zero")
        rel = self.prec - self.val
        return PadicScalar(self.p, -self.val, pow(self.unit, -1, self.p ** rel), rel - self.val)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        if not isinstance(other, PadicScalar):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        p = self.p
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            rel = self.relprec
            return PadicScalar.one(p, None if rel == INF or rel <= 0 else rel)
        if self.val == INF:
            return self
        if self.unit == 0:
            return PadicScalar.bigoh(p, self.prec * k if self.prec > 0 else self.prec)
        rel = self.prec - self.val
        return PadicScalar(p, self.val * k, pow(self.unit, k, p ** rel), self.val * k + rel)

    def __eq__(self, other):
        if isinstance(other, (PadicScalar, int, Fraction)):
            try:
                return (self - other).is_zero()
            except ValueError:
                return False
        return NotImplemented

    def __repr__(self):
        if self.val == INF:
            return f"PadicScalar(0, p={self.p}, exact)"
        return f"PadicScalar({self.lift()} + O({self.p}^{self.prec}))"

    __str__ = __repr__

    # -- serialisation ----------------------------------------------------

    def to_json(self) -> dict:
        if self.val == INF:
            return {"p": self.p, "val": None, "unit": "0", "prec": None}
        return {"p": self.p, "val": self.val, "unit": str(self.unit), "prec": self.prec}

    @classmethod
    def from_json(cls, d: dict) -> PadicScalar:
        if d["val"] is None:
            return cls.exact_zero(d["p"])
        return cls(d["p"], d["val"], int(d["unit"]), d["prec"])


def _from_unit(p: int, e: int, u: Fraction, prec: int) -> PadicScalar:
    if e >= prec:
        return PadicScalar.bigoh(p, prec)
    mod = p ** (prec - e)
    return PadicScalar(p, e, u.numerator * pow(u.denominator, -1, mod) % mod, prec)


def _normalize(p: int, e: int, s: int, prec: int) -> PadicScalar:
    """Build ``p**e * s + O(p**prec)`` from an arbitrary integer ``s``."""
    if s == 0:
        return PadicScalar.bigoh(p, prec)
    while s % p == 0:
        s //= p
        e += 1
        if e >= prec:
            return PadicScalar.bigoh(p, prec)
    if e >= prec:
        return PadicScalar.bigoh(p, prec)
    return PadicScalar(p, e, s % p ** (prec - e), prec)


def as_padic(x, p: int, prec: int | None = None) -> PadicScalar:
    if isinstance(x, PadicScalar):
        return x
    return PadicScalar.from_rational(x, p, prec)


# -- transcendental and combinatorial primitives ----------------------------


def factorial_valuation(h: int, p: int) -> int:
    """Exact p-adic valuation of ``h!`` (Legendre)."""
    if h < 0:
        raise ValueError("h must be non-negative")
    total, q = 0, p
    while q <= h:
        total += h // q
        q *= p
    return total


def _series_input(x: PadicScalar, name: str) -> tuple[int, int]:
    check_prime(x.p)
    if x.val != INF and x.unit != 0 and x.val <= 0:
        raise ValueError(f"{name} needs v(x) >= 1, got v(x) = {x.val}")
    if x.prec <= 0:
        raise ValueError(f"{name} needs v(x) >= 1")
    return x.val, x.prec


def padic_exp(x: PadicScalar, prec: int | None = None) -> PadicScalar:
    """exp(x) for v(x) >= 1; the result is known to the precision of x."""
    p = x.p
    val, xprec = _series_input(x, "padic_exp")
    if val == INF:
        return PadicScalar.one(p, prec)
    target = xprec if prec is None else min(xprec, prec)
    if x.unit == 0:
        return PadicScalar.one(p, target)
    # term k has valuation >= k*val - v(k!) > k*(val - 1/(p-1))
    kmax = math.ceil(target / (val - Fraction(1, p - 1))) + 1
    guard = factorial_valuation(kmax, p)
    mod = p ** (target + guard)
    X = (x.unit * p ** val) % mod
    total, power, fact = 0, 1, 1
    out_mod = p ** target
    for k in range(kmax + 1):
        if k:
            power = power * X % mod
            fact *= k
        vk = factorial_valuation(k, p)
        unit_fact = fact // p ** vk
        term = (power // p ** vk) * pow(unit_fact, -1, out_mod)
        total = (total + term) % out_mod
    return _normalize(p, 0, total, target)


def padic_log1p(x: PadicScalar, prec: int | None = None) -> PadicScalar:
    """log(1 + x) for v(x) >= 1; known to the precision of x."""
    p = x.p
    val, xprec = _series_input(x, "padic_log1p")
    if val == INF:
        return x
    target = xprec if prec is None else min(xprec, prec)
    if x.unit == 0:
        return PadicScalar.bigoh(p, target)
    kmax = 1
    while kmax * val - math.floor(math.log(kmax, p) + 1e-12) < target + 1:
        kmax += 1
    guard = max(vp_int(k, p) for k in range(1, kmax + 1))
    mod = p ** (target + guard)
    X = (x.unit * p ** val) % mod
    out_mod = p ** target
    total, power = 0, 1
    for k in range(1, kmax + 1):
        power = power * X % mod
        vk = vp_int(k, p)
        term = (power // p ** vk) * pow(k // p ** vk, -1, out_mod)
        total = (total + (term if k % 2 else -term)) % out_mod
    return _normalize(p, 0, total, target)


def teichmuller(a: int, p: int, prec: int | None = None) -> PadicScalar:
    """The (p-1)-th root of unity congruent to ``a`` mod p."""
    check_prime(p)
    if a % p == 0:
        raise ValueError(f"teichmuller needs a unit, {a} is divisible by {p}")
    prec = default_prec() if prec is None else prec
    mod = p ** prec
    return PadicScalar(p, 0, pow(a % mod, p ** (prec - 1), mod), prec)


def binom_general(x, i: int):
    """x(x-1)...(x-i+1)/i! for any ring element supporting int subtraction."""
    if i < 0:
        raise ValueError("i must be non-negative")
    if i == 0:
        return x ** 0
    num = x
    for j in range(1, i):
        num = num * (x - j)
    fact = math.factorial(i)
    if isinstance(num, (int, Fraction)):
        r = Fraction(num, fact)
        return r.numerator if r.denominator == 1 else r
    res = num / fact
    if isinstance(res, PadicScalar) and res.unit == 0 and res.prec <= 0:
        raise PrecisionError(f"binom(x, {i}) has no tracked digits left")
    return res
