"""Truncated power series over Z_p (and Q_p) in one variable T, with
certified valuation floors describing the untruncated series.

The level n ring is Lambda_n = Z_p<T^q / p>, q = p^(n-1): a series lies in
p^e Lambda_n exactly when v(c_d) >= e - floor(d / q) for every d.

Each series carries a certificate: a list of pieces ``(e, a, deg)``.  A
piece asserts, for every degree d (also beyond the stored truncation),

    v(c_d) >= max(e - floor(d/q), a - v_p(d!))   and   c_d = 0 for d > deg.

The true coefficient floor is the minimum over pieces.  Both kinds of floor
are stable under products, which lets specialisation bound the discarded
tail of an infinite series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cyclotomic import CycloScalar
from .padic import (
    INF,
    PadicScalar,
    check_prime,
    default_prec,
    factorial_valuation,
    is_zero,
    valuation,
)

NEG_INF = -math.inf


class CertificateError(ArithmeticError):
    """A certified floor was violated by a computed coefficient."""


Piece = tuple  # (e, a, deg)


def _prune(pieces) -> tuple:
    pieces = sorted(set(pieces), key=lambda t: (t[0], t[1], -t[2]))
    kept = []
    for P in pieces:
        if any(Q[0] <= P[0] and Q[1] <= P[1] and Q[2] >= P[2] for Q in kept):
            continue
        kept = [Q for Q in kept if not (P[0] <= Q[0] and P[1] <= Q[1] and P[2] >= Q[2])]
        kept.append(P)
    return tuple(sorted(kept, key=lambda t: (t[2], t[0], t[1])))


def _shift_pieces(pieces, k) -> tuple:
    return tuple((e + k, a + k, deg) for e, a, deg in pieces)


def _piece_floor(piece, d: int, p: int, q: int):
    e, a, deg = piece
    if d > deg:
        return INF
    return max(e - d // q, a - factorial_valuation(d, p))


def poly_piece(coeffs, p: int, q: int) -> tuple:
    """The tightest single piece for a finite coefficient list."""
    e = a = INF
    deg = -1
    for d, c in enumerate(coeffs):
        if is_zero(c):
            continue
        v = valuation(c, p)
        e = min(e, v + d // q)
        a = min(a, v + factorial_valuation(d, p))
        deg = d
    if deg < 0:
        return ()
    return ((e, a, deg),)


class IwasawaSeries:
    """sum_{d <= trunc} c_d T^d in the level-n Iwasawa ring, with certificate."""

    __slots__ = ("p", "n", "coeffs", "pieces")
    __hash__ = None

    def __init__(self, p: int, n: int, coeffs, pieces=None):
        check_prime(p)
        if n < 1:
            raise ValueError("level must be at least 1")
        coeffs = tuple(coeffs)
        if not coeffs:
            raise ValueError("need at least the constant coefficient")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "coeffs", coeffs)
        if pieces is None:
            pieces = poly_piece(coeffs, p, p ** (n - 1))
        object.__setattr__(self, "pieces", _prune(pieces))

    def __setattr__(self, name, value):
        raise AttributeError("IwasawaSeries is immutable")

    # -- construction -----------------------------------------------------

    @classmethod
    def constant(cls, p: int, n: int, c, trunc: int) -> IwasawaSeries:
        return cls(p, n, (c,) + (0,) * trunc)

    @classmethod
    def gen(cls, p: int, n: int, trunc: int) -> IwasawaSeries:
        """The variable T."""
        if trunc < 1:
            raise ValueError("truncation must be at least 1 to hold T")
        return cls(p, n, (0, 1) + (0,) * (trunc - 1))

    @property
    def q(self) -> int:
        return self.p ** (self.n - 1)

    @property
    def trunc(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, d: int):
        if d > self.trunc:
            raise IndexError(f"degree {d} beyond truncation {self.trunc}")
        return self.coeffs[d]

    # -- certificate ------------------------------------------------------

    def floor(self, d: int):
        """Certified lower bound on v(c_d), valid for every d >= 0."""
        return min((_piece_floor(P, d, self.p, self.q) for P in self.pieces), default=INF)

    def floors(self) -> list:
        return [self.floor(d) for d in range(self.trunc + 1)]

    def check_certificate(self):
        """Raise if a stored coefficient violates its certified floor."""
        for d, c in enumerate(self.coeffs):
            if not is_zero(c) and valuation(c, self.p) < self.floor(d):
                raise CertificateError(f"degree {d}: v = {valuation(c, self.p)} < floor {self.floor(d)}")
        return self

    def lambda_valuation(self):
        """min_d v(c_d) + floor(d/q) over the stored coefficients."""
        return min((valuation(c, self.p) + d // self.q
                    for d, c in enumerate(self.coeffs) if not is_zero(c)), default=INF)

    def in_lambda(self, shift: int) -> bool:
        """True iff every stored coefficient satisfies v(c_d) >= shift - floor(d/q)."""
        return self.lambda_valuation() >= shift

    def valuation(self):
        return min((valuation(c, self.p) for c in self.coeffs if not is_zero(c)), default=INF)

    def is_zero(self) -> bool:
        return all(is_zero(c) for c in self.coeffs)

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: IwasawaSeries):
        if (other.p, other.n) != (self.p, self.n):
            raise ValueError(f"ring mismatch: ({self.p},{self.n}) vs ({other.p},{other.n})")

    def _scalar_series(self, c) -> IwasawaSeries:
        return IwasawaSeries.constant(self.p, self.n, c, self.trunc)

    def __add__(self, other):
        if isinstance(other, (int, Fraction, PadicScalar)):
            other = self._scalar_series(other)
        if not isinstance(other, IwasawaSeries):
            return NotImplemented
        self._check(other)
        D = min(self.trunc, other.trunc)
        coeffs = [self.coeffs[d] + other.coeffs[d] for d in range(D + 1)]
        return IwasawaSeries(self.p, self.n, coeffs, self.pieces + other.pieces)

    __radd__ = __add__

    def __neg__(self):
        return IwasawaSeries(self.p, self.n, (-c for c in self.coeffs), self.pieces)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, PadicScalar, IwasawaSeries)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, PadicScalar)):
            if is_zero(other):
                return IwasawaSeries(self.p, self.n, (0,) * len(self.coeffs), ())
            v = valuation(other, self.p)
            return IwasawaSeries(self.p, self.n, (c * other for c in self.coeffs),
                                 _shift_pieces(self.pieces, v))
        if not isinstance(other, IwasawaSeries):
            return NotImplemented
        self._check(other)
        D = min(self.trunc, other.trunc)
        out = [0] * (D + 1)
        b = [(j, c) for j, c in enumerate(other.coeffs[:D + 1]) if not is_zero(c)]
        for i, a in enumerate(self.coeffs[:D + 1]):
            if is_zero(a):
                continue
            for j, c in b:
                if i + j > D:
                    break
                out[i + j] = out[i + j] + a * c
        pieces = [(e1 + e2, a1 + a2, g1 + g2)
                  for e1, a1, g1 in self.pieces for e2, a2, g2 in other.pieces]
        return IwasawaSeries(self.p, self.n, out, pieces)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, int):
            other = Fraction(other)
        if isinstance(other, Fraction):
            return self * (1 / other)
        if isinstance(other, PadicScalar):
            return self * other.inverse()
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = self._scalar_series(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def truncate(self, D: int) -> IwasawaSeries:
        if D > self.trunc:
            raise ValueError("cannot extend truncation")
        return IwasawaSeries(self.p, self.n, self.coeffs[:D + 1], self.pieces)

    def with_level(self, n: int) -> IwasawaSeries:
        """Reinterpret the coefficients in the level-n ring (certificate recomputed)."""
        return IwasawaSeries(self.p, n, self.coeffs)

    def cap_precision(self, bound) -> IwasawaSeries:
        """Cap coefficient d at absolute precision ``bound(d)``."""
        p = self.p
        return IwasawaSeries(p, self.n,
                             (PadicScalar.from_rational(c, p, bound(d)) if not isinstance(c, PadicScalar)
                              else c.add_bigoh(bound(d)) for d, c in enumerate(self.coeffs)),
                             self.pieces)

    def __eq__(self, other):
        if isinstance(other, (IwasawaSeries, int, Fraction, PadicScalar)):
            try:
                return (self - other).is_zero()
            except ValueError:
                return False
        return NotImplemented

    def __repr__(self):
        terms = [f"({c})*T^{d}" for d, c in enumerate(self.coeffs) if not is_zero(c)]
        body = " + ".join(terms[:6]) + (" + ..." if len(terms) > 6 else "")
        return f"IwasawaSeries[p={self.p},n={self.n},D={self.trunc}]({body or '0'})"


# -- the logarithm series -----------------------------------------------------


@lru_cache(maxsize=None)
def _log_coeffs(D: int) -> tuple:
    return (Fraction(0),) + tuple(Fraction((-1) ** (d + 1), d) for d in range(1, D + 1))


def build_un(p: int, n: int, D: int) -> IwasawaSeries:
    """u_n = log(1+T), certified to lie in p^(2-n) Lambda_n."""
    if D < p ** (n - 1):
        raise ValueError("truncation must be at least p^(n-1)")
    s = IwasawaSeries(p, n, _log_coeffs(D), ((2 - n, 0, INF),))
    s.check_certificate()
    if not s.in_lambda(2 - n):
        raise CertificateError("u_n is not in p^(2-n) Lambda_n")
    return s


def build_wn_prime(p: int, n: int, D: int) -> IwasawaSeries:
    """w'_n = p^-1 log(1+T), certified to lie in p^(1-n) Lambda_n."""
    s = build_un(p, n, D) / p
    s.check_certificate()
    if not s.in_lambda(1 - n):
        raise CertificateError("w'_n is not in p^(1-n) Lambda_n")
    return s


@lru_cache(maxsize=None)
def stirling1(D: int, K: int) -> tuple:
    """Signed Stirling numbers of the first kind s(d, k), d <= D, k <= K."""
    rows = [[1] + [0] * K]
    for d in range(D):
        prev = rows[-1]
        rows.append([(prev[k - 1] if k else 0) - d * prev[k] for k in range(K + 1)])
    return tuple(tuple(r) for r in rows)


@lru_cache(maxsize=None)
def _binom_log_coeffs(p: int, D: int, i: int) -> tuple:
    """Exact coefficients of binom(p^-1 log(1+T), i) up to degree D.

    binom(X, i) = sum_k s(i,k) X^k / i! and log(1+T)^k / k! = sum_d s(d,k) T^d / d!,
    so the T^d coefficient is sum_k s(i,k) s(d,k) k! p^-k / (i! d!).
    """
    st = stirling1(max(D, i), i)
    fi = math.factorial(i)
    out = []
    fd = 1
    for d in range(D + 1):
        if d:
            fd *= d
        num = sum(st[i][k] * st[d][k] * math.factorial(k) * p ** (i - k) for k in range(i + 1))
        out.append(Fraction(num, p ** i * fi * fd))
    return tuple(out)


def binom_wprime(p: int, n: int, D: int, i: int) -> IwasawaSeries:
    """binom(w'_n, i) with its product certificate."""
    e = i * (1 - n) - factorial_valuation(i, p)
    a = -i - factorial_valuation(i, p)
    deg = 0 if i == 0 else INF
    return IwasawaSeries(p, n, _binom_log_coeffs(p, D, i), ((e, a, deg),))


# -- points of weight space ---------------------------------------------------


@dataclass(frozen=True)
class WeightPoint:
    """A value for T, either in Z_p or in a cyclotomic ring.

    ``tau`` is the normalised valuation of the value (v(p) = 1).
    """

    p: int
    value: object

    @property
    def tau(self):
        t = self.value
        if isinstance(t, CycloScalar):
            return t.norm_valuation()
        return valuation(t, self.p)

    def check_level(self, n: int):
        """Require v(t^(p^(n-1))) >= 1, the integral form of the disk condition."""
        tau = self.tau
        if tau != INF and tau * self.p ** (n - 1) < 1:
            raise ValueError(f"point with v(T) = {tau} is outside the level-{n} disk")

    @classmethod
    def classical(cls, p: int, k: int, prec: int | None = None) -> WeightPoint:
        """T = exp(kp) - 1, the point of the character beta -> beta^k."""
        from .padic import padic_exp
        prec = default_prec() if prec is None else prec
        return cls(p, padic_exp(PadicScalar.from_rational(k * p, p, prec)) - 1)

    @classmethod
    def finite_order(cls, p: int, n: int, e: int = 1) -> WeightPoint:
        """T = xi^e - 1 with xi of order p^(n-1), in the level n-1 cyclotomic ring."""
        if n < 2:
            raise ValueError("finite-order points need level n >= 2")
        return cls(p, CycloScalar.monomial(p, n - 1, e) - 1)


def _tail_bound(s: IwasawaSeries, tau) -> float:
    """Lower bound for v(sum_{d > D} c_d t^d) given v(t) = tau."""
    p, q, D = s.p, s.q, s.trunc
    best = INF
    for e, a, deg in s.pieces:
        if deg <= D:
            continue
        lam = NEG_INF
        if e != NEG_INF and q * tau >= 1:
            first = (D // q + 1) * q
            cands = [e - (D + 1) // q + (D + 1) * tau]
            if first <= deg:
                cands.append(e - first // q + first * tau)
            lam = min(cands)
        fact = NEG_INF
        if a != NEG_INF and tau > Fraction(1, p - 1):
            fact = a + (D + 1) * tau - Fraction(D, p - 1)
        best = min(best, max(lam, fact))
    return best


def specialize(s: IwasawaSeries, pt: WeightPoint):
    """Evaluate s at T = pt.value; the result's precision accounts for the tail.

    Returns a PadicScalar or a CycloScalar (with PadicScalar coordinates).
    """
    pt.check_level(s.n)
    tau = pt.tau
    tail = INF if tau == INF else _tail_bound(s, tau)
    if tail == NEG_INF:
        raise ValueError("no certified tail bound at this point; increase the level or truncation")
    t = pt.value
    p = s.p
    if tau == INF:
        c0 = s.coeffs[0]
        if isinstance(t, CycloScalar):
            return CycloScalar.scalar(p, t.n, c0)
        return c0
    if isinstance(t, CycloScalar):
        return _specialize_cyclo(s, t, tau, tail)
    t = PadicScalar.from_rational(t, p) if not isinstance(t, PadicScalar) else t
    acc = PadicScalar.exact_zero(p)
    for c in reversed(s.coeffs):
        acc = acc * t + c
    cap = math.ceil(tail) if tail != INF else None
    if not isinstance(acc, PadicScalar):
        acc = PadicScalar.from_rational(acc, p, cap)
    elif cap is not None:
        acc = acc.add_bigoh(cap)
    return acc


def _specialize_cyclo(s: IwasawaSeries, t: CycloScalar, tau, tail) -> CycloScalar:
    """Exact evaluation on rational lifts, then a coordinatewise precision cap.

    Coordinates cannot see the valuation of t, so the error of each lifted
    coefficient (its absolute precision P_d) contributes P_d + d*tau.
    """
    p = s.p
    cap = tail
    lifts = []
    for d, c in enumerate(s.coeffs):
        if isinstance(c, PadicScalar):
            if c.prec != INF:
                cap = min(cap, c.prec + d * tau)
            lifts.append(c.lift())
        else:
            lifts.append(Fraction(c))
    if not t.is_zero() and any(isinstance(x, PadicScalar) and x.prec != INF for x in t.coeffs):
        raise ValueError("cyclotomic specialisation needs an exact point")
    t_exact = CycloScalar(t.p, t.n, (x.lift() if isinstance(x, PadicScalar) else x for x in t.coeffs))
    acc = CycloScalar.zero(p, t.n)
    for c in reversed(lifts):
        acc = acc * t_exact + c
    if cap == INF:
        return acc
    return acc.add_bigoh(math.floor(cap))
