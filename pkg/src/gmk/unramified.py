"""Unramified extensions of Z_p of degree f <= 2.

The degree-2 ring is Z_p[theta]/(theta^2 + c1*theta + c0) with the
quadratic irreducible mod p.  Frobenius is the Hensel (Newton) lift of
theta -> theta^p to a root of the defining polynomial.
"""

from __future__ import annotations

from fractions import Fraction

from .padic import PadicScalar, check_prime, default_prec, is_zero, valuation


class HenselError(ArithmeticError):
    """Newton lifting failed because the derivative is not a unit mod p."""


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def least_nonresidue(p: int) -> int:
    return next(d for d in range(2, p) if legendre(d, p) == -1)


class UnramifiedRing:
    """Z_p (f = 1) or Z_p[theta]/(theta^2 + c1 theta + c0) (f = 2)."""

    def __init__(self, p: int, f: int = 2, c1: int = 0, c0: int | None = None, prec: int | None = None):
        check_prime(p)
        if f not in (1, 2):
            raise ValueError("only degrees f = 1, 2 are supported")
        self.p, self.f = p, f
        self.prec = default_prec() if prec is None else prec
        if f == 2:
            if c0 is None:
                c0 = -least_nonresidue(p)
            disc = c1 * c1 - 4 * c0
            if disc % p == 0:
                raise HenselError(f"x^2 + {c1}x + {c0} is not separable mod {p}")
            if legendre(disc, p) != -1:
                raise ValueError(f"x^2 + {c1}x + {c0} is reducible mod {p}")
            self.c1, self.c0 = c1, c0
        else:
            self.c1 = self.c0 = None
        self._frob_theta = None

    def __eq__(self, other):
        return (isinstance(other, UnramifiedRing)
                and (self.p, self.f, self.c1, self.c0) == (other.p, other.f, other.c1, other.c0))

    def __hash__(self):
        return hash((self.p, self.f, self.c1, self.c0))

    def __repr__(self):
        if self.f == 1:
            return f"UnramifiedRing(p={self.p}, f=1)"
        return f"UnramifiedRing(p={self.p}, x^2 + {self.c1}x + {self.c0})"

    def element(self, coeffs) -> UnramifiedScalar:
        coeffs = list(coeffs) + [0] * (self.f - len(coeffs))
        return UnramifiedScalar(self, coeffs)

    def gen(self) -> UnramifiedScalar:
        if self.f == 1:
            raise ValueError("degree-1 ring has no generator")
        return self.element([0, 1])

    def frobenius_of_gen(self) -> UnramifiedScalar:
        """phi(theta), lifted from theta^p by Newton iteration."""
        if self._frob_theta is None:
            p, prec = self.p, self.prec
            theta = self.element([PadicScalar.from_rational(0, p, prec), PadicScalar.one(p, prec)])
            y = theta ** p
            for _ in range(prec.bit_length() + 2):
                fy = y * y + y * self.c1 + self.c0
                dfy = y * 2 + self.c1
                if valuation(dfy.det(), p) != 0:
                    raise HenselError("derivative of the defining polynomial is not a unit")
                y = y - fy * dfy.linear_inverse()
            self._frob_theta = y
        return self._frob_theta


class UnramifiedScalar:
    __slots__ = ("ring", "coeffs")
    __hash__ = None

    def __init__(self, ring: UnramifiedRing, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != ring.f:
            raise ValueError(f"expected {ring.f} coordinates")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("UnramifiedScalar is immutable")

    @property
    def p(self) -> int:
        return self.ring.p

    def _lift_operand(self, other):
        if isinstance(other, UnramifiedScalar):
            if other.ring != self.ring:
                raise ValueError("ring mismatch")
            return other
        if isinstance(other, (int, Fraction, PadicScalar)):
            return self.ring.element([other])
        return NotImplemented

    def __add__(self, other):
        o = self._lift_operand(other)
        if o is NotImplemented:
            return NotImplemented
        return UnramifiedScalar(self.ring, (a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return UnramifiedScalar(self.ring, (-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._lift_operand(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, PadicScalar)):
            return UnramifiedScalar(self.ring, (a * other for a in self.coeffs))
        if not isinstance(other, UnramifiedScalar):
            return NotImplemented
        o = self._lift_operand(other)
        if self.ring.f == 1:
            return UnramifiedScalar(self.ring, (self.coeffs[0] * o.coeffs[0],))
        a0, a1 = self.coeffs
        b0, b1 = o.coeffs
        top = a1 * b1
        c1, c0 = self.ring.c1, self.ring.c0
        return UnramifiedScalar(self.ring, (a0 * b0 - top * c0, a0 * b1 + a1 * b0 - top * c1))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.ring.element([1]), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def frobenius(self) -> UnramifiedScalar:
        if self.ring.f == 1:
            return self
        a0, a1 = self.coeffs
        if is_zero(a1):
            return self
        return self.ring.frobenius_of_gen() * a1 + a0

    def norm(self):
        """x * phi(x) (or x itself when f = 1), as a base-ring value."""
        if self.ring.f == 1:
            return self.coeffs[0]
        return (self * self.frobenius()).coeffs[0]

    def inverse(self) -> UnramifiedScalar:
        if self.ring.f == 1:
            c = self.coeffs[0]
            return self.ring.element([1 / (Fraction(c) if isinstance(c, int) else c)])
        nm = self.norm()
        if is_zero(nm):
            raise ZeroDivisionError("element of norm zero")
        if isinstance(nm, int):
            nm = Fraction(nm)
        return self.frobenius() * (1 / nm)

    def det(self):
        """Determinant of multiplication by self; equals the norm."""
        if self.ring.f == 1:
            return self.coeffs[0]
        a0, a1 = self.coeffs
        return a0 * a0 - a0 * a1 * self.ring.c1 + a1 * a1 * self.ring.c0

    def linear_inverse(self) -> UnramifiedScalar:
        """Inverse from the adjugate of the multiplication matrix (no Frobenius)."""
        if self.ring.f == 1:
            return self.inverse()
        a0, a1 = self.coeffs
        c1 = self.ring.c1
        det = self.det()
        if is_zero(det):
            raise ZeroDivisionError("element of norm zero")
        if isinstance(det, int):
            det = Fraction(det)
        inv = 1 / det
        return UnramifiedScalar(self.ring, ((a0 - a1 * c1) * inv, -a1 * inv))

    def __truediv__(self, other):
        if isinstance(other, UnramifiedScalar):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if isinstance(other, PadicScalar):
            return self * other.inverse()
        return NotImplemented

    def is_zero(self) -> bool:
        return all(is_zero(c) for c in self.coeffs)

    def valuation(self):
        return min(valuation(c, self.p) for c in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (UnramifiedScalar, int, Fraction, PadicScalar)):
            try:
                return (self - other).is_zero()
            except ValueError:
                return False
        return NotImplemented

    def __repr__(self):
        return f"UnramifiedScalar({self.ring!r}, {list(self.coeffs)})"
