"""The ring Z_p[xi] for xi a primitive p^n-th root of unity, plus Dirichlet
characters of p-power modulus and their Gauss sums.

Elements are coordinate vectors in the power basis 1, xi, ..., xi^(phi-1),
reduced with the cyclotomic relation sum_{j<p} xi^(j p^(n-1)) = 0.
Coordinates may be ints, Fractions or PadicScalars.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .padic import INF, PadicScalar, check_prime, default_prec, is_zero, teichmuller, valuation


def totient(p: int, n: int) -> int:
    return (p - 1) * p ** (n - 1)


def _fold(p: int, n: int, full: list) -> tuple:
    """Reduce a length p^n vector (exponents mod p^n) to the power basis."""
    q = p ** (n - 1)
    phi = (p - 1) * q
    out = list(full[:phi])
    for r in range(q):
        c = full[phi + r]
        if is_zero(c):
            continue
        for j in range(p - 1):
            out[r + j * q] = out[r + j * q] - c
    return tuple(out)


class CycloScalar:
    """Element of Z_p[xi] (or Q_p(xi)), xi of order p^n."""

    __slots__ = ("p", "n", "coeffs")
    __hash__ = None

    def __init__(self, p: int, n: int, coeffs):
        check_prime(p)
        if n < 1:
            raise ValueError("level n must be at least 1")
        coeffs = tuple(coeffs)
        if len(coeffs) != totient(p, n):
            raise ValueError(f"expected {totient(p, n)} coordinates, got {len(coeffs)}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("CycloScalar is immutable")

    @property
    def phi(self) -> int:
        return len(self.coeffs)

    @classmethod
    def scalar(cls, p: int, n: int, c) -> CycloScalar:
        return cls(p, n, (c,) + (0,) * (totient(p, n) - 1))

    @classmethod
    def zero(cls, p: int, n: int) -> CycloScalar:
        return cls.scalar(p, n, 0)

    @classmethod
    def one(cls, p: int, n: int) -> CycloScalar:
        return cls.scalar(p, n, 1)

    @classmethod
    def monomial(cls, p: int, n: int, e: int, c=1) -> CycloScalar:
        """c * xi**e for any integer e."""
        full = [0] * p ** n
        full[e % p ** n] = c
        return cls(p, n, _fold(p, n, full))

    @classmethod
    def xi(cls, p: int, n: int) -> CycloScalar:
        return cls.monomial(p, n, 1)

    def _check(self, other: CycloScalar):
        if other.p != self.p or other.n != self.n:
            raise ValueError(f"level mismatch: ({self.p},{self.n}) vs ({other.p},{other.n})")

    def _lift_operand(self, other):
        if isinstance(other, CycloScalar):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, PadicScalar)):
            return CycloScalar.scalar(self.p, self.n, other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift_operand(other)
        if o is NotImplemented:
            return NotImplemented
        return CycloScalar(self.p, self.n, (a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycloScalar(self.p, self.n, (-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._lift_operand(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, PadicScalar)):
            return CycloScalar(self.p, self.n, (a * other for a in self.coeffs))
        if not isinstance(other, CycloScalar):
            return NotImplemented
        self._check(other)
        p, n = self.p, self.n
        N = p ** n
        full = [0] * N
        nz = [(i, b) for i, b in enumerate(other.coeffs) if not is_zero(b)]
        for i, a in enumerate(self.coeffs):
            if is_zero(a):
                continue
            for j, b in nz:
                k = (i + j) % N
                full[k] = full[k] + a * b
        return CycloScalar(p, n, _fold(p, n, full))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = CycloScalar.one(self.p, self.n), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def galois(self, a: int) -> CycloScalar:
        """Apply the automorphism xi -> xi**a (a prime to p)."""
        p, n = self.p, self.n
        if a % p == 0:
            raise ValueError("galois exponent must be prime to p")
        N = p ** n
        full = [0] * N
        for i, c in enumerate(self.coeffs):
            if not is_zero(c):
                k = i * a % N
                full[k] = full[k] + c
        return CycloScalar(p, n, _fold(p, n, full))

    def conjugates(self) -> list[CycloScalar]:
        N = self.p ** self.n
        return [self.galois(a) for a in range(1, N) if a % self.p]

    def norm(self):
        """Product of all Galois conjugates; returns the base coordinate."""
        prod = CycloScalar.one(self.p, self.n)
        for c in self.conjugates():
            prod = prod * c
        return prod.coeffs[0]

    def inverse(self) -> CycloScalar:
        others = CycloScalar.one(self.p, self.n)
        for c in self.conjugates()[1:]:
            others = others * c
        nm = (self * others).coeffs[0]
        if is_zero(nm):
            raise ZeroDivisionError("element of norm zero")
        if isinstance(nm, int):
            nm = Fraction(nm)
        inv = 1 / nm
        return others * inv

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if isinstance(other, PadicScalar):
            return self * other.inverse()
        if isinstance(other, CycloScalar):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    def is_zero(self) -> bool:
        return all(is_zero(c) for c in self.coeffs)

    def valuation(self):
        """Minimum coordinate valuation (the floor of the true valuation)."""
        return min(valuation(c, self.p) for c in self.coeffs)

    def norm_valuation(self) -> Fraction:
        """The exact valuation v(N(x)) / phi, normalised so that v(p) = 1."""
        v = valuation(self.norm(), self.p)
        return v if v == INF else Fraction(v, self.phi)

    def embed(self, m: int) -> CycloScalar:
        """Image in level m >= n via xi_(p^n) = xi_(p^m)^(p^(m-n))."""
        if m < self.n:
            raise ValueError("can only embed into a higher level")
        step = self.p ** (m - self.n)
        full = [0] * self.p ** m
        for i, c in enumerate(self.coeffs):
            full[i * step] = c
        return CycloScalar(self.p, m, _fold(self.p, m, full))

    def add_bigoh(self, prec) -> CycloScalar:
        p = self.p
        return CycloScalar(p, self.n, (PadicScalar.from_rational(c, p, prec) for c in self.coeffs))

    def __eq__(self, other):
        if isinstance(other, (CycloScalar, int, Fraction, PadicScalar)):
            try:
                return (self - other).is_zero()
            except ValueError:
                return False
        return NotImplemented

    def __repr__(self):
        terms = [f"({c})*xi^{i}" for i, c in enumerate(self.coeffs) if not is_zero(c)]
        return f"CycloScalar[p={self.p},n={self.n}](" + (" + ".join(terms) or "0") + ")"


# -- Dirichlet characters -----------------------------------------------------


@lru_cache(maxsize=None)
def primitive_root(p: int) -> int:
    """Least g that generates (Z/p^2)^x, hence (Z/p^n)^x for every n."""
    check_prime(p)
    for g in range(2, p * p):
        if g % p == 0:
            continue
        if all(pow(g, (p - 1) // q, p) != 1 for q in _prime_factors(p - 1)) and pow(g, p - 1, p * p) != 1:
            return g
    raise AssertionError("no primitive root found")


def _prime_factors(m: int) -> list[int]:
    out, d = [], 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


@lru_cache(maxsize=None)
def discrete_log_table(p: int, n: int) -> dict[int, int]:
    g, N = primitive_root(p), p ** n
    table, x = {}, 1
    for k in range(totient(p, n)):
        table[x] = k
        x = x * g % N
    return table


class DirichletChar:
    """chi_(a,b) mod p^n: g^k -> omega(g)^(a k) * xi^(p b k), xi of order p^n.

    ``a`` is taken mod p-1 (tame part), ``b`` mod p^(n-1) (wild part).
    Values are CycloScalars of level n; chi(x) = 0 when p | x.
    """

    __slots__ = ("p", "n", "a", "b", "prec")

    def __init__(self, p: int, n: int, a: int = 0, b: int = 0, prec: int | None = None):
        check_prime(p)
        self.p, self.n = p, n
        self.a = a % (p - 1)
        self.b = b % p ** (n - 1)
        self.prec = default_prec() if prec is None else prec

    def __eq__(self, other):
        return (isinstance(other, DirichletChar)
                and (self.p, self.n, self.a, self.b) == (other.p, other.n, other.a, other.b))

    def __hash__(self):
        return hash((self.p, self.n, self.a, self.b))

    def __repr__(self):
        return f"DirichletChar(p={self.p}, n={self.n}, a={self.a}, b={self.b})"

    @classmethod
    def all_chars(cls, p: int, n: int, prec: int | None = None) -> list[DirichletChar]:
        return [cls(p, n, a, b, prec) for a in range(p - 1) for b in range(p ** (n - 1))]

    def is_trivial(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_primitive(self) -> bool:
        if self.n == 1:
            return self.a != 0
        return self.b % self.p != 0

    def inverse(self) -> DirichletChar:
        return DirichletChar(self.p, self.n, -self.a, -self.b, self.prec)

    def __mul__(self, other: DirichletChar) -> DirichletChar:
        if (other.p, other.n) != (self.p, self.n):
            raise ValueError("modulus mismatch")
        return DirichletChar(self.p, self.n, self.a + other.a, self.b + other.b, min(self.prec, other.prec))

    def _tame_value(self, k: int):
        p = self.p
        e = self.a * k % (p - 1)
        if e == 0:
            return 1
        if 2 * e == p - 1:
            return -1
        return teichmuller(primitive_root(p), p, self.prec) ** e

    def __call__(self, x: int) -> CycloScalar:
        p, n = self.p, self.n
        if x % p == 0:
            return CycloScalar.zero(p, n)
        k = discrete_log_table(p, n)[x % p ** n]
        return CycloScalar.monomial(p, n, p * self.b * k, self._tame_value(k))

    def sign(self) -> int:
        """chi(-1), always +1 or -1."""
        return -1 if self.a % 2 else 1


def gauss_sum(chi: DirichletChar, xi: CycloScalar | None = None) -> CycloScalar:
    """sum over units x mod p^n of chi(x) * xi**x."""
    p, n = chi.p, chi.n
    if xi is None:
        xi = CycloScalar.xi(p, n)
    if (xi.p, xi.n) != (p, n):
        raise ValueError(f"character has level {n} but xi has level {xi.n}")
    if xi ** (p ** (n - 1)) == 1:
        raise ValueError("xi is not a primitive p^n-th root of unity")
    total = CycloScalar.zero(p, n)
    power = CycloScalar.one(p, n)
    for x in range(1, p ** n):
        power = power * xi
        if x % p:
            total = total + chi(x) * power
    return total
