"""Serre-Tate q-expansions in the monomial basis (1+q)^nu and the
coefficient-level operators acting on them.
"""

from __future__ import annotations

from .cyclotomic import CycloScalar, DirichletChar, gauss_sum
from .padic import check_prime, is_zero


class WindowOverflow(ValueError):
    """An exponent left the fixed window [0, N)."""


class QExpansion:
    """sum_nu a_nu (1+q)^nu with exponents in [0, N)."""

    __slots__ = ("p", "N", "terms")
    __hash__ = None

    def __init__(self, p: int, N: int, terms=None):
        check_prime(p)
        clean = {}
        for nu, c in (terms or {}).items():
            if not 0 <= nu < N:
                raise WindowOverflow(f"exponent {nu} outside window [0, {N})")
            if not is_zero(c):
                clean[nu] = c
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    def __setattr__(self, name, value):
        raise AttributeError("QExpansion is immutable")

    @classmethod
    def monomial(cls, p: int, N: int, nu: int, c=1) -> QExpansion:
        return cls(p, N, {nu: c})

    def map(self, fn) -> QExpansion:
        """Apply fn(nu, a_nu) -> new coefficient, exponent by exponent."""
        return QExpansion(self.p, self.N, {nu: fn(nu, c) for nu, c in self.terms.items()})

    def _check(self, other: QExpansion):
        if (other.p, other.N) != (self.p, self.N):
            raise ValueError("q-expansions live in different windows")

    def __add__(self, other):
        if not isinstance(other, QExpansion):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for nu, c in other.terms.items():
            out[nu] = out[nu] + c if nu in out else c
        return QExpansion(self.p, self.N, out)

    def __neg__(self):
        return self.map(lambda nu, c: -c)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> QExpansion:
        return self.map(lambda nu, a: a * c)

    def __mul__(self, other):
        if isinstance(other, QExpansion):
            self._check(other)
            out = {}
            for a, ca in self.terms.items():
                for b, cb in other.terms.items():
                    if a + b >= self.N:
                        raise WindowOverflow(f"product exponent {a + b} outside window [0, {self.N})")
                    out[a + b] = out[a + b] + ca * cb if a + b in out else ca * cb
            return QExpansion(self.p, self.N, out)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, QExpansion):
            return NotImplemented
        try:
            return (self - other).is_zero()
        except ValueError:
            return False

    def __repr__(self):
        body = " + ".join(f"({c})(1+q)^{nu}" for nu, c in self.terms.items())
        return f"QExpansion[p={self.p},N={self.N}]({body or '0'})"


def derive(f: QExpansion) -> QExpansion:
    """(1+q) d/dq, which scales (1+q)^nu by nu."""
    return f.map(lambda nu, c: c * nu)


def u_op(f: QExpansion) -> QExpansion:
    """a_nu -> a_(p nu)."""
    p = f.p
    return QExpansion(p, f.N, {nu // p: c for nu, c in f.terms.items() if nu % p == 0})


def v_op(f: QExpansion) -> QExpansion:
    """(1+q)^nu -> (1+q)^(p nu)."""
    p = f.p
    for nu in f.terms:
        if p * nu >= f.N:
            raise WindowOverflow(f"V sends exponent {nu} to {p * nu}, outside [0, {f.N})")
    return QExpansion(p, f.N, {p * nu: c for nu, c in f.terms.items()})


def deplete(f: QExpansion) -> QExpansion:
    """(1 - V U) f: drop every exponent divisible by p."""
    return QExpansion(f.p, f.N, {nu: c for nu, c in f.terms.items() if nu % f.p})


def disk_project(f: QExpansion, gamma: int, n: int) -> QExpansion:
    """Keep the exponents congruent to gamma mod p^n (gamma a unit)."""
    p = f.p
    if gamma % p == 0:
        raise ValueError(f"disk centre {gamma} is not a unit mod {p}")
    mod = p ** n
    return QExpansion(p, f.N, {nu: c for nu, c in f.terms.items() if (nu - gamma) % mod == 0})


def theta_chi_direct(f: QExpansion, chi: DirichletChar) -> QExpansion:
    """a_nu -> chi(nu) a_nu, with chi(nu) = 0 when p | nu."""
    return QExpansion(f.p, f.N, {nu: chi(nu) * c for nu, c in f.terms.items() if nu % f.p})


def translate(f: QExpansion, xi: CycloScalar, j: int) -> QExpansion:
    """f(xi^j (1+q) - 1): scales (1+q)^nu by xi^(j nu)."""
    return f.map(lambda nu, c: xi ** (j * nu) * c)


def theta_chi_avg(f: QExpansion, chi: DirichletChar, xi: CycloScalar | None = None) -> QExpansion:
    """g_(chi^-1)^-1 * sum_j chi(j)^-1 f(xi^j (1+q) - 1), j over units mod p^n."""
    p, n = chi.p, chi.n
    if xi is None:
        xi = CycloScalar.xi(p, n)
    if (xi.p, xi.n) != (p, n):
        raise ValueError("xi must have the level of the character")
    chi_inv = chi.inverse()
    g = gauss_sum(chi_inv, xi)
    total = QExpansion(p, f.N)
    for j in range(1, p ** n):
        if j % p:
            total = total + translate(f, xi, j).scale(chi_inv(j))
    return total.scale(g.inverse())


def disk_project_avg(f: QExpansion, gamma: int, n: int) -> QExpansion:
    """The disk projector as a character average: phi(p^n)^-1 sum_chi chi(gamma)^-1 theta_chi f."""
    p = f.p
    if gamma % p == 0:
        raise ValueError(f"disk centre {gamma} is not a unit mod {p}")
    chars = DirichletChar.all_chars(p, n)
    total = QExpansion(p, f.N)
    for chi in chars:
        total = total + theta_chi_direct(f, chi).scale(chi.inverse()(gamma))
    return total.scale(CycloScalar.scalar(p, n, 1) / len(chars))
