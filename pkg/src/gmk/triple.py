"""Classical triple products of nearly forms, the corrected representative of
nabla^m(s1) * s2, the Euler factors of the interpolation formula, and the
three-determinant kernel Delta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .nearly import NearlyForm, nabla, nabla_pow
from .padic import INF, PadicScalar, PrecisionError, binom_general, is_zero, valuation
from .unramified import UnramifiedScalar
from .weights import VectorChar


def _binom(n: int, k: int):
    if k < 0:
        return 0
    if n >= 0:
        return math.comb(n, k)
    return binom_general(n, k)


@dataclass(frozen=True)
class TripleWeights:
    """(k1, k2, k3) at the distinguished embedding, with the nu-data.

    Requires k1 + k2 + k3 even and k3 >= k1 + k2 (k3 dominant).
    """

    k1: int
    k2: int
    k3: int
    nu1: int = 0
    nu2: int = 0
    nu3: int | None = None

    def __post_init__(self):
        if min(self.k1, self.k2, self.k3) < 0:
            raise ValueError("weights must be non-negative")
        if (self.k1 + self.k2 + self.k3) % 2:
            raise ValueError("k1 + k2 + k3 must be even")
        if self.k3 < self.k1 + self.k2:
            raise ValueError(f"unbalanced condition fails: k3={self.k3} < k1+k2={self.k1 + self.k2}")
        if self.nu3 is None:
            object.__setattr__(self, "nu3", self.nu1 + self.nu2)

    @property
    def m(self) -> int:
        return (self.k3 - self.k1 - self.k2) // 2

    @property
    def M(self) -> int:
        return (self.k1 + self.k2 + self.k3) // 2

    def check_fiber(self):
        """nu3 = nu1 + nu2, required on the Euler-factor path."""
        if self.nu3 != self.nu1 + self.nu2:
            raise ValueError("nu3 must equal nu1 + nu2")


def _check_input(s: NearlyForm, k: int, name: str):
    if not s.weight.is_classical or s.weight.k != k:
        raise ValueError(f"{name} must have classical weight {k}, got {s.weight.label()}")
    if s.filtration > 0:
        raise ValueError(f"{name} must be holomorphic (filtration 0)")


def triple_t(w: TripleWeights, s1: NearlyForm, s2: NearlyForm) -> NearlyForm:
    """sum_j (-1)^j C(m,j) C(M-2, k1+j-1) nabla^j(s1) nabla^(m-j)(s2)."""
    _check_input(s1, w.k1, "s1")
    _check_input(s2, w.k2, "s2")
    m, M = w.m, w.M
    total = None
    for j in range(m + 1):
        c = (-1) ** j * math.comb(m, j) * _binom(M - 2, w.k1 + j - 1)
        term = (nabla_pow(s1, j) * nabla_pow(s2, m - j)).scale(c)
        total = term if total is None else total + term
    return total


def leading_constant(w: TripleWeights) -> int:
    """C(k3 - 2, m + k2 - 1); its inverse scales t in the corrected representative."""
    c = _binom(w.k3 - 2, w.m + w.k2 - 1)
    if c == 0:
        raise ZeroDivisionError(f"C({w.k3 - 2}, {w.m + w.k2 - 1}) vanishes for weights {w}")
    return c


def correction_coeffs(w: TripleWeights) -> list[Fraction]:
    """a_i = (-1)^(i+m+1) C(k3-2, m+k2-1)^-1 sum_{j<=i} C(m,j) C(M-2, k1+j-1), i < m."""
    m, M = w.m, w.M
    if m < 1:
        raise ValueError("correction coefficients need m >= 1")
    c = leading_constant(w)
    out = []
    partial = 0
    for i in range(m):
        partial += math.comb(m, i) * _binom(M - 2, w.k1 + i - 1)
        out.append(Fraction((-1) ** (i + m + 1) * partial, c))
    return out


class IdentityError(AssertionError):
    """The corrected-representative identity failed."""


@dataclass
class ThetaReport:
    weights: tuple
    m: int
    residual_valuation: object
    residual_terms: int
    ok: bool
    correction: list = field(default_factory=list)


def verify_theta_m_identity(w: TripleWeights, s1: NearlyForm, s2: NearlyForm,
                            strict: bool = True) -> ThetaReport:
    """Check nabla^m(s1) s2 = (-1)^m C(k3-2, m+k2-1)^-1 t(s1, s2) + nabla(sum_i a_i nabla^i(s1) nabla^(m-1-i)(s2))."""
    m = w.m
    t = triple_t(w, s1, s2)
    lhs = nabla_pow(s1, m) * s2
    rhs = t.scale(Fraction((-1) ** m, leading_constant(w)))
    coeffs = []
    if m >= 1:
        coeffs = correction_coeffs(w)
        inner = None
        for i, a in enumerate(coeffs):
            term = (nabla_pow(s1, i) * nabla_pow(s2, m - 1 - i)).scale(a)
            inner = term if inner is None else inner + term
        rhs = rhs + nabla(inner)
    residual = lhs - rhs
    worst = min((valuation(c, s1.p) for c in residual.grid.values()), default=INF)
    ok = residual.is_zero()
    report = ThetaReport((w.k1, w.k2, w.k3), m, worst, len(residual.grid), ok, coeffs)
    if strict and not ok:
        raise IdentityError(f"identity fails for weights {report.weights}: residual valuation {worst}")
    return report


# -- Euler factors ----------------------------------------------------------------


@dataclass(frozen=True)
class TripleEigenData:
    """Hecke data at one prime above p.

    ``k_tau`` lists (k1, k2, k3) for each real embedding attached to the prime;
    at the distinguished prime it has one entry, the distinguished embedding.
    Eigenvalues may be ints, Fractions, PadicScalars or UnramifiedScalars.
    """

    p: int
    alpha_x: object
    beta_x: object
    alpha_y: object
    beta_y: object
    alpha_z: object
    beta_z: object
    k_tau: tuple
    ramified: bool = False

    def __post_init__(self):
        if self.ramified:
            raise NotImplementedError("ramified primes are excluded; only the uniformizer p is supported")
        if not self.k_tau:
            raise ValueError("at least one embedding is needed")
        for ks in self.k_tau:
            if len(ks) != 3 or sum(ks) % 2:
                raise ValueError(f"weight triple {ks} must have three entries with even sum")

    @property
    def m0(self) -> int:
        return sum(self.k_tau[0]) // 2

    @property
    def m_p(self) -> list[int]:
        return [sum(ks) // 2 for ks in self.k_tau]


@dataclass
class EulerResult:
    value: object
    factors: list
    exponents: list
    vanishing: bool


def _pow_p(p: int, e: int) -> Fraction:
    return Fraction(p) ** e


def _factor(prod, p: int, e: int):
    f = 1 - prod * _pow_p(p, e)
    if isinstance(f, PadicScalar) and f.prec != INF and f.prec < 0:
        raise PrecisionError(f"Euler factor known only to absolute precision {f.prec}")
    return f


def _assemble(factors: list, exponents: list) -> EulerResult:
    value = 1
    for f in factors:
        value = value * f
    return EulerResult(value, factors, exponents, any(is_zero(f) for f in factors))


def euler_E(slot: str, d: TripleEigenData) -> EulerResult:
    """The four-factor Euler term.

    slot "p0": factors (1 - a p^(1-m0)) with a over ax ay bz, ax by bz, bx ay bz, bx by bz.
    slot "p":  factors (1 - a p^-sum(m_tau+2)) with a over bx by az, ax by bz, bx ay bz, bx by bz.
    """
    ax, bx, ay, by, az, bz = d.alpha_x, d.beta_x, d.alpha_y, d.beta_y, d.alpha_z, d.beta_z
    if slot == "p0":
        e = 1 - d.m0
        prods = [ax * ay * bz, ax * by * bz, bx * ay * bz, bx * by * bz]
    elif slot == "p":
        e = -sum(m + 2 for m in d.m_p)
        prods = [bx * by * az, ax * by * bz, bx * ay * bz, bx * by * bz]
    else:
        raise ValueError("slot must be 'p0' or 'p'")
    return _assemble([_factor(a, d.p, e) for a in prods], [e] * 4)


def euler_E1(slot: str, d: TripleEigenData) -> EulerResult:
    """The two-factor term in beta_z alone.

    slot "p0": (1 - bz^2 p^-k3)(1 - bz^2 p^(1-k3)) at the distinguished embedding.
    slot "p":  (1 - bz^2 p^-sum(k3+2))(1 - bz^2 p^-sum(k3+1)).
    """
    b2 = d.beta_z * d.beta_z
    if slot == "p0":
        k3 = d.k_tau[0][2]
        exps = [-k3, 1 - k3]
    elif slot == "p":
        exps = [-sum(ks[2] + 2 for ks in d.k_tau), -sum(ks[2] + 1 for ks in d.k_tau)]
    else:
        raise ValueError("slot must be 'p0' or 'p'")
    return _assemble([_factor(b2, d.p, e) for e in exps], exps)


# -- the kernel Delta -------------------------------------------------------------


@dataclass(frozen=True)
class DeltaKernelSpec:
    """Characters (r_i, nu_i), i = 1, 2, 3, on O^x for the non-distinguished part.

    r_i are VectorChars of length f (the degree of the component; f = 0 means
    the part is empty and Delta is identically 1), nu_i are integers composed
    with the norm.
    """

    r: tuple
    nu: tuple

    def __post_init__(self):
        if len(self.r) != 3 or len(self.nu) != 3:
            raise ValueError("need three characters r_i and three integers nu_i")
        lengths = {len(ri.exps) for ri in self.r}
        if len(lengths) != 1:
            raise ValueError("all r_i must have the same degree")

    @property
    def f(self) -> int:
        return len(self.r[0].exps)

    def m_chars(self) -> tuple[VectorChar, VectorChar, VectorChar]:
        r1, r2, r3 = self.r
        nu1, nu2, _ = self.nu
        f = self.f
        m1 = r1 / r3 / r2 * VectorChar.via_norm(nu2, f)
        m2 = r2 / r1 / r3 * VectorChar.via_norm(nu1, f)
        m3 = r3 / r1 / r2
        return m1, m2, m3

    def weight_char(self, i: int) -> VectorChar:
        """k(r_i, nu_i) = -2 r_i + nu_i o N (slot 3 uses nu1 + nu2)."""
        nu = self.nu[0] + self.nu[1] if i == 3 else self.nu[i - 1]
        return VectorChar.via_norm(nu, self.f) * self.r[i - 1] ** -2


def _is_unit(x, p: int) -> bool:
    return not is_zero(x) and valuation(x, p) == 0


def char_eval(chi: VectorChar, x, p: int, unit_only: bool = False):
    """chi(x), extended by 0 off the units when chi has a negative exponent
    (always, when ``unit_only``)."""
    if is_zero(x):
        return 0
    if not _is_unit(x, p) and (unit_only or any(e < 0 for e in chi.exps)):
        return 0
    if isinstance(x, int):
        x = Fraction(x)
    if isinstance(x, UnramifiedScalar):
        return chi(x)
    return x ** chi.exps[0]


def delta_eval(kernel: DeltaKernelSpec, v1, v2, v3, p: int):
    """m1(x3 y2 - x2 y3) m2(x3 y1 - x1 y3) m3(x1 y2 - x2 y1), zero where m3 is undefined."""
    if kernel.f == 0:
        return 1
    (x1, y1), (x2, y2), (x3, y3) = v1, v2, v3
    m1, m2, m3 = kernel.m_chars()
    d3 = x1 * y2 - x2 * y1
    c3 = char_eval(m3, d3, p, unit_only=True)
    if is_zero(c3):
        return 0
    return char_eval(m1, x3 * y2 - x2 * y3, p) * char_eval(m2, x3 * y1 - x1 * y3, p) * c3


def scale_slot(v, t):
    return (v[0] * t, v[1] * t)
