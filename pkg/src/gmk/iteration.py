"""Universal powers of the Gauss-Manin connection on the ordinary locus.

The universal iterate is the operator series

    nabla^s = sum_gamma s(gamma) sum_i binom(w', i) ((nabla - gamma)/gamma)^i o nabla^(gamma disk)

where gamma runs over disk centres omega(r) exp(jp) and w' = p^-1 log(1+T')
is the exponent variable.  Everything here lives in the ordinary Serre-Tate
model, where the Hasse-invariant factors are units and are dropped.

A term ((nabla - gamma)/gamma)^i mixes weights k, k+2, ..., k+2i, so results
are GradedNearly objects indexed by the weight offset.  Convergence of the
i-sum is a statement about the collapsed model, where a form of weight k+2j
is written over weight k by V_(k+2j,m) = (1 + p^(2n) Z)^(2j) V_(k,m).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .iwasawa import INF, IwasawaSeries, WeightPoint, binom_wprime, build_wn_prime, specialize
from .nearly import FormWeight, NearlyForm, _add_into, nabla_pow
from .padic import (
    PadicScalar,
    binom_general,
    default_prec,
    factorial_valuation,
    is_zero,
    padic_exp,
    padic_log1p,
    teichmuller,
    valuation,
)
from .qexp import deplete, disk_project
from .weights import default_trunc


class GradedNearly:
    """Offset j -> NearlyForm of weight base + 2j."""

    __slots__ = ("base", "n", "basis", "parts")
    __hash__ = None

    def __init__(self, base: FormWeight, parts=None, basis: str = "W", n: int = 1):
        clean = {}
        for j, F in (parts or {}).items():
            if F.weight != base.plus(2 * j):
                raise ValueError(f"offset {j} carries weight {F.weight.label()}, expected {base.plus(2 * j).label()}")
            if F.basis != basis or F.n != n:
                raise ValueError("all parts must share basis and level")
            if not F.is_zero():
                clean[j] = F
        self.base, self.n, self.basis = base, n, basis
        self.parts = dict(sorted(clean.items()))

    @property
    def p(self) -> int:
        return self.base.p

    def part(self, j: int) -> NearlyForm:
        return self.parts.get(j, NearlyForm(self.base.plus(2 * j), {}, self.basis, self.n))

    def __add__(self, other: GradedNearly) -> GradedNearly:
        if (other.base, other.basis, other.n) != (self.base, self.basis, self.n):
            raise ValueError("graded objects differ in base weight, basis or level")
        out = dict(self.parts)
        for j, F in other.parts.items():
            out[j] = out[j] + F if j in out else F
        return GradedNearly(self.base, out, self.basis, self.n)

    def __sub__(self, other: GradedNearly) -> GradedNearly:
        return self + other.scale(-1)

    def scale(self, c) -> GradedNearly:
        return GradedNearly(self.base, {j: F.scale(c) for j, F in self.parts.items()}, self.basis, self.n)

    def map_coefficients(self, fn) -> GradedNearly:
        return GradedNearly(self.base, {j: NearlyForm(F.weight, {k: fn(c) for k, c in F.grid.items()},
                                                      F.basis, F.n)
                                        for j, F in self.parts.items()}, self.basis, self.n)

    def is_zero(self) -> bool:
        return not self.parts

    def __eq__(self, other):
        if not isinstance(other, GradedNearly):
            return NotImplemented
        try:
            return (self - other).is_zero()
        except ValueError:
            return False

    def filtration(self) -> int:
        return max((F.filtration for F in self.parts.values()), default=-1)

    def collapse(self) -> dict:
        """(m, nu, l) -> coefficient of (1+q)^nu Z^l V_(k,m) in the collapsed model."""
        p, n = self.p, self.n
        out = {}
        for j, F in self.parts.items():
            G = F.to_basis("V")
            zs = [math.comb(2 * j, l) * p ** (2 * n * l) for l in range(2 * j + 1)]
            for (m, nu), c in G.grid.items():
                for l, z in enumerate(zs):
                    _add_into(out, (m, nu, l), c * z)
        return {k: c for k, c in out.items() if not is_zero(c)}

    def __repr__(self):
        return f"GradedNearly[base={self.base.label()}]({self.parts})"


def coefficient_valuation(c, p: int):
    """Valuation of a coefficient, using the Lambda_n valuation for series."""
    if isinstance(c, IwasawaSeries):
        return c.lambda_valuation()
    return valuation(c, p)


def collapsed_valuation(G: GradedNearly):
    return min((coefficient_valuation(c, G.p) for c in G.collapse().values()), default=INF)


# -- the universal exponent ---------------------------------------------------


def disk_center(p: int, n: int, c: int, prec: int):
    """For a unit residue c mod p^n: (r, j, gamma) with gamma = omega(r) exp(jp) = c mod p^n."""
    r = c % p
    omega = teichmuller(r, p, prec)
    principal = PadicScalar.from_rational(c, p, prec) / omega
    j = 0
    if n > 1:
        j = int((padic_log1p(principal - 1) / p).lift()) % p ** (n - 1)
    gamma = omega * padic_exp(PadicScalar.from_rational(j * p, p, prec)) if j else omega
    if (gamma - c).valuation() < n:
        raise AssertionError("disk centre is not congruent to its residue")
    return r, j, gamma


@dataclass(frozen=True)
class UnivExponent:
    """The universal exponent s on Z_p^x with Teichmueller component omega^a.

    s(omega(r) exp(jp)) = omega(r)^a (1+T')^j, and s(beta) for beta near a
    centre gamma expands as s(gamma) sum_l binom(w', l) ((beta - gamma)/gamma)^l.
    """

    p: int
    n: int
    a: int
    trunc: int
    prec: int = field(default_factory=default_prec)

    def residues(self) -> list[int]:
        N = self.p ** self.n
        return [c for c in range(1, N) if c % self.p]

    def table(self) -> dict:
        """Residue c -> (gamma, s(gamma)); covers every unit class mod p^n once."""
        out = {}
        for c in self.residues():
            r, j, gamma = disk_center(self.p, self.n, c, self.prec)
            out[c] = (gamma, self.value_at_center(r, j))
        return out

    def value_at_center(self, r: int, j: int) -> IwasawaSeries:
        p, n, D = self.p, self.n, self.trunc
        tame = teichmuller(r, p, self.prec) ** (self.a % (p - 1))
        poly = [math.comb(j, d) if d <= j else 0 for d in range(D + 1)]
        return IwasawaSeries(p, n, poly) * tame

    def wprime(self) -> IwasawaSeries:
        return build_wn_prime(self.p, self.n, self.trunc)

    def point(self, m: int) -> WeightPoint:
        """The classical exponent m; requires m = a mod p-1."""
        if (m - self.a) % (self.p - 1):
            raise ValueError(f"m = {m} is not in the component omega^{self.a}")
        return WeightPoint.classical(self.p, m, self.prec)

    @classmethod
    def for_exponent(cls, p: int, n: int, m: int, trunc: int, prec: int | None = None) -> UnivExponent:
        return cls(p, n, m % (p - 1), trunc, default_prec() if prec is None else prec)


# -- operators ----------------------------------------------------------------


def nabla_disk(F: NearlyForm, gamma: int) -> NearlyForm:
    """Keep the terms a (1+q)^nu X_m with nu = gamma mod p^n."""
    return F.map_q(lambda f: disk_project(f, gamma, F.n))


def _require_classical(F: NearlyForm):
    if not F.weight.is_classical:
        raise ValueError("the universal iterate is implemented for classical-weight inputs")


def shifted_power_term(F: NearlyForm, gamma, i: int) -> GradedNearly:
    """((nabla - gamma)/gamma)^i F = sum_j binom(i,j) (-1)^(i-j) gamma^-j nabla^j F."""
    parts = {}
    for j in range(i + 1):
        coef = math.comb(i, j) * (-1) ** (i - j)
        G = nabla_pow(F, j).scale(coef)
        if j:
            G = G.scale(gamma ** -j)
        parts[j] = G
    return GradedNearly(F.weight, parts, F.basis, F.n)


def a_i_term(F: NearlyForm, S: UnivExponent, i: int) -> GradedNearly:
    """sum_gamma s(gamma) binom(w', i) ((nabla - gamma)/gamma)^i o nabla^(gamma disk) (F)."""
    _require_classical(F)
    if S.n != F.n or S.p != F.p:
        raise ValueError("exponent and form must share p and level")
    binom = binom_wprime(S.p, S.n, S.trunc, i)
    total = GradedNearly(F.weight, {}, F.basis, F.n)
    for c, (gamma, s_gamma) in S.table().items():
        G = nabla_disk(F, c)
        if G.is_zero():
            continue
        term = shifted_power_term(G, gamma, i)
        total = total + term.scale(s_gamma * binom)
    return total


def default_iterate_cutoff(p: int, prec: int) -> int:
    """Smallest I with i - v(i!) >= prec for every i > I (via i - (i-1)/(p-1))."""
    I = 0
    while math.ceil((I + 1) - Fraction(I, p - 1)) < prec:
        I += 1
    return I


@dataclass
class IterateResult:
    """The truncated universal iterate and the certified valuation of what was dropped."""

    value: GradedNearly
    cutoff: int
    tail: int
    terms: list = field(default_factory=list)


def nabla_univ(F: NearlyForm, S: UnivExponent, prec: int | None = None, I: int | None = None,
               keep_terms: bool = False) -> IterateResult:
    """sum_{i <= I} A_i(F).  Terms i > I have collapsed valuation >= the reported tail."""
    _require_classical(F)
    prec = default_prec() if prec is None else prec
    if I is None:
        I = default_iterate_cutoff(F.p, prec)
    F = F.map_q(deplete)
    total = GradedNearly(F.weight, {}, F.basis, F.n)
    terms = []
    for i in range(I + 1):
        A = a_i_term(F, S, i)
        total = total + A
        if keep_terms:
            terms.append(A)
    tail = math.ceil((I + 1) - Fraction(I, F.p - 1))
    return IterateResult(total, I, tail, terms)


def default_exponent(p: int, n: int, m: int, prec: int) -> UnivExponent:
    """A universal exponent whose truncation suffices to specialise at m with prec digits."""
    I = default_iterate_cutoff(p, prec)
    return UnivExponent.for_exponent(p, n, m, default_trunc(p, n, prec, I), prec + 2 * I + 4)


def specialize_graded(G: GradedNearly, pt: WeightPoint) -> GradedNearly:
    """Substitute T' in every coefficient."""
    return G.map_coefficients(lambda c: specialize(c, pt) if isinstance(c, IwasawaSeries) else c)


def check_specialization(F: NearlyForm, result: GradedNearly, S: UnivExponent, m: int) -> dict:
    """Compare the universal iterate at exponent m with nabla^m of the depleted input.

    Returns the offsets that survive, whether offset m matches, and the smallest
    absolute precision among the specialised coefficients.
    """
    special = specialize_graded(result, S.point(m))
    expected = nabla_pow(F.map_q(deplete), m)
    ok = special.part(m) == expected
    stray = [j for j in special.parts if j != m]
    min_prec = min((c.prec for Fj in special.parts.values() for c in Fj.grid.values()
                    if isinstance(c, PadicScalar)), default=INF)
    # vanishing offsets have no grid entries once is_zero drops them; check their precision too
    return {"match": ok and not stray, "stray_offsets": stray, "min_prec": min_prec,
            "expected_terms": len(expected.grid)}


# -- closed-form comparison -----------------------------------------------------


def _z_power_series(S: UnivExponent, L: int) -> list:
    """Coefficients in Z of (1 + p^(2n) Z)^(2s) = sum_l binom(w', l) ((1+p^(2n)Z)^2 - 1)^l, to Z^L."""
    p, n = S.p, S.n
    P = p ** (2 * n)
    base = [0, 2 * P, P * P]
    out = [0] * (L + 1)
    power = [1]
    for l in range(L + 1):
        b = binom_wprime(p, n, S.trunc, l)
        for d, c in enumerate(power[:L + 1]):
            if c:
                out[d] = out[d] + b * c
        nxt = [0] * (len(power) + 2)
        for d, c in enumerate(power):
            for e, x in enumerate(base):
                nxt[d + e] += c * x
        power = nxt
    return out


def closed_form_guess(a, nu: int, k: int, m: int, S: UnivExponent, I: int, with_nu_power: bool) -> dict:
    """sum_{i <= I} p^(2ni) binom(w',i) binom(k+w'-m-1,i) i! [nu^-i] s(nu) a (1+p^(2n)Z)^(2s) V_(k,m+i),

    in the collapsed model (m+i, nu, l) -> coefficient.
    """
    p, n = S.p, S.n
    w = S.wprime()
    _, j, gamma = disk_center(p, n, nu, S.prec)
    r = nu % p
    s_gamma = S.value_at_center(r, j)
    y = (PadicScalar.from_rational(nu, p, S.prec) - gamma) / gamma
    s_nu = IwasawaSeries.constant(p, n, 0, S.trunc)
    for l in range(I + 1):
        s_nu = s_nu + binom_wprime(p, n, S.trunc, l) * y ** l
    s_nu = s_nu * s_gamma
    zs = _z_power_series(S, 2 * I)
    out = {}
    for i in range(I + 1):
        coef = binom_wprime(p, n, S.trunc, i) * binom_general(w + (k - m - 1), i) * s_nu
        coef = coef * (p ** (2 * n * i) * math.factorial(i)) * a
        if with_nu_power:
            coef = coef * Fraction(1, nu ** i)
        for l, z in enumerate(zs):
            if not is_zero(z):
                _add_into(out, (m + i, nu, l), coef * z)
    return out


def compare_collapsed(x: dict, y: dict, p: int):
    """Smallest coefficient valuation of x - y over the common index set."""
    keys = set(x) | set(y)
    worst = INF
    for key in keys:
        d = x.get(key, 0) - y.get(key, 0)
        if not is_zero(d):
            worst = min(worst, coefficient_valuation(d, p))
    return worst


def closed_form_check(a, nu: int, k: int, m: int, S: UnivExponent, I: int) -> dict:
    """Compare the series on a (1+q)^nu V_(k,m) with both closed-form candidates.

    Only Z-degrees up to 2I are compared (the series side has no higher ones).
    """
    F = NearlyForm(FormWeight.classical(S.p, k), {(m, nu): a}, "V", S.n)
    series = nabla_univ(F, S, I=I).value.collapse()
    report = {}
    for label, flag in (("with_nu_power", True), ("without_nu_power", False)):
        guess = closed_form_guess(a, nu, k, m, S, I, flag)
        guess = {key: c for key, c in guess.items() if key[2] <= 2 * I}
        report[label] = compare_collapsed(series, guess, S.p)
    return report


# -- divisibility certificate -------------------------------------------------


def stated_bound(p: int, i: int) -> int:
    """ceil(i p / (p-1)) - 1."""
    return math.ceil(Fraction(i * p, p - 1)) - 1


def corrected_bound(p: int, i: int) -> int:
    """i - v(i!): binom(w', i) has Lambda valuation -i(n-1) - v(i!) and the operator part gains i n."""
    return i - factorial_valuation(i, p)


@dataclass
class CertificateCase:
    p: int
    n: int
    i: int
    sample: tuple
    v_A: int
    v_one_minus_B: int
    v_binom_factorials: int
    measured: object
    bound: int
    ok: bool


def pdiviter_certificate(p: int, n: int, i: int, samples, bound: str = "stated",
                         trunc: int | None = None, prec: int | None = None) -> list[CertificateCase]:
    """Measure A_i on ordinary monomials a (1+q)^nu V_(k,m), p not dividing nu.

    Each sample is (a, nu, k, m).  The three ingredient bounds are
    v(p^(2n)/nu) >= 2n, v(1 - nu/gamma) >= n and v(j! binom(M+j, j)) >= 0 for
    the classical M = k - m - 1; the aggregate is compared with the selected bound.
    """
    prec = default_prec() if prec is None else prec
    D = trunc if trunc is not None else 4 * p ** (n - 1) + 2 * i + 8
    bound_fn = stated_bound if bound == "stated" else corrected_bound
    cases = []
    for sample in samples:
        a, nu, k, m = sample
        if nu % p == 0:
            raise ValueError("samples must be ordinary monomials with p not dividing nu")
        S = UnivExponent(p, n, 0, D, prec)
        _, _, gamma = disk_center(p, n, nu, prec)
        v_A = valuation(Fraction(p ** (2 * n), nu), p)
        v_B = (1 - PadicScalar.from_rational(nu, p, prec) / gamma).valuation()
        M = k - m - 1
        v_bf = min(valuation(math.factorial(j) * binom_general(M + j, j), p) for j in range(i + 1))
        F = NearlyForm(FormWeight.classical(p, k), {(m, nu): a}, "V", n)
        measured = collapsed_valuation(a_i_term(F, S, i))
        b = bound_fn(p, i)
        ok = v_A >= 2 * n and v_B >= n and v_bf >= 0 and measured >= b
        cases.append(CertificateCase(p, n, i, tuple(sample), v_A, v_B, v_bf, measured, b, ok))
    return cases
