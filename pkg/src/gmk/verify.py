"""Property suites reproducing each identity and valuation bound, with
machine-readable reports.

Every suite is a function ``cfg -> list[Case]``; ``run_suite`` wraps it in a
``VerifyReport`` whose cases are sorted by descriptor, so a fixed seed gives a
byte-identical report.
"""

from __future__ import annotations

import math
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .cyclotomic import CycloScalar, DirichletChar
from .iteration import (
    UnivExponent,
    check_specialization,
    closed_form_check,
    corrected_bound,
    default_exponent,
    default_iterate_cutoff,
    nabla_disk,
    nabla_univ,
    stated_bound,
    pdiviter_certificate,
)
from .iwasawa import WeightPoint, binom_wprime, specialize
from .nearly import FormWeight, NearlyForm, graded_raise, nabla_iter, nabla_pow
from .padic import INF, PadicScalar, default_prec, factorial_valuation, padic_exp
from .qexp import (
    QExpansion,
    deplete,
    disk_project,
    disk_project_avg,
    theta_chi_avg,
    theta_chi_direct,
    u_op,
)
from .sympoly import binom_lemma_lhs, binom_lemma_rhs, lemma_lhs_value, lemma_rhs_value
from .triple import (
    DeltaKernelSpec,
    TripleEigenData,
    TripleWeights,
    delta_eval,
    euler_E,
    euler_E1,
    scale_slot,
    verify_theta_m_identity,
)
from .unramified import UnramifiedRing
from .weights import VectorChar, eval_univ_char

BOUNDS = ("stated", "corrected")


@dataclass
class RunConfig:
    """Parameters shared by the suites; None selects each suite's default sweep."""

    p: int | None = None
    n: int | None = None
    prec: int | None = None
    seed: int = 0
    trunc: int | None = None
    cutoff: int | None = None
    window: int | None = None
    samples: int | None = None
    i_max: int | None = None
    random_i_max: int | None = None
    m: int | None = None
    bound: str = "stated"

    def __post_init__(self):
        for name in ("p", "n", "prec", "trunc", "window", "samples"):
            v = getattr(self, name)
            if v is not None and v <= 0:
                raise ValueError(f"{name} must be positive")
        for name in ("cutoff", "i_max", "random_i_max", "m"):
            v = getattr(self, name)
            if v is not None and v < 0:
                raise ValueError(f"{name} must be non-negative")
        if self.p is not None and (self.p < 3 or any(self.p % d == 0 for d in range(2, math.isqrt(self.p) + 1))):
            raise ValueError("p must be an odd prime")
        if self.bound not in BOUNDS:
            raise ValueError(f"bound must be one of {BOUNDS}")
        if self.cutoff is not None and self.p is not None:
            need = math.ceil(Fraction(self.digits * (self.p - 1), self.p))
            if self.cutoff < need:
                raise ValueError(f"series cutoff {self.cutoff} is below ceil(digits (p-1)/p) = {need}")

    @property
    def digits(self) -> int:
        return self.prec if self.prec is not None else default_prec()

    def rng(self, salt: str) -> random.Random:
        return random.Random(f"{salt}:{self.seed}")


@dataclass
class Case:
    descriptor: str
    status: str
    measured: object = None
    precision: object = None
    detail: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == "pass"


def _jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return str(x)


@dataclass
class VerifyReport:
    suite: str
    config: dict
    cases: list

    @property
    def failures(self) -> list[str]:
        return [c.descriptor for c in self.cases if not c.ok]

    @property
    def exit_code(self) -> int:
        return 1 if self.failures else 0

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "config": _jsonable(self.config),
            "status": "pass" if not self.failures else "fail",
            "cases": [_jsonable(asdict(c)) for c in self.cases],
            "failures": self.failures,
        }


def _case(descriptor: str, ok: bool, measured=None, precision=None, **detail) -> Case:
    return Case(descriptor, "pass" if ok else "fail", measured, precision, detail)


def _pairs(cfg: RunConfig, primes, levels):
    ps = [cfg.p] if cfg.p is not None else primes
    ns = [cfg.n] if cfg.n is not None else levels
    return [(p, n) for p in ps for n in ns]


def _random_grid(rng: random.Random, p: int, terms: int, max_m: int, max_nu: int, den=(1,)):
    return {(rng.randrange(max_m + 1), rng.randrange(max_nu)):
            Fraction(rng.randrange(-20, 21) or 1, rng.choice(den)) for _ in range(terms)}


# -- universal character --------------------------------------------------------


def univ_char_cases(cfg: RunConfig, primes=(3, 5, 7), levels=(1, 2), ks=range(11), betas: int = 20) -> list[Case]:
    """Specialise the universal character at T = exp(kp) - 1 and compare with beta^k."""
    digits = cfg.prec or 6
    n_beta = cfg.samples or betas
    cases = []
    for p, n in _pairs(cfg, primes, levels):
        rng = cfg.rng(f"univ-char:{p}:{n}")
        work = digits + 6
        points = {k: WeightPoint.classical(p, k, work) for k in ks}
        for b_idx in range(n_beta):
            beta = PadicScalar.from_rational(1 + p * rng.randrange(p ** work), p, work)
            series = eval_univ_char(p, n, beta, prec=digits + 2)
            for k, pt in points.items():
                value = specialize(series, pt)
                ok = (value - beta ** k).is_zero() and value.prec >= digits
                cases.append(_case(f"univ-char p={p} n={n} beta#{b_idx:02d} k={k:02d}", ok,
                                   measured=value.prec, precision=digits))
    return cases


def finite_order_cases(cfg: RunConfig, pairs=((3, 2), (5, 2))) -> list[Case]:
    """Specialise at T = xi - 1 (xi of order p^(n-1)) at beta = exp(alpha p); expect xi^alpha."""
    digits = cfg.prec or 6
    cases = []
    sel = [(p, n) for p, n in pairs if (cfg.p in (None, p)) and (cfg.n in (None, n))]
    for p, n in sel:
        pt = WeightPoint.finite_order(p, n)
        for alpha in range(p ** n):
            beta = padic_exp(PadicScalar.from_rational(alpha * p, p, digits + 6))
            value = specialize(eval_univ_char(p, n, beta, prec=digits), pt)
            expected = CycloScalar.monomial(p, n - 1, alpha % p ** (n - 1))
            cases.append(_case(f"finite-order p={p} n={n} alpha={alpha:02d}", value == expected,
                               measured=str(value.coeffs), precision=digits))
    return cases


def suite_univ_char(cfg: RunConfig) -> list[Case]:
    return univ_char_cases(cfg) + finite_order_cases(cfg)


# -- valuation bounds -------------------------------------------------------------


def factorial_bound_cases(cfg: RunConfig, primes=(3, 5, 7), h_max: int = 200) -> list[Case]:
    cases = []
    for p in ([cfg.p] if cfg.p else primes):
        worst = min(Fraction(h, p - 1) - factorial_valuation(h, p) for h in range(h_max + 1))
        cases.append(_case(f"factorial p={p} h<={h_max}", worst >= 0, measured=worst))
    return cases


def binom_valuation_bound(p: int, n: int, i: int, bound: str) -> Fraction:
    """Lower bound asserted for the Lambda_n-valuation of binom(w'_n, i)."""
    if bound == "stated":
        return -i * (n - Fraction(p, p - 1))
    return Fraction(-i * (n - 1) - factorial_valuation(i, p))


def binom_valuation_cases(cfg: RunConfig, primes=(3, 5, 7), levels=(1, 2), i_max: int = 30) -> list[Case]:
    """Measure the Lambda_n-valuation of binom(w'_n, i) and compare with the selected bound.

    The truncation (i+3) p^(n-1) + 2 contains the minimising coefficient; the
    certificate floor covers the rest, so a pass is certified and a fail has a
    witness coefficient.
    """
    i_top = cfg.i_max if cfg.i_max is not None else i_max
    cases = []
    for p, n in _pairs(cfg, primes, levels):
        q = p ** (n - 1)
        for i in range(i_top + 1):
            b = binom_wprime(p, n, (i + 3) * q + 2, i)
            measured = b.lambda_valuation()
            floor = min((piece[0] for piece in b.pieces), default=INF)
            certified = min(measured, floor)
            bound = binom_valuation_bound(p, n, i, cfg.bound)
            cases.append(_case(f"binom-valuation p={p} n={n} i={i:02d}", certified >= bound,
                               measured=measured, precision=None, bound=bound, certificate=floor))
    return cases


def suite_valuation_bounds(cfg: RunConfig) -> list[Case]:
    return factorial_bound_cases(cfg) + binom_valuation_cases(cfg)


# -- twists ---------------------------------------------------------------------


def theta_chi_cases(cfg: RunConfig, pairs=((3, 1), (3, 2), (5, 1)), inputs: int = 50) -> list[Case]:
    """theta_chi by isogeny averaging equals the coefficient twist (primitive chi), lands in ker U,
    and the character average of twists recovers the disk projector."""
    count = cfg.samples or inputs
    cases = []
    sel = [(p, n) for p, n in pairs if (cfg.p in (None, p)) and (cfg.n in (None, n))]
    for p, n in sel:
        rng = cfg.rng(f"theta-chi:{p}:{n}")
        N = cfg.window or 3 * p ** n + 5
        chars = [c for c in DirichletChar.all_chars(p, n) if c.is_primitive()]
        xi = CycloScalar.xi(p, n)
        for idx in range(count):
            f = QExpansion(p, N, {rng.randrange(N): rng.randrange(-9, 10) for _ in range(4)})
            chi = rng.choice(chars)
            direct = theta_chi_direct(f, chi)
            avg = theta_chi_avg(f, chi, xi)
            tag = f"theta-chi p={p} n={n} input#{idx:02d}"
            cases.append(_case(tag + " avg=direct", avg == direct, chi=[chi.a, chi.b]))
            cases.append(_case(tag + " in ker U", u_op(direct).is_zero()))
            if idx < 5:
                gamma = rng.choice([c for c in range(1, p ** n) if c % p])
                cases.append(_case(tag + f" disk gamma={gamma}",
                                   disk_project_avg(f, gamma, n) == disk_project(f, gamma, n)))
    return cases


# -- one-step connection -----------------------------------------------------------


def _random_weight(rng: random.Random, p: int, universal: bool) -> FormWeight:
    if universal:
        return FormWeight.universal(p, 1, 8, shift=rng.randrange(4))
    return FormWeight.classical(p, rng.randrange(0, 12))


def gm_step_cases(cfg: RunConfig, primes=(3, 5, 7), inputs: int = 30) -> list[Case]:
    """The filtration-raising part of nabla on Gr_m is multiplication by (w - m);
    disk projectors are idempotent, orthogonal and sum to depletion."""
    count = cfg.samples or inputs
    cases = []
    for p in ([cfg.p] if cfg.p else primes):
        rng = cfg.rng(f"gm-step:{p}")
        for idx in range(count):
            basis = rng.choice("VW")
            wt = _random_weight(rng, p, idx % 3 == 0)
            F = NearlyForm(wt, _random_grid(rng, p, 5, 3, 25, (1, 2, p)), basis)
            w = wt.value()
            factor = 1 if basis == "W" else p ** 2
            for m in range(F.filtration + 1):
                got = graded_raise(F, m)
                want = {nu: (w - m) * c * factor for nu, c in F.component(m).items()}
                want = {nu: c for nu, c in want.items() if not (hasattr(c, "is_zero") and c.is_zero()) and c != 0}
                ok = set(got) == set(want) and all(got[nu] == want[nu] for nu in got)
                cases.append(_case(f"graded-factor p={p} input#{idx:02d} m={m} basis={basis} k={wt.label()}", ok))
            if wt.is_classical:
                total = None
                for gamma in (c for c in range(1, p) if c % p):
                    piece = nabla_disk(F, gamma)
                    idem = nabla_disk(piece, gamma) == piece
                    cases.append(_case(f"disk p={p} input#{idx:02d} gamma={gamma} idempotent", idem))
                    total = piece if total is None else total + piece
                cases.append(_case(f"disk p={p} input#{idx:02d} partition", total == F.map_q(deplete)))
    return cases


# -- closed form of nabla^s ----------------------------------------------------------


def gm_closed_form_cases(cfg: RunConfig, primes=(3, 5, 7), grids: int = 60, s_max: int = 5) -> list[Case]:
    count = cfg.samples or grids
    cases = []
    rng = cfg.rng("gm-closed-form")
    for idx in range(count):
        p = cfg.p or rng.choice(primes)
        basis = rng.choice("VW")
        wt = _random_weight(rng, p, idx % 3 == 0)
        F = NearlyForm(wt, _random_grid(rng, p, 4, 2, 20, (1, 2, p)), basis)
        for s in range(s_max + 1):
            residual = nabla_pow(F, s) - nabla_iter(F, s)
            cases.append(_case(f"closed-form grid#{idx:02d} p={p} basis={basis} s={s}", residual.is_zero(),
                               measured=len(residual.grid)))
    return cases


def iterate_closed_form_cases(cfg: RunConfig, samples=((3, 4, 4, 0), (3, 5, 3, 1), (5, 7, 6, 0))) -> list[Case]:
    """Which closed form the universal iterate matches on a (1+q)^nu V_(k,m).

    Passes when the nu^-i variant agrees to the truncation-limited precision
    I + 1 and strictly better than the variant without nu^-i.
    """
    I = 3
    cases = []
    for p, nu, k, m in samples:
        if cfg.p not in (None, p):
            continue
        S = default_exponent(p, 1, 1, 5)
        rep = closed_form_check(Fraction(1), nu, k, m, S, I)
        ok = rep["with_nu_power"] >= I + 1 and rep["with_nu_power"] > rep["without_nu_power"]
        cases.append(_case(f"iterate-closed-form p={p} nu={nu} k={k} m={m}", ok, measured=rep, precision=I + 1))
    return cases


def suite_gm_closed_form(cfg: RunConfig) -> list[Case]:
    return gm_closed_form_cases(cfg) + iterate_closed_form_cases(cfg)


# -- binomial lemma ------------------------------------------------------------------


def binom_lemma_cases(cfg: RunConfig, i_max: int = 6, random_i_max: int | None = None,
                      substitutions: int = 10 ** 4) -> list[Case]:
    top = cfg.i_max if cfg.i_max is not None else i_max
    rtop = cfg.random_i_max if cfg.random_i_max is not None else random_i_max
    subs = cfg.samples or substitutions
    cases = []
    for i in range(top + 1):
        lhs, rhs = binom_lemma_lhs(i), binom_lemma_rhs(i)
        diff = lhs - rhs
        cases.append(_case(f"binom-lemma symbolic i={i:02d}", diff.is_zero() and lhs.is_integral(),
                           measured=len(diff.terms), terms=len(lhs.terms)))
    if rtop is not None:
        for i in range(rtop + 1):
            rng = cfg.rng(f"binom-lemma:{i}")
            bad = 0
            for _ in range(subs):
                a, b, m = (rng.randint(-50, 50) for _ in range(3))
                if lemma_lhs_value(i, a, b, m) != lemma_rhs_value(i, a, b, m):
                    bad += 1
            cases.append(_case(f"binom-lemma random i={i:02d}", bad == 0, measured=bad, substitutions=subs))
    return cases


# -- divisibility of the iterate terms ------------------------------------------------


def pdiviter_cases(cfg: RunConfig, primes=(3, 5), i_max: int = 8, samples: int = 3) -> list[Case]:
    top = cfg.i_max if cfg.i_max is not None else i_max
    count = cfg.samples or samples
    n = cfg.n or 1
    cases = []
    for p in ([cfg.p] if cfg.p else primes):
        rng = cfg.rng(f"pdiviter:{p}")
        mons = []
        while len(mons) < count:
            nu = rng.randrange(1, 4 * p)
            if nu % p:
                mons.append((Fraction(rng.randrange(1, 10)), nu, rng.randrange(2, 9), rng.randrange(0, 3)))
        for i in range(top + 1):
            for c in pdiviter_certificate(p, n, i, mons, bound=cfg.bound):
                a, nu, k, m = c.sample
                cases.append(_case(f"pdiviter p={p} n={n} i={i} a={a} nu={nu} k={k} m={m}", c.ok,
                                   measured=c.measured, precision=c.bound, v_A=c.v_A,
                                   v_one_minus_B=c.v_one_minus_B, v_binom_factorials=c.v_binom_factorials))
    return cases


# -- specialisation of the universal iterate ----------------------------------------------


def gmesp_cases(cfg: RunConfig, primes=(3, 5), ms=range(4), inputs: int = 2, digits: int = 4) -> list[Case]:
    target = cfg.prec or digits
    count = cfg.samples or inputs
    n = cfg.n or 1
    cases = []
    for p in ([cfg.p] if cfg.p else primes):
        rng = cfg.rng(f"gmesp:{p}")
        forms = []
        for _ in range(count):
            k = rng.randrange(2, 9)
            forms.append(NearlyForm(FormWeight.classical(p, k), _random_grid(rng, p, 4, 2, 20), "W", n))
        for m in ([cfg.m] if cfg.m is not None else ms):
            S = default_exponent(p, n, m, target + 1)
            I = cfg.cutoff if cfg.cutoff is not None else default_iterate_cutoff(p, target + 1)
            for idx, F in enumerate(forms):
                res = nabla_univ(F, S, prec=target + 1, I=I)
                rep = check_specialization(F, res.value, S, m)
                ok = rep["match"] and not rep["stray_offsets"] and rep["min_prec"] >= target
                cases.append(_case(f"gmesp p={p} n={n} m={m} input#{idx:02d} k={F.weight.k}", ok,
                                   measured=rep["min_prec"], precision=target, cutoff=res.cutoff, tail=res.tail))
    return cases


# -- triple products ------------------------------------------------------------------------


def theta_m_cases(cfg: RunConfig, k_range=range(2, 7), m_max: int = 3) -> list[Case]:
    p = cfg.p or 3
    rng = cfg.rng(f"theta-m:{p}")
    cases = []
    for k1 in k_range:
        for k2 in k_range:
            for m in range(m_max + 1):
                w = TripleWeights(k1, k2, k1 + k2 + 2 * m)
                s1 = NearlyForm(FormWeight.classical(p, k1), _random_grid(rng, p, 3, 0, 12, (1, 2, p)))
                s2 = NearlyForm(FormWeight.classical(p, k2), _random_grid(rng, p, 3, 0, 12, (1, 3)))
                rep = verify_theta_m_identity(w, s1, s2, strict=False)
                cases.append(_case(f"theta-m k=({k1},{k2},{w.k3}) m={m}", rep.ok,
                                   measured=rep.residual_valuation, residual_terms=rep.residual_terms))
    return cases


def _random_unit(rng: random.Random, p: int, ring=None, prec: int = 12):
    while True:
        if ring is None:
            x = PadicScalar.from_rational(rng.randrange(1, p ** prec), p, prec)
            if x.is_unit():
                return x
        else:
            x = ring.element([PadicScalar.from_rational(rng.randrange(p ** prec), p, prec) for _ in range(ring.f)])
            if x.valuation() == 0:
                return x


def delta_homogeneity_cases(cfg: RunConfig, trials: int = 10) -> list[Case]:
    p = cfg.p or 5
    prec = cfg.prec or 12
    count = cfg.samples or trials
    rng = cfg.rng(f"delta:{p}")
    cases = [_case("delta empty part is 1", delta_eval(
        DeltaKernelSpec((VectorChar(()),) * 3, (0, 0, 0)), (1, 0), (0, 1), (p, 1), p) == 1)]
    for f in (1, 2):
        ring = None if f == 1 else UnramifiedRing(p, 2, prec=prec)
        for idx in range(count):
            r = tuple(VectorChar(tuple(rng.randrange(-3, 4) for _ in range(f))) for _ in range(3))
            kernel = DeltaKernelSpec(r, tuple(rng.randrange(-4, 5) for _ in range(3)))
            unit = lambda: _random_unit(rng, p, ring, prec)  # noqa: E731
            # x3 in pO, y3 a unit; redraw until Delta is non-zero
            for _ in range(50):
                v1, v2 = (unit(), unit()), (unit(), unit())
                v3 = (unit() * p, unit())
                base = delta_eval(kernel, v1, v2, v3, p)
                if base != 0:
                    break
            tag = f"delta f={f} kernel#{idx:02d}"
            cases.append(_case(tag + " repeated slot vanishes", delta_eval(kernel, v1, v1, v3, p) == 0))
            m1, m2, m3 = kernel.m_chars()
            for slot, pred in ((1, m2 * m3), (2, m1 * m3), (3, m1 * m2)):
                t = unit()
                vs = [v1, v2, v3]
                vs[slot - 1] = scale_slot(vs[slot - 1], t)
                scaled = delta_eval(kernel, *vs, p)
                expect = base * _char_value(pred, t)
                law = pred == kernel.weight_char(slot)
                cases.append(_case(tag + f" slot={slot}", base != 0 and scaled == expect and law))
    return cases


def _char_value(chi: VectorChar, t):
    if hasattr(t, "ring"):
        return chi(t)
    return t ** chi.exps[0]


def euler_cases(cfg: RunConfig, trials: int = 10) -> list[Case]:
    p = cfg.p or 3
    count = cfg.samples or trials
    rng = cfg.rng(f"euler:{p}")
    cases = []
    ones = TripleEigenData(p, 1, 1, 1, 1, 1, 1, ((2, 2, 2),))
    got = euler_E("p0", ones).value
    cases.append(_case("euler all-ones m0=3", got == (1 - Fraction(1, p * p)) ** 4, measured=got))
    zero_bz = TripleEigenData(p, 2, 3, 5, 7, 11, 0, ((2, 2, 4),))
    cases.append(_case("euler E1 beta_z=0 is 1", euler_E1("p0", zero_bz).value == 1))
    cases.append(_case("euler E1 beta_z=0 is 1 away from p0", euler_E1("p", zero_bz).value == 1))
    inert = TripleEigenData(p, 1, 1, 1, 1, 1, 2, ((0, 0, 2), (0, 0, 2)))
    got = euler_E1("p", inert).value
    want = (1 - Fraction(4, p ** 8)) * (1 - Fraction(4, p ** 6))
    cases.append(_case("euler E1 two embeddings k3=2", got == want, measured=got))
    ring = UnramifiedRing(p, 2, prec=cfg.prec or 12)
    for idx in range(count):
        ext = idx % 2 == 1
        if ext:
            vals = [_random_unit(rng, p, ring, cfg.prec or 12) for _ in range(6)]
        else:
            vals = [Fraction(rng.randrange(1, 50), rng.choice((1, p, 7))) for _ in range(6)]
        ntau = rng.choice((1, 2))
        ks = tuple(tuple(2 * rng.randrange(1, 4) for _ in range(3)) for _ in range(ntau))
        d = TripleEigenData(p, *vals, ks)
        ax, bx, ay, by, az, bz = vals
        for slot in ("p0", "p"):
            res = euler_E(slot, d)
            prod = 1
            for fac in res.factors:
                prod = prod * fac
            if slot == "p0":
                e = 1 - d.m0
                direct = [ax * ay * bz, ax * by * bz, bx * ay * bz, bx * by * bz]
            else:
                e = -sum(m + 2 for m in d.m_p)
                direct = [bx * by * az, ax * by * bz, bx * ay * bz, bx * by * bz]
            want = 1
            for a in direct:
                want = want * (1 - a * Fraction(p) ** e)
            cases.append(_case(f"euler E trial#{idx:02d} slot={slot} ext={ext}",
                               prod == res.value and res.value == want))
            res1 = euler_E1(slot, d)
            prod1 = res1.factors[0] * res1.factors[1]
            cases.append(_case(f"euler E1 trial#{idx:02d} slot={slot} ext={ext}", prod1 == res1.value))
    return cases


SUITES = {
    "univ-char": suite_univ_char,
    "valuation-bounds": suite_valuation_bounds,
    "theta-chi": theta_chi_cases,
    "gm-step": gm_step_cases,
    "gm-closed-form": suite_gm_closed_form,
    "binom-lemma": binom_lemma_cases,
    "pdiviter": pdiviter_cases,
    "gmesp": gmesp_cases,
    "theta-m": theta_m_cases,
    "delta-homogeneity": delta_homogeneity_cases,
    "euler": euler_cases,
}


def run_suite(name: str, cfg: RunConfig | None = None) -> VerifyReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    cfg = cfg or RunConfig()
    cases = sorted(SUITES[name](cfg), key=lambda c: c.descriptor)
    return VerifyReport(name, asdict(cfg), cases)
