"""Characters of Z_p^x (and of O^x for small unramified O) and the universal
character of the level-n weight disk.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .cyclotomic import CycloScalar
from .iwasawa import IwasawaSeries, binom_wprime
from .padic import (
    INF,
    PadicScalar,
    check_prime,
    default_prec,
    factorial_valuation,
    padic_exp,
    padic_log1p,
    teichmuller,
)
from .unramified import UnramifiedScalar


def default_cutoff(p: int, n: int, prec: int, vy: int | None = None) -> int:
    """Smallest I whose i-truncation error (I+1)c - floor(I/(p-1)) reaches prec.

    c = v(y) - n + 1 >= 1 is the per-term gain; the worst case is c = 1.
    """
    c = 1 if vy is None else max(1, vy - n + 1)
    I = 0
    while (I + 1) * c - I // (p - 1) < prec:
        I += 1
    return I


def default_trunc(p: int, n: int, prec: int, I: int) -> int:
    """T-truncation large enough for a certified tail >= prec on the whole disk.

    At n = 1 classical points sit at v(T) = 1, where only the factorial floor
    decays; at n >= 2 the slowest points have v(T) = 1/((p-1) p^(n-2)), where
    the Lambda_n floor gains 1/(p-1) per block of p^(n-1) degrees.
    """
    q = p ** (n - 1)
    if n == 1:
        return 4 + math.ceil((prec + I // (p - 1) + I + 2) * (p - 1) / (p - 2))
    return 4 * q + q * (p - 1) * (prec + 2)


def _teich_split(beta: PadicScalar) -> tuple[int, PadicScalar]:
    r = beta.unit % beta.p
    return r, beta / teichmuller(r, beta.p, beta.prec)


def _log_index(beta: PadicScalar, n: int) -> int:
    """The j in [0, p^(n-1)) with beta = exp(jp) mod p^n (beta in 1 + pZ_p)."""
    p = beta.p
    if n == 1:
        return 0
    x = padic_log1p(beta - 1) / p
    return int(x.lift()) % p ** (n - 1)


def _as_principal_unit(beta, p: int, prec: int | None) -> PadicScalar:
    if not isinstance(beta, PadicScalar):
        beta = PadicScalar.from_rational(beta, p, prec)
    if beta.val != 0 or (beta - 1).valuation() < 1:
        raise ValueError("beta must lie in 1 + pZ_p")
    return beta


def eval_univ_char(p: int, n: int, beta, D: int | None = None, I: int | None = None,
                   prec: int | None = None) -> IwasawaSeries:
    """The universal character of the level-n disk evaluated at beta in 1 + pZ_p.

    Returns (1+T)^j * sum_{i <= I} binom(w'_n, i) y^i, y = (beta - exp(jp)) / exp(jp),
    where j is the unique index with beta = exp(jp) mod p^n.  Coefficients carry
    the certified i-truncation error.
    """
    check_prime(p)
    prec = default_prec() if prec is None else prec
    beta = _as_principal_unit(beta, p, prec)
    work = min(beta.prec, prec + 2 * n + 4)
    j = _log_index(beta, n)
    gamma = padic_exp(PadicScalar.from_rational(j * p, p, work)) if j else PadicScalar.one(p, work)
    hits = [jj for jj in range(p ** (n - 1)) if (beta - (padic_exp(PadicScalar.from_rational(jj * p, p, work))
                                                         if jj else 1)).valuation() >= n]
    if hits != [j]:
        raise AssertionError(f"indicator exclusivity failed: {hits}")
    y = (beta - gamma) / gamma
    vy = y.valuation()
    if I is None:
        I = default_cutoff(p, n, prec, None if vy == INF else int(vy))
    if D is None:
        D = default_trunc(p, n, prec, I)
    q = p ** (n - 1)
    base = IwasawaSeries(p, n, [math.comb(j, d) for d in range(min(j, D) + 1)] + [0] * (D - min(j, D)))
    total = IwasawaSeries.constant(p, n, 0, D)
    if y.is_exact_zero():
        return base
    ypow = PadicScalar.one(p, y.prec)
    for i in range(I + 1):
        total = total + binom_wprime(p, n, D, i) * ypow
        ypow = ypow * y
    result = base * total
    c = (vy if vy != INF else y.prec) - n + 1
    err = (I + 1) * c - I // (p - 1)
    # factorial floor of term i is i(v(y) - 1) - v(i!), increasing only when v(y) >= 2
    err_fact = (I + 1) * (c + n - 2) - I // (p - 1) if c + n - 2 >= 1 else -math.inf
    result = result.cap_precision(lambda d: err - d // q)
    return IwasawaSeries(p, n, result.coeffs, result.pieces + ((err, err_fact, INF),))


# -- characters ---------------------------------------------------------------


@dataclass(frozen=True)
class WeightChar:
    """A character of Z_p^x: finite part on (Z/p)^x times a character of 1+pZ_p.

    kind "classical": beta -> beta^k on 1+pZ_p.
    kind "finite": exp(p) -> xi^e with xi of order p^(n-1).
    kind "universal": the level-n universal character (IwasawaSeries values).
    ``finite`` maps each residue 1..p-1 to its value; empty means trivial.
    """

    p: int
    kind: str
    k: int = 0
    n: int = 1
    e: int = 0
    finite: tuple = field(default=())

    def __post_init__(self):
        check_prime(self.p)
        if self.kind not in ("classical", "finite", "universal"):
            raise ValueError(f"unknown character kind {self.kind!r}")
        if self.finite and len(self.finite) != self.p - 1:
            raise ValueError("finite part needs one value per residue 1..p-1")

    @classmethod
    def classical(cls, p: int, k: int, teich_power: int | None = None, prec: int | None = None) -> WeightChar:
        """beta -> beta^k, i.e. finite part omega^k unless another power is given."""
        a = k if teich_power is None else teich_power
        return cls(p, "classical", k=k, finite=teich_table(p, a, prec))

    @classmethod
    def finite_order(cls, p: int, n: int, e: int = 1) -> WeightChar:
        return cls(p, "finite", n=n, e=e)

    @classmethod
    def universal(cls, p: int, n: int, finite: tuple = ()) -> WeightChar:
        return cls(p, "universal", n=n, finite=finite)

    def finite_value(self, r: int):
        if not self.finite:
            return 1
        return self.finite[r % self.p - 1]

    def analytic(self, beta: PadicScalar, **kw):
        """The character on 1 + pZ_p."""
        p = self.p
        if self.kind == "classical":
            return beta ** self.k
        if self.kind == "finite":
            j = _log_index(beta, self.n)
            if self.n == 1:
                return 1
            xi = CycloScalar.monomial(p, self.n - 1, 1)
            return xi ** (self.e * j % p ** (self.n - 1))
        return eval_univ_char(p, self.n, beta, **kw)

    def __call__(self, beta, **kw):
        return eval_full_char(self, beta, **kw)


def teich_table(p: int, a: int, prec: int | None = None) -> tuple:
    """Values of omega^a on residues 1..p-1."""
    a %= p - 1
    if a == 0:
        return ()
    out = []
    for r in range(1, p):
        w = teichmuller(r, p, prec) ** a
        out.append(1 if w == 1 else (-1 if w == -1 else w))
    return tuple(out)


def eval_full_char(chi: WeightChar, beta, **kw):
    """chi(beta) = finite(omega(beta)) * analytic(<beta>)."""
    p = chi.p
    if not isinstance(beta, PadicScalar):
        beta = PadicScalar.from_rational(beta, p, kw.get("prec"))
    if beta.val != 0:
        raise ValueError("characters are evaluated on units only")
    r, principal = _teich_split(beta)
    return chi.analytic(principal, **kw) * chi.finite_value(r)


# -- characters of O^x for unramified O, and the weight map ----------------------


@dataclass(frozen=True)
class VectorChar:
    """x -> prod_tau tau(x)^(e_tau) on O^x, O unramified of degree f = len(exps).

    Embeddings are ordered id, phi, ..., so on Z_p[theta] the value is
    x^e_0 * phi(x)^e_1.  Over Z_p (f = 1) this is x -> x^e.
    """

    exps: tuple

    def __call__(self, x):
        if isinstance(x, UnramifiedScalar):
            if len(self.exps) != x.ring.f:
                raise ValueError("exponent vector length must equal the degree")
            val = x.ring.element([1])
            conj = x
            for e in self.exps:
                val = val * conj ** e
                conj = conj.frobenius()
            return val
        if len(self.exps) != 1:
            raise ValueError("scalar argument needs a single exponent")
        return x ** self.exps[0]

    def __mul__(self, other: VectorChar) -> VectorChar:
        return VectorChar(tuple(a + b for a, b in zip(self.exps, other.exps, strict=True)))

    def __pow__(self, k: int) -> VectorChar:
        return VectorChar(tuple(k * a for a in self.exps))

    def __truediv__(self, other: VectorChar) -> VectorChar:
        return self * other ** -1

    @classmethod
    def trivial(cls, f: int) -> VectorChar:
        return cls((0,) * f)

    @classmethod
    def via_norm(cls, nu: int, f: int) -> VectorChar:
        """nu o N, where N(x) = prod of all conjugates."""
        return cls((nu,) * f)


def weight_map_k(r, nu):
    """The character t -> r(t)^-2 * nu(N(t)).

    Accepts classical data: r a VectorChar (or int for Z_p), nu an int or a
    classical WeightChar.  Over Z_p with ints the result is the classical
    WeightChar of weight nu - 2r.
    """
    if isinstance(nu, WeightChar):
        if nu.kind != "classical":
            raise NotImplementedError("weight_map_k handles classical nu only")
        nu = nu.k
    if isinstance(r, WeightChar):
        if r.kind != "classical":
            raise NotImplementedError("weight_map_k handles classical r only")
        return WeightChar.classical(r.p, nu - 2 * r.k)
    if isinstance(r, int):
        r = VectorChar((r,))
    return VectorChar.via_norm(nu, len(r.exps)) * r ** -2
