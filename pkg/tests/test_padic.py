from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gmk.padic import (
    INF,
    PadicScalar,
    PrecisionError,
    binom_general,
    check_prime,
    default_prec,
    factorial_valuation,
    padic_exp,
    padic_log1p,
    teichmuller,
    valuation,
)

PRIMES = [3, 5, 7]


def naive_vp(x: int, p: int) -> int:
    e = 0
    while x % p == 0:
        x //= p
        e += 1
    return e


def series_mod(terms, p: int, prec: int) -> int:
    """Sum a list of Fractions and reduce to an integer mod p^prec (oracle)."""
    s = sum(terms, Fraction(0))
    mod = p ** prec
    return s.numerator * pow(s.denominator, -1, mod) % mod


def exp_oracle(x: int, p: int, prec: int) -> int:
    # v(x^k/k!) >= k - k/(p-1) grows, so 4 * prec terms is plenty
    return series_mod([Fraction(x) ** k / math.factorial(k) for k in range(4 * prec + 4)], p, prec)


def log_oracle(x: int, p: int, prec: int) -> int:
    return series_mod([Fraction((-1) ** (k + 1) * x ** k, k) for k in range(1, 4 * prec + 4)], p, prec)


# -- construction and precision -----------------------------------------------------


def test_rejects_p_two_and_composites():
    with pytest.raises(ValueError):
        check_prime(2)
    with pytest.raises(ValueError):
        check_prime(9)
    with pytest.raises(ValueError):
        PadicScalar.from_rational(1, 2, 5)


def test_default_precision_env(monkeypatch):
    monkeypatch.delenv("GMK_DEFAULT_PREC", raising=False)
    assert default_prec() == 20
    monkeypatch.setenv("GMK_DEFAULT_PREC", "7")
    assert default_prec() == 7
    assert PadicScalar.one(5).prec == 7


def test_from_rational_fields():
    x = PadicScalar.from_rational(Fraction(18, 5), 3, 6)
    assert x.val == 2 and x.prec == 6 and x.relprec == 4
    assert x.unit % 3 != 0
    assert (x.unit * 5 - 2) % 3 ** 4 == 0


def test_exact_zero_sentinel():
    z = PadicScalar.exact_zero(5)
    assert z.is_exact_zero() and z.valuation() == INF
    x = PadicScalar.from_rational(7, 5, 4)
    assert (x + z) == x and (x * z).is_exact_zero()


def test_add_precision_is_min():
    a = PadicScalar.from_rational(1, 3, 5)
    b = PadicScalar.from_rational(2, 3, 9)
    assert (a + b).prec == 5
    # exact rational operands do not cost precision
    assert (a + Fraction(1, 2)).prec == 5


def test_mul_relative_precision_is_min():
    a = PadicScalar.from_rational(9, 3, 6)  # val 2, relprec 4
    b = PadicScalar.from_rational(4, 3, 3)  # val 0, relprec 3
    c = a * b
    assert c.val == 2 and c.relprec == 3


def test_cancellation_loses_digits():
    a = PadicScalar.from_rational(1 + 3 ** 4, 3, 6)
    b = PadicScalar.from_rational(1, 3, 6)
    d = a - b
    assert d.val == 4 and d.prec == 6


def test_division_by_non_unit_gives_negative_valuation():
    x = PadicScalar.from_rational(1, 5, 6) / 25
    assert x.valuation() == -2


def test_inverse_of_inexact_zero_raises():
    with pytest.raises((PrecisionError, ZeroDivisionError)):
        PadicScalar.bigoh(3, 4).inverse()


def test_json_round_trip():
    for x in (PadicScalar.from_rational(Fraction(-7, 9), 3, 8), PadicScalar.exact_zero(5), PadicScalar.bigoh(7, 3)):
        d = x.to_json()
        assert set(d) == {"p", "val", "unit", "prec"} and isinstance(d["unit"], str)
        y = PadicScalar.from_json(d)
        assert (y.val, y.unit, y.prec) == (x.val, x.unit, x.prec)


# -- transcendental functions -------------------------------------------------------


def test_exp_zero_and_group_law():
    for p in PRIMES:
        assert padic_exp(PadicScalar.from_rational(0, p, 10)) == 1
        e1 = padic_exp(PadicScalar.from_rational(p, p, 10))
        e2 = padic_exp(PadicScalar.from_rational(-p, p, 10))
        assert e1 * e2 == 1


def test_exp_log_against_series_oracle():
    for p in PRIMES:
        x = PadicScalar.from_rational(p, p, 8)
        assert padic_exp(padic_log1p(x)) == 1 + p
        assert padic_exp(x).lift() % p ** 8 == exp_oracle(p, p, 8)
        assert padic_log1p(x).lift() % p ** 8 == log_oracle(p, p, 8) % p ** 8


def test_log_examples():
    assert padic_log1p(PadicScalar.from_rational(0, 5, 6)).is_zero()
    e = padic_exp(PadicScalar.from_rational(5, 5, 8)) - 1
    assert padic_log1p(e) == 5
    assert padic_log1p(PadicScalar.from_rational(5, 5, 8)).valuation() == 1


def test_exp_log_reject_non_topologically_nilpotent():
    with pytest.raises(ValueError):
        padic_exp(PadicScalar.from_rational(1, 3, 5))
    with pytest.raises(ValueError):
        padic_log1p(PadicScalar.from_rational(2, 5, 5))


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(PRIMES), st.integers(1, 10 ** 9))
def test_exp_log_inverse(p, a):
    x = PadicScalar.from_rational(p * a, p, 12)
    assert padic_log1p(padic_exp(x) - 1) == x
    assert (padic_exp(x) - 1).valuation() == x.valuation()


def test_teichmuller_examples():
    assert teichmuller(1, 5, 6) == 1
    w = teichmuller(2, 5, 3)
    assert w ** 4 == 1
    # Hensel oracle: iterate a -> a^p mod 5^3 until stable
    a = 2
    for _ in range(5):
        a = pow(a, 5, 125)
    assert w.lift() % 125 == a
    with pytest.raises(ValueError):
        teichmuller(5, 5, 3)


def test_teichmuller_multiplicative():
    for p in PRIMES:
        for a in range(1, p):
            for b in range(1, p):
                assert teichmuller(a, p, 8) * teichmuller(b, p, 8) == teichmuller(a * b % p, p, 8)


def test_factorial_valuation():
    assert factorial_valuation(0, 3) == 0
    assert factorial_valuation(9, 3) == 4
    for p in PRIMES:
        for h in range(201):
            assert factorial_valuation(h, p) == naive_vp(math.factorial(h), p)
            assert factorial_valuation(h, p) <= Fraction(h, p - 1)


def test_binom_general():
    assert binom_general(Fraction(7, 3), 0) == 1
    assert binom_general(5, 2) == 10
    assert binom_general(-3, 2) == 6
    assert binom_general(Fraction(1, 2), 2) == Fraction(-1, 8)
    x = PadicScalar.from_rational(Fraction(1, 3), 3, 6)
    assert binom_general(x, 2).valuation() == -2


def test_binom_general_precision_exhaustion():
    x = PadicScalar.from_rational(1, 3, 1)
    with pytest.raises(PrecisionError):
        binom_general(x, 9)


def test_valuation_helper():
    assert valuation(Fraction(5, 27), 3) == -3
    assert valuation(0, 3) == INF


# -- ring axioms ---------------------------------------------------------------------

residues = st.integers(-10 ** 6, 10 ** 6)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(PRIMES), residues, residues, residues, st.integers(0, 3))
def test_ring_axioms(p, a, b, c, shift):
    x = PadicScalar.from_rational(Fraction(a, p ** shift), p, 10)
    y = PadicScalar.from_rational(b, p, 9)
    z = PadicScalar.from_rational(c, p, 8)
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * 1 == x and x + 0 == x
    assert x + y == y + x and x * y == y * x


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(PRIMES), residues, residues)
def test_matches_rational_arithmetic(p, a, b):
    prec = 9
    fa, fb = Fraction(a, 7), Fraction(b or 1, 11)
    x, y = PadicScalar.from_rational(fa, p, prec), PadicScalar.from_rational(fb, p, prec)
    assert x * y == PadicScalar.from_rational(fa * fb, p, prec)
    assert x - y == PadicScalar.from_rational(fa - fb, p, prec)
