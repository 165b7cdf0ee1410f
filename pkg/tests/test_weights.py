from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gmk.cyclotomic import CycloScalar
from gmk.iwasawa import WeightPoint, specialize
from gmk.padic import PadicScalar, padic_exp, teichmuller
from gmk.unramified import UnramifiedRing
from gmk.weights import VectorChar, WeightChar, default_cutoff, eval_full_char, eval_univ_char, weight_map_k


def test_univ_char_classical_specialisation():
    p = 3
    beta = PadicScalar.from_rational(1 + p, p, 8)
    s = eval_univ_char(p, 1, beta, prec=6)
    assert specialize(s, WeightPoint.classical(p, 2, prec=8)) == (1 + p) ** 2


def test_univ_char_at_identity():
    s = eval_univ_char(5, 2, 1, prec=6)
    assert s.is_zero() is False
    assert specialize(s, WeightPoint.classical(5, 7, prec=8)) == 1


def test_univ_char_finite_order_point():
    p, n = 3, 2
    beta = padic_exp(PadicScalar.from_rational(p, p, 10))
    s = eval_univ_char(p, n, beta, prec=6)
    val = specialize(s, WeightPoint.finite_order(p, n))
    d = val - CycloScalar.xi(p, n - 1)
    assert all(c.valuation() >= 1 for c in d.coeffs)


def test_univ_char_rejects_non_principal_units():
    with pytest.raises(ValueError):
        eval_univ_char(5, 1, 2, prec=6)


def test_cutoff_reaches_precision():
    for p in (3, 5, 7):
        for n in (1, 2):
            I = default_cutoff(p, n, 10)
            assert (I + 1) - I // (p - 1) >= 10


def test_full_char_examples():
    p = 5
    chi = WeightChar(p, "classical", k=3)
    assert eval_full_char(chi, 1 + p) == (1 + p) ** 3
    ident = WeightChar(p, "classical", k=0, finite=tuple(teichmuller(r, p, 10) for r in range(1, p)))
    t2 = teichmuller(2, p, 10)
    assert eval_full_char(ident, t2) == t2


def test_classical_char_is_power_map():
    for p in (3, 5, 7):
        for k in range(-3, 6):
            chi = WeightChar.classical(p, k, prec=10)
            for b in (2, p - 1, p + 2, 3 * p + 1):
                beta = PadicScalar.from_rational(b, p, 10)
                assert chi(beta) == beta ** k


def test_finite_order_char():
    p, n = 3, 2
    chi = WeightChar.finite_order(p, n)
    beta = padic_exp(PadicScalar.from_rational(p, p, 10))
    assert chi(beta) == CycloScalar.xi(p, n - 1)
    assert chi(PadicScalar.from_rational(1, p, 10)) == 1


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([3, 5, 7]), st.integers(-4, 8), st.integers(1, 500), st.integers(1, 500))
def test_characters_are_multiplicative(p, k, a, b):
    if a % p == 0 or b % p == 0:
        return
    chi = WeightChar.classical(p, k, teich_power=k + 1, prec=10)
    x, y = PadicScalar.from_rational(a, p, 10), PadicScalar.from_rational(b, p, 10)
    assert chi(x * y) == chi(x) * chi(y)


def test_weight_map_k():
    assert weight_map_k(0, 0) == VectorChar((0,))
    k = weight_map_k(1, 4)
    assert k(PadicScalar.from_rational(7, 3, 8)) == 49
    assert weight_map_k(WeightChar.classical(3, 1), 4).k == 2
    assert weight_map_k(VectorChar((1, 2)), 3) == VectorChar((1, -1))


def test_vector_char_on_unramified_ring():
    R = UnramifiedRing(5, 2, prec=8)
    x = R.element([2, 3])
    assert VectorChar.via_norm(1, 2)(x) == x.norm()
    assert VectorChar((1, 0))(x) == x
    assert VectorChar((0, 1))(x) == x.frobenius()
    with pytest.raises(ValueError):
        VectorChar((1,))(x)


def test_vector_char_group_law():
    a, b = VectorChar((1, 2)), VectorChar((3, -1))
    assert a * b == VectorChar((4, 1))
    assert (a / a) == VectorChar.trivial(2)
    assert a ** 3 == VectorChar((3, 6))


def test_bad_char_kinds():
    with pytest.raises(ValueError):
        WeightChar(3, "weird")
    with pytest.raises(ValueError):
        WeightChar(5, "classical", finite=(1, 1))
