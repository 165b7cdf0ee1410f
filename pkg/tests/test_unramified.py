from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gmk.padic import PadicScalar
from gmk.unramified import HenselError, UnramifiedRing, least_nonresidue


def test_least_nonresidue():
    assert least_nonresidue(3) == 2 and least_nonresidue(5) == 2 and least_nonresidue(7) == 3


def test_norm_of_sqrt_two_mod_five():
    R = UnramifiedRing(5, 2, c1=0, c0=-2, prec=10)
    assert R.gen().norm() == -2


def test_frobenius_of_generator_is_other_root():
    R = UnramifiedRing(5, 2, c1=1, c0=2, prec=10)
    theta = R.gen()
    assert theta.frobenius() == -1 - theta
    assert theta.frobenius().frobenius() == theta


def test_frobenius_fixes_base_and_lifts_power_map():
    R = UnramifiedRing(7, 2, prec=8)
    assert R.element([5]).frobenius() == R.element([5])
    x = R.element([3, 4])
    d = x.frobenius() - x ** 7
    assert all(c.valuation() >= 1 for c in d.coeffs)


def test_rejects_bad_polynomials():
    with pytest.raises(HenselError):
        UnramifiedRing(5, 2, c1=2, c0=1)  # (x+1)^2
    with pytest.raises(ValueError):
        UnramifiedRing(5, 2, c1=0, c0=-1)  # x^2 - 1 splits
    with pytest.raises(ValueError):
        UnramifiedRing(5, 3)


def test_degree_one_ring():
    R = UnramifiedRing(3, 1, prec=6)
    x = R.element([PadicScalar.from_rational(4, 3, 6)])
    assert x.frobenius() == x and x.norm() == 4


small = st.integers(-200, 200)


@settings(max_examples=40, deadline=None)
@given(small, small, small, small)
def test_frobenius_is_ring_hom_and_norm_in_base(a, b, c, d):
    R = UnramifiedRing(5, 2, prec=10)
    x = R.element([PadicScalar.from_rational(a, 5, 10), PadicScalar.from_rational(b, 5, 10)])
    y = R.element([PadicScalar.from_rational(c, 5, 10), PadicScalar.from_rational(d, 5, 10)])
    assert (x * y).frobenius() == x.frobenius() * y.frobenius()
    assert (x + y).frobenius() == x.frobenius() + y.frobenius()
    assert x.frobenius().frobenius() == x
    full = x * x.frobenius()
    assert full.coeffs[1].is_zero()
    assert x.norm() == x.det()


@settings(max_examples=40, deadline=None)
@given(small, small)
def test_inverse(a, b):
    R = UnramifiedRing(3, 2, prec=10)
    x = R.element([PadicScalar.from_rational(a, 3, 10), PadicScalar.from_rational(b, 3, 10)])
    if x.is_zero() or x.norm().is_zero():
        return
    assert x * x.inverse() == 1
    assert x * x.linear_inverse() == 1
