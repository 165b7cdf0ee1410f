from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gmk.cyclotomic import CycloScalar, DirichletChar, discrete_log_table, gauss_sum, primitive_root, totient
from gmk.padic import PadicScalar

LEVELS = [(3, 1), (3, 2), (5, 1), (5, 2), (7, 1)]


def test_totient():
    assert totient(3, 2) == 6 and totient(5, 1) == 4 and totient(7, 2) == 42


def test_xi_relations():
    for p, n in LEVELS:
        xi = CycloScalar.xi(p, n)
        assert xi ** (p ** n) == 1
        assert xi ** (p ** (n - 1)) != 1
        s = CycloScalar.zero(p, n)
        for j in range(p):
            s = s + xi ** (j * p ** (n - 1))
        assert s.is_zero()


def test_galois_is_ring_hom_and_norm_is_rational():
    p, n = 3, 2
    x = CycloScalar(p, n, [1, 2, 0, -1, 3, 5])
    y = CycloScalar(p, n, [Fraction(1, 2), 0, 1, 0, 0, 7])
    for a in (2, 4, 5, 7):
        assert (x * y).galois(a) == x.galois(a) * y.galois(a)
    nm = x.norm()
    assert not isinstance(nm, CycloScalar)
    assert x * x.inverse() == 1


def test_inverse_of_non_unit_has_negative_valuation():
    p = 5
    one_minus_xi = 1 - CycloScalar.xi(p, 1)
    # N(1 - xi) = p, so the inverse is p^-1 times an integral element
    assert one_minus_xi.norm() == p
    inv = one_minus_xi.inverse()
    assert inv * one_minus_xi == 1
    assert one_minus_xi.norm_valuation() == Fraction(1, p - 1)


def test_embed_into_higher_level():
    xi1 = CycloScalar.xi(3, 1)
    e = xi1.embed(2)
    assert e == CycloScalar.xi(3, 2) ** 3


def test_primitive_root_and_log_table():
    for p in (3, 5, 7):
        g = primitive_root(p)
        table = discrete_log_table(p, 2)
        assert len(table) == p * (p - 1)
        assert pow(g, table[2], p * p) == 2


def test_character_counts_and_primitivity():
    for p, n in LEVELS:
        chars = DirichletChar.all_chars(p, n)
        assert len(chars) == totient(p, n)
        prim = [c for c in chars if c.is_primitive()]
        expected = totient(p, n) - (totient(p, n - 1) if n > 1 else 1)
        assert len(prim) == expected


def test_character_multiplicative():
    for p, n in [(3, 2), (5, 1)]:
        for chi in DirichletChar.all_chars(p, n):
            for x in range(1, p ** n):
                for y in range(1, p ** n, 3):
                    if x % p and y % p:
                        assert chi(x) * chi(y) == chi(x * y % p ** n)
            assert chi(p) == 0
            assert (chi * chi.inverse()).is_trivial()


def test_gauss_sum_examples():
    p = 3
    xi = CycloScalar.xi(p, 1)
    triv = DirichletChar(p, 1, 0, 0)
    assert gauss_sum(triv, xi) == -1
    quad = DirichletChar(p, 1, 1, 0)
    assert gauss_sum(quad, xi) == xi - xi ** 2


def test_gauss_sum_level_mismatch():
    with pytest.raises(ValueError):
        gauss_sum(DirichletChar(3, 2, 1, 1), CycloScalar.xi(3, 1))


def test_gauss_sum_product_identity():
    """g(chi) g(chi^-1) = chi(-1) p^n, so its valuation is n, for every primitive chi."""
    for p, n in LEVELS:
        xi = CycloScalar.xi(p, n)
        for chi in DirichletChar.all_chars(p, n):
            if not chi.is_primitive():
                continue
            prod = gauss_sum(chi, xi) * gauss_sum(chi.inverse(), xi)
            assert prod == chi(p ** n - 1) * p ** n
            assert prod.valuation() == n


coords = st.lists(st.integers(-50, 50), min_size=6, max_size=6)


@settings(max_examples=40, deadline=None)
@given(coords, coords, coords)
def test_ring_axioms_level_9(a, b, c):
    x, y, z = (CycloScalar(3, 2, v) for v in (a, b, c))
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x


@settings(max_examples=30, deadline=None)
@given(coords)
def test_padic_coefficients(a):
    x = CycloScalar(3, 2, [PadicScalar.from_rational(v, 3, 8) for v in a])
    y = CycloScalar(3, 2, a)
    assert x == y
    assert (x * x) == (y * y)
