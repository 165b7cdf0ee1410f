from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gmk.cyclotomic import CycloScalar, DirichletChar
from gmk.qexp import (
    QExpansion,
    WindowOverflow,
    deplete,
    derive,
    disk_project,
    disk_project_avg,
    theta_chi_avg,
    theta_chi_direct,
    translate,
    u_op,
    v_op,
)


def Q(p, N, **terms):
    return QExpansion(p, N, {int(k[1:]): v for k, v in terms.items()})


def test_derive_examples():
    assert derive(QExpansion.monomial(3, 10, 0)).is_zero()
    assert derive(QExpansion.monomial(3, 10, 4)) == QExpansion.monomial(3, 10, 4, 4)
    f = QExpansion(3, 10, {2: 3, 5: 1})
    assert derive(f) == QExpansion(3, 10, {2: 6, 5: 5})


def test_u_v_and_deplete():
    p = 5
    f = QExpansion(p, 30, {1: 2, 3: 7, 4: -1})
    assert u_op(v_op(f)) == f
    assert deplete(QExpansion.monomial(p, 30, p)).is_zero()
    g = QExpansion(p, 30, {1: 1, p: 1, p + 1: 1})
    assert deplete(g) == QExpansion(p, 30, {1: 1, p + 1: 1})
    assert deplete(g) == g - v_op(u_op(g))


def test_window_checks():
    with pytest.raises(WindowOverflow):
        QExpansion(3, 5, {5: 1})
    with pytest.raises(WindowOverflow):
        v_op(QExpansion.monomial(3, 5, 2))
    with pytest.raises(ValueError):
        QExpansion(3, 5) + QExpansion(3, 6)


def test_cube_of_one_plus_q_is_depleted_away():
    one_plus_q = QExpansion.monomial(3, 10, 1)
    f = one_plus_q * one_plus_q * one_plus_q
    assert f == QExpansion.monomial(3, 10, 3)
    assert deplete(f).is_zero()


def test_disk_projection():
    f = QExpansion(3, 20, {nu: 1 for nu in range(20)})
    parts = [disk_project(f, g, 1) for g in (1, 2)]
    assert parts[0] + parts[1] == deplete(f)
    assert all(nu % 3 == 1 for nu in parts[0].terms)
    with pytest.raises(ValueError):
        disk_project(f, 3, 1)
    for n in (1, 2):
        for g in (1, 2, 4):
            assert disk_project_avg(f, g, n) == disk_project(f, g, n)


def test_theta_chi_direct_examples():
    f = QExpansion(3, 20, {nu: nu + 1 for nu in range(20)})
    assert theta_chi_direct(f, DirichletChar(3, 1, 0, 0)) == deplete(f)
    quad = DirichletChar(3, 1, 1, 0)
    g = QExpansion(3, 5, {1: 1, 2: 1})
    assert theta_chi_direct(g, quad) == QExpansion(3, 5, {1: 1, 2: -1})
    only_p = QExpansion(3, 20, {0: 1, 3: 2, 9: 5})
    assert theta_chi_direct(only_p, quad).is_zero()
    assert theta_chi_avg(only_p, quad).is_zero()


def test_translation_action():
    xi = CycloScalar.xi(3, 1)
    f = QExpansion.monomial(3, 10, 4)
    assert translate(f, xi, 2) == QExpansion.monomial(3, 10, 4, xi ** 8)


def test_theta_avg_matches_direct_quadratic():
    quad = DirichletChar(3, 1, 1, 0)
    f = QExpansion(3, 9, {nu: 1 for nu in range(9)})
    assert theta_chi_avg(f, quad) == theta_chi_direct(f, quad)


def test_theta_avg_only_matches_for_primitive_characters():
    """Imprimitive characters mod p^2 have vanishing Gauss sum, so the average is undefined."""
    f = QExpansion(3, 12, {nu: 1 for nu in range(12)})
    for imprim in DirichletChar.all_chars(3, 2):
        if not imprim.is_primitive():
            with pytest.raises(ZeroDivisionError):
                theta_chi_avg(f, imprim)


def test_theta_avg_rejects_wrong_level_xi():
    with pytest.raises(ValueError):
        theta_chi_avg(QExpansion.monomial(3, 5, 1), DirichletChar(3, 2, 1, 1), CycloScalar.xi(3, 1))


coeff_lists = st.lists(st.integers(-20, 20), min_size=1, max_size=18)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(3, 1), (3, 2), (5, 1)]), coeff_lists, st.data())
def test_twist_properties(level, coeffs, data):
    p, n = level
    f = QExpansion(p, len(coeffs), dict(enumerate(coeffs)))
    chis = [c for c in DirichletChar.all_chars(p, n) if c.is_primitive()]
    chi = data.draw(st.sampled_from(chis))
    direct = theta_chi_direct(f, chi)
    assert u_op(direct).is_zero()
    assert theta_chi_avg(f, chi) == direct


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([3, 5, 7]), coeff_lists, coeff_lists)
def test_derive_is_linear_and_leibniz(p, a, b):
    N = 2 * max(len(a), len(b))
    f = QExpansion(p, N, dict(enumerate(a)))
    g = QExpansion(p, N, dict(enumerate(b)))
    assert derive(f + g) == derive(f) + derive(g)
    assert derive(f * g) == derive(f) * g + f * derive(g)
