from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gmk.iteration import (
    GradedNearly,
    UnivExponent,
    a_i_term,
    check_specialization,
    closed_form_check,
    collapsed_valuation,
    corrected_bound,
    default_exponent,
    default_iterate_cutoff,
    disk_center,
    nabla_disk,
    nabla_univ,
    stated_bound,
    pdiviter_certificate,
    shifted_power_term,
)
from gmk.iwasawa import binom_wprime
from gmk.nearly import FormWeight, NearlyForm, nabla, nabla_pow
from gmk.padic import factorial_valuation
from gmk.qexp import deplete


def V(p, k, grid, n=1):
    return NearlyForm(FormWeight.classical(p, k), grid, "V", n)


def test_disk_projection_examples():
    F = V(3, 2, {(0, 4): 1, (0, 2): 1, (0, 3): 1})
    assert nabla_disk(F, 1) == V(3, 2, {(0, 4): 1})
    assert nabla_disk(V(3, 2, {(0, 2): 1}), 1).is_zero()
    assert nabla_disk(V(3, 2, {(0, 3): 1}), 1).is_zero()


grids = st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 30)), st.integers(-9, 9), max_size=8)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(3, 1), (3, 2), (5, 1)]), grids)
def test_disk_projectors_partition_depletion(level, grid):
    p, n = level
    F = V(p, 2, grid, n)
    units = [c for c in range(1, p ** n) if c % p]
    total = V(p, 2, {}, n)
    for c in units:
        P = nabla_disk(F, c)
        assert nabla_disk(P, c) == P
        for d in units:
            if d != c:
                assert nabla_disk(P, d).is_zero()
        total = total + P
    assert total == F.map_q(deplete)


def test_disk_centres_cover_units_once():
    for p, n in ((3, 1), (3, 2), (5, 2)):
        S = UnivExponent(p, n, 0, 4, 10)
        table = S.table()
        assert len(table) == (p - 1) * p ** (n - 1)
        for c, (gamma, _) in table.items():
            assert (gamma - c).valuation() >= n
    # xi_n for the finite part has order p^(n-1): the centre exponent j runs mod p^(n-1)
    assert disk_center(3, 2, 4, 10)[1] in range(3)


def test_graded_rejects_wrong_weights():
    with pytest.raises(ValueError):
        GradedNearly(FormWeight.classical(3, 2), {1: V(3, 2, {(0, 1): 1})}, "V")


def test_a0_is_twist_by_exponent():
    p = 5
    S = UnivExponent(p, 1, 0, 6, 10)
    F = V(p, 4, {(0, 1): 2, (1, 3): 1, (0, 5): 7})
    A0 = a_i_term(F, S, 0)
    assert set(A0.parts) == {0}
    expect = V(p, 4, {})
    for c, (_, s_gamma) in S.table().items():
        expect = expect + nabla_disk(F, c).scale(s_gamma)
    assert A0.part(0) == expect


def test_a1_one_step_expansion():
    p = 3
    S = UnivExponent(p, 1, 0, 6, 10)
    F = V(p, 2, {(0, 4): Fraction(1, 2)})
    gamma, s_gamma = S.table()[4 % p]
    step = shifted_power_term(F, gamma, 1)
    expect = step.scale(s_gamma * binom_wprime(p, 1, 6, 1))
    assert a_i_term(F, S, 1) == expect
    assert step.part(1) == nabla(F).scale(gamma ** -1)


def test_p_divisible_input_is_killed():
    S = UnivExponent(3, 1, 0, 6, 10)
    res = nabla_univ(V(3, 2, {(0, 3): 1, (1, 9): 5}), S, prec=4)
    assert res.value.is_zero()


def test_universal_weight_input_is_rejected():
    S = UnivExponent(3, 1, 0, 6, 10)
    F = NearlyForm(FormWeight.universal(3, 1, 6), {(0, 1): 1}, "V")
    with pytest.raises(ValueError):
        nabla_univ(F, S, prec=4)


def test_iterate_cutoff():
    for p in (3, 5, 7):
        for prec in (4, 10):
            I = default_iterate_cutoff(p, prec)
            for i in range(I + 1, I + 40):
                assert i - factorial_valuation(i, p) >= prec


def test_specialisation_recovers_first_power():
    p = 3
    F = V(p, 4, {(0, 1): 1})
    S = default_exponent(p, 1, 1, 5)
    res = nabla_univ(F, S, prec=5)
    rep = check_specialization(F, res.value, S, 1)
    assert rep["match"] and rep["min_prec"] >= 4
    assert nabla_pow(F.map_q(deplete), 1) == nabla(F)


def test_specialisation_rejects_wrong_component():
    S = UnivExponent(5, 1, 1, 6, 10)
    with pytest.raises(ValueError):
        S.point(2)


def test_bounds():
    assert [stated_bound(3, i) for i in range(4)] == [-1, 1, 2, 4]
    assert [corrected_bound(3, i) for i in range(9)] == [0, 1, 2, 2, 3, 4, 4, 5, 6]


# Measured collapsed valuations of A_i on the worst sample a=1, nu=2, k=2, m=0.
MEASURED = {
    3: [0, 1, 2, 2, 3, 4, 4, 5, 6],
    5: [0, 1, 2, 3, 4, 4, 5, 6, 7],
}


@pytest.mark.parametrize("p", [3, 5])
def test_divisibility_matches_corrected_bound(p):
    for i, want in enumerate(MEASURED[p]):
        (case,) = pdiviter_certificate(p, 1, i, [(1, 2, 2, 0)], bound="corrected", prec=20)
        assert case.measured == want == corrected_bound(p, i)
        assert case.ok and case.v_A >= 2 and case.v_one_minus_B >= 1


def test_stated_divisibility_bound_fails_from_i_three_at_p_three():
    cases = [pdiviter_certificate(3, 1, i, [(1, 2, 2, 0)], prec=20)[0] for i in range(5)]
    assert [c.ok for c in cases] == [True, True, True, False, False]


def test_pdiviter_rejects_p_divisible_samples():
    with pytest.raises(ValueError):
        pdiviter_certificate(3, 1, 1, [(1, 3, 2, 0)])


def test_closed_form_needs_the_nu_power():
    S = UnivExponent(3, 1, 0, 12, 12)
    rep = closed_form_check(Fraction(1), 4, 4, 0, S, 3)
    assert rep["with_nu_power"] > rep["without_nu_power"]
    assert rep["with_nu_power"] >= 4


def test_collapsed_valuation_of_zero():
    G = GradedNearly(FormWeight.classical(3, 2), {}, "V")
    assert collapsed_valuation(G) == float("inf")
