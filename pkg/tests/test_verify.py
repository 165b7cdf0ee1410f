from __future__ import annotations

import json
from fractions import Fraction

import pytest

from gmk import verify
from gmk.verify import SUITES, RunConfig, run_suite

from test_serialize import validate


def test_config_validation():
    with pytest.raises(ValueError):
        RunConfig(p=4)
    with pytest.raises(ValueError):
        RunConfig(prec=0)
    with pytest.raises(ValueError):
        RunConfig(bound="loose")
    with pytest.raises(ValueError):
        RunConfig(p=3, prec=9, cutoff=2)  # needs ceil(9 * 2/3) = 6
    RunConfig(p=3, prec=9, cutoff=6)


def test_rng_is_salted_and_seeded():
    a, b = RunConfig(seed=1), RunConfig(seed=2)
    assert a.rng("x").random() == RunConfig(seed=1).rng("x").random()
    assert a.rng("x").random() != b.rng("x").random()
    assert a.rng("x").random() != a.rng("y").random()


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope")


@pytest.mark.parametrize("name", ["theta-m", "euler", "delta-homogeneity", "binom-lemma"])
def test_fast_suites_pass_and_match_schema(name):
    rep = run_suite(name, RunConfig(p=3))
    d = rep.to_json()
    validate(json.loads(json.dumps(d)), "verify_report.json")
    assert d["status"] == "pass" and rep.exit_code == 0
    assert [c["descriptor"] for c in d["cases"]] == sorted(c["descriptor"] for c in d["cases"])


def test_reports_are_deterministic():
    cfg = dict(p=3, samples=5)
    one = json.dumps(run_suite("theta-chi", RunConfig(**cfg)).to_json(), sort_keys=True)
    two = json.dumps(run_suite("theta-chi", RunConfig(**cfg)).to_json(), sort_keys=True)
    assert one == two
    other = json.dumps(run_suite("theta-chi", RunConfig(seed=9, **cfg)).to_json(), sort_keys=True)
    assert other != one


def test_stated_binomial_bound_fails_and_corrected_bound_holds():
    stated = verify.binom_valuation_cases(RunConfig(p=3, bound="stated"), i_max=6)
    assert [c.descriptor for c in stated if c.ok] == ["binom-valuation p=3 n=1 i=00", "binom-valuation p=3 n=2 i=00"]
    corrected = verify.binom_valuation_cases(RunConfig(bound="corrected"), i_max=30)
    assert all(c.ok for c in corrected)
    # measured valuation is exactly -i(n-1) - v(i!)
    by_name = {c.descriptor: c for c in corrected}
    assert by_name["binom-valuation p=3 n=2 i=04"].measured == -5


def test_binomial_bound_formulas():
    assert verify.binom_valuation_bound(3, 2, 4, "stated") == -2
    assert verify.binom_valuation_bound(3, 2, 4, "corrected") == -5
    assert verify.binom_valuation_bound(5, 1, 4, "stated") == Fraction(1)


def test_pdiviter_corrected_bound_holds():
    rep = run_suite("pdiviter", RunConfig(p=3, bound="corrected", i_max=6))
    assert rep.exit_code == 0
    stated = run_suite("pdiviter", RunConfig(p=3, bound="stated", i_max=6))
    assert stated.exit_code == 1
    assert all("i=0" not in f and "i=1 " not in f and "i=2 " not in f for f in stated.failures)


def test_gm_closed_form_suite_includes_iterate_check():
    rep = run_suite("gm-closed-form", RunConfig(p=3, samples=3))
    names = [c.descriptor for c in rep.cases]
    assert any(n.startswith("iterate-closed-form") for n in names)
    assert rep.exit_code == 0


def test_small_univ_char_and_gmesp():
    assert run_suite("univ-char", RunConfig(p=5, n=1, samples=2)).exit_code == 0
    assert run_suite("gmesp", RunConfig(p=3, m=2, samples=1)).exit_code == 0
    assert run_suite("gm-step", RunConfig(p=5, samples=5)).exit_code == 0


def test_every_suite_is_registered():
    assert set(SUITES) == {"univ-char", "valuation-bounds", "theta-chi", "gm-step", "gm-closed-form",
                           "binom-lemma", "pdiviter", "gmesp", "theta-m", "delta-homogeneity", "euler"}
