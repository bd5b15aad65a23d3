import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from constar.thresholds import (ThresholdReport, constar_threshold_exponent,
                                expander_threshold_exponent,
                                explicit_lambda_threshold, gamblers_ruin_probs,
                                gamblers_ruin_probs_fair, meta_threshold,
                                scalefree_threshold_exponent,
                                survival_lower_bound, threshold_report)

from oracles import gamblers_ruin_mc, gamblers_ruin_solve


def test_explicit_lambda_examples():
    assert explicit_lambda_threshold(1, 1, rho=3.0, eps=0.3) == pytest.approx(1.0)
    assert explicit_lambda_threshold(100, 10**4, rho=1.0, eps=0.5) == pytest.approx(1.0)
    # strictly decreasing in ell
    prev = math.inf
    for ell in (10, 100, 1000, 10**4, 10**5):
        v = explicit_lambda_threshold(50, ell, rho=1.0, eps=0.25)
        assert v < prev
        prev = v
    with pytest.raises(ValueError):
        explicit_lambda_threshold(1, 1, 1.0, eps=1.0)


def test_survival_lower_bound_k1():
    sb = survival_lower_bound(1, 500, lam=0.3, rho=1.0, eps=0.5)
    assert sb.bound == pytest.approx(1.0 / sb.p)
    # independent of lambda beyond p for k=1: exponent k-1 = 0
    sb2 = survival_lower_bound(1, 500, lam=0.3, rho=1.0, eps=0.5, p_constant=2.0)
    assert sb2.bound == pytest.approx(1.0 / sb2.p)


def test_survival_lower_bound_spec_example():
    sb = survival_lower_bound(4, 2000, lam=0.067, rho=1.0, eps=0.5)
    assert sb.p == pytest.approx((0.067**2 * 2000) ** -0.5, rel=1e-12)
    assert sb.p == pytest.approx(0.3337, abs=2e-4)
    assert sb.bound == pytest.approx(9.47e-5, rel=2e-2)
    assert not sb.in_regime  # lam < kp: vacuous, flagged, not an error


def test_survival_lower_bound_monotone_in_lambda_in_regime():
    prev = 0.0
    for lam in (0.5, 0.6, 0.8, 1.0):
        sb = survival_lower_bound(3, 5000, lam=lam, rho=1.0, eps=0.5)
        if sb.in_regime:
            assert sb.bound > prev
            prev = sb.bound


def test_exponent_examples():
    assert scalefree_threshold_exponent(2.5, 1.0) == pytest.approx(-2.0 / 9.0)
    assert expander_threshold_exponent(2.5) == pytest.approx(-0.25)
    # rho -> infinity limit of the constar exponent with c=1 is -1/2
    assert constar_threshold_exponent(1.0, 1e12) == pytest.approx(-0.5, abs=1e-9)
    # gamma=2.8, rho=1: scale-free beats expander (2.8 > meta threshold)
    sf = scalefree_threshold_exponent(2.8, 1.0)
    ex = expander_threshold_exponent(2.8)
    assert sf == pytest.approx(-1.0 / (3.0 * 1.8))
    assert ex == pytest.approx(-0.1)
    assert sf < ex
    assert 2.8 > meta_threshold(1.0)


def test_exponent_monotone_in_rho():
    prev = 0.0
    for rho in (0.5, 1.0, 2.0, 8.0):
        v = scalefree_threshold_exponent(2.5, rho)
        assert v < prev
        prev = v


def test_meta_threshold_values():
    assert meta_threshold(1.0) == pytest.approx(2.0 + 1.0 / math.sqrt(3.0), rel=1e-12)
    assert meta_threshold(4.0) == pytest.approx(2.0 + 1.0 / 3.0, rel=1e-12)
    assert meta_threshold(1e9) == pytest.approx(2.0, abs=1e-4)
    assert meta_threshold(1e-9) == pytest.approx(3.0, abs=1e-4)


def test_domain_errors():
    for f in (lambda: scalefree_threshold_exponent(3.0, 1.0),
              lambda: scalefree_threshold_exponent(2.0, 1.0),
              lambda: expander_threshold_exponent(1.9),
              lambda: meta_threshold(0.0),
              lambda: constar_threshold_exponent(0.0, 1.0)):
        with pytest.raises(ValueError):
            f()


def test_comparison_equivalence_grid():
    # scale-free exponent < expander exponent  <=>  gamma > meta threshold
    gammas = np.linspace(2.001, 2.999, 100)
    rhos = np.logspace(-2, 2, 100)
    for rho in rhos:
        gstar = meta_threshold(rho)
        for gamma in gammas:
            lhs = scalefree_threshold_exponent(gamma, rho) < expander_threshold_exponent(gamma)
            assert lhs == (gamma > gstar), (gamma, rho)


def test_gamblers_ruin_one_step():
    ruin, win = gamblers_ruin_probs(1.0 / 3.0, start=1, lower=0, upper=2)
    assert ruin == pytest.approx(2.0 / 3.0, rel=1e-12)
    assert win == pytest.approx(1.0 / 3.0, rel=1e-12)


def test_gamblers_ruin_example_vs_oracles():
    ruin, win = gamblers_ruin_probs(0.6, start=3, lower=0, upper=10)
    assert ruin == pytest.approx(0.28388, abs=5e-6)
    assert win == pytest.approx(0.71612, abs=5e-6)
    solve = gamblers_ruin_solve(0.6, 0, 10)
    assert abs(ruin - solve[3]) < 1e-10
    mc = gamblers_ruin_mc(0.6, 3, 0, 10, trials=100000, seed=5)
    se = math.sqrt(ruin * (1 - ruin) / 100000)
    assert abs(mc - ruin) <= 3 * se


def test_gamblers_ruin_complementarity_random():
    rng = np.random.default_rng(13)
    for _ in range(100):
        lower = int(rng.integers(-5, 5))
        upper = lower + int(rng.integers(2, 30))
        start = int(rng.integers(lower + 1, upper))
        p = float(rng.uniform(0.01, 0.99))
        if abs(p - 0.5) < 1e-9:
            continue
        ruin, win = gamblers_ruin_probs(p, start, lower, upper)
        assert abs(ruin + win - 1.0) < 1e-12


def test_gamblers_ruin_rejects_half():
    with pytest.raises(ValueError, match="1/2"):
        gamblers_ruin_probs(0.5, 1, 0, 2)
    ruin, win = gamblers_ruin_probs_fair(3, 0, 10)
    assert ruin == pytest.approx(0.7)
    assert win == pytest.approx(0.3)


def test_gamblers_ruin_fair_is_the_limit():
    r1, _ = gamblers_ruin_probs(0.5 + 1e-9, 3, 0, 10)
    r0, _ = gamblers_ruin_probs_fair(3, 0, 10)
    assert abs(r1 - r0) < 1e-6


def test_gamblers_ruin_domain():
    with pytest.raises(ValueError):
        gamblers_ruin_probs(0.6, 0, 0, 2)
    with pytest.raises(ValueError):
        gamblers_ruin_probs(1.0, 1, 0, 2)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.01, 0.99), st.integers(-3, 20), st.integers(1, 25),
       st.integers(1, 25))
def test_gamblers_ruin_matches_linear_solve(p, lower, a, b):
    if abs(p - 0.5) < 1e-3:
        return
    start, upper = lower + a, lower + a + b
    ruin, win = gamblers_ruin_probs(p, start, lower, upper)
    solve = gamblers_ruin_solve(p, lower, upper)
    assert abs(ruin - solve[start - lower]) < 1e-9


def test_report_json():
    rep = threshold_report(n=10**5, gamma=2.5, rho=1.0, eps=0.1, k=25, ell=100,
                           lam=0.3)
    back = ThresholdReport.from_json(rep.to_json())
    assert back == rep
    ids = {b["id"] for b in rep.bounds}
    assert {"scalefree", "expander", "meta_threshold", "explicit_lambda",
            "survival_lower_bound"} <= ids
    assert rep.verdict == "expander_more_permissive"  # 2.5 < 2.577
    rep2 = threshold_report(gamma=2.8, rho=1.0)
    assert rep2.verdict == "constar_more_permissive"
