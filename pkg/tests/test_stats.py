import math
import time

import numpy as np
import pytest
from scipy import stats as sps

from oracles import mc_noncentral_t_cdf, mc_one_sample_t_power, t_cdf_quadrature
from ptmf.errors import DomainError, UnachievableError
from ptmf.stats import (
    noncentral_t_cdf,
    power_one_sample_t,
    required_sample_size,
    sensitivity_effect_size,
    t_cdf,
    t_quantile,
)


# ---------------------------------------------------------------------------
# t_quantile
# ---------------------------------------------------------------------------


def test_quantile_median_is_zero():
    for df in (1, 2.5, 19, 200):
        assert t_quantile(0.5, df) == 0.0


def test_quantile_095_df19_vs_quadrature():
    q = t_quantile(0.95, 19)
    assert q == pytest.approx(1.7291, abs=1e-4)
    assert t_cdf_quadrature(q, 19) == pytest.approx(0.95, abs=1e-4)


def test_quantile_df1_closed_form():
    # for one degree of freedom the quantile is tan(pi*(p - 1/2))
    for p in (0.975, 0.9, 0.6, 0.25):
        assert t_quantile(p, 1) == pytest.approx(math.tan(math.pi * (p - 0.5)), rel=1e-9)


def test_quantile_accuracy_contract():
    for df in (1, 3, 19, 77.5):
        for p in (0.001, 0.2, 0.5, 0.8, 0.95, 0.999):
            assert abs(t_cdf(t_quantile(p, df), df) - p) <= 1e-10


def test_quantile_monotone_in_p():
    ps = np.linspace(0.01, 0.99, 45)
    qs = [t_quantile(float(p), 19) for p in ps]
    assert all(a < b for a, b in zip(qs, qs[1:]))


def test_quantile_domain_errors():
    with pytest.raises(DomainError):
        t_quantile(0.0, 19)
    with pytest.raises(DomainError):
        t_quantile(1.0, 19)
    with pytest.raises(DomainError):
        t_quantile(0.5, -1)


# ---------------------------------------------------------------------------
# noncentral_t_cdf
# ---------------------------------------------------------------------------


def test_nct_zero_ncp_equals_central():
    for x in np.linspace(-10, 10, 81):
        for df in (1, 4, 19, 60):
            assert abs(noncentral_t_cdf(float(x), df, 0.0) - t_cdf(float(x), df)) <= 1e-9


def test_nct_at_zero_is_normal_tail():
    assert noncentral_t_cdf(0.0, 10, 2.0) == pytest.approx(sps.norm.cdf(-2), abs=1e-12)
    assert noncentral_t_cdf(0.0, 3, -1.5) == pytest.approx(sps.norm.cdf(1.5), abs=1e-12)


def test_nct_matches_monte_carlo():
    # frozen from mc_noncentral_t_cdf(1.7291, 19, 3.5777, draws=1e7, seed=12345)
    frozen_mc = 0.0359726
    assert mc_noncentral_t_cdf(1.7291, 19, 3.5777, draws=10**6, seed=12345) == pytest.approx(frozen_mc, abs=2e-3)
    assert noncentral_t_cdf(1.7291, 19, 3.5777) == pytest.approx(frozen_mc, abs=3e-4)


def test_nct_agrees_with_reference_implementation():
    worst = 0.0
    for x in np.linspace(-8, 8, 33):
        for df in (1, 2, 5, 19, 120):
            for ncp in (-4.0, -1.0, 0.5, 2.0, 6.0):
                worst = max(worst, abs(noncentral_t_cdf(float(x), df, ncp) - sps.nct.cdf(x, df, ncp)))
    assert worst <= 1e-9


def test_nct_extreme_noncentrality():
    assert noncentral_t_cdf(1.0, 10, 40.0) == pytest.approx(0.0, abs=1e-9)
    assert noncentral_t_cdf(1.0, 10, -40.0) == pytest.approx(1.0, abs=1e-9)
    # large lambda exercises the windowed summation
    assert noncentral_t_cdf(90.0, 30, 80.0) == pytest.approx(sps.nct.cdf(90.0, 30, 80.0), abs=1e-7)


def test_nct_monotone_in_x():
    xs = np.linspace(-6, 9, 60)
    vals = [noncentral_t_cdf(float(x), 19, 2.5) for x in xs]
    assert all(a <= b + 1e-12 for a, b in zip(vals, vals[1:]))


def test_nct_domain_errors():
    with pytest.raises(DomainError):
        noncentral_t_cdf(1.0, 0, 1.0)
    with pytest.raises(DomainError):
        noncentral_t_cdf(float("nan"), 10, 1.0)


# ---------------------------------------------------------------------------
# power
# ---------------------------------------------------------------------------


def test_power_zero_effect_is_alpha():
    for alpha in (0.01, 0.05, 0.1):
        for n in (5, 19, 60):
            res = power_one_sample_t(0.0, alpha, n, "one")
            assert res.achieved_power == pytest.approx(alpha, abs=1e-9)


def test_power_two_tailed_zero_effect_is_alpha():
    res = power_one_sample_t(0.0, 0.05, 25, "two")
    assert res.achieved_power == pytest.approx(0.05, abs=1e-9)


def test_power_reference_design_point():
    res = power_one_sample_t(0.8, 0.05, 19, "one")
    assert res.achieved_power >= 0.95
    assert res.achieved_power == pytest.approx(0.9561, abs=1e-4)
    assert res.critical_t == pytest.approx(1.7341, abs=1e-4)
    assert res.noncentrality == pytest.approx(0.8 * math.sqrt(19), abs=1e-12)


def test_power_matches_monte_carlo():
    analytic = power_one_sample_t(0.5, 0.05, 30, "one").achieved_power
    simulated = mc_one_sample_t_power(0.5, 30, 0.05, "one", trials=10**5, seed=777)
    assert abs(analytic - simulated) <= 0.01


def test_power_two_tailed_matches_monte_carlo():
    analytic = power_one_sample_t(0.6, 0.05, 24, "two").achieved_power
    simulated = mc_one_sample_t_power(0.6, 24, 0.05, "two", trials=10**5, seed=424)
    assert abs(analytic - simulated) <= 0.01


def test_power_symmetric_in_sign():
    a = power_one_sample_t(0.7, 0.05, 21, "one").achieved_power
    b = power_one_sample_t(-0.7, 0.05, 21, "one").achieved_power
    assert a == b


def test_power_monotone_in_n():
    # strict until the value saturates at 1.0 in double precision
    for d in (0.2, 0.5, 0.8, 1.2):
        prev = 0.0
        for n in range(5, 101, 5):
            p = power_one_sample_t(d, 0.05, n, "one").achieved_power
            assert p > prev or (p == prev == 1.0)
            prev = p


def test_power_monotone_in_effect():
    for n in (5, 20, 60):
        prev = 0.0
        for d in (0.2, 0.4, 0.6, 0.8, 1.0, 1.2):
            p = power_one_sample_t(d, 0.05, n, "one").achieved_power
            assert p > prev or (p == prev == 1.0)
            prev = p


def test_power_monotone_in_alpha_one_tailed():
    for d in (0.3, 0.8):
        for n in (10, 40):
            p1 = power_one_sample_t(d, 0.01, n, "one").achieved_power
            p5 = power_one_sample_t(d, 0.05, n, "one").achieved_power
            p10 = power_one_sample_t(d, 0.1, n, "one").achieved_power
            assert p1 < p5 < p10


def test_power_domain_errors():
    with pytest.raises(DomainError):
        power_one_sample_t(0.5, 0.0, 10)
    with pytest.raises(DomainError):
        power_one_sample_t(0.5, 0.05, 1)
    with pytest.raises(DomainError):
        power_one_sample_t(0.5, 0.05, 10, "three")


# ---------------------------------------------------------------------------
# required_sample_size
# ---------------------------------------------------------------------------


def test_required_sample_size_reference():
    start = time.monotonic()
    n = required_sample_size(0.8, 0.05, 0.95, "one")
    assert time.monotonic() - start < 1.0
    assert n == 19


def test_required_sample_size_floor():
    assert required_sample_size(10.0, 0.05, 0.95, "one") == 2


def test_required_sample_size_minimality():
    n = required_sample_size(0.5, 0.05, 0.8, "one")
    assert n == 27
    assert power_one_sample_t(0.5, 0.05, n, "one").achieved_power >= 0.8
    assert power_one_sample_t(0.5, 0.05, n - 1, "one").achieved_power < 0.8
    # Monte-Carlo cross-check of the boundary
    assert mc_one_sample_t_power(0.5, n, 0.05, trials=10**5, seed=11) >= 0.8 - 0.01
    assert mc_one_sample_t_power(0.5, n - 1, 0.05, trials=10**5, seed=12) < 0.8 + 0.01


def test_required_sample_size_minimality_grid():
    for d, alpha, target in ((0.3, 0.05, 0.8), (0.8, 0.01, 0.9), (1.0, 0.05, 0.99)):
        n = required_sample_size(d, alpha, target, "one")
        assert power_one_sample_t(d, alpha, n, "one").achieved_power >= target
        if n > 2:
            assert power_one_sample_t(d, alpha, n - 1, "one").achieved_power < target


def test_required_sample_size_zero_effect():
    with pytest.raises(UnachievableError, match="zero effect size"):
        required_sample_size(0.0, 0.05, 0.95, "one")


# ---------------------------------------------------------------------------
# sensitivity_effect_size
# ---------------------------------------------------------------------------


def test_sensitivity_correct_value_for_stated_inputs():
    # verified by the Monte-Carlo round trip below; 0.7636 corresponds to a
    # 0.95 power target at n=20, not 0.9
    start = time.monotonic()
    d = sensitivity_effect_size(20, 0.05, 0.9, "one")
    assert time.monotonic() - start < 1.0
    assert d == pytest.approx(0.6792, abs=5e-4)
    simulated = mc_one_sample_t_power(d, 20, 0.05, trials=10**5, seed=21)
    assert abs(simulated - 0.9) <= 0.01


def test_sensitivity_reproduces_reference_tool_at_095():
    assert sensitivity_effect_size(20, 0.05, 0.95, "one") == pytest.approx(0.7636, abs=5e-4)


def test_sensitivity_round_trip():
    for n, alpha, target in ((20, 0.05, 0.9), (19, 0.05, 0.95), (50, 0.01, 0.8)):
        d = sensitivity_effect_size(n, alpha, target, "one")
        assert power_one_sample_t(d, alpha, n, "one").achieved_power == pytest.approx(target, abs=1e-4)


def test_sensitivity_consistent_with_required_sample_size():
    # n=19 reaches 0.95 power at d=0.8, so the detectable effect is <= 0.8
    assert sensitivity_effect_size(19, 0.05, 0.95, "one") <= 0.8 + 1e-3


def test_sensitivity_limit_at_alpha():
    assert sensitivity_effect_size(20, 0.05, 0.05, "one") < 1e-3


def test_sensitivity_unachievable():
    with pytest.raises(UnachievableError):
        sensitivity_effect_size(20, 0.05, 0.01, "one")  # below the test level


# ---------------------------------------------------------------------------
# spec container + property sweeps
# ---------------------------------------------------------------------------


def test_evaluate_spec_matches_direct_call():
    from ptmf.stats import PowerSpec, evaluate_spec

    spec = PowerSpec(effect_size=0.8, alpha=0.05, n=19, tails="one", power=0.95)
    assert evaluate_spec(spec) == power_one_sample_t(0.8, 0.05, 19, "one")


def test_nct_rejects_infinite_ncp():
    with pytest.raises(DomainError):
        noncentral_t_cdf(1.0, 10, float("inf"))


from hypothesis import given, settings
from hypothesis import strategies as st


@settings(max_examples=40, deadline=None)
@given(
    n=st.integers(min_value=3, max_value=200),
    alpha=st.sampled_from([0.01, 0.05, 0.1]),
    target=st.floats(min_value=0.2, max_value=0.99),
)
def test_sensitivity_round_trip_property(n, alpha, target):
    d = sensitivity_effect_size(n, alpha, target, "one")
    assert power_one_sample_t(d, alpha, n, "one").achieved_power == pytest.approx(target, abs=1e-4)


@settings(max_examples=40, deadline=None)
@given(
    x=st.floats(min_value=-10, max_value=10),
    df=st.floats(min_value=0.5, max_value=500),
    ncp=st.floats(min_value=-8, max_value=8),
)
def test_nct_bounded_and_reflective_property(x, df, ncp):
    value = noncentral_t_cdf(x, df, ncp)
    assert 0.0 <= value <= 1.0
    mirrored = 1.0 - noncentral_t_cdf(-x, df, -ncp)
    assert value == pytest.approx(mirrored, abs=1e-9)


def test_nct_envelope_and_domain_limit():
    # the largest noncentrality the solvers can produce still evaluates
    from ptmf.stats import noncentral_t_cdf as cdf

    assert 0.0 <= cdf(9.0e3, 10**6 - 1, 1.0e4) <= 1.0
    with pytest.raises(DomainError, match="too large"):
        cdf(1.0, 10, 2.0e6)


def test_nct_matches_quadrature_oracle():
    from oracles import quad_noncentral_t_cdf

    for x, df, ncp in [
        (1.7291, 19, 3.5777),
        (0.5, 3, -2.0),
        (2.09, 19, 3.0373),
        (-1.2, 7, 1.5),
        (4.0, 40, 4.2),
    ]:
        assert noncentral_t_cdf(x, df, ncp) == pytest.approx(quad_noncentral_t_cdf(x, df, ncp), abs=1e-8)
