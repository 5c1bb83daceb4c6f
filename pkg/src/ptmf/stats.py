"""One-sample t-test power analysis on noncentral-t numerics.

The noncentral CDF is evaluated by the classical convergent series of
Poisson-weighted regularized incomplete beta terms,

    F(x; v, d) = Phi(-d) + 1/2 * sum_j [ p_j I_y(j+1/2, v/2) + q_j I_y(j+1, v/2) ]

for x >= 0, with y = x^2/(x^2+v), lam = d^2/2, p_j the Poisson(lam) mass and
q_j = exp(-lam) lam^j d / (sqrt(2) Gamma(j+3/2)); negative x reflects via
F(x; v, d) = 1 - F(-x; v, -d). Terms are summed over a window around the
Poisson mode and the truncated mass is bounded explicitly: since each
incomplete-beta factor is <= 1, the remainder is at most half the Poisson
mass outside the window plus half the analogous q-mass (whose total is
2 Phi(|d|) - 1), and the window widens until that bound is under 1e-9.

One-tailed tests place the rejection region in the direction of the
hypothesized effect, so power depends on |d|; two-tailed power is symmetric
in d by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize, special

from .errors import DomainError, UnachievableError

TAILS = ("one", "two")

_SERIES_TOL = 1e-9
_MAX_N = 10**6


@dataclass(frozen=True)
class PowerSpec:
    effect_size: float
    alpha: float
    n: int
    tails: str = "one"
    power: float | None = None  # target, for solver-style uses


@dataclass(frozen=True)
class PowerResult:
    achieved_power: float
    critical_t: float
    noncentrality: float


def _check_alpha(alpha: float) -> None:
    if not (0.0 < alpha < 1.0):
        raise DomainError(f"alpha must be in (0, 1), got {alpha}")


def _check_tails(tails: str) -> None:
    if tails not in TAILS:
        raise DomainError(f"tails must be one of {TAILS}, got '{tails}'")


def _check_n(n: int) -> None:
    if int(n) != n or n < 2:
        raise DomainError(f"sample size must be an integer >= 2, got {n}")


# ---------------------------------------------------------------------------
# Central t
# ---------------------------------------------------------------------------


def t_cdf(x: float, df: float) -> float:
    if df <= 0 or math.isnan(df):
        raise DomainError(f"df must be positive, got {df}")
    if math.isnan(x):
        raise DomainError("x is NaN")
    if math.isinf(x):
        return 1.0 if x > 0 else 0.0
    z = df / (df + x * x)
    half = 0.5 * special.betainc(df / 2.0, 0.5, z)
    return 1.0 - half if x >= 0 else half


def t_quantile(p: float, df: float) -> float:
    """Inverse central-t CDF, accurate to |dp| <= 1e-10 and monotone in p."""
    if not (0.0 < p < 1.0):
        raise DomainError(f"p must be in (0, 1), got {p}")
    if df <= 0 or math.isnan(df):
        raise DomainError(f"df must be positive, got {df}")
    if p == 0.5:
        return 0.0

    lo, hi = -1.0, 1.0
    while t_cdf(lo, df) > p:
        lo *= 2.0
        if lo < -1e300:
            raise DomainError(f"quantile bracket underflow for p={p}, df={df}")
    while t_cdf(hi, df) < p:
        hi *= 2.0
        if hi > 1e300:
            raise DomainError(f"quantile bracket overflow for p={p}, df={df}")
    return float(optimize.brentq(lambda x: t_cdf(x, df) - p, lo, hi, xtol=1e-14, rtol=8.9e-16, maxiter=200))


# ---------------------------------------------------------------------------
# Noncentral t
# ---------------------------------------------------------------------------


def _nct_cdf_nonneg(x: float, df: float, ncp: float) -> float:
    # Series evaluation for x >= 0.
    phi_term = float(special.ndtr(-ncp))
    if x == 0.0:
        return phi_term
    y = x * x / (x * x + df)
    lam = 0.5 * ncp * ncp

    if lam == 0.0:
        return phi_term + 0.5 * float(special.betainc(0.5, df / 2.0, y))

    q_total_abs = 2.0 * float(special.ndtr(abs(ncp))) - 1.0
    width = 10.0 * math.sqrt(lam) + 30.0
    for _ in range(6):
        j_lo = max(0, int(math.floor(lam - width)))
        j_hi = int(math.ceil(lam + width))
        if j_hi - j_lo > 2 * 10**7:
            # reached near |ncp| ~ 1.4e6; the power-analysis envelope
            # (d<=10, n<=1e6) stays under |ncp|=1e4, a ~1.4e5-term window
            raise DomainError(f"noncentrality {ncp} too large for series evaluation")
        j = np.arange(j_lo, j_hi + 1, dtype=float)
        log_pois = -lam + j * math.log(lam) - special.gammaln(j + 1.0)
        p_j = np.exp(log_pois)
        q_j = math.copysign(1.0, ncp) * np.exp(
            -lam + j * math.log(lam) + math.log(abs(ncp) / math.sqrt(2.0)) - special.gammaln(j + 1.5)
        )
        series = 0.5 * float(
            np.sum(p_j * special.betainc(j + 0.5, df / 2.0, y) + q_j * special.betainc(j + 1.0, df / 2.0, y))
        )
        truncated = 0.5 * ((1.0 - float(np.sum(p_j))) + max(0.0, q_total_abs - float(np.sum(np.abs(q_j)))))
        if truncated <= _SERIES_TOL:
            return phi_term + series
        width *= 2.0
    raise DomainError(f"noncentral-t series did not meet tolerance (x={x}, df={df}, ncp={ncp})")


def noncentral_t_cdf(x: float, df: float, ncp: float) -> float:
    """CDF of the noncentral t distribution, accurate to 1e-6 or better."""
    if df <= 0 or math.isnan(df):
        raise DomainError(f"df must be positive, got {df}")
    if math.isnan(x) or math.isnan(ncp) or math.isinf(ncp):
        raise DomainError("x and ncp must be finite numbers")
    if math.isinf(x):
        return 1.0 if x > 0 else 0.0
    if x >= 0:
        value = _nct_cdf_nonneg(x, df, ncp)
    else:
        value = 1.0 - _nct_cdf_nonneg(-x, df, -ncp)
    return min(1.0, max(0.0, value))


# ---------------------------------------------------------------------------
# Power, sample size, sensitivity
# ---------------------------------------------------------------------------


def evaluate_spec(spec: PowerSpec) -> PowerResult:
    """Achieved power for a design point expressed as a PowerSpec
    (``spec.power`` is the target for solvers and is ignored here)."""
    return power_one_sample_t(spec.effect_size, spec.alpha, spec.n, spec.tails)


def power_one_sample_t(effect_size: float, alpha: float, n: int, tails: str = "one") -> PowerResult:
    """Achieved power of the one-sample t test at the given design point."""
    _check_alpha(alpha)
    _check_tails(tails)
    _check_n(n)
    if math.isnan(effect_size) or math.isinf(effect_size):
        raise DomainError(f"effect size must be finite, got {effect_size}")
    df = n - 1
    ncp = abs(effect_size) * math.sqrt(n)
    if tails == "one":
        crit = t_quantile(1.0 - alpha, df)
        power = 1.0 - noncentral_t_cdf(crit, df, ncp)
    else:
        crit = t_quantile(1.0 - alpha / 2.0, df)
        power = (1.0 - noncentral_t_cdf(crit, df, ncp)) + noncentral_t_cdf(-crit, df, ncp)
    return PowerResult(achieved_power=min(1.0, max(0.0, power)), critical_t=crit, noncentrality=ncp)


def required_sample_size(effect_size: float, alpha: float, power: float, tails: str = "one") -> int:
    """Smallest n >= 2 whose achieved power reaches the target."""
    _check_alpha(alpha)
    _check_tails(tails)
    if effect_size == 0:
        raise UnachievableError("unachievable: zero effect size")
    if not (0.0 < power < 1.0):
        raise DomainError(f"target power must be in (0, 1), got {power}")

    def achieved(n: int) -> float:
        return power_one_sample_t(effect_size, alpha, n, tails).achieved_power

    lo = 2
    if achieved(lo) >= power:
        return lo
    hi = 4
    while achieved(hi) < power:
        lo = hi
        hi *= 2
        if hi > _MAX_N:
            raise UnachievableError(f"unachievable: no n <= {_MAX_N} reaches power {power}")
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if achieved(mid) >= power:
            hi = mid
        else:
            lo = mid
    return hi


def sensitivity_effect_size(n: int, alpha: float, power: float, tails: str = "one") -> float:
    """Detectable |d| at fixed n and target power.

    Bracketed bisection on d in [0, 10]; converges to 1e-6 in power.
    """
    _check_alpha(alpha)
    _check_tails(tails)
    _check_n(n)
    if not (0.0 < power < 1.0):
        raise DomainError(f"target power must be in (0, 1), got {power}")

    def achieved(d: float) -> float:
        return power_one_sample_t(d, alpha, n, tails).achieved_power

    if power < alpha - 1e-12:
        raise UnachievableError(f"unachievable: target power {power} is below the test level {alpha}")
    if achieved(10.0) < power:
        raise UnachievableError(f"unachievable: power {power} not reachable with d <= 10 at n={n}")

    lo, hi = 0.0, 10.0
    mid = 5.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        p_mid = achieved(mid)
        if abs(p_mid - power) <= 1e-6:
            return mid
        if p_mid < power:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-13:
            break
    return mid
