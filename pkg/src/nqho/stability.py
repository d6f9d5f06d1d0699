"""Vakhitov-Kolokolov slope analysis of soliton branches.

Sweeps the soliton eigenvalue mu, solves for the stationary profile at each
sample, and classifies the sign of dP/dmu, where P = integral |eta|^2 dx is
the soliton power.  Negative slope is a *necessary* condition for stability,
not a sufficient one, so intervals where it holds are labelled
"stable-candidate" rather than "stable".
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .spectral import GridSpec, compute_power
from .srm import SrmConfig, SrmError, srm_solve

STABLE_CANDIDATE = "stable-candidate"
UNSTABLE = "unstable"
UNKNOWN = "unknown"


@dataclass(eq=False)
class PowerCurve:
    """Sampled P(mu) with slope-sign classification.

    mu_values, powers, converged_flags, and slopes share one length (slopes
    use central differences with one-sided ends).  Slopes touching any
    non-converged sample are NaN and excluded from classification.
    stable_intervals lists maximal (mu_lo, mu_hi) runs of negative slope,
    ascending and non-overlapping; non-converged samples break runs.
    Powers of samples whose solve raised are NaN.
    """

    mu_values: np.ndarray
    powers: np.ndarray
    converged_flags: np.ndarray
    slopes: np.ndarray
    stable_intervals: list[tuple[float, float]]


def power_curve_from_samples(
    mu_values, powers, converged_flags
) -> PowerCurve:
    """Assemble a PowerCurve (slopes + intervals) from raw scan samples."""
    mu = np.asarray(mu_values, dtype=float)
    p = np.asarray(powers, dtype=float)
    conv = np.asarray(converged_flags, dtype=bool)
    if not (mu.shape == p.shape == conv.shape):
        raise ValueError("mu_values, powers, converged_flags must share a shape")
    if mu.size < 3:
        raise ValueError(f"need at least 3 samples, got {mu.size}")
    if np.any(np.diff(mu) <= 0):
        raise ValueError("mu_values must be strictly ascending")

    n = mu.size
    slopes = np.full(n, np.nan)
    for i in range(n):
        if not conv[i]:
            continue
        if 0 < i < n - 1 and conv[i - 1] and conv[i + 1]:
            slopes[i] = (p[i + 1] - p[i - 1]) / (mu[i + 1] - mu[i - 1])
        elif i == 0 and conv[1]:
            slopes[i] = (p[1] - p[0]) / (mu[1] - mu[0])
        elif i == n - 1 and conv[n - 2]:
            slopes[i] = (p[n - 1] - p[n - 2]) / (mu[n - 1] - mu[n - 2])

    intervals: list[tuple[float, float]] = []
    start = None
    for i in range(n):
        if np.isfinite(slopes[i]) and slopes[i] < 0:
            if start is None:
                start = i
        else:
            if start is not None:
                intervals.append((float(mu[start]), float(mu[i - 1])))
                start = None
    if start is not None:
        intervals.append((float(mu[start]), float(mu[n - 1])))
    return PowerCurve(
        mu_values=mu, powers=p, converged_flags=conv, slopes=slopes,
        stable_intervals=intervals,
    )


def vk_scan(
    mu_range: tuple[float, float],
    n_samples: int,
    base_config: SrmConfig,
    grid: GridSpec,
) -> PowerCurve:
    """Solve for the stationary profile at each mu sample and assemble P(mu).

    All parameters other than mu are taken from base_config.  Per-sample
    solver failures (divergence, inadmissible amplitude) are recorded as
    non-converged samples with NaN power; nothing is fatal.
    """
    lo, hi = mu_range
    if not lo < hi:
        raise ValueError(f"mu_range must be ascending, got {mu_range}")
    if n_samples < 3:
        raise ValueError(f"n_samples must be >= 3, got {n_samples}")
    mu_values = np.linspace(lo, hi, n_samples)
    powers = np.full(n_samples, np.nan)
    conv = np.zeros(n_samples, dtype=bool)
    for i, mu in enumerate(mu_values):
        cfg = replace(base_config, params=replace(base_config.params, mu=float(mu)))
        try:
            result = srm_solve(cfg, grid)
        except SrmError:
            continue
        powers[i] = compute_power(result.profile)
        conv[i] = result.converged
    return power_curve_from_samples(mu_values, powers, conv)


def classify_slope(curve: PowerCurve, mu: float) -> str:
    """Classify stability at mu from the locally interpolated slope.

    Returns "stable-candidate" when the interpolated slope between the two
    bracketing converged samples is negative, "unstable" when nonnegative,
    and "unknown" when either bracketing sample did not converge.  mu must
    lie within the scanned range.
    """
    mu_values = curve.mu_values
    if not (mu_values[0] <= mu <= mu_values[-1]):
        raise ValueError(
            f"mu = {mu} outside the scanned range "
            f"[{mu_values[0]}, {mu_values[-1]}]"
        )
    i = int(np.searchsorted(mu_values, mu, side="right") - 1)
    i = min(max(i, 0), mu_values.size - 2)
    if not (curve.converged_flags[i] and curve.converged_flags[i + 1]):
        return UNKNOWN
    slope = (curve.powers[i + 1] - curve.powers[i]) / (
        mu_values[i + 1] - mu_values[i]
    )
    return STABLE_CANDIDATE if slope < 0 else UNSTABLE
