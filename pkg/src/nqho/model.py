"""Model ingredients for the nonlinear quantum harmonic oscillator.

Governing equation (non-dimensional):

    i psi_t + psi_xx - alpha*x^2*psi + sigma*|psi|^2*psi = 0.

The stationary ansatz psi(x, t) = eta(x) exp(+i*mu*t) with soliton eigenvalue
mu gives the profile equation

    -mu*eta + eta_xx - alpha*x^2*eta + sigma*|eta|^2*eta = 0,

whose residual this module evaluates.  In the linear limit (sigma = 0,
alpha = 1) the oscillator has the discrete spectrum 1 + 2n with Hermite-
Gaussian eigenmodes U_n; those modes and eigenvalues are provided as analytic
oracles.  Under the +i*mu*t phase convention used here, U_n is stationary at
mu = -(1 + 2n); under the opposite e^{-i*mu*t} convention the eigenvalue reads
+(1 + 2n).  Both signs are exposed rather than silently merged.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .spectral import GridSpec, WaveField, spectral_second_derivative

_MAX_HERMITE_ORDER = 30


@dataclass(frozen=True)
class ModelParams:
    """Physical and numerical constants of the model.

    Attributes
    ----------
    alpha : float
        Trapping-well potential coefficient (V = alpha*x^2); nonnegative.
    sigma : float
        Cubic nonlinearity strength (positive: self-focusing).
    p_shift : float
        Positive shift p that keeps the fixed-point iteration's denominator
        p + k^2 away from zero.
    mu : float
        Soliton eigenvalue of the stationary profile equation.
    """

    alpha: float
    sigma: float
    p_shift: float
    mu: float

    def __post_init__(self) -> None:
        if not self.alpha >= 0:
            raise ValueError(f"alpha must be nonnegative, got {self.alpha}")
        if not self.p_shift > 0:
            raise ValueError(f"p_shift must be positive, got {self.p_shift}")


@dataclass(frozen=True)
class InitialCondition:
    """Sum-of-Gaussians initial guess: sum_c exp(-((x - c)/width)^2)."""

    hump_centers: tuple[float, ...]
    hump_width_scale: float = 1.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "hump_centers", tuple(self.hump_centers))
        if len(self.hump_centers) < 1:
            raise ValueError("at least one hump center is required")
        if not self.hump_width_scale > 0:
            raise ValueError(
                f"hump_width_scale must be positive, got {self.hump_width_scale}"
            )


def potential(grid: GridSpec, params: ModelParams) -> np.ndarray:
    """Trapping-well potential V(x_i) = alpha * x_i^2 at each node."""
    return params.alpha * grid.nodes**2


def build_initial_guess(grid: GridSpec, ic: InitialCondition) -> WaveField:
    """Real-valued sum of unit-amplitude Gaussians centered at the humps."""
    L = grid.half_length
    for c in ic.hump_centers:
        if not (-L < c < L):
            raise ValueError(f"hump center {c} outside the open domain (-{L}, {L})")
    vals = np.zeros(grid.n_points)
    for c in ic.hump_centers:
        vals += np.exp(-(((grid.nodes - c) / ic.hump_width_scale) ** 2))
    return WaveField(vals, grid)


def stationary_residual(eta: WaveField, params: ModelParams) -> float:
    """Max-norm of -mu*eta + eta_xx - V*eta + sigma*|eta|^2*eta.

    The second derivative is computed spectrally; a converged stationary
    profile must drive this to the solver tolerance floor.
    """
    eta_xx = spectral_second_derivative(eta).values
    v = potential(eta.grid, params)
    r = (
        -params.mu * eta.values
        + eta_xx
        - v * eta.values
        + params.sigma * np.abs(eta.values) ** 2 * eta.values
    )
    return float(np.max(np.abs(r)))


def hermite(n: int, x):
    """Physicists' Hermite polynomial H_n(x) via the standard recurrence.

    H_0 = 1, H_1 = 2x, H_{n+1} = 2x*H_n - 2n*H_{n-1}.  Supports scalar or
    array x; n is capped at 30 to avoid overflow in the recurrence weights.
    """
    if n < 0:
        raise ValueError(f"order must be nonnegative, got {n}")
    if n > _MAX_HERMITE_ORDER:
        raise ValueError(f"order {n} exceeds the supported maximum {_MAX_HERMITE_ORDER}")
    x = np.asarray(x, dtype=float)
    h_prev = np.ones_like(x)
    if n == 0:
        return h_prev if h_prev.ndim else float(h_prev)
    h = 2.0 * x
    for m in range(1, n):
        h, h_prev = 2.0 * x * h - 2.0 * m * h_prev, h
    return h if h.ndim else float(h)


def linear_eigenvalue(n: int) -> float:
    """Discrete spectrum 1 + 2n of the linear oscillator (sigma = 0, alpha = 1).

    Stated under the e^{-i*mu*t} phase convention; the stationary-residual
    sign convention of this module places U_n at mu = -(1 + 2n).
    """
    if n < 0:
        raise ValueError(f"order must be nonnegative, got {n}")
    return float(1 + 2 * n)


def linear_mode(grid: GridSpec, n: int) -> WaveField:
    """Normalized linear-oscillator eigenmode U_n sampled on the grid.

    U_n(x) = (2^n n! sqrt(pi))^(-1/2) exp(-x^2/2) H_n(x), with unit power
    on any grid whose box contains the mode's support.
    """
    if n > _MAX_HERMITE_ORDER:
        raise ValueError(f"order {n} exceeds the supported maximum {_MAX_HERMITE_ORDER}")
    x = grid.nodes
    norm = 1.0 / np.sqrt(2.0**n * float(math.factorial(n)) * np.sqrt(np.pi))
    vals = norm * np.exp(-(x**2) / 2.0) * hermite(n, x)
    return WaveField(vals, grid)
