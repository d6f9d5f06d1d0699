"""Spectral renormalization (SRM) fixed-point solver for stationary profiles.

Writing the stationary profile as eta = beta * xi and adding a shift p > 0 to
both sides of the profile equation turns it into the transform-domain
fixed-point iteration

    xi_hat <- [ (p - mu)*xi_hat - F[V*xi] + F[sigma*|beta|^2*|xi|^2*xi] ]
              / (p + k^2),

whose fixed points satisfy the stationary equation at eigenvalue mu exactly.
For mu <= 0 the numerator shift (p - mu) coincides with the p + |mu| form in
which the shifted iteration is usually quoted; the (p - mu) form is the one
that remains consistent with the stationary equation for either sign of mu.

The amplitude beta is renormalized every iteration from the energy
constraint obtained by pairing the iteration equation with xi_hat*:

    S = A + |beta|^2 * B,
    S = int |xi_hat|^2 dk,
    A = int xi_hat* [(p - mu)*xi_hat - F[V*xi]] / (p + k^2) dk,
    B = int xi_hat* F[sigma*|xi|^2*xi] / (p + k^2) dk,

giving beta = +sqrt((S - Re A)/Re B).  This keeps the scheme from drifting
to the zero solution and makes the converged profile independent of the
initial guess's overall scale.

A diagonal preconditioner cannot damp the unbounded potential alpha*x^2 near
the box edges: linearizing about a localized state shows edge perturbations
grow per iteration by roughly |p - mu - alpha*L^2| / p, so runs need
alpha*L^2 < 2p - mu (approximately) to contract.  Divergence is detected and
reported rather than silently overflowing.

Plain renormalized fixed-point iterations converge only to the lowest state
reachable from the guess: any excited-state structure decays because rounding
noise seeds lower states that amplify geometrically.  The optional `parity`
constraint projects every iterate onto the even or odd subspace (exact on the
periodic grid via the index map i -> (N - i) mod N), which makes the lowest
*odd* state — the two-hump profile with antisymmetric lobes — an attainable
fixed point.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .model import InitialCondition, ModelParams, build_initial_guess, potential, stationary_residual
from .spectral import GridSpec, WaveField, compute_power, forward_transform, inverse_transform

PARITY_CHOICES = ("none", "even", "odd")


class SrmError(RuntimeError):
    """Base class for solver failures; carries partial diagnostics."""

    def __init__(self, message: str, beta_history=None, iterations: int = 0):
        super().__init__(message)
        self.beta_history = np.asarray(beta_history if beta_history is not None else [])
        self.iterations = iterations


class LinearProblemError(SrmError):
    """The renormalization constraint degenerates (sigma ~ 0 or no overlap)."""


class InadmissibleBetaError(SrmError):
    """The constraint demands beta^2 < 0 for the current iterate."""


class DivergenceError(SrmError):
    """Iterates left the real solution branch or the floating-point range.

    The usual trigger is the edge instability of the shifted iteration (see
    the module docstring): amplified rounding noise first destroys the
    reality of the constraint integrals, then overflows outright.  Either
    symptom raises this error.
    """


@dataclass(frozen=True)
class SrmConfig:
    """Solver configuration.

    Attributes
    ----------
    params : ModelParams
        Model constants, including the eigenvalue mu and shift p.
    initial : InitialCondition
        Gaussian-sum initial guess.
    tolerance : float
        Cut-off on the normalized per-iteration change of beta; in (0, 1).
    max_iterations : int
        Iteration budget; exhausting it is reported, not raised.
    parity : str
        "none" (default), "even", or "odd".  With "odd", the Gaussian humps
        are seeded with alternating signs (ascending-center order) and every
        iterate is projected onto the odd subspace; "even" projects onto the
        even subspace.  Required to converge to two-hump profiles, which are
        otherwise destroyed by rounding-seeded decay to the single-hump
        ground state.
    """

    params: ModelParams
    initial: InitialCondition
    tolerance: float = 1e-15
    max_iterations: int = 10_000
    parity: str = "none"

    def __post_init__(self) -> None:
        if not (0.0 < self.tolerance < 1.0):
            raise ValueError(f"tolerance must lie in (0, 1), got {self.tolerance}")
        if self.max_iterations < 1:
            raise ValueError(f"max_iterations must be >= 1, got {self.max_iterations}")
        if self.parity not in PARITY_CHOICES:
            raise ValueError(f"parity must be one of {PARITY_CHOICES}, got {self.parity!r}")


@dataclass(eq=False)
class SrmResult:
    """Outcome of a solve, converged or not.

    profile is eta = beta*xi in physical space; beta_history holds every
    accepted beta including the initial one; residual is the stationary-
    equation max-norm residual of the returned profile.
    """

    profile: WaveField
    beta: float
    beta_history: np.ndarray
    iterations: int
    final_beta_change: float
    residual: float
    converged: bool


def parity_project(values: np.ndarray, parity: str) -> np.ndarray:
    """Project samples onto the even/odd subspace of the periodic box.

    On nodes x_i = -L + i*dx the reflection x -> -x is the exact index
    permutation i -> (N - i) mod N, so the projection introduces no
    interpolation error.
    """
    if parity == "none":
        return values
    reflected = np.roll(values[::-1], 1)
    sign = 1.0 if parity == "even" else -1.0
    return 0.5 * (values + sign * reflected)


def _signed_initial_guess(grid: GridSpec, ic: InitialCondition, parity: str) -> WaveField:
    """Initial guess with hump signs matching the requested symmetry class."""
    guess = build_initial_guess(grid, ic)
    if parity == "odd":
        # Alternate hump signs in ascending-center order; a plain positive sum
        # is even and its odd projection would vanish identically.
        vals = np.zeros(grid.n_points)
        for idx, c in enumerate(sorted(ic.hump_centers)):
            vals += (-1.0) ** idx * np.exp(
                -(((grid.nodes - c) / ic.hump_width_scale) ** 2)
            )
        guess = WaveField(vals, grid)
    if parity != "none":
        guess = WaveField(parity_project(guess.values, parity), grid)
    return guess


def _constraint_integrals(xi_hat: WaveField, params: ModelParams):
    """S, A, B of the renormalization constraint for the current iterate."""
    g = xi_hat.grid
    dk = g.dk
    denom = params.p_shift + g.wavenumbers**2
    xi = inverse_transform(xi_hat)
    v = potential(g, params)
    lin = (
        (params.p_shift - params.mu) * xi_hat.values
        - forward_transform(WaveField(v * xi.values, g)).values
    ) / denom
    nl = (
        forward_transform(
            WaveField(params.sigma * np.abs(xi.values) ** 2 * xi.values, g)
        ).values
        / denom
    )
    conj = np.conj(xi_hat.values)
    s_int = float(np.sum(np.abs(xi_hat.values) ** 2) * dk)
    a_int = complex(np.sum(conj * lin) * dk)
    b_int = complex(np.sum(conj * nl) * dk)
    return s_int, a_int, b_int


def solve_beta(xi_hat: WaveField, params: ModelParams) -> float:
    """Amplitude from the energy constraint: beta = +sqrt((S - Re A)/Re B).

    Raises LinearProblemError when S vanishes or |Re B| < 1e-14*|S| (no
    cubic term to renormalize against), InadmissibleBetaError when the
    ratio is negative, and DivergenceError when the integrals pick up a
    non-negligible imaginary part — for the real-seeded solves that is the
    first symptom of the edge instability, arriving well before overflow.
    """
    s_int, a_int, b_int = _constraint_integrals(xi_hat, params)
    if not s_int > 0:
        raise LinearProblemError("cannot renormalize a zero iterate (S = 0)")
    imag_frac = max(abs(a_int.imag), abs(b_int.imag)) / s_int
    if imag_frac > 1e-8:
        raise DivergenceError(
            f"constraint integrals are not real (imaginary fraction {imag_frac:.3e}): "
            "the iterate left the real solution branch (typically the edge "
            "instability; the shifted iteration requires roughly "
            "alpha*L^2 < 2p - mu to contract)"
        )
    if abs(b_int.real) < 1e-14 * abs(s_int):
        raise LinearProblemError(
            "renormalization constraint degenerates: cubic-term integral B is "
            f"{b_int.real:.3e} against S = {s_int:.3e} (effectively linear problem)"
        )
    ratio = (s_int - a_int.real) / b_int.real
    if ratio < 0:
        raise InadmissibleBetaError(
            f"constraint demands beta^2 = {ratio:.6e} < 0 "
            f"(S = {s_int:.6e}, Re A = {a_int.real:.6e}, Re B = {b_int.real:.6e})"
        )
    return float(np.sqrt(ratio))


def apply_iteration_operator(xi_hat: WaveField, beta: float, params: ModelParams) -> WaveField:
    """One application of the renormalized iteration operator R_beta.

    R_beta[xi_hat] = [(p - mu)*xi_hat - F[V*xi] + F[sigma*|beta|^2*|xi|^2*xi]]
                     / (p + k^2),
    with xi the inverse transform of xi_hat.  The numerator shift (p - mu)
    equals the usual p + |mu| on the mu <= 0 branch and is the sign-consistent
    extension elsewhere: fixed points then satisfy the stationary equation at
    the stored mu for either sign.
    """
    g = xi_hat.grid
    denom = params.p_shift + g.wavenumbers**2
    xi = inverse_transform(xi_hat)
    v = potential(g, params)
    v_term = forward_transform(WaveField(v * xi.values, g)).values
    nl_term = forward_transform(
        WaveField(
            params.sigma * np.abs(beta) ** 2 * np.abs(xi.values) ** 2 * xi.values, g
        )
    ).values
    out = ((params.p_shift - params.mu) * xi_hat.values - v_term + nl_term) / denom
    return WaveField(out, g)


def srm_solve(config: SrmConfig, grid: GridSpec) -> SrmResult:
    """Iterate renormalization and the operator R_beta to a stationary profile.

    Starting from the Gaussian-sum guess, alternates solve_beta and
    apply_iteration_operator until the normalized beta change drops below
    the tolerance or the iteration budget runs out.  Non-convergence is a
    reported outcome (converged=False with full diagnostics); constraint
    degeneracies and floating-point divergence raise SrmError subclasses
    carrying the partial beta history.
    """
    params = config.params
    guess = _signed_initial_guess(grid, config.initial, config.parity)
    xi_hat = forward_transform(guess)

    history: list[float] = []

    def _solve_beta_checked(xh: WaveField) -> float:
        try:
            return solve_beta(xh, params)
        except SrmError as err:
            err.beta_history = np.asarray(history)
            err.iterations = len(history)
            raise

    beta = _solve_beta_checked(xi_hat)
    history.append(beta)
    change = np.inf
    converged = False
    iterations = 0
    for iterations in range(1, config.max_iterations + 1):
        xi_hat = apply_iteration_operator(xi_hat, beta, params)
        if config.parity != "none":
            xi_hat = forward_transform(
                WaveField(
                    parity_project(inverse_transform(xi_hat).values, config.parity),
                    grid,
                )
            )
        if not np.all(np.isfinite(xi_hat.values.view(float))):
            raise DivergenceError(
                f"iterates diverged after {iterations} iterations "
                "(edge instability: the shifted iteration requires roughly "
                "alpha*L^2 < 2p - mu to contract; reduce half_length or raise p_shift)",
                beta_history=history,
                iterations=iterations,
            )
        beta_new = _solve_beta_checked(xi_hat)
        change = abs(beta_new - beta) / max(abs(beta), 1e-300)
        beta = beta_new
        history.append(beta)
        if change < config.tolerance:
            converged = True
            break

    profile = inverse_transform(xi_hat)
    profile = WaveField(beta * profile.values, grid)
    residual = stationary_residual(profile, params)
    if converged and not compute_power(profile) > 0:
        raise SrmError(
            "converged to the zero profile despite renormalization",
            beta_history=history,
            iterations=iterations,
        )
    return SrmResult(
        profile=profile,
        beta=float(beta),
        beta_history=np.asarray(history),
        iterations=iterations,
        final_beta_change=float(change),
        residual=residual,
        converged=converged,
    )
