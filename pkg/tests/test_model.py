"""Model-parameter, residual, and oscillator-mode tests.

Hermite values are cross-checked against numpy.polynomial.hermite; mode
energies/orthonormality follow the standard closed forms.
"""
import math

import numpy as np
import pytest
from numpy.polynomial import hermite as H

from nqho import (
    InitialCondition,
    ModelParams,
    WaveField,
    build_initial_guess,
    compute_power,
    hermite,
    linear_eigenvalue,
    linear_mode,
    make_grid,
    potential,
    stationary_residual,
)


class TestModelParams:
    def test_accepts_showcase_regime(self):
        p = ModelParams(alpha=1.0, sigma=1.0, p_shift=30.0, mu=10.8)
        assert p.mu == 10.8

    def test_rejects_negative_alpha(self):
        with pytest.raises(ValueError):
            ModelParams(alpha=-1.0, sigma=1.0, p_shift=30.0, mu=1.0)

    def test_rejects_nonpositive_shift(self):
        with pytest.raises(ValueError):
            ModelParams(alpha=1.0, sigma=1.0, p_shift=0.0, mu=1.0)


class TestPotential:
    def test_quadratic_values(self):
        g = make_grid(64, 5.0)
        params = ModelParams(alpha=2.0, sigma=1.0, p_shift=30.0, mu=1.0)
        assert np.allclose(potential(g, params), 2.0 * g.nodes**2, atol=0)

    def test_zero_alpha_is_free(self):
        g = make_grid(64, 5.0)
        params = ModelParams(alpha=0.0, sigma=1.0, p_shift=30.0, mu=1.0)
        assert np.max(np.abs(potential(g, params))) == 0.0


class TestHermite:
    def test_first_four_polynomials(self):
        x = np.linspace(-2, 2, 9)
        assert np.allclose(hermite(0, x), np.ones_like(x), atol=0)
        assert np.allclose(hermite(1, x), 2 * x, atol=0)
        assert np.allclose(hermite(2, x), 4 * x**2 - 2, atol=1e-12)
        assert np.allclose(hermite(3, x), 8 * x**3 - 12 * x, atol=1e-11)

    def test_against_numpy_hermval(self):
        x = np.linspace(-3, 3, 61)
        for n in range(9):
            coeffs = np.zeros(n + 1)
            coeffs[n] = 1.0
            assert np.allclose(hermite(n, x), H.hermval(x, coeffs), rtol=1e-12)

    def test_scalar_input(self):
        assert hermite(2, 1.0) == pytest.approx(2.0)

    def test_rejects_negative_order(self):
        with pytest.raises(ValueError):
            hermite(-1, 0.0)

    def test_rejects_order_above_cap(self):
        with pytest.raises(ValueError):
            hermite(31, 0.0)


class TestLinearModes:
    def test_eigenvalues(self):
        assert [linear_eigenvalue(n) for n in range(4)] == [1, 3, 5, 7]

    def test_orthonormality(self):
        g = make_grid(1024, 20.0)
        modes = [linear_mode(g, n).values for n in range(4)]
        for i in range(4):
            for j in range(4):
                overlap = np.sum(np.conj(modes[i]) * modes[j]).real * g.dx
                assert overlap == pytest.approx(1.0 if i == j else 0.0, abs=1e-10)

    def test_modes_solve_linear_stationary_problem(self):
        # With sigma=0, alpha=1 the stationary equation is satisfied by U_n
        # at mu = -(1+2n).
        g = make_grid(1024, 20.0)
        for n in range(3):
            params = ModelParams(
                alpha=1.0, sigma=0.0, p_shift=30.0, mu=-float(linear_eigenvalue(n))
            )
            res = stationary_residual(linear_mode(g, n), params)
            assert res <= 1e-9

    def test_center_values_match_closed_form(self):
        # U_0(0) = pi^{-1/4}; U_2(0) = -2 / (8 sqrt(pi))^{1/2}.  x = 0 is an
        # exact grid node (index N/2).
        g = make_grid(1024, 20.0)
        center = 512
        assert g.nodes[center] == 0.0
        u0 = linear_mode(g, 0)
        assert np.max(np.abs(u0.values)) == pytest.approx(np.pi ** -0.25, rel=1e-10)
        assert float(u0.values[center].real) == pytest.approx(np.pi ** -0.25, rel=1e-12)
        u2 = linear_mode(g, 2)
        expected = -2.0 / math.sqrt(8.0 * math.sqrt(np.pi))
        assert float(u2.values[center].real) == pytest.approx(expected, rel=1e-12)


class TestInitialGuess:
    def test_single_hump_is_centered_gaussian(self):
        g = make_grid(256, 10.0)
        guess = build_initial_guess(g, InitialCondition(hump_centers=(0.0,)))
        assert np.allclose(guess.values, np.exp(-(g.nodes**2)), atol=1e-15)

    def test_two_humps_superpose(self):
        g = make_grid(256, 10.0)
        guess = build_initial_guess(g, InitialCondition(hump_centers=(-3.0, 3.0)))
        expected = np.exp(-((g.nodes + 3) ** 2)) + np.exp(-((g.nodes - 3) ** 2))
        assert np.allclose(guess.values, expected, atol=1e-15)

    def test_width_scale(self):
        g = make_grid(256, 10.0)
        cond = InitialCondition(hump_centers=(0.0,), hump_width_scale=2.0)
        guess = build_initial_guess(g, cond)
        assert np.allclose(guess.values, np.exp(-((g.nodes / 2.0) ** 2)), atol=1e-15)

    def test_rejects_center_outside_box(self):
        g = make_grid(256, 10.0)
        with pytest.raises(ValueError):
            build_initial_guess(g, InitialCondition(hump_centers=(10.0,)))

    def test_rejects_empty_centers(self):
        with pytest.raises(ValueError):
            InitialCondition(hump_centers=())


class TestStationaryResidual:
    def test_zero_field_zero_residual(self):
        g = make_grid(256, 10.0)
        params = ModelParams(alpha=1.0, sigma=1.0, p_shift=30.0, mu=1.0)
        assert stationary_residual(WaveField(np.zeros(256), g), params) == 0.0

    def test_wrong_mu_gives_large_residual(self):
        g = make_grid(1024, 20.0)
        params = ModelParams(alpha=1.0, sigma=0.0, p_shift=30.0, mu=-5.0)
        res = stationary_residual(linear_mode(g, 0), params)
        # residual = |(-mu - 1) U_0| peak = 4 * pi^{-1/4}
        assert res == pytest.approx(4.0 * np.pi ** -0.25, rel=1e-8)
