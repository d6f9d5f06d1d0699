"""Discrete spatial grid, Fourier-transform contract, and quadrature.

The domain is the uniform periodic box [-L, L) with nodes x_i = -L + i*dx.
The transform pair mirrors the continuous convention

    f_hat(k) = (2*pi)^(-1/2) * integral f(x) exp(+i*k*x) dx,
    f(x)     = (2*pi)^(-1/2) * integral f_hat(k) exp(-i*k*x) dk,

discretized with trapezoidal (periodic Riemann) quadrature.  The symmetric
1/sqrt(2*pi) split makes the discrete round trip the exact identity and gives
Parseval's theorem with unit constant:  sum|f|^2 dx == sum|f_hat|^2 dk.
Second derivatives act as multiplication by -k^2 in the transform domain.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

_TWO_PI_SQRT = np.sqrt(2.0 * np.pi)


@dataclass(frozen=True, eq=False)
class GridSpec:
    """Uniform periodic grid on [-L, L) together with its wavenumber set.

    Attributes
    ----------
    n_points : int
        Number of spatial samples; a power of two.
    half_length : float
        Domain half-length L.
    dx : float
        Node spacing 2L / n_points.
    wavenumbers : ndarray
        Radian wavenumbers, every integer multiple of pi/L in
        {-n/2, ..., n/2 - 1}*(pi/L), in native (unshifted) FFT bin order.
    nodes : ndarray
        Node coordinates x_i = -L + i*dx.
    """

    n_points: int
    half_length: float
    dx: float
    wavenumbers: np.ndarray
    nodes: np.ndarray
    # Forward-kernel phase exp(+i*k*(-L)) relating FFT bins to the box origin.
    _phase: np.ndarray = field(repr=False, default=None)

    @property
    def dk(self) -> float:
        """Wavenumber spacing pi / L."""
        return np.pi / self.half_length


@dataclass(eq=False)
class WaveField:
    """Complex samples of a wave function on a grid.

    The same container is used for physical-space fields (psi, eta, xi) and
    their transform-domain counterparts; which space the values live in is
    determined by how the field was produced.
    """

    values: np.ndarray
    grid: GridSpec

    def __post_init__(self) -> None:
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != (self.grid.n_points,):
            raise ValueError(
                f"field has {self.values.shape} values for a grid of "
                f"{self.grid.n_points} points"
            )

    def copy(self) -> "WaveField":
        return WaveField(self.values.copy(), self.grid)


def make_grid(n_points: int, half_length: float) -> GridSpec:
    """Build a GridSpec for the box [-L, L) with n_points samples.

    n_points must be a power of two (>= 4) for transform efficiency;
    half_length must be positive.
    """
    if n_points < 4 or (n_points & (n_points - 1)) != 0:
        raise ValueError(f"n_points must be a power of two >= 4, got {n_points}")
    if not half_length > 0:
        raise ValueError(f"half_length must be positive, got {half_length}")
    dx = 2.0 * half_length / n_points
    nodes = -half_length + dx * np.arange(n_points)
    wavenumbers = 2.0 * np.pi * np.fft.fftfreq(n_points, d=dx)
    phase = np.exp(1j * wavenumbers * (-half_length))
    for arr in (nodes, wavenumbers, phase):
        arr.setflags(write=False)
    return GridSpec(
        n_points=n_points,
        half_length=half_length,
        dx=dx,
        wavenumbers=wavenumbers,
        nodes=nodes,
        _phase=phase,
    )


def forward_transform(fld: WaveField) -> WaveField:
    """Physical space -> transform domain with the exp(+i*k*x) kernel.

    Note the sign: under this kernel a pure physical mode exp(-i*k0*x)
    concentrates in the +k0 bin (and exp(+i*k0*x) in the -k0 bin), mirroring
    the continuous identity  integral exp(+-i*k0*x) exp(+i*k*x) dx
    = 2*pi*delta(k +- k0).
    """
    g = fld.grid
    # sum_j f_j exp(+i k_m x_j) == exp(-i k_m L) * N * ifft(f)_m
    spec = (g.dx / _TWO_PI_SQRT) * g.n_points * np.fft.ifft(fld.values) * g._phase
    return WaveField(spec, g)


def inverse_transform(fld: WaveField) -> WaveField:
    """Transform domain -> physical space with the exp(-i*k*x) kernel."""
    g = fld.grid
    vals = (g.dk / _TWO_PI_SQRT) * np.fft.fft(fld.values * np.conj(g._phase))
    return WaveField(vals, g)


def compute_power(fld: WaveField) -> float:
    """Power P = integral |psi|^2 dx via the periodic Riemann sum.

    The plain sum is spectrally accurate for smooth periodic integrands and
    matches the Parseval bookkeeping of the transform pair.
    """
    return float(np.sum(np.abs(fld.values) ** 2) * fld.grid.dx)


def spectral_second_derivative(fld: WaveField) -> WaveField:
    """d^2/dx^2 computed as inverse_transform(-k^2 * forward_transform(f))."""
    spec = forward_transform(fld)
    spec.values = -(fld.grid.wavenumbers**2) * spec.values
    return inverse_transform(spec)
