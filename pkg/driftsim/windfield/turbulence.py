"""Frozen planar turbulence from a Von Karman spectrum.

Each velocity component is white Gaussian noise filtered in the wavenumber
domain by sqrt(PSD * D), where D is an angular spreading function about the
mean-wind direction. Filtering a real white-noise field keeps the spectrum
Hermitian, so the inverse FFT is real.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gamma

from core.exceptions import InvalidGrid

logger = logging.getLogger(__name__)

VON_KARMAN_SCALE = 1.339


@dataclass(frozen=True)
class TurbulenceParams:
    sigma: float = 0.0
    L: float = 50.0
    grid_size: int = 128
    cell: float = 4.0
    seed: int = 0
    spreading_exponent: float = 2.0

    def __post_init__(self):
        if self.sigma < 0:
            raise ValueError('sigma must be non-negative')
        if self.L <= 0 or self.cell <= 0:
            raise ValueError('L and cell must be positive')

    @property
    def extent(self):
        return self.grid_size * self.cell


def von_karman_psd(k, sigma, L):
    """One-sided Von Karman spectrum over angular wavenumber k [rad/m]."""
    k = np.asarray(k, dtype=float)
    return (sigma ** 2 * (2.0 * L / math.pi)
            / (1.0 + (VON_KARMAN_SCALE * L * k) ** 2) ** (5.0 / 6.0))


def spreading(theta, exponent):
    """cos^(2s)(theta/2), normalised to unit integral over (-pi, pi]."""
    s = float(exponent)
    norm = 2.0 * math.sqrt(math.pi) * gamma(s + 0.5) / gamma(s + 1.0)
    return np.cos(np.asarray(theta) / 2.0) ** (2.0 * s) / norm


def wavenumbers(params):
    k = 2.0 * math.pi * np.fft.fftfreq(params.grid_size, d=params.cell)
    return np.meshgrid(k, k, indexing='xy')


def spectral_density(params, mean_direction=0.0):
    """Two-sided 2D density Phi(kx, ky); its integral over the plane is
    sigma**2 (before truncation to the grid)."""
    kx, ky = wavenumbers(params)
    k = np.hypot(kx, ky)
    theta = np.arctan2(ky, kx) - mean_direction
    directional = 0.5 * (spreading(theta, params.spreading_exponent)
                         + spreading(theta + math.pi,
                                     params.spreading_exponent))
    with np.errstate(divide='ignore', invalid='ignore'):
        phi = von_karman_psd(k, params.sigma, params.L) * directional / k
    phi[0, 0] = 0.0
    return phi


def synthesize_turbulence(params, mean_direction=0.0):
    """Return an array of shape (2, N, N) with u and v on the grid.

    Row index is y, column index is x. Variance is normalised so the
    resolved band carries sigma**2 per component.
    """
    n = params.grid_size
    if n < 2 or n & (n - 1):
        raise InvalidGrid(f'grid_size {n} is not a power of two')
    grid = np.zeros((2, n, n))
    if params.sigma == 0:
        return grid

    phi = spectral_density(params, mean_direction)
    dk = 2.0 * math.pi / params.extent
    resolved = float(phi.sum()) * dk ** 2
    scale = params.sigma ** 2 / resolved
    transfer = n * dk * np.sqrt(phi * scale)

    rng = np.random.default_rng(params.seed)
    for component in range(2):
        noise = rng.standard_normal((n, n))
        grid[component] = np.real(
            np.fft.ifft2(np.fft.fft2(noise) * transfer))
    logger.debug('turbulence grid %dx%d seed=%d resolved=%.3f',
                 n, n, params.seed, resolved / params.sigma ** 2)
    return grid


def radial_psd(field, cell):
    """Radially averaged empirical 2D density and the bin wavenumbers."""
    n = field.shape[0]
    dk = 2.0 * math.pi / (n * cell)
    spectrum = np.abs(np.fft.fft2(field)) ** 2 / (n ** 4 * dk ** 2)
    kx, ky = np.meshgrid(np.fft.fftfreq(n) * n, np.fft.fftfreq(n) * n,
                         indexing='xy')
    index = np.rint(np.hypot(kx, ky)).astype(int).ravel()
    totals = np.bincount(index, spectrum.ravel())
    counts = np.bincount(index)
    bins = np.arange(len(totals))
    averaged = totals / np.maximum(counts, 1)
    return bins * dk, averaged
