"""Time-dependent diffusion/dissipation coefficients and their memory integrals.

The secular weak-coupling master equation for the damped oscillator is
governed by four memory functions of time: the diffusion coefficient
delta(t) and dissipation coefficient gamma(t), their accumulated damping
exponent big_gamma(t) = 2 * int_0^t gamma, and the exponentially
weighted accumulated diffusion delta_big_gamma(t). All four follow from
the bath kernels through one coupled initial-value problem,

    d(delta)/dt           = 2 * cos(t) * nu(t)
    d(gamma)/dt           = sin(t) * mu(t)
    d(big_gamma)/dt       = 2 * gamma
    d(delta_big_gamma)/dt = delta - 2 * gamma * delta_big_gamma,

integrated from the all-zero state (omega0 = 1 units). Replacing
delta(t), gamma(t) by their long-time constants gives the Markovian
baseline, for which the memory integrals have closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import bath
from .numerics import TimeGrid, ode_path

__all__ = [
    "CoefficientPath",
    "MarkovianCoefficients",
    "coefficient_path",
    "markovian_coefficients",
    "markovian_path",
]


@dataclass(frozen=True)
class CoefficientPath:
    """The four memory functions sampled on a time grid."""

    grid: TimeGrid
    delta: np.ndarray
    gamma: np.ndarray
    big_gamma: np.ndarray
    delta_big_gamma: np.ndarray


@dataclass(frozen=True)
class MarkovianCoefficients:
    """Long-time limits of the diffusion and dissipation coefficients."""

    delta_m: float
    gamma_m: float

    def __post_init__(self):
        if self.delta_m < 0.0 or self.gamma_m < 0.0:
            raise ValueError("Markovian coefficients must be non-negative")

    @property
    def stationary_variance(self) -> float:
        """delta_m / (2 * gamma_m): the stationary quadrature variance."""
        if self.gamma_m == 0.0:
            return math.inf
        return self.delta_m / (2.0 * self.gamma_m)


def coefficient_path(
    sd: bath.SpectralDensity,
    ctx: bath.BathContext,
    grid: TimeGrid,
) -> CoefficientPath:
    """Integrate the four memory functions over the grid with RK4.

    Kernel values are memoized per time point; on a uniform grid the RK4
    stages revisit each half-step time, so each kernel is evaluated once
    per distinct time (this matters in exact mode, where every noise
    kernel value costs an adaptive quadrature).
    """
    bath.check_high_t_validity(sd, ctx)
    nu_cache: dict[float, float] = {}
    mu_cache: dict[float, float] = {}

    def nu(t: float) -> float:
        v = nu_cache.get(t)
        if v is None:
            v = bath.noise_kernel(sd, ctx, t)
            nu_cache[t] = v
        return v

    def mu(t: float) -> float:
        v = mu_cache.get(t)
        if v is None:
            v = bath.dissipation_kernel(sd, t)
            mu_cache[t] = v
        return v

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        return np.array(
            [
                2.0 * math.cos(t) * nu(t),
                math.sin(t) * mu(t),
                2.0 * y[1],
                y[0] - 2.0 * y[1] * y[3],
            ]
        )

    path = ode_path(rhs, np.zeros(4), grid)
    return CoefficientPath(grid, path[:, 0], path[:, 1], path[:, 2], path[:, 3])


def markovian_coefficients(
    sd: bath.SpectralDensity,
    ctx: bath.BathContext,
) -> MarkovianCoefficients:
    """Long-time coefficient limits: delta_m = pi*I(1), gamma_m = pi*J(1)/2.

    These are the resonant-frequency limits of the memory integrals, and
    give the physical stationary ratio delta_m/(2*gamma_m) = N(1) + 1/2.
    """
    delta_m = math.pi * bath.spectral_distribution(sd, ctx, 1.0)
    gamma_m = 0.5 * math.pi * bath.spectral_density(sd, 1.0)
    return MarkovianCoefficients(delta_m=delta_m, gamma_m=gamma_m)


def markovian_path(mc: MarkovianCoefficients, grid: TimeGrid) -> CoefficientPath:
    """Closed-form memory integrals for constant coefficients.

    big_gamma(t) = 2*gamma_m*t and delta_big_gamma(t) relaxes to the
    stationary variance as (delta_m/(2*gamma_m)) * (1 - exp(-2*gamma_m*t));
    for gamma_m = 0 the degenerate limit delta_m * t applies. The delta
    and gamma columns hold the constant coefficient values.
    """
    t = grid.times
    big_gamma = 2.0 * mc.gamma_m * t
    if mc.gamma_m == 0.0:
        delta_big_gamma = mc.delta_m * t
    else:
        ratio = mc.delta_m / (2.0 * mc.gamma_m)
        delta_big_gamma = ratio * -np.expm1(-2.0 * mc.gamma_m * t)
    return CoefficientPath(
        grid=grid,
        delta=np.full(t.size, mc.delta_m),
        gamma=np.full(t.size, mc.gamma_m),
        big_gamma=big_gamma,
        delta_big_gamma=delta_big_gamma,
    )
