"""Thermal reservoir description and its time-domain memory kernels.

Everything is expressed in system-frequency units: omega0 = 1, times in
1/omega0, temperature as k_B*T/omega0, with hbar = k_B = 1. A reservoir
is a power-law spectral density with an exponential cutoff,

    J(omega) = g^2 * r^(1-s) * omega^s * exp(-omega/r),

with dimensionless coupling g, Ohmicity exponent s (s < 1 sub-Ohmic,
s = 1 Ohmic, s > 1 super-Ohmic) and cutoff ratio r = omega_c/omega0.
The thermally weighted spectrum I(omega) = J(omega) * (N(omega) + 1/2)
drives diffusion; its cosine transform nu(t) and the sine transform
mu(t) of J are the noise and dissipation kernels consumed by the
memory-coefficient integrator.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .numerics import (
    DEFAULT_ABS_TOL,
    DEFAULT_REL_TOL,
    integrate_semi_infinite,
)

__all__ = [
    "HIGH_T",
    "EXACT",
    "SpectralDensity",
    "BathContext",
    "spectral_density",
    "occupation",
    "thermal_weight",
    "spectral_distribution",
    "noise_kernel",
    "noise_kernel_quadrature",
    "dissipation_kernel",
    "dissipation_kernel_quadrature",
    "scaled_spectrum_series",
    "power_cutoff_cos_integral",
    "power_cutoff_sin_integral",
    "check_high_t_validity",
]

HIGH_T = "high_T"
EXACT = "exact"


@dataclass(frozen=True)
class SpectralDensity:
    """Reservoir coupling spectrum: coupling g, Ohmicity s, cutoff ratio r."""

    g: float
    s: float
    r: float

    def __post_init__(self):
        if not self.g > 0.0:
            raise ValueError("coupling g must be positive")
        if not self.s > 0.0:
            raise ValueError("Ohmicity exponent s must be positive")
        if not self.r > 0.0:
            raise ValueError("cutoff ratio r must be positive")


@dataclass(frozen=True)
class BathContext:
    """Reservoir temperature (k_B*T/omega0) and occupation evaluation mode."""

    temperature: float
    mode: str = HIGH_T

    def __post_init__(self):
        if not self.temperature > 0.0:
            raise ValueError("temperature must be positive")
        if self.mode not in (HIGH_T, EXACT):
            raise ValueError(f"mode must be {HIGH_T!r} or {EXACT!r}")


def check_high_t_validity(sd: SpectralDensity, ctx: BathContext) -> None:
    """Warn when the high-temperature surrogate is used out of its regime."""
    if ctx.mode == HIGH_T and ctx.temperature < 10.0 * max(1.0, sd.r):
        warnings.warn(
            f"high_T occupation used at temperature {ctx.temperature:g}, "
            f"below 10*max(1, r) = {10.0 * max(1.0, sd.r):g}; results may be "
            "inaccurate",
            stacklevel=2,
        )


def spectral_density(sd: SpectralDensity, omega):
    """J(omega) = g^2 * r^(1-s) * omega^s * exp(-omega/r), for omega >= 0."""
    w = np.asarray(omega, dtype=float)
    if np.any(w < 0.0):
        raise ValueError("spectral density is defined for omega >= 0")
    out = sd.g**2 * sd.r ** (1.0 - sd.s) * w**sd.s * np.exp(-w / sd.r)
    return out if w.ndim else float(out)


def occupation(ctx: BathContext, omega):
    """Mean thermal excitation number N(omega), for omega > 0.

    Exact mode evaluates the Bose-Einstein value 1/(exp(omega/T) - 1);
    high_T mode returns the surrogate with N + 1/2 = T/omega.
    """
    w = np.asarray(omega, dtype=float)
    if np.any(w <= 0.0):
        raise ValueError("occupation is defined for omega > 0")
    if ctx.mode == HIGH_T:
        out = ctx.temperature / w - 0.5
    else:
        out = 1.0 / np.expm1(w / ctx.temperature)
    return out if w.ndim else float(out)


def thermal_weight(ctx: BathContext, omega):
    """N(omega) + 1/2 in the context's mode (T/omega in high_T mode)."""
    w = np.asarray(omega, dtype=float)
    if np.any(w <= 0.0):
        raise ValueError("thermal weight is defined for omega > 0")
    if ctx.mode == HIGH_T:
        out = ctx.temperature / w
    else:
        out = 1.0 / np.expm1(w / ctx.temperature) + 0.5
    return out if w.ndim else float(out)


def spectral_distribution(sd: SpectralDensity, ctx: BathContext, omega):
    """Thermally weighted spectrum I(omega) = J(omega) * (N(omega) + 1/2)."""
    return spectral_density(sd, omega) * thermal_weight(ctx, omega)


def power_cutoff_cos_integral(p: float, cutoff: float, t):
    """Closed form of the cosine moment of a cut-off power law.

    Evaluates int_0^inf w^p * exp(-w/cutoff) * cos(w*t) dw for p > -1 as

        Gamma(p+1) * cutoff^(p+1) * cos((p+1)*arctan(cutoff*t))
            / (1 + (cutoff*t)^2)^((p+1)/2).

    Vectorized over t.
    """
    if not p > -1.0:
        raise ValueError("power must exceed -1 for an integrable moment")
    x = cutoff * np.asarray(t, dtype=float)
    q = p + 1.0
    out = (
        math.gamma(q)
        * cutoff**q
        * np.cos(q * np.arctan(x))
        / (1.0 + x * x) ** (0.5 * q)
    )
    return out if np.ndim(t) else float(out)


def power_cutoff_sin_integral(p: float, cutoff: float, t):
    """Closed form of int_0^inf w^p * exp(-w/cutoff) * sin(w*t) dw, p > -1."""
    if not p > -1.0:
        raise ValueError("power must exceed -1 for an integrable moment")
    x = cutoff * np.asarray(t, dtype=float)
    q = p + 1.0
    out = (
        math.gamma(q)
        * cutoff**q
        * np.sin(q * np.arctan(x))
        / (1.0 + x * x) ** (0.5 * q)
    )
    return out if np.ndim(t) else float(out)


def noise_kernel(
    sd: SpectralDensity,
    ctx: BathContext,
    t: float,
    rel_tol: float = DEFAULT_REL_TOL,
    abs_tol: float = DEFAULT_ABS_TOL,
) -> float:
    """Noise kernel nu(t): the cosine transform of I(omega).

    In high_T mode the transform has the closed form

        nu(t) = g^2 * T * r * Gamma(s) * cos(s*arctan(r*t))
                    / (1 + (r*t)^2)^(s/2);

    exact mode integrates I(omega)*cos(omega*t) adaptively (with the
    omega = u^2 substitution for s <= 1, which removes the endpoint
    singularity of the thermally weighted integrand).
    """
    if t < 0.0:
        raise ValueError("kernels are defined for t >= 0")
    if ctx.mode == HIGH_T:
        return sd.g**2 * ctx.temperature * sd.r ** (1.0 - sd.s) * (
            power_cutoff_cos_integral(sd.s - 1.0, sd.r, t)
        )
    return noise_kernel_quadrature(sd, ctx, t, rel_tol=rel_tol, abs_tol=abs_tol)


def noise_kernel_quadrature(
    sd: SpectralDensity,
    ctx: BathContext,
    t: float,
    rel_tol: float = DEFAULT_REL_TOL,
    abs_tol: float = DEFAULT_ABS_TOL,
) -> float:
    """nu(t) by adaptive quadrature in the context's mode (closed-form oracle)."""
    if t < 0.0:
        raise ValueError("kernels are defined for t >= 0")
    if sd.s <= 1.0:

        def integrand(u):
            w = u * u
            return 2.0 * u * spectral_distribution(sd, ctx, w) * np.cos(w * t)

        scale = math.sqrt(sd.r)
    else:

        def integrand(w):
            return spectral_distribution(sd, ctx, w) * np.cos(w * t)

        scale = sd.r
    return integrate_semi_infinite(
        integrand, scale, rel_tol=rel_tol, abs_tol=abs_tol
    ).value


def dissipation_kernel(sd: SpectralDensity, t: float) -> float:
    """Dissipation kernel mu(t): the sine transform of J(omega).

    Temperature does not enter; the closed form

        mu(t) = g^2 * r^2 * Gamma(s+1) * sin((s+1)*arctan(r*t))
                    / (1 + (r*t)^2)^((s+1)/2)

    is valid in both occupation modes.
    """
    if t < 0.0:
        raise ValueError("kernels are defined for t >= 0")
    return sd.g**2 * sd.r ** (1.0 - sd.s) * power_cutoff_sin_integral(sd.s, sd.r, t)


def dissipation_kernel_quadrature(
    sd: SpectralDensity,
    t: float,
    rel_tol: float = DEFAULT_REL_TOL,
    abs_tol: float = DEFAULT_ABS_TOL,
) -> float:
    """mu(t) by adaptive quadrature (test oracle for the closed form)."""
    if t < 0.0:
        raise ValueError("kernels are defined for t >= 0")
    if sd.s <= 1.0:

        def integrand(u):
            w = u * u
            return 2.0 * u * spectral_density(sd, w) * np.sin(w * t)

        scale = math.sqrt(sd.r)
    else:

        def integrand(w):
            return spectral_density(sd, w) * np.sin(w * t)

        scale = sd.r
    return integrate_semi_infinite(
        integrand, scale, rel_tol=rel_tol, abs_tol=abs_tol
    ).value


def scaled_spectrum_series(sd: SpectralDensity, ctx: BathContext, omega_bar):
    """Coupling- and temperature-scaled spectrum I/(g^2*T) on a frequency grid.

    Only meaningful in high_T mode, where the scaled form reduces to
    r^(1-s) * omega^(s-1) * exp(-omega/r). Returns (omega_bar, i_bar).
    """
    if ctx.mode != HIGH_T:
        raise ValueError("scaled spectrum is defined in high_T mode")
    w = np.asarray(omega_bar, dtype=float)
    if np.any(w <= 0.0):
        raise ValueError("scaled spectrum requires omega > 0")
    i_bar = sd.r ** (1.0 - sd.s) * w ** (sd.s - 1.0) * np.exp(-w / sd.r)
    return w, i_bar
