"""Gaussian-state observables driven by a coefficient path.

An initially squeezed coherent state stays Gaussian under the secular
evolution, so two memory integrals determine everything measurable. The
co-rotating quadrature variances are

    var_x(t) = delta_big_gamma(t) + exp(-big_gamma(t)) * sigma2 / 2
    var_y(t) = delta_big_gamma(t) + exp(-big_gamma(t)) / (2 * sigma2),

with sigma2 the initial x-variance ratio (sigma2 = 1 is the coherent
state). The x quadrature is squeezed while var_x < 1/2. The quantum
characteristic function and the Wigner function are exposed for
phase-space inspection; both reduce to Gaussians at all times.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .coefficients import CoefficientPath
from .numerics import FALLING, RISING, Crossing, TimeGrid, find_crossings

__all__ = [
    "SQUEEZING_LEVEL",
    "SqueezedState",
    "VarianceSeries",
    "SqueezingSummary",
    "variance_series",
    "squeezing_summary",
    "characteristic_function",
    "initial_characteristic_function",
    "wigner",
    "wigner_grid",
]

SQUEEZING_LEVEL = 0.5

# plateau guard for counting local extrema
_EXTREMUM_GUARD = 1e-12


@dataclass(frozen=True)
class SqueezedState:
    """Initial squeezed coherent state with squeezing along x.

    sigma2 is the initial x-variance ratio (var_x(0) = sigma2/2); values
    below 1 squeeze x, values above 1 squeeze y. The squeezing angle is
    fixed to zero; alpha0 is the complex displacement amplitude.
    """

    sigma2: float
    alpha0: complex = 0j
    phi: float = 0.0

    def __post_init__(self):
        if not self.sigma2 > 0.0:
            raise ValueError("sigma2 must be positive")
        if self.phi != 0.0:
            raise ValueError("nonzero squeezing angle is not supported")

    @property
    def inv_sigma2(self) -> float:
        return 1.0 / self.sigma2

    @property
    def squeeze_magnitude(self) -> float:
        """Squeezing magnitude: sigma2 = exp(-2 * magnitude)."""
        return -0.5 * math.log(self.sigma2)


@dataclass(frozen=True)
class VarianceSeries:
    grid: TimeGrid
    var_x: np.ndarray
    var_y: np.ndarray
    uncertainty: np.ndarray
    squeezed: np.ndarray
    crossings: list[Crossing] = field(default_factory=list)


@dataclass(frozen=True)
class SqueezingSummary:
    initially_squeezed: bool
    final_loss_time: float | None
    oscillation_count: int
    num_squeezing_intervals: int


def _variance_arrays(path: CoefficientPath, state: SqueezedState):
    half_env = 0.5 * np.exp(-path.big_gamma)
    var_x = path.delta_big_gamma + half_env * state.sigma2
    var_y = path.delta_big_gamma + half_env * state.inv_sigma2
    return var_x, var_y


def variance_series(path: CoefficientPath, state: SqueezedState) -> VarianceSeries:
    """Quadrature variances, uncertainty product and squeezing flags.

    Variances are co-rotating-frame quantities: the free oscillation at
    the system frequency is transformed away, so only reservoir-induced
    evolution appears. Crossings of the squeezing border var_x = 1/2 are
    located by linear interpolation on the grid.
    """
    var_x, var_y = _variance_arrays(path, state)
    times = path.grid.times
    return VarianceSeries(
        grid=path.grid,
        var_x=var_x,
        var_y=var_y,
        uncertainty=var_x * var_y,
        squeezed=var_x < SQUEEZING_LEVEL,
        crossings=find_crossings(times, var_x, SQUEEZING_LEVEL),
    )


def squeezing_summary(vs: VarianceSeries) -> SqueezingSummary:
    """Condense a variance series into squeezing lifecycle facts.

    final_loss_time is the last rising crossing of the border after
    which the state stays non-squeezed to the end of the grid (None when
    still squeezed there); oscillation_count counts strict interior
    extrema of var_x, ignoring sub-1e-12 plateau noise.
    """
    v = vs.var_x
    initially = bool(vs.squeezed[0])

    final_loss = None
    if v[-1] >= SQUEEZING_LEVEL and vs.crossings:
        last = vs.crossings[-1]
        if last.direction == RISING:
            final_loss = last.time

    left = v[1:-1] - v[:-2]
    right = v[1:-1] - v[2:]
    maxima = (left > _EXTREMUM_GUARD) & (right > _EXTREMUM_GUARD)
    minima = (left < -_EXTREMUM_GUARD) & (right < -_EXTREMUM_GUARD)
    oscillations = int(np.count_nonzero(maxima | minima))

    falling = sum(1 for c in vs.crossings if c.direction == FALLING)
    intervals = falling + (1 if initially else 0)

    return SqueezingSummary(
        initially_squeezed=initially,
        final_loss_time=final_loss,
        oscillation_count=oscillations,
        num_squeezing_intervals=intervals,
    )


def _grid_index(grid: TimeGrid, t: float) -> int:
    i = int(round((t - grid.t_start) / grid.step))
    times = grid.times
    if 0 <= i < times.size and abs(times[i] - t) <= 1e-9 * max(1.0, abs(t)):
        return i
    raise ValueError(
        f"t = {t!r} is not on the path grid (interpolation is not supported)"
    )


def initial_characteristic_function(state: SqueezedState, xi: complex) -> complex:
    """Characteristic function of the initial squeezed coherent state.

    chi0(xi) = exp(-|xi*cosh(m) - conj(xi)*sinh(m)|^2 / 2
                   + i*(conj(xi)*conj(alpha0) + xi*alpha0)),

    with m the squeezing magnitude; along the real axis this reduces to
    exp(-xi^2 * sigma2 / 2) for the undisplaced state.
    """
    m = state.squeeze_magnitude
    stretched = xi * math.cosh(m) - xi.conjugate() * math.sinh(m)
    phase = 1j * (xi.conjugate() * state.alpha0.conjugate() + xi * state.alpha0)
    return cmath.exp(-0.5 * abs(stretched) ** 2 + phase)


def characteristic_function(
    path: CoefficientPath,
    state: SqueezedState,
    t: float,
    xi: complex,
) -> complex:
    """Quantum characteristic function at a grid time.

    The evolution multiplies the initial characteristic function by the
    accumulated-diffusion Gaussian and shrinks and rotates its argument:

        chi_t(xi) = exp(-delta_big_gamma(t) * |xi|^2)
                    * chi0(exp(-big_gamma(t)/2) * exp(-i*t) * xi).

    The argument rotation keeps the free oscillation visible here even
    though the variance series is reported in the co-rotating frame.
    """
    i = _grid_index(path.grid, t)
    xi = complex(xi)
    scaled = math.exp(-0.5 * path.big_gamma[i]) * cmath.exp(-1j * t) * xi
    damping = math.exp(-path.delta_big_gamma[i] * (xi.real**2 + xi.imag**2))
    return damping * initial_characteristic_function(state, scaled)


def wigner(
    path: CoefficientPath,
    state: SqueezedState,
    t: float,
    alpha: complex,
) -> float:
    """Wigner function of the undisplaced squeezed state at a grid time.

    W_t(alpha) = exp(-ax^2/(2*var_x) - ay^2/(2*var_y))
                 / (2*pi*sqrt(var_x*var_y)),

    normalized to unit integral over the phase plane, with second
    moments equal to the quadrature variances (co-rotating frame).
    """
    if state.alpha0 != 0:
        raise ValueError("Wigner evaluation supports only alpha0 = 0")
    i = _grid_index(path.grid, t)
    var_x, var_y = _variance_arrays(path, state)
    vx = var_x[i]
    vy = var_y[i]
    a = complex(alpha)
    norm = 1.0 / (2.0 * math.pi * math.sqrt(vx * vy))
    return norm * math.exp(-a.real**2 / (2.0 * vx) - a.imag**2 / (2.0 * vy))


def wigner_grid(
    path: CoefficientPath,
    state: SqueezedState,
    t: float,
    alpha_x: np.ndarray,
    alpha_y: np.ndarray,
) -> np.ndarray:
    """Wigner values on a rectangular grid; W[i, j] pairs alpha_x[i], alpha_y[j]."""
    if state.alpha0 != 0:
        raise ValueError("Wigner evaluation supports only alpha0 = 0")
    i = _grid_index(path.grid, t)
    var_x, var_y = _variance_arrays(path, state)
    vx = var_x[i]
    vy = var_y[i]
    ax = np.asarray(alpha_x, dtype=float)[:, None]
    ay = np.asarray(alpha_y, dtype=float)[None, :]
    norm = 1.0 / (2.0 * math.pi * math.sqrt(vx * vy))
    return norm * np.exp(-(ax**2) / (2.0 * vx) - (ay**2) / (2.0 * vy))
