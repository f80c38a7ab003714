"""Quadrature, fixed-step ODE paths and grid-level crossing detection.

Physics-free numerical engines: an adaptive panel integrator built on an
embedded Gauss-Kronrod pair, a truncating wrapper for semi-infinite
integrals of exponentially decaying integrands, a classical fixed-step
RK4 path integrator, and linear-interpolation threshold crossing search
on sampled series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

__all__ = [
    "QuadratureResult",
    "TimeGrid",
    "Crossing",
    "RISING",
    "FALLING",
    "QuadratureError",
    "OdeError",
    "integrate_adaptive",
    "integrate_semi_infinite",
    "ode_path",
    "find_crossings",
]

DEFAULT_REL_TOL = 1e-10
DEFAULT_ABS_TOL = 1e-14
MAX_SUBDIVISION_LEVELS = 60
_MAX_PANELS = 200_000

# 15-point Kronrod extension of 7-point Gauss-Legendre on [-1, 1].
# The odd-index nodes are the embedded Gauss nodes.
_XK_HALF = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
_WK_HALF = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
_WG_HALF = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)

_NODES = np.concatenate([np.negative(_XK_HALF[:-1]), _XK_HALF[::-1]])
_WEIGHTS_K = np.concatenate([_WK_HALF[:-1], _WK_HALF[::-1]])
_WEIGHTS_G = np.concatenate([_WG_HALF[:-1], _WG_HALF[::-1]])

RISING = "rising"
FALLING = "falling"


class QuadratureError(RuntimeError):
    """Raised when adaptive integration cannot certify its tolerance.

    For non-convergence the best available estimate is attached as
    ``best`` (a :class:`QuadratureResult`); for a non-finite integrand
    value the offending abscissa is named in the message.
    """

    def __init__(self, message: str, best: "QuadratureResult | None" = None):
        super().__init__(message)
        self.best = best


class OdeError(RuntimeError):
    """Raised when an ODE right-hand side turns non-finite."""


@dataclass(frozen=True)
class QuadratureResult:
    """Integral value with an absolute error estimate and evaluation count."""

    value: float
    error_estimate: float
    evaluations: int

    def __post_init__(self):
        if not self.error_estimate >= 0.0:
            raise ValueError("error_estimate must be >= 0")
        if self.evaluations < 1:
            raise ValueError("evaluations must be >= 1")


@dataclass(frozen=True)
class TimeGrid:
    """Uniform time grid starting at t = 0 (times in units of 1/omega0)."""

    t_end: float
    step: float
    t_start: float = 0.0

    def __post_init__(self):
        if self.t_start != 0.0:
            raise ValueError("grids start at t = 0")
        if not self.step > 0.0:
            raise ValueError("step must be positive")
        if not math.isfinite(self.t_end) or self.t_end <= 0.0:
            raise ValueError("t_end must be positive and finite")
        if self.points < 2:
            raise ValueError("grid must contain at least 2 points")

    @property
    def points(self) -> int:
        return int(round((self.t_end - self.t_start) / self.step)) + 1

    @property
    def times(self) -> np.ndarray:
        return self.t_start + self.step * np.arange(self.points)

    @classmethod
    def for_periods(cls, periods: float, steps_per_period: int) -> "TimeGrid":
        """Grid spanning `periods` system periods (period 2*pi at omega0 = 1)."""
        step = (2.0 * math.pi) / steps_per_period
        return cls(t_end=periods * 2.0 * math.pi, step=step)

    def halved(self) -> "TimeGrid":
        """Same span with half the step (for convergence studies)."""
        return TimeGrid(t_end=self.t_end, step=0.5 * self.step)


class Crossing(NamedTuple):
    time: float
    direction: str


def _eval_panels(f, lows: np.ndarray, highs: np.ndarray):
    """Evaluate the embedded pair on each panel; returns (kronrod, err, nevals)."""
    half = 0.5 * (highs - lows)
    mid = 0.5 * (highs + lows)
    x = mid[:, None] + half[:, None] * _NODES[None, :]
    fx = np.asarray(f(x.ravel()), dtype=float).reshape(x.shape)
    if not np.all(np.isfinite(fx)):
        bad = int(np.flatnonzero(~np.isfinite(fx.ravel()))[0])
        raise QuadratureError(
            f"integrand returned a non-finite value at x = {x.ravel()[bad]!r}"
        )
    kron = half * (fx * _WEIGHTS_K).sum(axis=1)
    gauss = half * (fx[:, 1::2] * _WEIGHTS_G).sum(axis=1)
    return kron, np.abs(kron - gauss), x.size


def integrate_adaptive(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    rel_tol: float = DEFAULT_REL_TOL,
    abs_tol: float = DEFAULT_ABS_TOL,
    max_levels: int = MAX_SUBDIVISION_LEVELS,
) -> QuadratureResult:
    """Integrate f over [a, b] by adaptive bisection of Gauss-Kronrod panels.

    The integrand is evaluated in batches: ``f`` receives an ndarray of
    abscissae and must return values of the same shape. Panels whose
    embedded-pair discrepancy exceeds their share of the tolerance are
    bisected, down to at most ``max_levels`` levels.

    Returns a :class:`QuadratureResult` whose (conservative) error
    estimate satisfies ``error <= max(abs_tol, rel_tol * |value|)``.

    Raises
    ------
    QuadratureError
        If the tolerance cannot be met within ``max_levels`` subdivision
        levels (the best estimate is attached), or if ``f`` returns a
        non-finite value (the abscissa is reported).
    """
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ValueError("integration bounds must be finite")
    if not a < b:
        raise ValueError("integration requires a < b")

    lows = np.array([a], dtype=float)
    highs = np.array([b], dtype=float)
    depths = np.array([0], dtype=int)
    values, errors, evaluations = _eval_panels(f, lows, highs)

    while True:
        total = float(values.sum())
        total_err = float(errors.sum())
        tol = max(abs_tol, rel_tol * abs(total))
        if total_err <= tol:
            return QuadratureResult(total, total_err, evaluations)

        over = errors > tol / (2.0 * len(values))
        split = over & (depths < max_levels)
        if not split.any() or len(values) > _MAX_PANELS:
            best = QuadratureResult(total, total_err, evaluations)
            raise QuadratureError(
                f"failed to reach tolerance {tol:.3e} after {max_levels} "
                f"subdivision levels (best estimate {total!r} +- {total_err:.3e})",
                best=best,
            )

        mids = 0.5 * (lows[split] + highs[split])
        new_lows = np.concatenate([lows[split], mids])
        new_highs = np.concatenate([mids, highs[split]])
        new_depths = np.tile(depths[split] + 1, 2)
        new_values, new_errors, n = _eval_panels(f, new_lows, new_highs)
        evaluations += n

        keep = ~split
        lows = np.concatenate([lows[keep], new_lows])
        highs = np.concatenate([highs[keep], new_highs])
        depths = np.concatenate([depths[keep], new_depths])
        values = np.concatenate([values[keep], new_values])
        errors = np.concatenate([errors[keep], new_errors])


def integrate_semi_infinite(
    f: Callable[[np.ndarray], np.ndarray],
    scale: float,
    rel_tol: float = DEFAULT_REL_TOL,
    abs_tol: float = DEFAULT_ABS_TOL,
) -> QuadratureResult:
    """Integrate f over [0, inf) assuming at-least-exponential decay.

    ``scale`` is the decay scale of ``f``; the integral is truncated at
    ``scale * (ln(1/rel_tol) + 20)``, which leaves a truncation error
    below ``rel_tol`` relative to the integral of ``|f|``, and the finite
    part is delegated to :func:`integrate_adaptive`.
    """
    if not scale > 0.0:
        raise ValueError("decay scale must be positive")
    b = scale * math.log(1.0 / rel_tol) + 20.0 * scale
    return integrate_adaptive(f, 0.0, b, rel_tol=rel_tol, abs_tol=abs_tol)


def ode_path(
    rhs: Callable[[float, np.ndarray], np.ndarray],
    y0,
    grid: TimeGrid,
) -> np.ndarray:
    """Integrate dy/dt = rhs(t, y) over the grid with classical RK4.

    Returns an array of shape (grid.points, len(y0)) whose first row is
    y0; the global error is O(step**4). A non-finite right-hand side
    aborts with the offending time point.
    """
    times = grid.times
    y = np.atleast_1d(np.asarray(y0, dtype=float)).copy()
    path = np.empty((times.size, y.size))
    path[0] = y

    def _eval(t: float, state: np.ndarray) -> np.ndarray:
        k = np.atleast_1d(np.asarray(rhs(t, state), dtype=float))
        if not np.all(np.isfinite(k)):
            raise OdeError(f"right-hand side is non-finite at t = {t!r}")
        return k

    for i in range(times.size - 1):
        t0 = times[i]
        t1 = times[i + 1]
        h = t1 - t0
        tm = t0 + 0.5 * h
        k1 = _eval(t0, y)
        k2 = _eval(tm, y + (0.5 * h) * k1)
        k3 = _eval(tm, y + (0.5 * h) * k2)
        k4 = _eval(t1, y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)
        path[i + 1] = y
    return path


def find_crossings(times, values, level: float) -> list[Crossing]:
    """Locate threshold crossings of a sampled series.

    Each sign change of ``values - level`` between adjacent samples
    yields one crossing, placed by linear interpolation between the
    bracketing samples. Samples exactly at the level count once, with
    the crossing placed on the sample and the direction read from the
    nearest off-level neighbours; touches without a sign change are
    ignored. Returned times are strictly increasing.
    """
    t = np.asarray(times, dtype=float)
    v = np.asarray(values, dtype=float)
    if t.size != v.size:
        raise ValueError("times and values must have equal length")
    if t.size < 2:
        raise ValueError("series must have at least 2 points")

    d = v - level
    sign = np.sign(d)
    anchors = np.flatnonzero(sign != 0)
    crossings: list[Crossing] = []
    for i, j in zip(anchors[:-1], anchors[1:]):
        if sign[i] * sign[j] > 0:
            continue
        direction = RISING if sign[i] < 0 else FALLING
        if j == i + 1:
            # interpolation is exact for a linear segment
            tc = t[i] + (t[j] - t[i]) * d[i] / (d[i] - d[j])
        else:
            # run of exact hits between i and j counts as one crossing
            tc = t[i + 1]
        crossings.append(Crossing(float(tc), direction))
    return crossings
