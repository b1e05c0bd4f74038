"""Velocity limits, growth and oscillation conditions, exponent regression.

The central object is the geometric increment schedule.  Estimates walk
the schedule toward zero, and a windowed Cauchy rule over the deepest
entries decides whether the limit exists.  Nothing here extrapolates:
a reported value is always a computed variation at the smallest usable
increment, never a model fit.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Tuple

import numpy as np

from . import diffops
from .diffops import Direction, refine_oscillation, tail_spread, variation_values
from .errors import LocallyConstantError, PreconditionError, ScheduleUnderflowError

__all__ = [
    "DEFAULT_TOL",
    "DIVERGENCE_CUTOFF",
    "EpsilonSchedule",
    "DEFAULT_SCHEDULE",
    "LimitStatus",
    "LimitEstimate",
    "classify_limit",
    "VelocityReport",
    "estimate_velocity",
    "ConditionsReport",
    "check_conditions",
    "HolderEstimate",
    "estimate_holder_exponent",
    "variation_bound_constants",
    "taylor_residual",
]

DEFAULT_TOL = 1e-6

# A tail entry beyond this magnitude classifies the sequence as divergent.
DIVERGENCE_CUTOFF = 1e12

# Increments below FLOOR_FACTOR * eps_mach * max(1, |x|) are dominated by
# cancellation noise in f(x+eps) - f(x) and are dropped.
FLOOR_FACTOR = 1e3

# A schedule must keep at least this many increments to say anything.
MIN_USABLE = 4

# Consecutive growth-ratio cutoff for the bounded-oscillation check.
C1_RATIO_CUTOFF = 10.0

_EPS_MACH = np.finfo(float).eps


@dataclass(frozen=True)
class EpsilonSchedule:
    """Geometric ladder of probe increments eps0 * ratio**k, k < count."""

    eps0: float = 2.0 ** -4
    ratio: float = 0.5
    count: int = 40

    def __post_init__(self) -> None:
        if not (np.isfinite(self.eps0) and self.eps0 > 0.0):
            raise ValueError(f"eps0 must be positive and finite, got {self.eps0}")
        if not 0.0 < self.ratio < 1.0:
            raise ValueError(f"ratio must lie in (0, 1), got {self.ratio}")
        if self.count < MIN_USABLE:
            raise ValueError(f"count must be at least {MIN_USABLE}, got {self.count}")

    def raw(self) -> np.ndarray:
        """All increments, before any flooring."""
        return self.eps0 * self.ratio ** np.arange(self.count, dtype=float)

    def increments(self, x: float = 0.0, extra_floor: float = 0.0) -> np.ndarray:
        """Increments usable at x, largest first.

        Entries at or below the round-off floor for x (or below
        extra_floor, whichever is larger) are dropped.  Raises
        ScheduleUnderflowError when fewer than 4 survive.
        """
        eps = self.raw()
        floor = max(FLOOR_FACTOR * _EPS_MACH * max(1.0, abs(x)), extra_floor)
        kept = eps[eps > floor]
        if kept.size < MIN_USABLE:
            raise ScheduleUnderflowError(
                f"only {kept.size} increments stay above the floor {floor:g} at x={x:g}")
        return kept


DEFAULT_SCHEDULE = EpsilonSchedule()


class LimitStatus(enum.Enum):
    CONVERGED = "converged"
    DIVERGED = "diverged"
    OSCILLATORY = "oscillatory"


@dataclass(frozen=True)
class LimitEstimate:
    """Outcome of the windowed Cauchy classification.

    value is the sequence entry at the smallest increment; it is only
    meaningful when status is CONVERGED and NaN when DIVERGED.  residual
    is the max-min spread over the classification window.
    """

    value: float
    status: LimitStatus
    residual: float
    tail_values: Tuple[float, ...]


def classify_limit(values, tol: float,
                   divergence_cutoff: float = DIVERGENCE_CUTOFF) -> LimitEstimate:
    """Classify a sequence indexed by shrinking increments.

    The window is the last max(4, N//4) entries.  Any non-finite entry,
    or a window entry past divergence_cutoff in magnitude, reports
    DIVERGED.  Otherwise the window spread is compared with tol: within
    tol (ties included) is CONVERGED, else OSCILLATORY.
    """
    values = np.asarray(values, dtype=float)
    if values.size < MIN_USABLE:
        raise ValueError(f"need at least {MIN_USABLE} values, got {values.size}")
    if not np.isfinite(tol) or tol < 0.0:
        raise ValueError(f"tol must be nonnegative and finite, got {tol}")
    m = max(4, values.size // 4)
    window = values[-m:]
    tail = tuple(float(v) for v in window)
    bad = ~np.isfinite(values)
    if bad.any() or np.any(np.abs(window) > divergence_cutoff):
        return LimitEstimate(math.nan, LimitStatus.DIVERGED, math.nan, tail)
    residual = float(np.max(window) - np.min(window))
    status = LimitStatus.CONVERGED if residual <= tol else LimitStatus.OSCILLATORY
    return LimitEstimate(float(window[-1]), status, residual, tail)


@dataclass(frozen=True)
class VelocityReport:
    """One-sided velocity estimate with the two side conditions.

    c1_constant is the smallest C with osc <= C * eps**beta over the
    schedule; c2_oscillation is the tail spread of the variation itself.
    """

    x: float
    beta: float
    direction: Direction
    limit: LimitEstimate
    c1_constant: float
    c2_oscillation: float


def _oscillations(f, x: float, direction: Direction, eps: np.ndarray,
                  c1_samples: Optional[int]) -> np.ndarray:
    """Oscillation over each probe window.

    c1_samples None runs the adaptive doubling ladder per increment;
    an integer runs one fixed-resolution vectorized pass, which grid
    scans rely on to stay fast.
    """
    if c1_samples is None:
        return np.array([refine_oscillation(f, x, float(e), direction).value
                         for e in eps])
    n = int(c1_samples)
    if n < 2:
        raise ValueError("c1_samples must be at least 2")
    offs = np.arange(n, dtype=float) / (n - 1)
    if direction is Direction.FORWARD:
        t = x + eps[:, None] * offs[None, :]
    else:
        t = x - eps[:, None] * offs[None, :]
    v = np.asarray(f(t), dtype=float)
    return np.max(v, axis=1) - np.min(v, axis=1)


def estimate_velocity(f, x: float, beta: float, direction: Direction,
                      schedule: Optional[EpsilonSchedule] = None,
                      tol: float = DEFAULT_TOL, *,
                      c1_samples: Optional[int] = None,
                      divergence_cutoff: float = DIVERGENCE_CUTOFF) -> VelocityReport:
    """Estimate the one-sided fractional velocity of order beta at x.

    Parameters
    ----------
    f : callable
        Scalar or vectorized evaluator; a domain attribute is honored.
    x : float
        Base point.
    beta : float
        Order in (0, 1].  At beta=1 this is a one-sided derivative probe;
        note the cancellation noise eps_mach*|f|/eps makes very deep
        schedules useless there.
    direction : Direction
        Side to probe.
    schedule : EpsilonSchedule, optional
        Increment ladder; the module default descends from 2**-4 by
        halving, 40 steps.
    tol : float
        Cauchy window tolerance.  Match it to the expected tail spread;
        slowly decaying variations (small beta gap) need a looser value.
    c1_samples : int, optional
        Fixed oscillation resolution; None selects adaptive refinement.

    Returns
    -------
    VelocityReport
    """
    diffops._check_beta(beta)
    schedule = schedule or DEFAULT_SCHEDULE
    eps = schedule.increments(x)
    vals = variation_values(f, x, beta, direction, eps)
    limit = classify_limit(vals, tol, divergence_cutoff)
    osc = _oscillations(f, x, direction, eps, c1_samples)
    with np.errstate(divide="ignore", invalid="ignore"):
        growth = osc / eps ** beta
    c1 = float(np.max(growth)) if np.all(np.isfinite(growth)) else math.inf
    c2 = tail_spread(vals)
    return VelocityReport(float(x), float(beta), direction, limit, c1, c2)


class ConditionsReport(NamedTuple):
    c1_holds: bool
    c1_constant: float
    c2_holds: bool
    c2_value: float


def check_conditions(f, x: float, beta: float, direction: Direction,
                     schedule: Optional[EpsilonSchedule] = None,
                     tol: float = DEFAULT_TOL, *,
                     c1_samples: Optional[int] = None,
                     ratio_cutoff: float = C1_RATIO_CUTOFF) -> ConditionsReport:
    """Evaluate the two side conditions for velocity existence at x.

    c1 (necessary): the growth ratios osc/eps**beta stay bounded as the
    increments shrink.  The deep-half maximum is compared against the
    shallow-half maximum; exceeding it by ratio_cutoff breaks the bound.
    A per-step ratio would miss slow blow-ups like a jump discontinuity,
    whose ratio grows only by 2**beta per halving.  c2 (necessary and
    sufficient): the tail spread of the fractional variation is within
    tol.  c2 deciding convergence is what estimate_velocity already
    reports; the pair here is the diagnostic view.
    """
    diffops._check_beta(beta)
    schedule = schedule or DEFAULT_SCHEDULE
    eps = schedule.increments(x)
    osc = _oscillations(f, x, direction, eps, c1_samples)
    growth = osc / eps ** beta
    c1_constant = float(np.max(growth))
    half = math.ceil(growth.size / 2)
    shallow_ref = float(np.max(growth[:-half]))
    deep_max = float(np.max(growth[-half:]))
    if shallow_ref > 0.0:
        c1_holds = bool(deep_max <= ratio_cutoff * shallow_ref)
    else:
        c1_holds = bool(deep_max == 0.0)
    vals = variation_values(f, x, beta, direction, eps)
    c2_value = tail_spread(vals)
    c2_holds = bool(c2_value <= tol)
    return ConditionsReport(c1_holds, c1_constant, c2_holds, c2_value)


@dataclass(frozen=True)
class HolderEstimate:
    """Log-log regression result for the oscillation growth law."""

    exponent: float
    constant: float
    r_squared: float
    scale_range: Tuple[float, float]

    @property
    def low_confidence(self) -> bool:
        return self.r_squared < 0.5

    @property
    def superlinear(self) -> bool:
        return self.exponent > 1.0


def estimate_holder_exponent(f, x: float, direction: Direction,
                             schedule: Optional[EpsilonSchedule] = None, *,
                             n0: int = 17) -> HolderEstimate:
    """Pointwise regularity exponent by least squares on log osc vs log eps.

    Oscillation is regressed rather than the bare difference so that sign
    cancellations at x cannot bias the slope.  Zero oscillations are
    excluded from the fit; if everything is zero the function is locally
    constant and LocallyConstantError is raised.  The slope is clipped to
    [0, 1.5]: beyond linear the probe says "smoother than Lipschitz" and
    the exact value is not trustworthy, which the superlinear flag records.
    """
    schedule = schedule or DEFAULT_SCHEDULE
    eps = schedule.increments(x)
    osc = np.array([refine_oscillation(f, x, float(e), direction, n0=n0).value
                    for e in eps])
    keep = osc > 0.0
    if not keep.any():
        raise LocallyConstantError(f"all oscillations vanish at x={x:g}")
    if keep.sum() < MIN_USABLE:
        raise LocallyConstantError(
            f"only {int(keep.sum())} nonzero oscillations at x={x:g}, cannot fit")
    lx = np.log(eps[keep])
    ly = np.log(osc[keep])
    slope, intercept = np.polyfit(lx, ly, 1)
    fitted = slope * lx + intercept
    ss_res = float(np.sum((ly - fitted) ** 2))
    ss_tot = float(np.sum((ly - np.mean(ly)) ** 2))
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    exponent = float(np.clip(slope, 0.0, 1.5))
    return HolderEstimate(exponent, float(np.exp(intercept)), float(r2),
                          (float(np.min(eps[keep])), float(np.max(eps[keep]))))


def variation_bound_constants(f, x: float, beta: float, direction: Direction,
                              schedule: Optional[EpsilonSchedule] = None,
                              tol: float = DEFAULT_TOL) -> Tuple[float, float]:
    """Tight two-sided envelope |difference| / eps**beta over the tail.

    Only defined when the velocity converges to a nonzero value; both
    constants then bracket |velocity| and tighten as the schedule deepens.
    Returns (lower, upper).
    """
    schedule = schedule or DEFAULT_SCHEDULE
    eps = schedule.increments(x)
    vals = variation_values(f, x, beta, direction, eps)
    limit = classify_limit(vals, tol)
    if limit.status is not LimitStatus.CONVERGED or limit.value == 0.0:
        raise PreconditionError(
            "bound constants require a converged nonzero velocity "
            f"(status={limit.status.value}, value={limit.value!r})")
    tail = np.abs(vals[-math.ceil(vals.size / 2):])
    return (float(np.min(tail)), float(np.max(tail)))


def taylor_residual(f, x: float, beta: float, v: float, eps: float,
                    direction: Direction) -> float:
    """Normalized remainder |difference - v*eps**beta| / eps**beta.

    Measures how well v plays the role of a fractional slope in the
    one-sided expansion of f at x at the probe width eps.  The backward
    difference already carries its sign, so one formula serves both sides.
    """
    diffops._check_beta(beta)
    d = diffops.difference(f, x, eps, direction)
    scale = float(eps) ** beta
    return float(abs(d - v * scale) / scale)
