"""Optimal-separation solvers.

Covers the closed-form and parametric solutions of the two-state
separation problem:

* ``q_ud`` -- minimum average failure probability of unambiguous
  discrimination (equivalently, full separation), in closed form.
* ``qmin_curve`` / ``qmin_at`` -- minimum failure probability at a fixed
  target overlap, parametrized along the constraint curve or root-found
  for a specific prior.
* ``max_separation`` / ``critical_overlap`` -- smallest reachable final
  overlap under a failure budget, via the conic tangency system.
* ``tradeoff_curve`` / ``tradeoff_at`` -- the full (Q, s') tradeoff for a
  fixed initial overlap.
* ``max_clones`` -- how many perfect clones a failure budget admits.
* ``phase_transition_probe`` -- finite-difference detector for the kink in
  d^2Q/deta1^2 that appears only at full separation.

No closed form eliminating the sweep parameter exists (it would require
solving a sixth-degree polynomial), so everything beyond the special cases
is parametric plus bracketed root finding: bisection-with-secant (Brent)
at 1e-12 parameter tolerance, with a dense-scan fallback if bracketing
fails.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from .conics import PolarAngle
from .core import (
    DomainError,
    FailureBudget,
    FailurePoint,
    NumericError,
    OverlapSpec,
    Priors,
    sqrt_clamped,
)

__all__ = [
    "CurveParam",
    "QminSample",
    "TradeoffSample",
    "UNBOUNDED",
    "t_slope_minus_one",
    "t_slope_zero",
    "q_ud",
    "ud_tangency_point",
    "curve_point",
    "qmin_curve",
    "qmin_at",
    "max_separation",
    "critical_overlap",
    "tradeoff_curve",
    "tradeoff_at",
    "max_clones",
    "phase_transition_probe",
]

# Returned by max_clones when the budget allows full separation, so any
# number of clones can be cut.
UNBOUNDED = math.inf

# Priors closer to equal (or to certainty) than this dispatch to the
# degenerate closed forms; the generic parametric formulas lose precision
# as 1/|delta| (resp. 1/eta1) before they fail outright.
_DEGENERATE_PRIOR_TOL = 1e-9

# Runtime guard on the monotonicity of eta1 along curve sweeps.
_MONOTONE_TOL = 1e-10

_ROOT_XTOL = 1e-14
_SCAN_POINTS = 10_000
_EPS = float(np.finfo(float).eps)


@dataclass(frozen=True)
class CurveParam:
    """Parameter t of the symmetric parametrization of the constraint curve."""

    t: float

    def __float__(self) -> float:
        return self.t


@dataclass(frozen=True)
class QminSample:
    """One point of the minimum-failure curve Q_min(eta1) at fixed overlaps."""

    t: float
    eta1: float
    q_min: float
    point: FailurePoint
    dq1_dt: float
    dq2_dt: float


@dataclass(frozen=True)
class TradeoffSample:
    """One point of a separation/failure tradeoff sweep."""

    theta: PolarAngle
    s: float
    s_prime: float
    q: FailureBudget


# ---------------------------------------------------------------------------
# root finding


def _bracketed_root(f: Callable[[float], float], lo: float, hi: float, what: str) -> float:
    """Brent root of f on [lo, hi], with a dense-scan fallback bracket."""
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi < 0.0:
        return brentq(f, lo, hi, xtol=_ROOT_XTOL, rtol=4 * np.finfo(float).eps)
    # No sign change at the bracket ends; scan for one before giving up.
    xs = np.linspace(lo, hi, _SCAN_POINTS)
    vals = np.array([f(x) for x in xs])
    sign_flips = np.nonzero(np.diff(np.signbit(vals)))[0]
    if len(sign_flips) == 0:
        raise NumericError(
            f"root finding for {what} failed: no sign change on [{lo!r}, {hi!r}] "
            f"(f(lo)={flo!r}, f(hi)={fhi!r}) even after a {_SCAN_POINTS}-point scan"
        )
    i = sign_flips[0]
    return brentq(f, xs[i], xs[i + 1], xtol=_ROOT_XTOL, rtol=4 * np.finfo(float).eps)


# ---------------------------------------------------------------------------
# unambiguous discrimination (full separation)


def q_ud(pr: Priors, s: float) -> FailureBudget:
    """Minimum average failure probability of unambiguous discrimination.

    Three regimes: for intermediate priors the optimum is the tangency of
    the objective line with the hyperbola q1*q2 = s^2 and costs
    2*sqrt(eta1*eta2)*s; for sufficiently lopsided priors the line pivots
    on one endpoint of the hyperbola instead and the cost is linear in the
    priors.
    """
    if not 0.0 <= s <= 1.0:
        raise DomainError(f"s must lie in [0, 1], got {s!r}")
    lo = s * s / (1.0 + s * s)
    if pr.eta1 <= lo:
        q = pr.eta1 + s * s * pr.eta2
    elif pr.eta1 >= 1.0 - lo:
        q = pr.eta1 * s * s + pr.eta2
    else:
        q = 2.0 * math.sqrt(pr.eta1 * pr.eta2) * s
    return FailureBudget(q)


def ud_tangency_point(pr: Priors, s: float) -> FailurePoint:
    """Optimal failure point of unambiguous discrimination.

    The tangency point sqrt(eta1*eta2)*s*(1/eta1, 1/eta2) in the
    intermediate regime, or the hyperbola endpoint the objective line
    pivots on in the lopsided regimes.
    """
    if not 0.0 <= s <= 1.0:
        raise DomainError(f"s must lie in [0, 1], got {s!r}")
    lo = s * s / (1.0 + s * s)
    if pr.eta1 <= lo:
        return FailurePoint(1.0, s * s)
    if pr.eta1 >= 1.0 - lo:
        return FailurePoint(s * s, 1.0)
    root = math.sqrt(pr.eta1 * pr.eta2) * s
    return FailurePoint(root / pr.eta1, root / pr.eta2)


# ---------------------------------------------------------------------------
# the parametrized constraint curve (identical success flags, kappa = 1)


def _require_curve_overlaps(ov: OverlapSpec) -> None:
    if ov.kappa != 1.0:
        raise DomainError(
            "curve parametrization assumes identical success flags (kappa = 1), "
            f"got kappa={ov.kappa!r}"
        )
    if not 0.0 < ov.s_prime < ov.s:
        raise DomainError(
            f"curve parametrization requires 0 < s_prime < s, got "
            f"s_prime={ov.s_prime!r}, s={ov.s!r}"
        )


def t_slope_minus_one(ov: OverlapSpec) -> float:
    """Parameter value where the lower-half curve has slope -1 (its vertex)."""
    _require_curve_overlaps(ov)
    return (1.0 - ov.s_prime / ov.s) / (1.0 - ov.s_prime)


def t_slope_zero(ov: OverlapSpec) -> float:
    """Parameter value where the lower-half curve slope vanishes."""
    _require_curve_overlaps(ov)
    sp2 = ov.s_prime * ov.s_prime
    return (1.0 - sp2 / (ov.s * ov.s)) / (1.0 - sp2)


def _xy(t: float, ov: OverlapSpec) -> tuple[float, float]:
    scale = ov.s_prime / ov.s
    x = (1.0 - (1.0 + ov.s_prime) * t) / scale
    y = (1.0 - (1.0 - ov.s_prime) * t) / scale
    return x, y


def _curve_q(t: float, ov: OverlapSpec) -> tuple[float, float]:
    x, y = _xy(t, ov)
    rx = sqrt_clamped(1.0 - x * x)
    ry = sqrt_clamped(1.0 - y * y)
    q1 = 0.5 * (1.0 - x * y + rx * ry)
    q2 = 0.5 * (1.0 - x * y - rx * ry)
    return min(q1, 1.0), max(q2, 0.0)


def _curve_dq(t: float, ov: OverlapSpec) -> tuple[float, float]:
    """Derivatives (dq1/dt, dq2/dt); infinite at the slope -1 vertex."""
    x, y = _xy(t, ov)
    rx = sqrt_clamped(1.0 - x * x)
    ry = sqrt_clamped(1.0 - y * y)
    q1, q2 = _curve_q(t, ov)
    scale = ov.s_prime / ov.s
    if ry == 0.0:
        return math.inf, -math.inf
    a = (1.0 + ov.s_prime) / rx
    b = (1.0 - ov.s_prime) / ry
    d1 = sqrt_clamped(q1 * (1.0 - q1)) / scale * (a + b)
    d2 = sqrt_clamped(q2 * (1.0 - q2)) / scale * (a - b)
    return d1, d2


def _eta1_at(t: float, ov: OverlapSpec) -> float:
    d1, d2 = _curve_dq(t, ov)
    if math.isinf(d1):
        return 0.5
    return d2 / (d2 - d1)


def curve_point(tp: CurveParam | float, ov: OverlapSpec) -> FailurePoint:
    """Lower-half point (q2 <= q1) of the constraint curve at parameter t.

    The admissible range [t_slope_minus_one, t_slope_zero] covers every
    point that can be tangent to an objective line with eta1 <= 1/2; the
    returned point satisfies the unitarity constraint to 1e-12 by
    construction.
    """
    _require_curve_overlaps(ov)
    t = float(tp)
    t_lo, t_hi = t_slope_minus_one(ov), t_slope_zero(ov)
    slack = 1e-12 * (t_hi - t_lo)
    if not t_lo - slack <= t <= t_hi + slack:
        raise DomainError(
            f"curve parameter {t!r} outside the tangency range [{t_lo!r}, {t_hi!r}]"
        )
    q1, q2 = _curve_q(t, ov)
    return FailurePoint(q1, q2)


def qmin_curve(ov: OverlapSpec, n_samples: int = 512) -> list[QminSample]:
    """Sweep of the minimum failure probability against the prior.

    Samples t uniformly over the tangency range and reports, for each
    point, the prior eta1 whose objective line is tangent there together
    with the failure probability that tangency achieves.  eta1 runs
    monotonically from 1/2 (curve vertex) to 0; a monotonicity violation
    beyond 1e-10 aborts with diagnostics rather than return a wrong
    branch.
    """
    _require_curve_overlaps(ov)
    if n_samples < 2:
        raise DomainError(f"n_samples must be at least 2, got {n_samples!r}")
    t_lo, t_hi = t_slope_minus_one(ov), t_slope_zero(ov)
    samples: list[QminSample] = []
    for t in np.linspace(t_lo, t_hi, n_samples):
        t = float(t)
        q1, q2 = _curve_q(t, ov)
        d1, d2 = _curve_dq(t, ov)
        if math.isinf(d1):
            eta1 = 0.5
        else:
            eta1 = min(max(d2 / (d2 - d1), 0.0), 0.5)
        q_min = min(max(eta1 * q1 + (1.0 - eta1) * q2, 0.0), 1.0)
        samples.append(QminSample(t, eta1, q_min, FailurePoint(q1, q2), d1, d2))
    etas = [smp.eta1 for smp in samples]
    worst = max(b - a for a, b in zip(etas, etas[1:]))
    if worst > _MONOTONE_TOL:
        raise NumericError(
            f"eta1 failed to decrease monotonically along the sweep "
            f"(worst increase {worst!r} at s={ov.s!r}, s_prime={ov.s_prime!r}); "
            "the tangency branch cannot be trusted"
        )
    return samples


def qmin_at(pr: Priors, ov: OverlapSpec) -> tuple[FailureBudget, FailurePoint]:
    """Minimum average failure probability and optimal point for one prior.

    Parameters
    ----------
    pr : Priors
        Prior probabilities; priors with eta1 > 1/2 are handled by the
        swap symmetry and the failure point is mirrored back.
    ov : OverlapSpec
        Initial and target overlaps with kappa = 1 (identical flags).

    Returns
    -------
    (FailureBudget, FailurePoint)
        The achievable minimum of eta1*q1 + eta2*q2 and the point where
        the objective line touches the constraint curve.

    Notes
    -----
    Degenerate targets dispatch to closed forms: s_prime = s costs
    nothing, s_prime = 0 is unambiguous discrimination.  In between, the
    tangency parameter is root-found from the equal-slope condition; the
    budget is evaluated directly on the objective so its error is second
    order in the root tolerance.
    """
    if ov.s_prime > 0.0 and ov.kappa != 1.0:
        raise DomainError(
            "optimal-separation solvers assume identical success flags (kappa = 1)"
        )
    prn, swapped = pr.normalized()

    def _ret(q: float, point: FailurePoint) -> tuple[FailureBudget, FailurePoint]:
        return FailureBudget(q), (point.swapped() if swapped else point)

    if ov.s_prime == ov.s:
        return _ret(0.0, FailurePoint(0.0, 0.0))
    if ov.s == 1.0:
        # Identical inputs cannot be separated at all.
        return _ret(1.0, FailurePoint(1.0, 1.0))
    if ov.s_prime == 0.0:
        return _ret(float(q_ud(prn, ov.s)), ud_tangency_point(prn, ov.s))

    t_lo, t_hi = t_slope_minus_one(ov), t_slope_zero(ov)
    eps = 1e-12 * (t_hi - t_lo)
    eta_lo = _eta1_at(t_lo + eps, ov)  # just below 1/2
    eta_hi = _eta1_at(t_hi, ov)  # 0 up to rounding
    if prn.eta1 >= eta_lo:
        # At the curve vertex dQ/deta1 vanishes, so snapping priors this
        # close to 1/2 onto the vertex costs O(eps) in Q.
        q = (ov.s - ov.s_prime) / (1.0 - ov.s_prime)
        return _ret(q, FailurePoint(q, q))
    if prn.eta1 <= eta_hi:
        q1, q2 = _curve_q(t_hi, ov)
        return _ret(prn.eta1 * q1 + prn.eta2 * q2, FailurePoint(q1, q2))

    t = _bracketed_root(
        lambda tt: _eta1_at(tt, ov) - prn.eta1, t_lo + eps, t_hi, "tangency parameter t"
    )
    q1, q2 = _curve_q(t, ov)
    return _ret(prn.eta1 * q1 + prn.eta2 * q2, FailurePoint(q1, q2))


# ---------------------------------------------------------------------------
# maximum separation under a failure budget (conic tangency)


def _maxsep_s_prime(theta: float, q: float, delta: float) -> float:
    den = delta + q * math.sin(theta)
    rad = sqrt_clamped((1.0 - q) ** 2 - den * den, tol=1e-12)
    return -rad / den * math.tan(theta)


def _maxsep_s(theta: float, q: float, delta: float) -> float:
    st, ct = math.sin(theta), math.cos(theta)
    num = q * delta * (1.0 + st * st) - (1.0 - delta * delta - 2.0 * q) * st
    den = math.sqrt(1.0 - delta * delta) * (delta + q * st) * ct
    return num / den


def max_separation(
    pr: Priors, s: float, q_max: float | FailureBudget
) -> tuple[float, PolarAngle]:
    """Smallest final overlap reachable within a failure budget.

    Parameters
    ----------
    pr : Priors
        Prior probabilities (normalized internally to eta1 <= 1/2).
    s : float
        Initial overlap, in (0, 1).
    q_max : float or FailureBudget
        Cap on the average failure probability, in [0, 1).

    Returns
    -------
    (s_prime_min, theta)
        The minimal final overlap and the tangency angle on the objective
        ellipse.  When the budget already covers unambiguous
        discrimination the answer is 0 and theta is NaN (no tangency is
        involved); theta is also NaN for the degenerate closed-form priors
        (equal, or certainty on one state).

    Notes
    -----
    For q_max below the discrimination cost the budget is saturated and
    the optimum is the tangency between the budget ellipse and a
    constraint parabola.  The tangency angle is root-found from the
    parametric initial-overlap expression, which decreases monotonically
    from 1 to the critical overlap over the admissible angle range.
    """
    if not 0.0 < s < 1.0:
        raise DomainError(f"s must lie in (0, 1), got {s!r}")
    q = float(q_max)
    if not 0.0 <= q < 1.0:
        raise DomainError(f"q_max must lie in [0, 1), got {q!r}")
    prn, _ = pr.normalized()

    # s' vanishes linearly as the budget approaches the discrimination
    # cost, so budgets within rounding of it take the trivial branch.
    if q >= float(q_ud(prn, s)) - 1e-13:
        return 0.0, PolarAngle(math.nan)

    delta = prn.delta
    if delta <= _DEGENERATE_PRIOR_TOL:
        # Equal priors: q1 = q2 = Q on the diagonal, solvable directly.
        return (s - q) / (1.0 - q), PolarAngle(0.0)
    if prn.eta1 <= _DEGENERATE_PRIOR_TOL:
        # Certainty on state 2: only q2 matters and the curve minimum of
        # q2 is (s^2 - s'^2)/(1 - s'^2); invert it at the budget.
        return sqrt_clamped((s * s - q) / (1.0 - q)), PolarAngle(math.nan)

    theta_lo = -math.asin(delta)
    theta_hi = 0.0 if q <= 1.0 - delta else math.asin((1.0 - q - delta) / q)
    theta = _bracketed_root(
        lambda th: _maxsep_s(th, q, delta) - s, theta_lo, theta_hi, "tangency angle theta"
    )
    s_prime = min(max(_maxsep_s_prime(theta, q, delta), 0.0), s)
    return s_prime, PolarAngle(theta)


def critical_overlap(pr: Priors, q_max: float | FailureBudget) -> float:
    """Largest initial overlap still fully separable within the budget.

    Below this overlap the discrimination cost fits inside q_max and
    max_separation returns exactly 0; above it the optimum saturates the
    budget with a nonzero final overlap.
    """
    q = float(q_max)
    if not 0.0 <= q <= 1.0:
        raise DomainError(f"q_max must lie in [0, 1], got {q!r}")
    prn, _ = pr.normalized()
    if q <= 2.0 * prn.eta1:
        return q / (2.0 * math.sqrt(prn.eta1 * prn.eta2))
    return math.sqrt((q - prn.eta1) / prn.eta2)


# ---------------------------------------------------------------------------
# tradeoff curve s'(Q) at fixed initial overlap


def _tradeoff_eval(theta: float, s: float, delta: float) -> tuple[float, float]:
    """(s_prime, Q) on the tradeoff curve at angle theta < 0."""
    st, ct = math.sin(theta), math.cos(theta)
    one = 1.0 - delta * delta
    gain = math.sqrt(one) * (st / (delta + st)) ** 2 / ct
    term_envelope = math.sqrt(one) * (1.0 + s * s) * ct
    term_budget = 2.0 * s * (1.0 + delta * st)
    sp2 = gain * (term_envelope - term_budget)
    # Where the two terms cancel (the full-separation end of the sweep,
    # severe for near-certainty priors) rounding leaves a negative residue
    # of order eps times the amplification; only values beyond that noise
    # floor indicate a real bug.
    noise = max(1e-12, 32.0 * _EPS * abs(gain) * (abs(term_envelope) + abs(term_budget)))
    if sp2 < -noise:
        raise NumericError(
            f"negative squared overlap {sp2!r} at theta={theta!r}, s={s!r}, delta={delta!r}"
        )
    sp2 = max(sp2, 0.0)
    q = (s * math.sqrt(one) + delta * sp2 * (ct / st)) / ((1.0 - sp2) * ct)
    return math.sqrt(sp2), min(max(q, 0.0), 1.0)


def _tradeoff_range(s: float, delta: float, eta1: float) -> tuple[float, float]:
    theta_lo = -math.atan(s * delta / math.sqrt(1.0 - delta * delta))
    if eta1 >= s * s / (1.0 + s * s):
        theta_hi = 0.0
    else:
        c = 2.0 * s * math.sqrt(1.0 - delta * delta) / (
            1.0 - delta + s * s * (1.0 + delta)
        )
        theta_hi = -math.acos(min(max(c, -1.0), 1.0))
    return theta_lo, theta_hi


def _tradeoff_sample(theta: float, s: float, delta: float) -> tuple[float, float]:
    if theta == 0.0:
        # Upper endpoint of the equal-slope family: full separation at the
        # tangency-regime discrimination cost.
        return 0.0, s * math.sqrt(1.0 - delta * delta)
    return _tradeoff_eval(theta, s, delta)


def tradeoff_curve(pr: Priors, s: float, n_samples: int = 512) -> list[TradeoffSample]:
    """Parametric sweep of the separation/failure tradeoff at fixed s.

    Returns samples with Q nondecreasing from 0 (no separation beyond the
    trivial s' = s) up to the unambiguous-discrimination cost (full
    separation, s' = 0), and s_prime nonincreasing from s to 0.

    Equal priors and certainty priors bypass the angle sweep and use their
    explicit closed forms; their samples carry theta = 0 and theta = NaN
    respectively.
    """
    if not 0.0 < s < 1.0:
        raise DomainError(f"s must lie in (0, 1), got {s!r}")
    if n_samples < 2:
        raise DomainError(f"n_samples must be at least 2, got {n_samples!r}")
    prn, _ = pr.normalized()
    delta = prn.delta

    if delta <= _DEGENERATE_PRIOR_TOL:
        qs = np.linspace(0.0, s, n_samples)
        return [
            TradeoffSample(PolarAngle(0.0), s, (s - q) / (1.0 - q), FailureBudget(float(q)))
            for q in qs
        ]
    if prn.eta1 <= _DEGENERATE_PRIOR_TOL:
        qs = np.linspace(0.0, s * s, n_samples)
        return [
            TradeoffSample(
                PolarAngle(math.nan),
                s,
                sqrt_clamped((s * s - q) / (1.0 - q)),
                FailureBudget(float(q)),
            )
            for q in qs
        ]

    theta_lo, theta_hi = _tradeoff_range(s, delta, prn.eta1)
    samples: list[TradeoffSample] = []
    grid = np.linspace(theta_lo, theta_hi, n_samples)
    for i, theta in enumerate(grid):
        if i == 0:
            # The sweep starts at the trivial protocol and ends at full
            # separation; both endpoint values are exact identities, so
            # emit them directly instead of through the cancellation-prone
            # generic formulas.
            s_prime, q = s, 0.0
        elif i == n_samples - 1:
            s_prime, q = 0.0, float(q_ud(prn, s))
        else:
            s_prime, q = _tradeoff_sample(float(theta), s, delta)
        samples.append(
            TradeoffSample(PolarAngle(float(theta)), s, min(s_prime, s), FailureBudget(q))
        )
    return samples


def tradeoff_at(pr: Priors, s: float, q: float | FailureBudget) -> TradeoffSample:
    """Tradeoff point at a specific failure budget.

    Root-finds the sweep angle whose budget matches ``q``; budgets at or
    above the discrimination cost return the full-separation endpoint
    (whose achieved budget is the discrimination cost itself, since larger
    margins are never saturated).
    """
    if not 0.0 < s < 1.0:
        raise DomainError(f"s must lie in (0, 1), got {s!r}")
    q = float(q)
    if not 0.0 <= q <= 1.0:
        raise DomainError(f"q must lie in [0, 1], got {q!r}")
    prn, _ = pr.normalized()
    delta = prn.delta
    qud = float(q_ud(prn, s))

    if q >= qud - 1e-13:
        return TradeoffSample(PolarAngle(math.nan), s, 0.0, FailureBudget(qud))
    if delta <= _DEGENERATE_PRIOR_TOL:
        return TradeoffSample(PolarAngle(0.0), s, (s - q) / (1.0 - q), FailureBudget(q))
    if prn.eta1 <= _DEGENERATE_PRIOR_TOL:
        return TradeoffSample(
            PolarAngle(math.nan), s, sqrt_clamped((s * s - q) / (1.0 - q)), FailureBudget(q)
        )

    theta_lo, theta_hi = _tradeoff_range(s, delta, prn.eta1)
    if q <= 1e-12:
        # The sweep starts exactly at (s' = s, Q = 0); the generic formula
        # only reproduces it up to cancellation noise.
        return TradeoffSample(PolarAngle(theta_lo), s, s, FailureBudget(q))
    theta = _bracketed_root(
        lambda th: _tradeoff_sample(th, s, delta)[1] - q,
        theta_lo,
        theta_hi,
        "tradeoff angle theta",
    )
    s_prime, q_found = _tradeoff_sample(theta, s, delta)
    return TradeoffSample(PolarAngle(theta), s, min(s_prime, s), FailureBudget(q_found))


# ---------------------------------------------------------------------------
# corollaries


def max_clones(s: float, q_max: float | FailureBudget, pr: Priors) -> int | float:
    """Largest number of perfect clones producible within a failure budget.

    Cloning one copy into n multiplies the overlap to s**n, so the budget
    admits n clones iff s**n stays above the reachable minimum overlap.
    Returns :data:`UNBOUNDED` when the budget covers full separation.
    """
    if not 0.0 < s < 1.0:
        raise DomainError(f"cloning bound requires 0 < s < 1, got {s!r}")
    s_prime_min, _ = max_separation(pr, s, q_max)
    if s_prime_min == 0.0:
        return UNBOUNDED
    # The 1e-12 nudge keeps exact integer ratios (e.g. s' = s) from being
    # floored one short by rounding.
    return int(math.floor(math.log(s_prime_min) / math.log(s) + 1e-12))


def phase_transition_probe(
    s: float, s_prime: float, eta_star: float, h: float
) -> float:
    """Difference of one-sided second differences of Q_min(eta1) at eta_star.

    At full separation (s_prime = 0) the optimal failure probability has a
    jump in its second derivative at eta1 = s^2/(1+s^2), and the probe
    converges to that jump as h -> 0; for s_prime > 0 the curve is smooth
    and the probe decays linearly in h.
    """
    if not 0.0 < eta_star < 0.5:
        raise DomainError(f"eta_star must lie in (0, 1/2), got {eta_star!r}")
    if not 0.0 < h < eta_star / 4.0:
        raise DomainError(f"h must lie in (0, eta_star/4), got {h!r}")
    ov = OverlapSpec(s, s_prime)

    def q_of(eta1: float) -> float:
        return float(qmin_at(Priors.of(eta1), ov)[0])

    q0 = q_of(eta_star)
    right = (q_of(eta_star + 2.0 * h) - 2.0 * q_of(eta_star + h) + q0) / (h * h)
    left = (q0 - 2.0 * q_of(eta_star - h) + q_of(eta_star - 2.0 * h)) / (h * h)
    return right - left
