"""Brute-force ground truth for the separation solvers.

Minimizes the average failure probability directly over the unitarity
curve, without touching any of the parametric machinery the closed-form
solvers are built on: the curve is recovered pointwise by bisecting the
constraint residual in q2 at fixed q1, swept on a dense grid, and the
best bracket is polished by golden-section search.  Slow by design and
used in tests as the independent check on every solver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    DomainError,
    FailureBudget,
    FailurePoint,
    NumericError,
    OverlapSpec,
    Priors,
)

__all__ = ["OracleConfig", "oracle_qmin", "oracle_max_separation"]

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_BISECT_ITERS = 80


@dataclass(frozen=True)
class OracleConfig:
    """Search effort knobs for the brute-force minimizer."""

    grid_size: int = 4096
    refine_iters: int = 60
    tolerance: float = 1e-8

    def __post_init__(self):
        if self.grid_size < 100:
            raise DomainError(f"grid_size must be at least 100, got {self.grid_size!r}")
        if self.tolerance <= 0.0:
            raise DomainError(f"tolerance must be positive, got {self.tolerance!r}")
        if self.refine_iters < 0:
            raise DomainError(f"refine_iters must be nonnegative, got {self.refine_iters!r}")


def _diagonal_q(s: float, beta: float) -> float:
    """Point where the constraint curve crosses q1 = q2, by bisection.

    The on-diagonal residual beta*(1-q) + q - s is strictly increasing in
    q (beta < 1), so plain bisection is safe.
    """
    lo, hi = 0.0, 1.0
    for _ in range(_BISECT_ITERS):
        mid = 0.5 * (lo + hi)
        if beta * (1.0 - mid) + mid - s < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _lower_q2_grid(q1: np.ndarray, s: float, beta: float) -> np.ndarray:
    """Lower-half curve ordinates q2(q1), vectorized bisection."""
    if beta == 0.0:
        return s * s / q1
    turn = q1 / (q1 + beta * beta * (1.0 - q1))
    lo = np.zeros_like(q1)
    hi = turn.copy()
    for _ in range(_BISECT_ITERS):
        mid = 0.5 * (lo + hi)
        f = beta * np.sqrt((1.0 - q1) * (1.0 - mid)) + np.sqrt(q1 * mid) - s
        below = f < 0.0
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    q2 = 0.5 * (lo + hi)
    # The root must exist on the increasing stretch for every grid q1.
    worst = np.max(
        np.abs(beta * np.sqrt((1.0 - q1) * (1.0 - q2)) + np.sqrt(q1 * q2) - s)
    )
    if worst > 1e-9:
        raise NumericError(
            f"curve bisection failed: worst residual {worst!r} at s={s!r}, beta={beta!r}"
        )
    return q2


def _lower_q2_scalar(q1: float, s: float, beta: float) -> float:
    return float(_lower_q2_grid(np.array([q1]), s, beta)[0])


def oracle_qmin(
    pr: Priors, ov: OverlapSpec, cfg: OracleConfig = OracleConfig()
) -> tuple[FailureBudget, FailurePoint]:
    """Minimum average failure probability by exhaustive search on the curve.

    Sweeps the lower half of the constraint curve from its diagonal
    crossing to the endpoint (1, s^2) on a ``cfg.grid_size`` grid in q1,
    evaluates the objective on both halves (mirror symmetry) plus the two
    endpoints, and golden-sections the best bracket down to
    ``cfg.tolerance``.
    """
    s, beta = ov.s, ov.beta
    prn, swapped = pr.normalized()

    def _ret(q: float, q1: float, q2: float) -> tuple[FailureBudget, FailurePoint]:
        pt = FailurePoint(min(max(q1, 0.0), 1.0), min(max(q2, 0.0), 1.0))
        return FailureBudget(min(max(q, 0.0), 1.0)), (pt.swapped() if swapped else pt)

    if beta == s:
        # (0, 0) already satisfies the constraint: nothing ever fails.
        return _ret(0.0, 0.0, 0.0)
    if s == 1.0:
        return _ret(1.0, 1.0, 1.0)

    q_diag = _diagonal_q(s, beta)
    q1 = np.linspace(q_diag, 1.0, cfg.grid_size)
    q2 = _lower_q2_grid(q1, s, beta)

    # Both halves of the curve plus its endpoints are candidates.
    q_lower = prn.eta1 * q1 + prn.eta2 * q2
    q_upper = prn.eta1 * q2 + prn.eta2 * q1
    cand_q = np.concatenate([q_lower, q_upper])
    cand_q1 = np.concatenate([q1, q2])
    cand_q2 = np.concatenate([q2, q1])
    ends_q1 = np.array([1.0, s * s])
    ends_q2 = np.array([s * s, 1.0])
    cand_q = np.concatenate([cand_q, prn.eta1 * ends_q1 + prn.eta2 * ends_q2])
    cand_q1 = np.concatenate([cand_q1, ends_q1])
    cand_q2 = np.concatenate([cand_q2, ends_q2])

    order = np.lexsort((cand_q1, cand_q))
    best = order[0]
    best_q = float(cand_q[best])
    best_point = (float(cand_q1[best]), float(cand_q2[best]))

    # Golden-section polish around the best lower-half grid point.  The
    # objective along the lower half is convex (the curve slope increases
    # monotonically), so a three-point bracket is sound; with eta1 <= 1/2
    # the upper half can only tie the lower one on the diagonal.
    i = int(np.argmin(q_lower))
    lo = float(q1[max(i - 1, 0)])
    hi = float(q1[min(i + 1, len(q1) - 1)])

    def objective(x: float) -> float:
        return prn.eta1 * x + prn.eta2 * _lower_q2_scalar(x, s, beta)

    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = objective(c), objective(d)
    for _ in range(cfg.refine_iters):
        if b - a < cfg.tolerance * 1e-2:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = objective(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = objective(d)
    x = c if fc < fd else d
    refined = objective(x)
    if refined < best_q:
        best_q = refined
        best_point = (x, _lower_q2_scalar(x, s, beta))

    return _ret(best_q, *best_point)


def oracle_max_separation(
    pr: Priors,
    s: float,
    q_max: float | FailureBudget,
    cfg: OracleConfig = OracleConfig(),
) -> float:
    """Smallest final overlap whose minimum failure fits the budget.

    Bisects on s_prime, relying on the (test-verified) monotonicity of the
    oracle minimum in the target overlap.
    """
    if not 0.0 < s < 1.0:
        raise DomainError(f"s must lie in (0, 1), got {s!r}")
    q_cap = float(q_max)

    def fits(s_prime: float) -> bool:
        q, _ = oracle_qmin(pr, OverlapSpec(s, s_prime), cfg)
        return float(q) <= q_cap

    if fits(0.0):
        return 0.0
    lo, hi = 0.0, s  # fits(s) is trivially true: zero failure at s' = s
    while hi - lo > cfg.tolerance:
        mid = 0.5 * (lo + hi)
        if fits(mid):
            hi = mid
        else:
            lo = mid
    return hi
