"""Release-gate property checks, runnable from the command line.

Each check measures a worst-case deviation for one contract of the
package (constraint-geometry lemmas, solver/oracle agreement, round-trip
consistency across solution families, optics exactness and statistics)
and compares it against the tolerance the contract is specified at.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import conics, optics, solvers
from .core import OverlapSpec, Priors
from .oracle import OracleConfig, oracle_qmin

__all__ = ["CheckResult", "run_all"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    worst: float
    tolerance: float
    passed: bool


def _result(name: str, worst: float, tolerance: float) -> CheckResult:
    return CheckResult(name, float(worst), tolerance, bool(worst <= tolerance))


def _residual_arr(q1, q2, s, beta):
    return beta * np.sqrt((1.0 - q1) * (1.0 - q2)) + np.sqrt(q1 * q2) - s


def check_endpoint_identities() -> CheckResult:
    worst = 0.0
    for s in np.linspace(0.05, 0.95, 19):
        for beta in np.linspace(0.0, s, 21):
            for q1, q2 in ((1.0, s * s), (s * s, 1.0)):
                worst = max(worst, abs(_residual_arr(q1, q2, s, beta)))
    return _result("lemma-endpoint-identities", worst, 1e-12)


def check_set_nesting(trials: int, seed: int) -> CheckResult:
    rng = np.random.Generator(np.random.Philox(key=seed))
    q1 = rng.uniform(0.0, 1.0, trials)
    q2 = rng.uniform(0.0, 1.0, trials)
    s = rng.uniform(0.05, 0.95, trials)
    b = np.sort(rng.uniform(0.0, 1.0, (trials, 2)), axis=1) * s[:, None]
    inner = _residual_arr(q1, q2, s, b[:, 0]) >= -1e-12
    outer = _residual_arr(q1, q2, s, b[:, 1])
    # Membership at the smaller beta must imply membership at the larger.
    worst = float(np.max(np.where(inner, -outer, -np.inf)))
    return _result("lemma-set-nesting", worst, 1e-12)


def check_convexity(trials: int, seed: int) -> CheckResult:
    rng = np.random.Generator(np.random.Philox(key=seed))
    worst = -math.inf
    for s in (0.2, 0.5, 0.8):
        for frac in (0.1, 0.5, 0.9):
            beta = frac * s
            pts = []
            while sum(len(p) for p in pts) < 2 * trials:
                cand = rng.uniform(0.0, 1.0, (4 * trials, 2))
                ok = _residual_arr(cand[:, 0], cand[:, 1], s, beta) >= -1e-12
                pts.append(cand[ok])
            feas = np.concatenate(pts)[: 2 * trials]
            lam = rng.uniform(0.0, 1.0, trials)[:, None]
            mix = lam * feas[:trials] + (1.0 - lam) * feas[trials:]
            res = _residual_arr(mix[:, 0], mix[:, 1], s, beta)
            worst = max(worst, float(np.max(-res)))
    return _result("lemma-convexity", worst, 1e-12)


def check_hyperbola_degeneration() -> CheckResult:
    worst = 0.0
    for s in (0.2, 0.6, 0.9):
        q1 = np.linspace(s * s, 1.0, 501)
        # Residual must vanish on the hyperbola, and the beta=0 curve
        # recovered by bisection must land back on it.
        worst = max(worst, float(np.max(np.abs(_residual_arr(q1, s * s / q1, s, 0.0)))))
        for q in q1[:: max(len(q1) // 50, 1)]:
            lo, hi = 0.0, 1.0
            for _ in range(80):
                mid = 0.5 * (lo + hi)
                if _residual_arr(q, mid, s, 0.0) < 0.0:
                    lo = mid
                else:
                    hi = mid
            worst = max(worst, abs(q * 0.5 * (lo + hi) - s * s))
    return _result("lemma-hyperbola-degeneration", worst, 1e-12)


def check_curve_on_constraint(seed: int) -> CheckResult:
    rng = np.random.Generator(np.random.Philox(key=seed))
    worst = 0.0
    for _ in range(50):
        s = rng.uniform(0.1, 0.95)
        sp = rng.uniform(0.02, 0.98) * s
        ov = OverlapSpec(s, sp)
        t_lo, t_hi = solvers.t_slope_minus_one(ov), solvers.t_slope_zero(ov)
        for t in np.linspace(t_lo, t_hi, 64):
            pt = solvers.curve_point(float(t), ov)
            worst = max(worst, abs(_residual_arr(pt.q1, pt.q2, s, sp)))
    return _result("curve-on-constraint", worst, 1e-12)


def check_slope_range(seed: int) -> CheckResult:
    rng = np.random.Generator(np.random.Philox(key=seed))
    worst = 0.0
    for _ in range(20):
        s = rng.uniform(0.2, 0.9)
        sp = rng.uniform(0.1, 0.9) * s
        ov = OverlapSpec(s, sp)
        samples = solvers.qmin_curve(ov, 256)
        slopes = [smp.dq2_dt / smp.dq1_dt for smp in samples[1:]]
        increase_violation = max(
            (a - b for a, b in zip(slopes, slopes[1:])), default=-math.inf
        )
        worst = max(worst, increase_violation, abs(slopes[-1]))
        # Limit value -1 at the vertex, probed just inside the range.
        t_lo, t_hi = solvers.t_slope_minus_one(ov), solvers.t_slope_zero(ov)
        d1, d2 = solvers._curve_dq(t_lo + 1e-10 * (t_hi - t_lo), ov)
        worst = max(worst, abs(d2 / d1 + 1.0))
    return _result("curve-slope-range", worst, 1e-4)


def check_qmin_monotonicity(seed: int) -> CheckResult:
    rng = np.random.Generator(np.random.Philox(key=seed))
    worst = -math.inf
    for _ in range(20):
        s = rng.uniform(0.2, 0.9)
        sp_values = np.sort(rng.uniform(0.05, 0.95, 3)) * s
        etas = np.linspace(0.02, 0.5, 25)
        prev = None
        for sp in sp_values[::-1]:  # decreasing s'
            ov = OverlapSpec(s, float(sp))
            qs = np.array([float(solvers.qmin_at(Priors.of(e), ov)[0]) for e in etas])
            worst = max(worst, float(np.max(-np.diff(qs))))  # nondecreasing in eta1
            quds = np.array([float(solvers.q_ud(Priors.of(e), s)) for e in etas])
            worst = max(worst, float(np.max(qs - quds)))  # bounded by UD
            if prev is not None:
                worst = max(worst, float(np.max(prev - qs)))  # costlier as s' drops
            prev = qs
    return _result("qmin-monotonicity-and-ud-bound", worst, 1e-12)


def check_oracle_agreement(grid: int) -> CheckResult:
    cfg = OracleConfig()
    worst = 0.0
    for eta1 in np.linspace(0.02, 0.5, grid):
        pr = Priors.of(float(eta1))
        for s in np.linspace(0.1, 0.9, grid):
            for frac in np.linspace(0.0, 1.0, grid):
                ov = OverlapSpec(float(s), float(frac * s))
                q_solver = float(solvers.qmin_at(pr, ov)[0])
                q_oracle = float(oracle_qmin(pr, ov, cfg)[0])
                worst = max(worst, abs(q_solver - q_oracle))
    return _result("oracle-agreement", worst, 1e-6)


def check_round_trip(n: int, seed: int) -> CheckResult:
    rng = np.random.Generator(np.random.Philox(key=seed))
    worst = 0.0
    for _ in range(n):
        s = float(rng.uniform(0.15, 0.9))
        sp = float(rng.uniform(0.05, 0.95) * s)
        ov = OverlapSpec(s, sp)
        t_lo, t_hi = solvers.t_slope_minus_one(ov), solvers.t_slope_zero(ov)
        t = float(rng.uniform(t_lo + 0.02 * (t_hi - t_lo), t_hi - 0.02 * (t_hi - t_lo)))
        eta1 = solvers._eta1_at(t, ov)
        pt = solvers.curve_point(t, ov)
        q_min = eta1 * pt.q1 + (1.0 - eta1) * pt.q2
        pr = Priors.of(eta1)
        sp_back, _ = solvers.max_separation(pr, s, q_min)
        trade = solvers.tradeoff_at(pr, s, q_min)
        worst = max(worst, abs(sp_back - sp), abs(trade.s_prime - sp), abs(float(trade.q) - q_min))
    return _result("round-trip-consistency", worst, 1e-6)


def check_conic_consistency(n: int, seed: int) -> CheckResult:
    rng = np.random.Generator(np.random.Philox(key=seed))
    worst = 0.0
    for _ in range(n):
        eta1 = float(rng.uniform(0.05, 0.45))
        s = float(rng.uniform(0.2, 0.9))
        pr = Priors.of(eta1)
        q_cap = float(rng.uniform(0.3, 0.95)) * float(solvers.q_ud(pr, s))
        sp, theta = solvers.max_separation(pr, s, q_cap)
        if sp <= 0.0:
            continue
        r1, r2 = conics.tangency_residuals(theta, q_cap, pr, s, sp)
        worst = max(worst, abs(r1), abs(r2))
        cp = conics.ellipse_point(theta, q_cap, pr)
        lower, _ = conics.from_conic(cp)
        worst = max(worst, abs(pr.eta1 * lower.q1 + pr.eta2 * lower.q2 - q_cap))
        worst = max(worst, abs(_residual_arr(lower.q1, lower.q2, s, sp)))
    return _result("conic-tangency-consistency", worst, 1e-9)


def check_separation_onset(seed: int) -> CheckResult:
    rng = np.random.Generator(np.random.Philox(key=seed))
    worst = 0.0
    for _ in range(50):
        eta1 = float(rng.uniform(0.05, 0.5))
        pr = Priors.of(eta1)
        q_cap = float(rng.uniform(0.05, 0.9))
        s_cr = solvers.critical_overlap(pr, q_cap)
        if not 0.0 < s_cr < 1.0:
            continue
        # Full separation saturates the budget exactly at the onset.
        worst = max(worst, abs(float(solvers.q_ud(pr, s_cr)) - q_cap))
        if s_cr > 1e-3:
            sp_below, _ = solvers.max_separation(pr, max(s_cr - 1e-4, 1e-6), q_cap)
            worst = max(worst, abs(sp_below))
    return _result("full-separation-onset", worst, 1e-9)


def check_optics_exact(n: int, seed: int) -> CheckResult:
    rng = np.random.Generator(np.random.Philox(key=seed))
    worst = 0.0
    for _ in range(n):
        s = float(rng.uniform(0.05, 0.95))
        sp = float(rng.uniform(0.0, 1.0) * s)
        itf = optics.build_interferometer(s, sp)
        worst = max(worst, float(np.max(np.abs(itf.u.T @ itf.u - np.eye(3)))))
        worst = max(worst, float(np.max(np.abs(itf.bs1 @ itf.bs2 - itf.u))))
        q = itf.q_expected
        p = 1.0 - q
        out1 = optics.apply(itf, optics.protocol_input(s, 1)).amplitudes
        out2 = optics.apply(itf, optics.protocol_input(s, 2)).amplitudes
        exp1 = np.array([math.sqrt(p), 0.0, math.sqrt(q)])
        exp2 = np.array([math.sqrt(p) * sp, math.sqrt(p * (1.0 - sp * sp)), math.sqrt(q)])
        worst = max(worst, float(np.max(np.abs(out1 - exp1))))
        worst = max(worst, float(np.max(np.abs(out2 - exp2))))
    return _result("optics-exactness", worst, 1e-12)


def check_optics_statistics(shots: int, seed: int) -> CheckResult:
    worst = 0.0
    passed_all = True
    for sp in (0.3, 0.0):
        itf = optics.build_interferometer(0.6, sp)
        report = optics.certify_separation(itf, shots, seed)
        passed_all = passed_all and report["passed"]
        for run in report["runs"]:
            band = run["three_sigma"]
            if band > 0.0:
                worst = max(worst, abs(run["empirical_q"] - run["expected_q"]) / band)
    # Normalized three-sigma deviation; the pass flag also folds in the
    # chi-square and exact-matrix checks.
    worst = worst if passed_all else math.inf
    return _result("optics-statistics", worst, 1.0)


def run_all(
    oracle_grid: int = 10,
    trials: int = 10_000,
    round_trips: int = 1000,
    shots: int = 1_000_000,
    seed: int = 20250810,
) -> list[CheckResult]:
    """Run every check; returns one result per contract."""
    return [
        check_endpoint_identities(),
        check_set_nesting(trials, seed),
        check_convexity(trials, seed + 1),
        check_hyperbola_degeneration(),
        check_curve_on_constraint(seed + 2),
        check_slope_range(seed + 3),
        check_qmin_monotonicity(seed + 4),
        check_oracle_agreement(oracle_grid),
        check_round_trip(round_trips, seed + 5),
        check_conic_consistency(200, seed + 6),
        check_separation_onset(seed + 7),
        check_optics_exact(100, seed + 8),
        check_optics_statistics(shots, seed + 9),
    ]
