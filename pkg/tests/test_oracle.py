import numpy as np
import pytest

from statesep import (
    DomainError,
    OracleConfig,
    OverlapSpec,
    Priors,
    oracle_max_separation,
    oracle_qmin,
    q_ud,
    qmin_at,
)


def test_config_validation():
    OracleConfig()
    with pytest.raises(DomainError):
        OracleConfig(grid_size=10)
    with pytest.raises(DomainError):
        OracleConfig(tolerance=0.0)


def test_oracle_equal_priors_diagonal():
    q, pt = oracle_qmin(Priors.of(0.5), OverlapSpec(0.6, 0.3))
    assert float(q) == pytest.approx(3.0 / 7.0, abs=1e-8)
    assert pt.q1 == pytest.approx(pt.q2, abs=1e-6)


def test_oracle_full_separation_pivot():
    q, pt = oracle_qmin(Priors.of(0.1), OverlapSpec(0.6, 0.0))
    assert float(q) == pytest.approx(0.424, abs=1e-8)
    assert (pt.q1, pt.q2) == pytest.approx((1.0, 0.36), abs=1e-6)


def test_oracle_trivial_target():
    q, pt = oracle_qmin(Priors.of(0.37), OverlapSpec(0.5, 0.5))
    assert float(q) == 0.0
    assert (pt.q1, pt.q2) == (0.0, 0.0)


def test_oracle_swap_normalization():
    ov = OverlapSpec(0.6, 0.25)
    q_lo, pt_lo = oracle_qmin(Priors.of(0.2), ov)
    q_hi, pt_hi = oracle_qmin(Priors.of(0.8), ov)
    assert float(q_lo) == pytest.approx(float(q_hi), abs=1e-12)
    # The minimum is flat, so the located point is ~sqrt(tol) less precise
    # than the value.
    assert (pt_hi.q1, pt_hi.q2) == pytest.approx((pt_lo.q2, pt_lo.q1), abs=1e-4)


def test_oracle_never_beaten_by_boundary_points():
    # 10^5 random points on the constraint curve, recovered by an inline
    # vectorized bisection; none may undercut the oracle minimum.
    rng = np.random.Generator(np.random.Philox(key=77))
    for eta1, s, sp in ((0.3, 0.6, 0.2), (0.5, 0.45, 0.3), (0.12, 0.8, 0.05)):
        beta = sp
        q_diag_lo, q_diag_hi = 0.0, 1.0
        for _ in range(80):
            mid = 0.5 * (q_diag_lo + q_diag_hi)
            if beta * (1 - mid) + mid - s < 0:
                q_diag_lo = mid
            else:
                q_diag_hi = mid
        q1 = rng.uniform(q_diag_hi, 1.0, 100_000)
        lo = np.zeros_like(q1)
        hi = q1 / (q1 + beta * beta * (1.0 - q1))
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            f = beta * np.sqrt((1 - q1) * (1 - mid)) + np.sqrt(q1 * mid) - s
            lo = np.where(f < 0, mid, lo)
            hi = np.where(f < 0, hi, mid)
        q2 = 0.5 * (lo + hi)
        values = np.minimum(
            eta1 * q1 + (1 - eta1) * q2, eta1 * q2 + (1 - eta1) * q1
        )
        q_star = float(oracle_qmin(Priors.of(eta1), OverlapSpec(s, sp))[0])
        assert q_star <= float(values.min()) + 1e-9


def test_oracle_monotone_in_target_overlap():
    # The bisection in oracle_max_separation leans on this monotonicity.
    for eta1, s in ((0.15, 0.7), (0.5, 0.4)):
        pr = Priors.of(eta1)
        qs = [
            float(oracle_qmin(pr, OverlapSpec(s, float(sp)))[0])
            for sp in np.linspace(0.0, s, 9)
        ]
        assert all(b <= a + 1e-9 for a, b in zip(qs, qs[1:]))


def test_oracle_agreement_small_grid():
    cfg = OracleConfig()
    worst = 0.0
    for eta1 in (0.05, 0.25, 0.5):
        pr = Priors.of(eta1)
        for s in (0.2, 0.55, 0.9):
            for frac in (0.0, 0.4, 0.95):
                ov = OverlapSpec(s, frac * s)
                a = float(qmin_at(pr, ov)[0])
                b = float(oracle_qmin(pr, ov, cfg)[0])
                worst = max(worst, abs(a - b))
    assert worst <= 1e-6


def test_oracle_max_separation_examples():
    assert oracle_max_separation(Priors.of(0.3), 0.4, 0.35) == pytest.approx(
        0.032, abs=2e-3
    )
    assert oracle_max_separation(Priors.of(0.5), 0.6, 0.3) == pytest.approx(
        3.0 / 7.0, abs=1e-6
    )
    pr = Priors.of(0.2)
    assert oracle_max_separation(pr, 0.5, float(q_ud(pr, 0.5)) + 0.05) == 0.0
