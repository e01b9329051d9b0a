"""Independent numerical oracles shared by the test modules.

Everything here is deliberately written against the raw defining formulas
(constraint residual, dense grids, plain bisection) rather than the
package's own solvers, so agreement between the two is evidence and not
tautology.
"""

import numpy as np


def residual(q1, q2, s, beta):
    """Unitarity residual, vectorized, straight from its definition."""
    return beta * np.sqrt((1.0 - q1) * (1.0 - q2)) + np.sqrt(q1 * q2) - s


def dense_ud_min(eta1, s, n=20001, refine=80):
    """Minimum of eta1*q1 + eta2*q2 over the hyperbola q1*q2 = s**2.

    Dense grid over the full arc q1 in [s^2, 1] plus golden-section
    refinement of the best bracket; used as the ground truth for the
    discrimination closed form.
    """
    eta2 = 1.0 - eta1
    if s == 0.0:
        return 0.0
    q1 = np.linspace(s * s, 1.0, n)
    vals = eta1 * q1 + eta2 * s * s / q1
    i = int(np.argmin(vals))
    a, b = q1[max(i - 1, 0)], q1[min(i + 1, n - 1)]
    phi = (np.sqrt(5.0) - 1.0) / 2.0
    f = lambda x: eta1 * x + eta2 * s * s / x
    c, d = b - phi * (b - a), a + phi * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(refine):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + phi * (b - a)
            fd = f(d)
    return min(float(vals[i]), float(fc), float(fd))


def curve_q_raw(t, s, sp):
    """Constraint-curve point from the symmetric parametrization, inlined."""
    x = (1.0 - (1.0 + sp) * t) / (sp / s)
    y = (1.0 - (1.0 - sp) * t) / (sp / s)
    rx = np.sqrt(np.clip(1.0 - x * x, 0.0, None))
    ry = np.sqrt(np.clip(1.0 - y * y, 0.0, None))
    q1 = 0.5 * (1.0 - x * y + rx * ry)
    q2 = 0.5 * (1.0 - x * y - rx * ry)
    return q1, q2


def curve_dq_raw(t, s, sp):
    """Curve-point derivatives from the inlined parametrization."""
    x = (1.0 - (1.0 + sp) * t) / (sp / s)
    y = (1.0 - (1.0 - sp) * t) / (sp / s)
    rx = np.sqrt(1.0 - x * x)
    ry = np.sqrt(1.0 - y * y)
    q1, q2 = curve_q_raw(t, s, sp)
    d1 = np.sqrt(q1 * (1.0 - q1)) / (sp / s) * ((1.0 + sp) / rx + (1.0 - sp) / ry)
    d2 = np.sqrt(q2 * (1.0 - q2)) / (sp / s) * ((1.0 + sp) / rx - (1.0 - sp) / ry)
    return d1, d2


def lower_q2_bisect(q1, s, beta, iters=90):
    """Lower-half curve ordinate at fixed q1, by scalar bisection."""
    if beta == 0.0:
        return s * s / q1
    turn = q1 / (q1 + beta * beta * (1.0 - q1))
    lo, hi = 0.0, turn
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if residual(q1, mid, s, beta) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
