"""Two coordinate systems for the phase, and the bridge between them.

The phase accumulated along a world line can be written either on the
invariant clock c with the flowing coefficients,

    phase_c = integral( sigma1(c).x + (1/2) sigma2(c) x.x ) dc,

or, after trading c for the logarithmic clock q = ln D(c) and completing
the square around the shifted center x_tilde, as the purely geometric

    phase_q = (1/4) integral( (x - x_tilde).(x - x_tilde) ) dq .

Because sigma1(c)/sigma2(c) is constant along the flow, the two differ by
the *trajectory-independent* constant (Q/4) x_tilde.x_tilde, where
Q = ln D(C) is the total logarithmic duration.  The consistency gap
measured here is the failure of that identity on a sampled world line; it
should vanish at second order in the lattice spacing for any trajectory.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import DegenerateQ, FlowSingularity
from .eigenvalue import _inner
from .minkowski import as_four_vector, dot
from .phase_flow import FlowInitialData, require_shared_grid, sample_closed_form
from .stationarity import optimal_sigma1

# |Q| below this leaves the rescaled clock with no room to tick.
Q_FLOOR = 1e-12


@dataclass(frozen=True)
class PhaseGeometry:
    """Logarithmic duration and shifted center for one coefficient choice."""

    Q: float
    x_tilde: np.ndarray
    sigma2_0: float
    C: float


def log_duration(sigma2_0, C):
    """Q = ln(1 + 2 sigma2_0 C); requires the flow regular on [0, C]."""
    d = 1.0 + 2.0 * float(sigma2_0) * float(C)
    if d <= 0:
        raise FlowSingularity(
            f"D(C)={d!r} is not positive",
            c_star=None if sigma2_0 >= 0 else -0.5 / float(sigma2_0),
        )
    return float(np.log(d))


def shift_point(a, b, Q):
    """Center x_tilde = -(b - e^Q a) / (e^Q - 1) of the rescaled-clock phase.

    This is where the stationary phase parks its quadratic: for the
    stationary sigma1_0 one has x_tilde = -sigma1_0 / sigma2_0 exactly.
    Q = 0 (no curvature) leaves the center undefined.
    """
    if abs(Q) < Q_FLOOR:
        raise DegenerateQ(f"|Q|={abs(Q):g} leaves the shifted center undefined")
    a = as_four_vector(a)
    b = as_four_vector(b)
    em1 = np.expm1(Q)
    return -(b - (em1 + 1.0) * a) / em1


def phase_geometry(sigma2_0, a, b, C):
    q = log_duration(sigma2_0, C)
    return PhaseGeometry(Q=q, x_tilde=shift_point(a, b, q), sigma2_0=float(sigma2_0), C=float(C))


def phase_eval_c(w, flow):
    """Invariant-clock phase quadrature for a sampled world line."""
    require_shared_grid(w.grid, flow.grid)
    x = w.points
    integrand = _inner(flow.sigma1, x) + 0.5 * flow.sigma2 * _inner(x, x)
    return float(np.trapezoid(integrand, w.grid))


def phase_eval_q(points, q_grid, x_tilde):
    """Rescaled-clock phase: (1/4) integral (x - x_tilde)^2 dq, signed in Q.

    ``points`` are the events resampled at the q nodes; a decreasing
    ``q_grid`` (sigma2_0 < 0, so Q < 0) yields the correctly signed value.
    """
    d = np.asarray(points, dtype=float) - as_four_vector(x_tilde)
    return float(np.trapezoid(0.25 * _inner(d, d), np.asarray(q_grid, dtype=float)))


def resample_on_log_clock(w, sigma2_0, n_q=None):
    """World-line events at uniform q nodes, via cubic spline in c.

    Returns (q_grid, points).  The map c(q) = expm1(q) / (2 sigma2_0) sends
    [0, Q] onto [0, C] monotonically for either sign of sigma2_0.
    """
    q_total = log_duration(sigma2_0, w.C)
    if abs(q_total) < Q_FLOOR:
        raise DegenerateQ("sigma2_0 = 0 collapses the logarithmic clock")
    n_q = w.N if n_q is None else int(n_q)
    q_grid = np.linspace(0.0, q_total, n_q + 1)
    c_of_q = np.clip(np.expm1(q_grid) / (2.0 * float(sigma2_0)), 0.0, w.C)
    spline = CubicSpline(w.grid, w.points, axis=0)
    return q_grid, spline(c_of_q)


def phase_difference(w, sigma2_0):
    """phase_q - phase_c for one world line, with the stationary sigma1_0.

    Across trajectories sharing endpoints this should be the constant
    (Q/4) x_tilde.x_tilde, up to quadrature error.
    """
    sigma1_0 = optimal_sigma1(sigma2_0, w.a, w.b, w.C)
    flow = sample_closed_form(FlowInitialData(sigma1_0, float(sigma2_0)), w.grid)
    geo = phase_geometry(sigma2_0, w.a, w.b, w.C)
    q_grid, pts_q = resample_on_log_clock(w, sigma2_0)
    return phase_eval_q(pts_q, q_grid, geo.x_tilde) - phase_eval_c(w, flow)


def predicted_phase_offset(sigma2_0, a, b, C):
    """The trajectory-independent constant (Q/4) x_tilde.x_tilde."""
    geo = phase_geometry(sigma2_0, a, b, C)
    return 0.25 * geo.Q * dot(geo.x_tilde, geo.x_tilde)


def consistency_gap(w, sigma2_0):
    """|measured (phase_q - phase_c) - predicted offset| for one world line."""
    return abs(
        phase_difference(w, sigma2_0)
        - predicted_phase_offset(sigma2_0, w.a, w.b, w.C)
    )
