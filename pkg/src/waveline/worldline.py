"""Discrete world lines on a uniform lattice of the invariant parameter.

A world line is N+1 event samples x_i at c_i = i*C/N.  Endpoints are part
of the data and every constructor here pins them exactly; interior nodes
are free.  Velocities use second-order stencils throughout (central in
the bulk, one-sided at the ends), which keeps every downstream quadrature
second-order accurate in the lattice spacing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_trapezoid

from .errors import BadGrid, IndexOutOfRange, NonPositiveLapse
from .minkowski import as_four_vector

# Fine grid used to normalize random perturbation fields so the same seed
# names the same continuum bump regardless of the lattice it lands on.
_NORM_GRID = 2048


@dataclass(frozen=True)
class Worldline:
    """Sampled trajectory: ``points[i]`` is the event at c = i*C/N."""

    C: float
    N: int
    points: np.ndarray

    def __post_init__(self):
        if not (self.C > 0) or not np.isfinite(self.C):
            raise BadGrid(f"invariant duration must be positive, got {self.C!r}")
        if self.N < 2:
            raise BadGrid(f"need at least 2 intervals, got N={self.N!r}")
        pts = np.array(self.points, dtype=float)
        if pts.shape != (self.N + 1, 4):
            raise BadGrid(f"points shape {pts.shape} does not match N={self.N}")
        if not np.all(np.isfinite(pts)):
            raise BadGrid("world-line samples must be finite")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def grid(self):
        return np.linspace(0.0, self.C, self.N + 1)

    @property
    def dc(self):
        return self.C / self.N

    @property
    def a(self):
        return self.points[0]

    @property
    def b(self):
        return self.points[-1]


def straight_line(a, b, C, N):
    """Uniform-velocity world line from ``a`` to ``b``, endpoints exact."""
    a = as_four_vector(a)
    b = as_four_vector(b)
    t = np.linspace(0.0, 1.0, N + 1)[:, None]
    pts = a + t * (b - a)
    pts[0] = a
    pts[-1] = b
    return Worldline(float(C), int(N), pts)


def perturb_interior(base, amplitude, seed, modes=6):
    """Add a random smooth displacement field that vanishes at both endpoints.

    The field is a superposition of ``modes`` sine bumps sin(k*pi*c/C) with
    coefficients drawn from ``seed``, scaled so its peak Euclidean norm over
    c is ``amplitude``.  The peak is measured on a fixed fine reference grid,
    so one seed denotes one continuum trajectory: resampling the same seed on
    finer lattices converges to it instead of chasing a moving target.
    """
    coef = np.random.default_rng(seed).standard_normal((modes, 4))
    k = np.arange(1, modes + 1)

    def field(c):
        return np.sin(np.pi * np.outer(c / base.C, k)) @ coef  # (len(c), 4)

    ref = field(np.linspace(0.0, base.C, _NORM_GRID + 1))
    peak = np.linalg.norm(ref, axis=1).max()
    if peak == 0.0 or amplitude == 0.0:
        return base
    pts = base.points.copy()
    pts[1:-1] += (amplitude / peak) * field(base.grid[1:-1])
    return Worldline(base.C, base.N, pts)


def velocities(w):
    """dx/dc at every node, shape (N+1, 4), second-order accurate."""
    return np.gradient(w.points, w.dc, axis=0, edge_order=2)


def velocity(w, i):
    """dx/dc at node ``i`` from the same stencils as :func:`velocities`."""
    if not 0 <= i <= w.N:
        raise IndexOutOfRange(f"node {i} outside 0..{w.N}")
    x, h = w.points, w.dc
    if i == 0:
        return (-3.0 * x[0] + 4.0 * x[1] - x[2]) / (2.0 * h)
    if i == w.N:
        return (3.0 * x[-1] - 4.0 * x[-2] + x[-3]) / (2.0 * h)
    return (x[i + 1] - x[i - 1]) / (2.0 * h)


def reparametrize(chi, T=1.0):
    """Invariant clock c(tau) accumulated from a lapse profile.

    ``chi`` is sampled uniformly on [0, T].  Returns ``(tau, c)`` arrays of
    equal length with c[0] = 0; c is built by cumulative trapezoid rule, so
    it is exactly the quadrature-consistent clock for the sampled lapse.
    The profile may touch zero at isolated samples (e.g. chi(0) = 0), but a
    negative sample or a step that fails to advance the clock is an error.
    """
    chi = np.asarray(chi, dtype=float)
    if chi.ndim != 1 or chi.size < 2:
        raise BadGrid(f"lapse must be a 1-d profile with >= 2 samples, got shape {chi.shape}")
    if not np.all(np.isfinite(chi)) or not (T > 0):
        raise BadGrid("lapse samples and horizon must be finite and T > 0")
    if np.any(chi < 0):
        raise NonPositiveLapse(f"lapse dips to {chi.min()!r}")
    tau = np.linspace(0.0, float(T), chi.size)
    c = cumulative_trapezoid(chi, tau, initial=0.0)
    if np.any(np.diff(c) <= 0):
        raise NonPositiveLapse("lapse fails to advance the invariant clock on some step")
    return tau, c
