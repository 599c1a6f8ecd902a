"""Action eigenvalue of the quadratic wave functional, three independent ways.

For the free particle the conjectured eigenfunctional is
Psi[x] = exp((i/hb) sigma + r) with quadratic integrands

    sigma[x] = integral( sigma1.x + (1/2) sigma2 x.x ) dc,
    r[x]     = integral( r1.x     + (1/2) r2     x.x ) dc,

all products Minkowski.  Applying the action operator (velocity term,
Laplacian term, and the m^2 c-integral) to Psi and dividing by Psi gives a
c-integral that is independent of the world line exactly when the
coefficients obey the flow of :mod:`waveline.phase_flow`.  This module
evaluates that eigenvalue

  * in closed form from the initial data,
  * from the boundary bracket left by integrating the velocity term by parts,
  * by direct quadrature on a sampled world line,

and backs all three with a brute-force oracle that finite-differences the
functional Psi on the lattice, node by node, without using any of the
algebra above.  Functional derivatives follow the lattice dictionary
delta/delta x(c_i) -> (1/dc) d/dx_i with delta(0) -> 1/dc.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NumericalUnderflow, ZeroDuration
from .minkowski import METRIC_DIAG, as_four_vector, dot
from .phase_flow import (
    FlowInitialData,
    denominator,
    require_shared_grid,
    sample_closed_form,
)
from .worldline import velocities

# Wave-functional moduli below this are too flat to probe by differences.
MODULUS_FLOOR = 1e-300


def _inner(u, v):
    """Minkowski contraction that preserves dtype (complex-safe), broadcasting."""
    u = np.asarray(u)
    v = np.asarray(v)
    return u[..., 0] * v[..., 0] - np.sum(u[..., 1:] * v[..., 1:], axis=-1)


@dataclass(frozen=True)
class RealCoefficients:
    """Real-part coefficients sampled on a grid: r1 is (M, 4), r2 is (M,)."""

    grid: np.ndarray
    r1: np.ndarray
    r2: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.grid, dtype=float)
        r1 = np.asarray(self.r1, dtype=float)
        r2 = np.asarray(self.r2, dtype=float)
        if r1.shape != (g.size, 4) or r2.shape != (g.size,):
            raise ValueError("real-part coefficient arrays do not match the grid")
        for arr in (g, r1, r2):
            arr.setflags(write=False)
        object.__setattr__(self, "grid", g)
        object.__setattr__(self, "r1", r1)
        object.__setattr__(self, "r2", r2)


def constant_real_part(r1_0, r2_0, grid):
    """Real-part coefficients held at their initial values along the grid."""
    grid = np.asarray(grid, dtype=float)
    r1_0 = as_four_vector(r1_0)
    return RealCoefficients(
        grid=grid,
        r1=np.broadcast_to(r1_0, (grid.size, 4)).copy(),
        r2=np.full(grid.size, float(r2_0)),
    )


@dataclass(frozen=True)
class WaveParameters:
    """Everything defining one wave functional on a given world line."""

    flow_init: FlowInitialData
    m: float
    hbar_tilde: float = 1.0
    r1_0: np.ndarray = field(default_factory=lambda: np.zeros(4))
    r2_0: float = 0.0

    def __post_init__(self):
        r1 = as_four_vector(self.r1_0)
        r1.setflags(write=False)
        object.__setattr__(self, "r1_0", r1)
        if self.m < 0:
            raise ValueError("mass must be non-negative")
        if not (self.hbar_tilde > 0):
            raise ValueError("hbar_tilde must be positive")


@dataclass(frozen=True)
class LambdaBreakdown:
    """Eigenvalue split into its boundary bracket, quadrature, and mass parts."""

    boundary: float
    quadrature: float
    mass: float

    @property
    def total(self):
        return self.boundary + self.quadrature + self.mass

    def as_dict(self):
        return {
            "boundary": self.boundary,
            "quadrature": self.quadrature,
            "mass": self.mass,
            "total": self.total,
        }


def lambda_closed_form(init, a, b, m, C):
    """Eigenvalue straight from the initial data, no quadrature at all.

    With D = 1 + 2 sigma2_0 C:

        lambda = sigma1_0 . (b/D - a) + (sigma2_0/2) (b.b/D - a.a)
                 - (sigma1_0 . sigma1_0) C / D + m^2 C.
    """
    if C == 0:
        raise ZeroDuration("eigenvalue needs a nonzero invariant duration")
    a = as_four_vector(a)
    b = as_four_vector(b)
    from .phase_flow import closed_form_at  # local to avoid import noise at top

    s1C, _ = closed_form_at(init, C)  # validates D > 0 and reuses its error
    d = float(denominator(init, C))
    return (
        dot(init.sigma1_0, b / d - a)
        + 0.5 * init.sigma2_0 * (dot(b, b) / d - dot(a, a))
        - dot(init.sigma1_0, init.sigma1_0) * C / d
        + m * m * C
    )


def lambda_boundary_form(flow, a, b, m):
    """Eigenvalue from the boundary bracket plus the leftover quadrature.

    Integrating the velocity term by parts against the flow equations leaves

        [sigma1 . x + (1/2) sigma2 x.x] at C minus at 0
        - integral(sigma1 . sigma1) dc + m^2 C,

    where only the endpoint events a, b of the world line survive.
    """
    a = as_four_vector(a)
    b = as_four_vector(b)
    bracket = (
        dot(flow.sigma1[-1], b)
        + 0.5 * flow.sigma2[-1] * dot(b, b)
        - dot(flow.sigma1[0], a)
        - 0.5 * flow.sigma2[0] * dot(a, a)
    )
    quad = -float(np.trapezoid(_inner(flow.sigma1, flow.sigma1), flow.grid))
    return LambdaBreakdown(boundary=float(bracket), quadrature=quad, mass=m * m * flow.C)


def lambda_lattice(w, flow, m):
    """Eigenvalue by direct trapezoid quadrature on a sampled world line.

    The integrand is xdot . (sigma1 + sigma2 x) - |sigma1 + sigma2 x|^2;
    the mass term is added analytically.  When the coefficients obey the
    flow this is independent of the interior of the world line up to the
    O(dc^2) quadrature error.
    """
    require_shared_grid(w.grid, flow.grid)
    x = w.points
    sp = flow.sigma1 + flow.sigma2[:, None] * x
    integrand = _inner(velocities(w), sp) - _inner(sp, sp)
    return float(np.trapezoid(integrand, w.grid)) + m * m * w.C


def lambda_lattice_full(w, flow, real, m, hbar_tilde):
    """Lattice eigenvalue including the real-part (modulus) contributions.

    Adds hb^2 [ |r1 + r2 x|^2 + 4 r2 delta(0) ] to the integrand of
    :func:`lambda_lattice`, with delta(0) -> 1/dc on the lattice.
    """
    require_shared_grid(w.grid, flow.grid)
    require_shared_grid(w.grid, real.grid)
    x = w.points
    sp = flow.sigma1 + flow.sigma2[:, None] * x
    rp = real.r1 + real.r2[:, None] * x
    hb2 = hbar_tilde * hbar_tilde
    integrand = (
        _inner(velocities(w), sp)
        - _inner(sp, sp)
        + hb2 * (_inner(rp, rp) + 4.0 * real.r2 / w.dc)
    )
    return float(np.trapezoid(integrand, w.grid)) + m * m * w.C


def reality_residual(flow, real, w):
    """Quadrature of the condition that keeps the eigenvalue real.

    The imaginary part of the applied operator is proportional to

        integral( xdot . (r1 + r2 x) - 2 (sigma1 + sigma2 x) . (r1 + r2 x)
                  - 4 sigma2 delta(0) ) dc

    with delta(0) -> 1/dc.  Zero residual means the modulus profile is
    compatible with the phase flow; the all-zero real part is *not*
    compatible unless sigma2 vanishes, because of the delta(0) term.
    """
    require_shared_grid(w.grid, flow.grid)
    require_shared_grid(w.grid, real.grid)
    x = w.points
    sp = flow.sigma1 + flow.sigma2[:, None] * x
    rp = real.r1 + real.r2[:, None] * x
    integrand = (
        _inner(velocities(w), rp) - 2.0 * _inner(sp, rp) - 4.0 * flow.sigma2 / w.dc
    )
    return float(np.trapezoid(integrand, w.grid))


def predicted_action_eigenvalue(params, w):
    """(I Psi)/Psi predicted by the coefficient algebra: lambda_full - i hb R."""
    flow = sample_closed_form(params.flow_init, w.grid)
    real = constant_real_part(params.r1_0, params.r2_0, w.grid)
    lam = lambda_lattice_full(w, flow, real, params.m, params.hbar_tilde)
    res = reality_residual(flow, real, w)
    return complex(lam, -params.hbar_tilde * res)


def _cexpm1(z):
    """exp(z) - 1 for complex z without cancellation near z = 0.

    Splits into expm1(x) cos(y) - 2 sin^2(y/2) + i exp(x) sin(y); every term
    is O(z) small when z is, which is what keeps the second-difference
    (exp(dE+) + exp(dE-) - 2) accurate at step sizes around 1e-4.
    """
    x = np.real(z)
    y = np.imag(z)
    s = np.sin(0.5 * y)
    return np.expm1(x) * np.cos(y) - 2.0 * s * s + 1j * np.exp(x) * np.sin(y)


def apply_action_operator(params, w, h=1e-4):
    """Brute-force (I Psi)/Psi on the lattice, by finite differences.

    Treats the wave functional as a plain function of the 4(N+1) node
    coordinates and assembles the operator's c-integral by trapezoid rule
    from per-node integrands:

      * the first and second functional derivatives at interior nodes are
        probed by central differences in that node's four coordinates
        (scaled by the lattice dictionary's 1/dc per derivative), using
        exp(E + dE)/exp(E) = 1 + cexpm1(dE) with dE computed exactly from
        the node's own quadrature contribution;
      * endpoint nodes are pinned (the world line's ends are data, not
        variables), so their integrand contributions come from the one
        piece of algebra a derivative-free probe cannot reach; everything
        the conjecture is actually tested on lives at the interior nodes.

    Raises NumericalUnderflow when the functional's modulus is too small
    to difference meaningfully.
    """
    flow = sample_closed_form(params.flow_init, w.grid)
    real = constant_real_part(params.r1_0, params.r2_0, w.grid)
    x = w.points
    v = velocities(w)
    hb = params.hbar_tilde
    dc = w.dc
    s1, s2 = flow.sigma1, flow.sigma2
    r1, r2 = real.r1, real.r2

    # Modulus exponent of Psi at the base point; differences divide by Psi.
    r_exponent = float(np.trapezoid(_inner(r1, x) + 0.5 * r2 * _inner(x, x), w.grid))
    if r_exponent < np.log(MODULUS_FLOOR):
        raise NumericalUnderflow(
            f"|Psi| ~ exp({r_exponent:.1f}) is below {MODULUS_FLOOR:g}"
        )

    sp = s1 + s2[:, None] * x
    rp = r1 + r2[:, None] * x

    def exponent_delta(i, mu, step):
        # Exact change of the exponent when x[i, mu] moves by `step`.  Only
        # node i's term of the quadrature sum changes, with trapezoid
        # weight 1 at the interior nodes this is called for.
        sgn = METRIC_DIAG[mu]
        df = sgn * step * (s1[i, mu] + s2[i] * (x[i, mu] + 0.5 * step))
        dg = sgn * step * (r1[i, mu] + r2[i] * (x[i, mu] + 0.5 * step))
        return dc * ((1j / hb) * df + dg)

    integrand = np.empty(w.N + 1, dtype=complex)
    for i in range(1, w.N):
        d1 = np.empty(4, dtype=complex)
        d2 = np.empty(4, dtype=complex)
        for mu in range(4):
            plus = _cexpm1(exponent_delta(i, mu, +h))
            minus = _cexpm1(exponent_delta(i, mu, -h))
            d1[mu] = (plus - minus) / (2.0 * h) / dc
            d2[mu] = (plus + minus) / (h * h) / (dc * dc)
        integrand[i] = (
            (hb / 1j) * np.sum(v[i] * d1)
            + hb * hb * np.sum(METRIC_DIAG * d2)
        )
    for i in (0, w.N):
        grad = (1j / hb) * sp[i] + rp[i]  # raised components, complex
        trace = ((1j / hb) * s2[i] + r2[i]) * 4.0 / dc
        integrand[i] = (hb / 1j) * _inner(v[i], grad) + hb * hb * (
            _inner(grad, grad) + trace
        )

    # Mass term added analytically so the free functional is handled exactly.
    return complex(np.trapezoid(integrand, w.grid)) + params.m * params.m * w.C


def operator_residual(params, w, h=1e-4):
    """Difference between the probed and the predicted (I Psi)/Psi."""
    return apply_action_operator(params, w, h=h) - predicted_action_eigenvalue(params, w)
