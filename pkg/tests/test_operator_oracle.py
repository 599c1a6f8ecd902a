"""Brute-force check that the coefficient algebra matches the operator.

The oracle never uses the integration-by-parts identities: it treats the
wave functional as a plain function of the interior node coordinates and
differentiates it numerically.  Agreement with the predicted eigenvalue is
therefore an independent test of the whole sigma/r bookkeeping, including
the delta(0) -> 1/dc lattice rule.
"""

import numpy as np
import pytest

from waveline.errors import FlowSingularity, NumericalUnderflow
from waveline.eigenvalue import (
    WaveParameters,
    apply_action_operator,
    operator_residual,
    predicted_action_eigenvalue,
)
from waveline.phase_flow import FlowInitialData
from waveline.worldline import perturb_interior, straight_line

A = np.zeros(4)
B = np.array([1.0, 0.0, 0.0, 0.0])

SIGMA_ONLY = WaveParameters(
    FlowInitialData(np.array([0.3, 0.0, 0.0, 0.0]), 0.2), m=1.0, hbar_tilde=1.0
)
SIGMA_AND_R = WaveParameters(
    FlowInitialData(np.array([0.3, 0.0, 0.0, 0.0]), 0.2),
    m=1.0,
    hbar_tilde=1.0,
    r1_0=np.array([0.05, 0.02, -0.01, 0.03]),
    r2_0=0.1,
)


def lattice(n=16, seed=None):
    w = straight_line(A, B, 1.0, n)
    if seed is not None:
        w = perturb_interior(w, 0.2, seed=seed)
    return w


class TestExactCases:
    def test_free_functional_is_exactly_m2c(self):
        params = WaveParameters(FlowInitialData(np.zeros(4), 0.0), m=1.3)
        w = lattice()
        assert apply_action_operator(params, w) == 1.3 * 1.3 * 1.0 + 0.0j
        assert operator_residual(params, w) == 0.0 + 0.0j


class TestQuadraticFunctionals:
    @pytest.mark.parametrize("params", [SIGMA_ONLY, SIGMA_AND_R],
                             ids=["sigma_only", "sigma_and_r"])
    def test_residual_within_tolerance(self, params):
        w = lattice()
        predicted = predicted_action_eigenvalue(params, w)
        rel = abs(operator_residual(params, w)) / max(1.0, abs(predicted))
        assert rel <= 1e-4

    def test_on_a_perturbed_worldline(self):
        w = lattice(seed=21)
        predicted = predicted_action_eigenvalue(SIGMA_AND_R, w)
        rel = abs(operator_residual(SIGMA_AND_R, w)) / max(1.0, abs(predicted))
        assert rel <= 1e-4

    def test_imaginary_part_tracks_reality_quadrature(self):
        w = lattice()
        probed = apply_action_operator(SIGMA_AND_R, w)
        predicted = predicted_action_eigenvalue(SIGMA_AND_R, w)
        assert probed.imag == pytest.approx(predicted.imag, rel=1e-6)
        # the modulus here is incompatible with the flow, so the
        # imaginary part must be visibly nonzero
        assert abs(predicted.imag) > 1.0

    def test_other_mass_and_hbar(self):
        params = WaveParameters(
            FlowInitialData(np.array([0.1, 0.05, 0.0, -0.08]), 0.35),
            m=0.6,
            hbar_tilde=0.5,
            r2_0=0.05,
        )
        w = lattice(n=12)
        predicted = predicted_action_eigenvalue(params, w)
        rel = abs(operator_residual(params, w)) / max(1.0, abs(predicted))
        assert rel <= 1e-4

    def test_probe_error_scales_quadratically_in_step(self):
        # residuals are dominated by the O(h^2) truncation of the central
        # differences; two decades of h should move them ~four decades
        w = lattice()
        r_coarse = abs(operator_residual(SIGMA_AND_R, w, h=1e-1))
        r_fine = abs(operator_residual(SIGMA_AND_R, w, h=1e-2))
        assert 30.0 < r_coarse / r_fine < 300.0


class TestGuards:
    def test_underflowing_modulus_rejected(self):
        params = WaveParameters(
            FlowInitialData(np.zeros(4), 0.0),
            m=1.0,
            r1_0=np.array([-3000.0, 0.0, 0.0, 0.0]),  # exp(-1500) at the base point
        )
        with pytest.raises(NumericalUnderflow):
            apply_action_operator(params, lattice())

    def test_singular_flow_rejected(self):
        params = WaveParameters(FlowInitialData(np.zeros(4), -0.5), m=1.0)
        with pytest.raises(FlowSingularity):
            apply_action_operator(params, lattice())
