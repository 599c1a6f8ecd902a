"""Verification suites behind the command-line interface.

Each suite runs one family of checks against the thresholds in the run
configuration and returns CheckResult rows plus any artifacts (CSV/JSON
payloads) worth writing next to the report.  The suites are deliberately
independent of argparse so scripts and tests can drive them directly.
"""

from __future__ import annotations

import numpy as np

from .errors import WavelineError
from .eigenvalue import (
    WaveParameters,
    apply_action_operator,
    lambda_boundary_form,
    lambda_closed_form,
    lambda_lattice,
    predicted_action_eigenvalue,
)
from .minkowski import interval_squared
from .phase_flow import (
    FlowInitialData,
    frozen_coefficients,
    integrate_flow,
    flow_to_rows,
    sample_closed_form,
)
from .phase_functional import (
    consistency_gap,
    phase_difference,
    phase_geometry,
    predicted_phase_offset,
)
from .report import (
    CheckResult,
    failed_check,
    floor_check,
    threshold_check,
    window_check,
    write_csv,
    write_json,
)
from .stationarity import (
    classical_action,
    numeric_stationary_search,
    optimal_C,
    optimal_sigma1,
    reduced_lambda,
    stationary_lambda,
)
from .worldline import perturb_interior, straight_line

# Fixed benchmark for integrator fidelity: one decaying, one flat, two
# growing curvatures on the unit duration, plus a generic sigma1_0.
FLOW_BENCH_SIGMA2 = (-0.4, 0.0, 0.5, 2.0)
FLOW_BENCH_SIGMA1 = (1.0, -0.5, 0.25, 0.75)
FLOW_BENCH_C = 1.0

OPERATOR_STEP = 1e-4
OPERATOR_SIGMA1 = (0.3, 0.0, 0.0, 0.0)
OPERATOR_SIGMA2 = 0.2
OPERATOR_R1 = (0.05, 0.02, -0.01, 0.03)
OPERATOR_R2 = 0.1

# Contraction window for halving the RK4 step: ~2**4 with slack for
# error-constant drift between rungs.
CONTRACTION_LO, CONTRACTION_HI = 8.0, 32.0


class SuiteResult:
    def __init__(self, checks, artifacts=None):
        self.checks = list(checks)
        self.artifacts = dict(artifacts or {})

    def write_artifacts(self, out_dir):
        for name, (kind, payload) in self.artifacts.items():
            path = f"{out_dir}/{name}"
            if kind == "json":
                write_json(path, payload)
            elif kind == "csv":
                header, rows = payload
                write_csv(path, header, rows)
            else:
                raise ValueError(f"unknown artifact kind {kind!r}")


def _merge(*suites):
    checks, artifacts = [], {}
    for s in suites:
        checks.extend(s.checks)
        artifacts.update(s.artifacts)
    return SuiteResult(checks, artifacts)


def _amplitude(cfg):
    ds2 = interval_squared(cfg.a, cfg.b)
    return cfg.amplitude * np.sqrt(max(ds2, 0.0))


def _n_ladder(n):
    """Three lattice sizes a decade apart, capped by the configured N."""
    return sorted({max(8, n // 100), max(8, n // 10), n})


# --------------------------------------------------------------------------
# flow fidelity


def flow_suite(cfg):
    """RK4 against the exact flow on the fixed unit-duration benchmark."""
    tol = cfg.tolerances.flow_tol
    sigma2_set = cfg.sigma2_values or FLOW_BENCH_SIGMA2
    n_top = max(8, min(cfg.N, 1000))
    ladder = sorted({max(4, n_top // 4), max(4, n_top // 2), n_top})

    checks, err_rows = [], []
    worst = {n: 0.0 for n in ladder}
    for s2 in sigma2_set:
        init = FlowInitialData(np.array(FLOW_BENCH_SIGMA1), s2)
        name = f"flow_accuracy[sigma2_0={s2:g}]"
        try:
            errs = {}
            for n in ladder:
                num = integrate_flow(init, FLOW_BENCH_C, n)
                exact = sample_closed_form(init, num.grid)
                errs[n] = max(
                    float(np.abs(num.sigma1 - exact.sigma1).max()),
                    float(np.abs(num.sigma2 - exact.sigma2).max()),
                )
                err_rows.append((s2, n, errs[n]))
                worst[n] = max(worst[n], errs[n])
        except WavelineError as exc:
            checks.append(failed_check(name, exc))
            continue
        checks.append(threshold_check(name, errs[n_top], tol))

    if len(ladder) >= 2 and worst[ladder[-1]] > 0:
        ratio = worst[ladder[-2]] / worst[ladder[-1]]
        checks.append(
            window_check(
                "flow_step_halving_contraction", ratio, CONTRACTION_LO, CONTRACTION_HI
            )
        )

    artifacts = {
        "flow_errors.csv": ("csv", (("sigma2_0", "N", "max_abs_error"), err_rows)),
    }
    try:
        init = FlowInitialData(np.array(FLOW_BENCH_SIGMA1), cfg.sigma2_0)
        num = integrate_flow(init, FLOW_BENCH_C, n_top)
        exact = sample_closed_form(init, num.grid)
        rows = np.column_stack([flow_to_rows(num), exact.sigma1, exact.sigma2])
        artifacts["flow.csv"] = (
            "csv",
            (
                ("c", "sigma1_0", "sigma1_1", "sigma1_2", "sigma1_3", "sigma2",
                 "exact_sigma1_0", "exact_sigma1_1", "exact_sigma1_2",
                 "exact_sigma1_3", "exact_sigma2"),
                [tuple(map(float, r)) for r in rows],
            ),
        )
    except WavelineError as exc:
        checks.append(failed_check(f"flow_trace[sigma2_0={cfg.sigma2_0:g}]", exc))

    return SuiteResult(checks, artifacts)


# --------------------------------------------------------------------------
# eigenvalue agreement and world-line independence


def _random_lambda_set(rng):
    """One random (init, a, b, m, C) with the flow regular on [0, C]."""
    c = rng.uniform(0.3, 1.2)
    while True:
        s2 = rng.uniform(-0.25, 1.2)
        if 1.0 + 2.0 * s2 * c >= 0.4:
            break
    s1 = rng.uniform(-1.0, 1.0, size=4)
    a = rng.uniform(-0.5, 0.5, size=4)
    delta = np.concatenate([[rng.uniform(1.0, 2.2)], rng.uniform(-0.4, 0.4, size=3)])
    m = rng.uniform(0.2, 1.8)
    return FlowInitialData(s1, s2), a, a + delta, m, c


def lambda_agreement_checks(cfg):
    """Closed form vs boundary form vs lattice over random parameter sets."""
    rng = np.random.default_rng(cfg.seed)
    worst = 0.0
    for _ in range(cfg.n_lambda_sets):
        init, a, b, m, c = _random_lambda_set(rng)
        w = straight_line(a, b, c, cfg.N)
        flow = sample_closed_form(init, w.grid)
        values = np.array(
            [
                lambda_closed_form(init, a, b, m, c),
                lambda_boundary_form(flow, a, b, m).total,
                lambda_lattice(w, flow, m),
            ]
        )
        spread = (values.max() - values.min()) / max(1.0, np.abs(values).max())
        worst = max(worst, float(spread))
    return [
        threshold_check(
            "lambda_three_form_agreement",
            worst,
            cfg.tolerances.lambda_tol,
            detail=f"max relative spread over {cfg.n_lambda_sets} random parameter sets",
        )
    ]


def _independence_spreads(cfg, coefficients_for):
    """Spread of the lattice eigenvalue over random interior perturbations.

    ``coefficients_for(init, grid)`` supplies the coefficient samples, so the
    same machinery measures both the flowing (should be independent) and the
    frozen (negative control, must not be) cases.
    """
    s2 = cfg.sigma2_0 if abs(cfg.sigma2_0) > 1e-9 else 0.5
    c_run = cfg.run_duration()
    init = FlowInitialData(optimal_sigma1(s2, cfg.a, cfg.b, c_run), s2)
    amp = _amplitude(cfg)
    ladder = _n_ladder(cfg.N)
    spreads = []
    for n in ladder:
        base = straight_line(cfg.a, cfg.b, c_run, n)
        flow = coefficients_for(init, base.grid)
        lams = [
            lambda_lattice(perturb_interior(base, amp, cfg.seed + 1 + k), flow, cfg.m)
            for k in range(cfg.n_perturbations)
        ]
        lams.append(lambda_lattice(base, flow, cfg.m))
        spreads.append(float(np.ptp(lams)))
    return np.array(ladder), np.array(spreads)


def _fitted_order(ns, spreads):
    if np.any(spreads <= 0):
        return float("inf")  # exactly independent already
    slope = np.polyfit(np.log(ns), np.log(spreads), 1)[0]
    return float(-slope)


def independence_checks(cfg):
    """Eigenvalue must stop caring about the interior as the lattice refines."""
    coeffs = frozen_coefficients if cfg.negative_control else sample_closed_form
    ns, spreads = _independence_spreads(cfg, coeffs)
    order = _fitted_order(ns, spreads)
    rows = [(int(n), float(s)) for n, s in zip(ns, spreads)]
    checks = [
        floor_check(
            "lambda_worldline_independence_order",
            order,
            2.0,
            detail="fitted convergence order of the perturbation spread"
            + (" [negative control: frozen coefficients]" if cfg.negative_control else ""),
        )
    ]
    return checks, rows


def violation_control_checks(cfg):
    """Meta-check: the independence measurement must catch frozen coefficients."""
    ns, spreads = _independence_spreads(cfg, frozen_coefficients)
    order = _fitted_order(ns, spreads)
    detected = order < 1.0 and spreads[-1] > 10.0 * cfg.tolerances.lambda_tol
    return [
        CheckResult(
            name="lambda_violation_detected",
            passed=bool(detected),
            value=float(spreads[-1]),
            tolerance=10.0 * cfg.tolerances.lambda_tol,
            detail=f"frozen-coefficient spread must stay large (order {order:.2f})",
        )
    ]


def lambda_suite(cfg, with_control=False):
    checks = []
    artifacts = {}
    try:
        checks.extend(lambda_agreement_checks(cfg))
    except WavelineError as exc:
        checks.append(failed_check("lambda_three_form_agreement", exc))
    try:
        indep, rows = independence_checks(cfg)
        checks.extend(indep)
        artifacts["lambda_spreads.csv"] = (
            "csv", (("N", "perturbation_spread"), rows)
        )
    except WavelineError as exc:
        checks.append(failed_check("lambda_worldline_independence_order", exc))
    if with_control and not cfg.negative_control:
        try:
            checks.extend(violation_control_checks(cfg))
        except WavelineError as exc:
            checks.append(failed_check("lambda_violation_detected", exc))

    try:
        c_run = cfg.run_duration()
        init = FlowInitialData(cfg.run_sigma1_0(), cfg.sigma2_0)
        w = straight_line(cfg.a, cfg.b, c_run, cfg.N)
        flow = sample_closed_form(init, w.grid)
        breakdown = lambda_boundary_form(flow, cfg.a, cfg.b, cfg.m)
        payload = breakdown.as_dict()
        payload["closed_form"] = lambda_closed_form(init, cfg.a, cfg.b, cfg.m, c_run)
        payload["lattice"] = lambda_lattice(w, flow, cfg.m)
        artifacts["lambda_breakdown.json"] = ("json", payload)
    except WavelineError as exc:
        checks.append(failed_check("lambda_breakdown", exc))
    return SuiteResult(checks, artifacts)


# --------------------------------------------------------------------------
# stationarity and the classical limit


def _degeneracy_grid(c_star):
    # Nine curvatures spanning decay to strong growth, scaled so that
    # D(C*) = 1 + x stays safely positive for every entry.
    xs = (-0.8, -0.4, 0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0)
    return tuple(x / (2.0 * c_star) for x in xs)


def stationarity_suite(cfg):
    tol = cfg.tolerances.stationarity_tol
    checks = []
    artifacts = {}
    try:
        c_exact = optimal_C(cfg.a, cfg.b, cfg.m, branch=cfg.branch)
        scan_grid = _degeneracy_grid(c_exact)
        report = numeric_stationary_search(
            cfg.a,
            cfg.b,
            cfg.m,
            sigma2_0=cfg.sigma2_0,
            tol=tol,
            branch=cfg.branch,
            sigma2_scan=scan_grid,
        )
        action = classical_action(cfg.a, cfg.b, cfg.m, branch=cfg.branch)
        checks.append(
            threshold_check("stationary_duration", abs(report.C_star - c_exact), tol)
        )
        checks.append(
            threshold_check("stationary_eigenvalue", abs(report.lambda_star - action), tol)
        )
        lam0 = report.sigma2_scan[0][1]
        worst = max(abs(lam - lam0) for _, lam in report.sigma2_scan)
        checks.append(
            threshold_check(
                "curvature_degeneracy",
                worst,
                cfg.tolerances.degeneracy_tol,
                detail=f"eigenvalue drift across {len(scan_grid)} curvature values at C*",
            )
        )
        for branch in (1, -1):
            gap = abs(
                stationary_lambda(cfg.a, cfg.b, cfg.m, branch=branch)
                - classical_action(cfg.a, cfg.b, cfg.m, branch=branch)
            )
            checks.append(
                threshold_check(f"classical_limit_identity[branch={branch:+d}]", gap, 1e-12)
            )

        artifacts["stationarity_report.json"] = ("json", report.as_dict())
        artifacts["sigma2_scan.csv"] = (
            "csv",
            (("sigma2_0", "lambda"), [(s, l) for s, l in report.sigma2_scan]),
        )
        sweep_c = np.linspace(0.3, 2.5, 100) * c_exact
        artifacts["sweep_lambda_vs_C.csv"] = (
            "csv",
            (
                ("C", "lambda"),
                [(float(c), float(reduced_lambda(c, cfg.a, cfg.b, cfg.m))) for c in sweep_c],
            ),
        )
    except WavelineError as exc:
        checks.append(failed_check("stationary_search", exc))
    return SuiteResult(checks, artifacts)


# --------------------------------------------------------------------------
# operator oracle


def operator_suite(cfg):
    """Probe the action operator by brute finite differences at small N.

    The probe coefficients are fixed small numbers (geometry, mass, and
    hbar_tilde still come from the configuration): the point is to test the
    coefficient algebra, and that test is parameter-independent.
    """
    tol = cfg.tolerances.operator_tol
    checks = []
    try:
        w = straight_line(cfg.a, cfg.b, cfg.run_duration(), cfg.operator_N)
        cases = (
            (
                "operator_exact_free",
                WaveParameters(
                    FlowInitialData(np.zeros(4), 0.0), cfg.m, cfg.hbar_tilde
                ),
                1e-15,
            ),
            (
                "operator_phase_only",
                WaveParameters(
                    FlowInitialData(np.array(OPERATOR_SIGMA1), OPERATOR_SIGMA2),
                    cfg.m,
                    cfg.hbar_tilde,
                ),
                tol,
            ),
            (
                "operator_phase_and_modulus",
                WaveParameters(
                    FlowInitialData(np.array(OPERATOR_SIGMA1), OPERATOR_SIGMA2),
                    cfg.m,
                    cfg.hbar_tilde,
                    r1_0=np.array(OPERATOR_R1),
                    r2_0=OPERATOR_R2,
                ),
                tol,
            ),
        )
        for name, params, case_tol in cases:
            predicted = predicted_action_eigenvalue(params, w)
            probed = apply_action_operator(params, w, h=OPERATOR_STEP)
            rel = abs(probed - predicted) / max(1.0, abs(predicted))
            checks.append(
                threshold_check(name, rel, case_tol, detail="relative to the predicted value")
            )
        # The imaginary part of the probe must reproduce the reality
        # quadrature; reuse the richest case for it.
        params = cases[-1][1]
        predicted = predicted_action_eigenvalue(params, w)
        probed = apply_action_operator(params, w, h=OPERATOR_STEP)
        rel = abs(probed.imag - predicted.imag) / max(1.0, abs(predicted.imag))
        checks.append(
            threshold_check("operator_imaginary_part", rel, tol,
                            detail="imaginary part vs -hbar_tilde * reality quadrature")
        )
    except WavelineError as exc:
        checks.append(failed_check("operator_oracle", exc))
    return SuiteResult(checks)


# --------------------------------------------------------------------------
# phase functional consistency


def phase_suite(cfg):
    tol = cfg.tolerances.phase_tol
    s2 = cfg.sigma2_0 if abs(cfg.sigma2_0) > 1e-9 else 0.5
    checks = []
    artifacts = {}
    try:
        c_run = cfg.run_duration()
        amp = _amplitude(cfg)
        base = straight_line(cfg.a, cfg.b, c_run, cfg.N)
        w = perturb_interior(base, amp, cfg.seed + 1)
        checks.append(
            threshold_check("phase_two_clock_consistency", consistency_gap(w, s2), tol)
        )

        diffs = np.array(
            [
                phase_difference(perturb_interior(base, amp, cfg.seed + 1 + k), s2)
                for k in range(cfg.n_phase_perturbations)
            ]
        )
        mean = float(diffs.mean())
        rel_std = float(diffs.std()) / (1.0 + abs(mean))
        checks.append(
            threshold_check(
                "phase_trajectory_independence",
                rel_std,
                1e-8,
                detail=f"relative std of phase_q - phase_c over "
                f"{cfg.n_phase_perturbations} trajectories",
            )
        )

        geo = phase_geometry(s2, cfg.a, cfg.b, c_run)
        s1_opt = optimal_sigma1(s2, cfg.a, cfg.b, c_run)
        ident = float(np.abs(geo.x_tilde + s1_opt / s2).max())
        checks.append(threshold_check("phase_center_identity", ident, 1e-12))

        artifacts["phase_report.json"] = (
            "json",
            {
                "sigma2_0": s2,
                "Q": geo.Q,
                "x_tilde": [float(v) for v in geo.x_tilde],
                "measured_mean_difference": mean,
                "predicted_offset": float(
                    predicted_phase_offset(s2, cfg.a, cfg.b, c_run)
                ),
            },
        )
    except WavelineError as exc:
        checks.append(failed_check("phase_consistency", exc))
    return SuiteResult(checks, artifacts)


# --------------------------------------------------------------------------


def verify_suite(cfg):
    """Every check family, plus the negative-control meta-check."""
    return _merge(
        flow_suite(cfg),
        lambda_suite(cfg, with_control=True),
        stationarity_suite(cfg),
        operator_suite(cfg),
        phase_suite(cfg),
    )


SUITES = {
    "flow": flow_suite,
    "lambda": lambda_suite,
    "stationary": stationarity_suite,
    "phase": phase_suite,
    "verify": verify_suite,
}
