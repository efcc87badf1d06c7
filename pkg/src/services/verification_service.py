"""
verification_service runs the invariant suites of the decomposition and distant-measurement layers
over a deterministic parameter grid and a seeded random sample, and reports the worst residual of each.

Grid: r = k/(2·steps) for k = 1..steps, p and q = j/steps for j = 0..steps, θ and λ in steps of π/4.
"""
import logging
import math

import numpy as np

from common import constants
from common.custom_exceptions import CounterErasureException, DomainValidationException
from models.measurement_model import MeasurementBranch, YesNoMeasurement
from models.mixture_model import MinimalMixture, RangeState
from models.state_model import StateVector
from models.verification_model import SuiteResult, VerificationReport
from services import decomposition_service, distant_measurement_service, linear_algebra_service

ANGLES = tuple(k * math.pi / 4.0 for k in range(8))
UNIQUENESS_MIN_GAP = 1e-3
R_SAMPLE_RANGE = (0.05, 0.5)
DEGENERATE_SAMPLES = 100


def grid_r(steps: int) -> list:
    return [0.5 * k / steps for k in range(1, steps + 1)]


def grid_unit(steps: int) -> list:
    return [j / steps for j in range(steps + 1)]


def _grid(steps: int):
    for r in grid_r(steps):
        rho = MinimalMixture(r)
        for p in grid_unit(steps):
            for theta in ANGLES:
                yield rho, RangeState(p, theta)


def _case(rho: MinimalMixture, **params) -> dict:
    return dict({"r": rho.r}, **params)


def check_reconstruction(steps: int) -> SuiteResult:
    suite = SuiteResult("reconstruction", tolerance=constants.IDENTITY_TOL)
    for rho, rs in _grid(steps):
        residual = decomposition_service.reconstruction_residual(rho, decomposition_service.counter_state(rho, rs))
        suite.record(residual, residual <= suite.tolerance, _case(rho, p=rs.p, theta=rs.theta))
    return suite


def check_weight_bounds(steps: int) -> SuiteResult:
    suite = SuiteResult("weight_bounds", tolerance=constants.IDENTITY_TOL)
    for rho, rs in _grid(steps):
        w = decomposition_service.weight_for(rho, rs)
        violation = max(0.0, rho.r - w, w - rho.r_prime)
        suite.record(violation, violation <= suite.tolerance, _case(rho, p=rs.p, w=w))
    return suite


def check_monotonicity(steps: int) -> SuiteResult:
    """For r < 1/2, w strictly decreases along the p grid; the residual is the largest increase."""

    suite = SuiteResult("monotonicity", tolerance=0.0)
    for r in grid_r(steps):
        rho = MinimalMixture(r)
        if rho.is_degenerate:
            continue
        weights = [decomposition_service.weight_for(rho, RangeState(p)) for p in grid_unit(steps)]
        for index, (before, after) in enumerate(zip(weights, weights[1:])):
            increase = after - before
            suite.record(max(increase, 0.0), increase < 0.0, _case(rho, p=grid_unit(steps)[index + 1]))
    return suite


def check_degenerate_orthogonality(steps: int) -> SuiteResult:
    suite = SuiteResult("degenerate_orthogonality", tolerance=constants.IDENTITY_TOL)
    rho = MinimalMixture(0.5)
    for p in grid_unit(steps):
        for theta in ANGLES:
            decomposition = decomposition_service.counter_state(rho, RangeState(p, theta))
            residual = max(abs(decomposition.w - 0.5), abs(decomposition.overlap()))
            suite.record(residual, residual <= suite.tolerance, _case(rho, p=p, theta=theta))
    return suite


def _random_range_state(rng: np.random.Generator) -> tuple:
    rho = MinimalMixture(float(rng.uniform(*R_SAMPLE_RANGE)))
    return rho, RangeState(float(rng.uniform(0.0, 1.0)), float(rng.uniform(0.0, 2.0 * math.pi)))


def check_uniqueness(samples: int, rng: np.random.Generator) -> SuiteResult:
    """No weight w'' other than w completes |φ⟩ with a pure state; the residual is the count of such cases."""

    suite = SuiteResult("uniqueness", tolerance=0.0)
    for _ in range(samples):
        rho, rs = _random_range_state(rng)
        w = decomposition_service.weight_for(rho, rs)
        w_alt = w
        while abs(w_alt - w) <= UNIQUENESS_MIN_GAP:
            w_alt = float(rng.uniform(0.0, 0.999))
        candidate = decomposition_service.completion_residual(rho, rs, w_alt)
        pure = decomposition_service.is_psd(candidate) and decomposition_service.is_pure_state_operator(candidate)
        suite.record(float(pure), not pure, _case(rho, p=rs.p, theta=rs.theta, w_alt=w_alt))
    return suite


def check_lemma_a1(samples: int, rng: np.random.Generator) -> SuiteResult:
    """
    For s in (0, 1] the residual state exists and reproduces ρ; for s in (1, min(2, 1/w)) the
    candidate is never positive semidefinite.
    """

    suite = SuiteResult("lemma_a1", tolerance=constants.IDENTITY_TOL)
    for _ in range(samples):
        rho, rs = _random_range_state(rng)
        decomposition = decomposition_service.counter_state(rho, rs)
        w = decomposition.w

        s = 1.0 - float(rng.uniform(0.0, 1.0))
        try:
            residual_state = decomposition_service.lemma_a1_residual(rho, rs, s)
            rebuilt = w * s * decomposition.phi.projector().entries + (1.0 - w * s) * residual_state.entries
            residual = float(np.max(np.abs(rebuilt - rho.matrix.entries)))
            valid = residual <= suite.tolerance
        except CounterErasureException as ex:
            logging.debug("lemma_a1_residual rejected s=%s: %s", s, ex)
            residual, valid = math.inf, False
        suite.record(residual, valid, _case(rho, p=rs.p, theta=rs.theta, s=s))

        upper = min(2.0, 1.0 / w)
        s_over = 1.0 + float(rng.uniform(0.01, 0.99)) * (upper - 1.0)
        confirmed = decomposition_service.verify_no_overweight(rho, rs, s_over)
        suite.record(0.0 if confirmed else 1.0, confirmed, _case(rho, p=rs.p, theta=rs.theta, s=s_over))
    return suite


def _measurement_grid(steps: int):
    for r in grid_r(steps):
        rho = MinimalMixture(r)
        for q in grid_unit(steps):
            for lam in ANGLES:
                yield rho, YesNoMeasurement(q, lam)


def check_roundtrip_decomposition(steps: int) -> SuiteResult:
    """(p, θ) -> (q, λ) -> (p, θ)."""

    suite = SuiteResult("roundtrip_decomposition", tolerance=constants.IDENTITY_TOL)
    for rho, rs in _grid(steps):
        m = distant_measurement_service.measurement_for_decomposition(rho, rs)
        back, w = distant_measurement_service.decomposition_for_measurement(rho, m)
        residual = max(rs.coefficient_distance(back), abs(w - decomposition_service.weight_for(rho, rs)))
        suite.record(residual, residual <= suite.tolerance, _case(rho, p=rs.p, theta=rs.theta))
    return suite


def check_roundtrip_measurement(steps: int) -> SuiteResult:
    """(q, λ) -> (p, θ) -> (q, λ)."""

    suite = SuiteResult("roundtrip_measurement", tolerance=constants.IDENTITY_TOL)
    for rho, m in _measurement_grid(steps):
        rs, _ = distant_measurement_service.decomposition_for_measurement(rho, m)
        back = distant_measurement_service.measurement_for_decomposition(rho, rs)
        residual = float(
            np.max(np.abs(m.mu_coefficients(MeasurementBranch.MU1) - back.mu_coefficients(MeasurementBranch.MU1)))
        )
        suite.record(residual, residual <= suite.tolerance, _case(rho, q=m.q, lam=m.lam))
    return suite


def check_weight_routes(steps: int) -> SuiteResult:
    """w from the (p, θ) formula, from the (q, λ) formula and as the Mu1 branch probability."""

    suite = SuiteResult("weight_routes", tolerance=constants.IDENTITY_TOL)
    for rho, rs in _grid(steps):
        omega = distant_measurement_service.purify(rho)
        m = distant_measurement_service.measurement_for_decomposition(rho, rs)
        w_direct = decomposition_service.weight_for(rho, rs)
        _, w_measurement = distant_measurement_service.decomposition_for_measurement(rho, m)
        w_luders = distant_measurement_service.luders_select(omega, m, MeasurementBranch.MU1).probability
        residual = max(abs(w_direct - w_measurement), abs(w_direct - w_luders), abs(w_measurement - w_luders))
        suite.record(residual, residual <= suite.tolerance, _case(rho, p=rs.p, theta=rs.theta))
    return suite


def check_luders_counter_states(steps: int) -> SuiteResult:
    """The Mu1 and Mu2 conditional states are φ and φ^c up to a global phase."""

    suite = SuiteResult("luders_counter_states", tolerance=constants.IDENTITY_TOL)
    for rho, rs in _grid(steps):
        omega = distant_measurement_service.purify(rho)
        m = distant_measurement_service.measurement_for_decomposition(rho, rs)
        decomposition = decomposition_service.counter_state(rho, rs)
        residual = 0.0
        for branch, expected in ((MeasurementBranch.MU1, decomposition.phi), (MeasurementBranch.MU2, decomposition.phi_c)):
            outcome = distant_measurement_service.luders_select(omega, m, branch)
            residual = max(residual, 1.0 - abs(outcome.conditional_state.inner(expected)))
        suite.record(residual, residual <= suite.tolerance, _case(rho, p=rs.p, theta=rs.theta))
    return suite


def check_distant_criterion(samples: int, rng: np.random.Generator) -> SuiteResult:
    """
    The commutator test and the orthogonality of the induced decomposition agree, including the
    Schmidt-basis measurements q ∈ {0, 1}; every measurement is distant for r = 1/2.
    """

    suite = SuiteResult("distant_criterion", tolerance=0.0)
    cases = []
    for index in range(samples):
        r = float(rng.uniform(*R_SAMPLE_RANGE))
        q = float(rng.uniform(0.0, 1.0))
        if index % 10 == 0:
            q = float(index % 20 == 0)
        cases.append((r, q, float(rng.uniform(0.0, 2.0 * math.pi))))

    for r, q, lam in cases:
        omega = distant_measurement_service.purify(MinimalMixture(r))
        m = YesNoMeasurement(q, lam)
        distant = distant_measurement_service.is_distant_measurement(omega, m)
        orthogonal = distant_measurement_service.induced_decomposition_is_orthogonal(omega, m)
        suite.record(float(distant != orthogonal), distant == orthogonal, {"r": r, "q": m.q, "lam": m.lam})

    omega = distant_measurement_service.purify(MinimalMixture(0.5))
    for _ in range(DEGENERATE_SAMPLES):
        m = YesNoMeasurement(float(rng.uniform(0.0, 1.0)), float(rng.uniform(0.0, 2.0 * math.pi)))
        distant = distant_measurement_service.is_distant_measurement(omega, m)
        suite.record(float(not distant), distant, {"r": 0.5, "q": m.q, "lam": m.lam})
    return suite


def check_erasure() -> SuiteResult:
    """The 45° measurement on the two-slit polarizer state revives |ψ⟩ on Mu1 and |ψ^c⟩ on Mu2."""

    suite = SuiteResult("erasure", tolerance=constants.IDENTITY_TOL)
    omega = distant_measurement_service.two_slit_polarizer_state()
    m = YesNoMeasurement(1.0 / math.sqrt(2.0), 0.0)
    expected = {
        MeasurementBranch.MU1: StateVector.normalized([1.0, 1.0]),
        MeasurementBranch.MU2: StateVector.normalized([1.0, -1.0]),
    }
    for branch, state in expected.items():
        outcome = distant_measurement_service.luders_select(omega, m, branch)
        residual = max(
            abs(outcome.probability - 0.5),
            1.0 - abs(outcome.conditional_state.inner(state)),
        )
        suite.record(residual, residual <= suite.tolerance, {"branch": branch.value})
    return suite


def check_counter_involution(steps: int) -> SuiteResult:
    """The counter state of the counter state is the original state, up to phase."""

    suite = SuiteResult("counter_involution", tolerance=constants.IDENTITY_TOL)
    for rho, rs in _grid(steps):
        counter = decomposition_service.counter_range_state(rho, rs)
        back = decomposition_service.counter_range_state(rho, counter)
        phi = decomposition_service.range_state_vector(rho, rs)
        phi_back = decomposition_service.range_state_vector(rho, back)
        phi_c = decomposition_service.counter_state(rho, rs).phi_c
        phi_c_param = decomposition_service.range_state_vector(rho, counter)
        residual = max(
            1.0 - abs(phi.inner(phi_back)),
            1.0 - abs(phi_c.inner(phi_c_param)),
        )
        passed = linear_algebra_service.states_equal_up_to_phase(
            phi, phi_back, suite.tolerance
        ) and linear_algebra_service.states_equal_up_to_phase(phi_c, phi_c_param, suite.tolerance)
        suite.record(residual, passed, _case(rho, p=rs.p, theta=rs.theta))
    return suite


def run_all(
    grid_steps: int = constants.DEFAULT_VERIFY_GRID_STEPS,
    samples: int = constants.DEFAULT_VERIFY_SAMPLES,
    seed: int = constants.DEFAULT_VERIFY_SEED,
) -> VerificationReport:
    """
    run_all executes every suite. The random suites draw from numpy.random.default_rng(seed), so a
    report is reproducible from its inputs.
    """

    if grid_steps < 1 or samples < 1:
        raise DomainValidationException(
            f"verify needs grid_steps >= 1 and samples >= 1, got grid_steps={grid_steps}, samples={samples}"
        )

    rng = np.random.default_rng(seed)
    report = VerificationReport(grid_steps=grid_steps, samples=samples, seed=seed)
    report.suites = [
        check_reconstruction(grid_steps),
        check_weight_bounds(grid_steps),
        check_monotonicity(grid_steps),
        check_degenerate_orthogonality(grid_steps),
        check_uniqueness(samples, rng),
        check_lemma_a1(samples, rng),
        check_roundtrip_decomposition(grid_steps),
        check_roundtrip_measurement(grid_steps),
        check_weight_routes(grid_steps),
        check_luders_counter_states(grid_steps),
        check_distant_criterion(samples, rng),
        check_erasure(),
        check_counter_involution(grid_steps),
    ]
    for suite in report.suites:
        log = logging.info if suite.passed else logging.warning
        log(
            "Suite %s: %s cases, %s failures, max residual %.3e",
            suite.name,
            suite.cases,
            suite.failures,
            suite.max_residual,
        )
    return report
