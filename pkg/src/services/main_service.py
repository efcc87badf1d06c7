import logging
import math

from common import constants, utils
from common.custom_exceptions import DomainValidationException, VerificationFailedException
from models.measurement_model import MeasurementBranch, YesNoMeasurement
from models.mixture_model import MinimalMixture, RangeState
from models.run_spec_model import Command, OutputFormat, RunSpec
from models.screen_model import ScreenGrid
from models.simulation_model import SimConfig
from services import (
    decomposition_service,
    distant_measurement_service,
    ensemble_simulation_service,
    interference_service,
    linear_algebra_service,
    output_service,
    verification_service,
)


def _mixture(spec: RunSpec) -> MinimalMixture:
    return MinimalMixture(spec.param("r"))


def _range_state(spec: RunSpec) -> RangeState:
    return RangeState(spec.param("p"), spec.param("theta", 0.0))


def _measurement(spec: RunSpec) -> YesNoMeasurement:
    analyzer_deg = spec.param("analyzer_deg")
    if analyzer_deg is not None:
        return distant_measurement_service.analyzer_measurement(math.radians(analyzer_deg))
    return YesNoMeasurement(spec.param("q"), spec.param("lambda", 0.0))


def _range_state_dict(rs: RangeState) -> dict:
    return {"p": rs.p, "theta": rs.theta}


def _measurement_dict(m: YesNoMeasurement) -> dict:
    return {
        "q": m.q,
        "lambda": m.lam,
        "mu1": m.mu_coefficients(MeasurementBranch.MU1),
        "mu2": m.mu_coefficients(MeasurementBranch.MU2),
    }


def _slit_pair(spec: RunSpec):
    grid = ScreenGrid(spec.param("x_min"), spec.param("x_max"), spec.param("n_grid"))
    return interference_service.gaussian_two_slit(
        grid, spec.param("separation"), spec.param("width"), spec.param("tilt")
    )


def decompose(spec: RunSpec) -> dict:
    rho, rs = _mixture(spec), _range_state(spec)
    decomposition = decomposition_service.counter_state(rho, rs)
    return {
        "w": decomposition.w,
        "w_prime": decomposition.w_prime,
        "range_state": _range_state_dict(rs),
        "phi": decomposition.phi.amps,
        "counter_range_state": _range_state_dict(decomposition_service.counter_range_state(rho, rs)),
        "phi_c": decomposition.phi_c.amps,
        "overlap": decomposition.overlap(),
        "orthogonal": abs(decomposition.overlap()) <= constants.IDENTITY_TOL,
        "reconstruction_residual": decomposition_service.reconstruction_residual(rho, decomposition),
    }


def counter(spec: RunSpec) -> dict:
    rho, rs = _mixture(spec), _range_state(spec)
    decomposition = decomposition_service.counter_state(rho, rs)
    counter_rs = decomposition_service.counter_range_state(rho, rs)
    # the counter state of the counter state is the original state again
    back = decomposition_service.range_state_vector(rho, decomposition_service.counter_range_state(rho, counter_rs))
    return {
        "w": decomposition.w,
        "counter_weight": decomposition.w_prime,
        "counter_range_state": _range_state_dict(counter_rs),
        "phi_c": decomposition.phi_c.amps,
        "involution_residual": 1.0 - abs(back.inner(decomposition.phi)),
    }


def measurement_for(spec: RunSpec) -> dict:
    rho, rs = _mixture(spec), _range_state(spec)
    m = distant_measurement_service.measurement_for_decomposition(rho, rs)
    return dict(_measurement_dict(m), w=decomposition_service.weight_for(rho, rs))


def decomposition_for(spec: RunSpec) -> dict:
    rho, m = _mixture(spec), _measurement(spec)
    rs, w = distant_measurement_service.decomposition_for_measurement(rho, m)
    decomposition = decomposition_service.counter_state(rho, rs)
    return {
        "p": rs.p,
        "theta": rs.theta,
        "w": w,
        "phi": decomposition.phi.amps,
        "phi_c": decomposition.phi_c.amps,
    }


def purify(spec: RunSpec) -> dict:
    omega = distant_measurement_service.purify(_mixture(spec))
    return {
        "r": omega.r,
        "amplitudes": omega.composite.amps,
        "opposite_basis": omega.opposite_basis,
        "rho_s": linear_algebra_service.partial_trace_opposite(omega.composite).entries,
        "rho_o": linear_algebra_service.partial_trace_subsystem(omega.composite).entries,
    }


def measure(spec: RunSpec) -> dict:
    omega = distant_measurement_service.purify(_mixture(spec))
    m = _measurement(spec)
    requested = spec.param("branch")
    branches = [MeasurementBranch(requested)] if requested else list(MeasurementBranch)

    outcomes = []
    for branch in branches:
        outcome = distant_measurement_service.luders_select(omega, m, branch)
        outcomes.append(
            {
                "branch": outcome.branch.value,
                "probability": outcome.probability,
                "conditional_state": outcome.conditional_state.amps,
                "post_measurement_state": outcome.post_measurement_state.amps,
            }
        )

    mixed = distant_measurement_service.nonselective_measure(omega, m)
    return {
        "measurement": _measurement_dict(m),
        "outcomes": outcomes,
        "nonselective_state": mixed.entries,
        "nonselective_subsystem_state": linear_algebra_service.trace_out_opposite(mixed).entries,
    }


def distant_check(spec: RunSpec) -> dict:
    omega = distant_measurement_service.purify(_mixture(spec))
    m = _measurement(spec)
    induced = distant_measurement_service.induced_decomposition(omega, m)
    return {
        "distant": distant_measurement_service.is_distant_measurement(omega, m),
        "commutator_norm": distant_measurement_service.commutator_norm(omega, m),
        "observable": distant_measurement_service.observable_matrix(omega, m).entries,
        "induced_decomposition_orthogonal": distant_measurement_service.induced_decomposition_is_orthogonal(omega, m),
        "induced_w": induced.w,
        "induced_overlap": induced.overlap(),
    }


def pattern(spec: RunSpec):
    pair = _slit_pair(spec)
    pattern_set = interference_service.patterns(pair)
    if spec.output_format is OutputFormat.CSV:
        return output_service.pattern_csv(pattern_set)

    # fringes live where both slit waves reach, around the midpoint between the slits
    half_window = max(spec.param("width"), pair.grid.spacing)
    window = (-half_window, half_window)
    return {
        "slit_overlap": pair.overlap(),
        "integrals": pattern_set.integrals(),
        "cancellation_residual": interference_service.cancellation_residual(pair, pattern_set),
        "visibility_window": window,
        "visibility": {
            "p_i": interference_service.fringe_visibility(pattern_set.p_interference, pair.grid, window),
            "p_i_c": interference_service.fringe_visibility(pattern_set.p_counter, pair.grid, window),
        },
        "x": pair.grid.points,
        "p_i": pattern_set.p_interference,
        "p_i_c": pattern_set.p_counter,
        "p_mix": pattern_set.p_incoherent,
    }


def simulate(spec: RunSpec):
    rho, m = _mixture(spec), _measurement(spec)
    pair = _slit_pair(spec) if spec.param("screen", False) else None
    histogram_range = spec.param("histogram_range")
    config = SimConfig(
        seed=spec.param("seed"),
        n_photons=spec.param("n"),
        mixture=rho,
        measurement=m,
        pair=pair,
        bins=spec.param("bins", constants.DEFAULT_HISTOGRAM_BINS),
        histogram_range=tuple(histogram_range) if histogram_range else None,
    )
    report = ensemble_simulation_service.run(config, workers=utils.get_simulation_workers())

    if spec.output_format is OutputFormat.CSV:
        if report.histograms is None:
            raise DomainValidationException("csv output of simulate needs screen sampling (--screen)")
        return output_service.histogram_csv(report.histograms)

    result = report.to_dict()
    if pair is not None:
        omega = distant_measurement_service.purify(rho)
        analytic = interference_service.branch_patterns(pair, distant_measurement_service.induced_decomposition(omega, m))
        result["chi_squared"] = {
            label: chi.to_dict() for label, chi in ensemble_simulation_service.chi_squared_against(report, analytic).items()
        }
    return result


def verify(spec: RunSpec) -> dict:
    return verification_service.run_all(
        grid_steps=spec.param("grid_steps"), samples=spec.param("samples"), seed=spec.param("seed")
    )


HANDLERS = {
    Command.DECOMPOSE: decompose,
    Command.COUNTER: counter,
    Command.MEASUREMENT_FOR: measurement_for,
    Command.DECOMPOSITION_FOR: decomposition_for,
    Command.PURIFY: purify,
    Command.MEASURE: measure,
    Command.DISTANT_CHECK: distant_check,
    Command.PATTERN: pattern,
    Command.SIMULATE: simulate,
    Command.VERIFY: verify,
}


def execute(spec: RunSpec) -> int:
    """
    execute runs one command and emits its artifact.

    Raises:
        CounterErasureException: on domain errors; VerificationFailedException after the report of a
            failing `verify` has been emitted.

    Returns:
        int: 0 on success.
    """

    logging.info("Running command '%s' with %s", spec.command.value, spec.params)
    result = HANDLERS[spec.command](spec)

    verification_report = None
    if spec.command is Command.VERIFY:
        verification_report = result
        result = verification_report.to_dict()

    if isinstance(result, str):
        text = result
    else:
        text = output_service.json_artifact(spec.command.value, spec.params, result)
    output_service.emit(text, spec.output_path)

    if verification_report is not None and not verification_report.passed:
        failed = [suite.name for suite in verification_report.suites if not suite.passed]
        raise VerificationFailedException(f"Invariant suites failed: {', '.join(failed)}", report=verification_report)

    logging.info("Command '%s' finished", spec.command.value)
    return 0
