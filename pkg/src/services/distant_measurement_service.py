"""
distant_measurement_service realizes decompositions of a minimal-term mixture as outcomes of a
yes-no measurement on an opposite subsystem.

The mixture ρ is purified to |ω⟩ = r^{1/2}|1⟩_o|1⟩ + (1 - r)^{1/2}|2⟩_o|2⟩. Expanding |ω⟩ in the
eigenbasis {|μ1⟩_o, |μ2⟩_o} of a (q, λ)-measurement gives |ω⟩ = |μ1⟩_o|φ1'⟩ + |μ2⟩_o|φ2'⟩, and the
normalized |φi'⟩ with weights ⟨φi'|φi'⟩ are exactly the (p, θ)-decomposition with

    q = (w/r)^{1/2} p,   λ = 2π - θ        (decomposition -> measurement)
    p = (r/w)^{1/2} q,   w = (2r - 1) q^2 + (1 - r),   θ = 2π - λ        (measurement -> decomposition)
"""
import logging
import math

import numpy as np

from common import constants, utils
from common.custom_exceptions import UndefinedConditionalStateException
from models.measurement_model import MeasurementBranch, MeasurementOutcome, SchmidtState, YesNoMeasurement
from models.mixture_model import IDENTITY_BASIS, MinimalMixture, PairDecomposition, RangeState, orthonormal_basis
from models.state_model import CompositeVector, Operator, StateVector
from services import decomposition_service, linear_algebra_service

OBSERVABLE_LABELS = (1.0, 2.0)


def purify(rho: MinimalMixture, opposite_basis=None) -> SchmidtState:
    """
    purify builds the Schmidt form |ω⟩ with positive real coefficients. The opposite basis is canonical
    unless supplied; any orthonormal pair gives a valid purification.
    """

    opposite = orthonormal_basis(IDENTITY_BASIS if opposite_basis is None else opposite_basis)
    amps = np.zeros(4, dtype=np.complex128)
    for index, weight in enumerate((rho.r, rho.r_prime)):
        amps += math.sqrt(weight) * np.kron(opposite[:, index], rho.basis[:, index])
    return SchmidtState(rho, CompositeVector.normalized(amps), opposite)


def two_slit_polarizer_state() -> SchmidtState:
    """
    The polarization-tagged two-slit state (|H⟩|ψ1⟩ + |V⟩|ψ2⟩)/√2 with H = |1⟩_o, V = |2⟩_o,
    ψ1 = |1⟩, ψ2 = |2⟩.
    """

    horizontal, vertical = StateVector.basis(0), StateVector.basis(1)
    psi_1, psi_2 = StateVector.basis(0), StateVector.basis(1)
    amps = (
        linear_algebra_service.tensor(horizontal, psi_1).amps + linear_algebra_service.tensor(vertical, psi_2).amps
    )
    return SchmidtState(MinimalMixture(0.5), CompositeVector.normalized(amps))


def analyzer_measurement(angle: float) -> YesNoMeasurement:
    """
    analyzer_measurement maps a linear-polarization analyzer at angle α from H towards V, whose pass
    state is cos α|H⟩ + sin α|V⟩, to its (q, λ) label. ±π/4 are the erasure and counter-erasure settings.
    """

    cos_a, sin_a = math.cos(angle), math.sin(angle)
    lam = 0.0 if cos_a * sin_a >= 0.0 else math.pi
    return YesNoMeasurement(q=min(abs(cos_a), 1.0), lam=lam)


def measurement_for_decomposition(rho: MinimalMixture, rs: RangeState) -> YesNoMeasurement:
    """The one (q, λ)-measurement on |ω⟩ that gives rise to the (p, θ)-decomposition."""

    w = decomposition_service.weight_for(rho, rs)
    q = math.sqrt(w / rho.r) * rs.p
    return YesNoMeasurement(q=min(q, 1.0), lam=utils.TWO_PI - rs.theta)


def decomposition_for_measurement(rho: MinimalMixture, m: YesNoMeasurement) -> tuple[RangeState, float]:
    """The (p, θ)-decomposition and its weight w induced by a (q, λ)-measurement on |ω⟩."""

    r = rho.r
    w = (2.0 * r - 1.0) * m.q * m.q + (1.0 - r)
    p = math.sqrt(r / w) * m.q
    return RangeState(p=min(p, 1.0), theta=utils.TWO_PI - m.lam), w


def mu_vector(omega: SchmidtState, m: YesNoMeasurement, branch: MeasurementBranch) -> StateVector:
    """|μ_branch⟩_o in canonical opposite coordinates."""

    return StateVector.normalized(omega.opposite_basis @ m.mu_coefficients(branch))


def expand_in_measurement_basis(omega: SchmidtState, m: YesNoMeasurement) -> tuple[np.ndarray, np.ndarray]:
    """
    expand_in_measurement_basis returns the unnormalized |φ1'⟩, |φ2'⟩ of |ω⟩ = Σ |μi⟩_o|φi'⟩,
    obtained as the partial scalar products (⟨μi|_o ⊗ 1)|ω⟩.
    """

    coefficients = omega.composite.coefficient_matrix()
    return tuple(mu_vector(omega, m, branch).amps.conj() @ coefficients for branch in MeasurementBranch)


def luders_select(omega: SchmidtState, m: YesNoMeasurement, branch: MeasurementBranch) -> MeasurementOutcome:
    """
    luders_select applies (|μ⟩⟨μ| ⊗ 1) to |ω⟩ for the selected branch and normalizes.

    Raises:
        UndefinedConditionalStateException: if the branch probability is below 1e-14.
    """

    branch = MeasurementBranch(branch)
    phi_prime = expand_in_measurement_basis(omega, m)[branch.index]
    probability = float(np.vdot(phi_prime, phi_prime).real)
    if probability < constants.MIN_BRANCH_PROBABILITY:
        raise UndefinedConditionalStateException(
            f"Branch {branch.value} has probability {probability:.3e}; its conditional state is undefined"
        )

    conditional_state = StateVector.normalized(phi_prime)
    post_measurement_state = linear_algebra_service.tensor(mu_vector(omega, m, branch), conditional_state)
    logging.debug("Lüders branch %s: probability %.17g", branch.value, probability)
    return MeasurementOutcome(
        branch=branch,
        probability=min(probability, 1.0),
        conditional_state=conditional_state,
        post_measurement_state=post_measurement_state,
    )


def nonselective_measure(omega: SchmidtState, m: YesNoMeasurement) -> Operator:
    """
    nonselective_measure returns the 4x4 mixture Σ ⟨φi'|φi'⟩ |μi⟩⟨μi| ⊗ (|φi'⟩⟨φi'| / ⟨φi'|φi'⟩)
    left behind by the all-results version of the measurement. Branches of zero weight drop out.
    """

    entries = np.zeros((4, 4), dtype=np.complex128)
    for branch, phi_prime in zip(MeasurementBranch, expand_in_measurement_basis(omega, m)):
        mu = mu_vector(omega, m, branch)
        entries += np.kron(mu.projector().entries, np.outer(phi_prime, phi_prime.conj()))
    return Operator.state(entries)


def induced_decomposition(omega: SchmidtState, m: YesNoMeasurement) -> PairDecomposition:
    """The decomposition of the subsystem state implied by the nonselective measurement."""

    first = luders_select(omega, m, MeasurementBranch.MU1)
    second = luders_select(omega, m, MeasurementBranch.MU2)
    return PairDecomposition(w=first.probability, phi=first.conditional_state, phi_c=second.conditional_state)


def observable_matrix(omega: SchmidtState, m: YesNoMeasurement) -> Operator:
    """A_o = 1·|μ1⟩⟨μ1| + 2·|μ2⟩⟨μ2| in canonical opposite coordinates."""

    entries = np.zeros((2, 2), dtype=np.complex128)
    for label, branch in zip(OBSERVABLE_LABELS, MeasurementBranch):
        entries += label * mu_vector(omega, m, branch).projector().entries
    return Operator(entries)


def commutator_norm(omega: SchmidtState, m: YesNoMeasurement) -> float:
    """Max-norm of [A_o, ρ_o]."""

    rho_o = linear_algebra_service.partial_trace_subsystem(omega.composite)
    return float(np.max(np.abs(observable_matrix(omega, m).commutator(rho_o).entries)))


def is_distant_measurement(omega: SchmidtState, m: YesNoMeasurement) -> bool:
    """
    is_distant_measurement tests [A_o, ρ_o] = 0. Equivalently the induced decomposition is orthogonal:
    for r < 1/2 only the Schmidt basis itself (q ∈ {0, 1}) qualifies, for r = 1/2 every measurement does.
    """

    return commutator_norm(omega, m) <= constants.COMMUTATOR_TOL


def induced_decomposition_is_orthogonal(omega: SchmidtState, m: YesNoMeasurement) -> bool:
    return abs(induced_decomposition(omega, m).overlap()) <= constants.ORTHOGONALITY_TOL
