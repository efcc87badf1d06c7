"""
decomposition_service enumerates the two-term pure-state decompositions of a minimal-term mixture.

Every decomposition is labeled by the (p, θ) parameters of its first state |φ⟩; the weight w and the
counter state |φ^c⟩ follow uniquely:

    w     = r(1 - r) / (p^2 (1 - r) + (1 - p^2) r)
    |φ^c⟩ = [(r - w p^2)/(1 - w)]^{1/2} |1⟩ + [((1 - r) - w(1 - p^2))/(1 - w)]^{1/2} e^{i(θ + π)} |2⟩

For r < 1/2 the map p -> w is a strictly decreasing bijection of [0, 1] onto [r, 1 - r]. For r = 1/2
every decomposition has w = 1/2 and is orthogonal.
"""
import logging
import math

import numpy as np

from common import constants, utils
from common.custom_exceptions import DomainValidationException
from models.mixture_model import MinimalMixture, PairDecomposition, RangeState
from models.state_model import Operator, StateVector


def range_state_vector(rho: MinimalMixture, rs: RangeState) -> StateVector:
    """|φ⟩ = p|1⟩ + (1 - p^2)^{1/2} e^{iθ}|2⟩ in the eigenbasis of rho."""

    return StateVector.normalized(rho.vector_from_coordinates(rs.coefficients()))


def weight_for(rho: MinimalMixture, rs: RangeState) -> float:
    """
    weight_for returns the statistical weight w of |φ⟩⟨φ| in the unique decomposition containing it.
    The denominator is at least r > 0, so the division is always safe.
    """

    r, p_sq = rho.r, rs.p * rs.p
    w = r * (1.0 - r) / (p_sq * (1.0 - r) + (1.0 - p_sq) * r)
    # the exact value lies in [r, 1 - r]; keep rounding from leaking outside
    return min(max(w, r), 1.0 - r)


def _counter_radicands(rho: MinimalMixture, rs: RangeState) -> tuple[float, float]:
    r, p_sq = rho.r, rs.p * rs.p
    # w substituted into both radicands, so nothing cancels near p ∈ {0, 1}:
    #   (r - w p^2)/(1 - w)             = r^2 (1 - p^2) / (p^2 (1 - 2r) + r^2)
    #   ((1 - r) - w(1 - p^2))/(1 - w)  = (1 - r)^2 p^2 / (p^2 (1 - 2r) + r^2)
    denominator = p_sq * (1.0 - 2.0 * r) + r * r
    first = utils.clamp_radicand(r * r * (1.0 - p_sq) / denominator, "(r - w p^2)/(1 - w)")
    second = utils.clamp_radicand((1.0 - r) ** 2 * p_sq / denominator, "((1 - r) - w(1 - p^2))/(1 - w)")
    return first, second


def counter_state(rho: MinimalMixture, rs: RangeState) -> PairDecomposition:
    """
    counter_state completes |φ⟩ to the one and only two-term decomposition of rho containing it.

    Raises:
        InconsistentDecompositionException: if a radicand is below -1e-9.
    """

    w = weight_for(rho, rs)
    first, second = _counter_radicands(rho, rs)
    coefficients = np.array(
        [math.sqrt(first), math.sqrt(second) * np.exp(1j * (rs.theta + math.pi))],
        dtype=np.complex128,
    )
    phi = range_state_vector(rho, rs)
    phi_c = StateVector.normalized(rho.vector_from_coordinates(coefficients))
    return PairDecomposition(w=w, phi=phi, phi_c=phi_c)


def counter_range_state(rho: MinimalMixture, rs: RangeState) -> RangeState:
    """The (p, θ) label of |φ^c⟩; |φ⟩ and |φ^c⟩ are counter states of each other."""

    first, _ = _counter_radicands(rho, rs)
    return RangeState(p=min(math.sqrt(first), 1.0), theta=rs.theta + math.pi)


def p_for_weight(rho: MinimalMixture, w: float) -> float:
    """
    p_for_weight inverts weight_for: p^2 = r(1 - r - w) / (w(1 - 2r)).

    Raises:
        DomainValidationException: if r = 1/2 (w does not determine p) or w lies outside [r, 1 - r].
    """

    r = rho.r
    if rho.is_degenerate:
        raise DomainValidationException("p is undetermined by w when r = 1/2 (every decomposition has w = 1/2)")
    if not math.isfinite(w) or w < r - constants.IDENTITY_TOL or w > 1.0 - r + constants.IDENTITY_TOL:
        raise DomainValidationException(f"w must satisfy r <= w <= 1 - r, i.e. {r} <= w <= {1.0 - r}, got {w}")

    w = min(max(w, r), 1.0 - r)
    p_sq = r * (1.0 - r - w) / (w * (1.0 - 2.0 * r))
    return math.sqrt(min(max(p_sq, 0.0), 1.0))


def reconstruct(decomposition: PairDecomposition) -> Operator:
    """w|φ⟩⟨φ| + (1 - w)|φ^c⟩⟨φ^c|."""

    return Operator(
        decomposition.w * decomposition.phi.projector().entries
        + decomposition.w_prime * decomposition.phi_c.projector().entries
    )


def reconstruction_residual(rho: MinimalMixture, decomposition: PairDecomposition) -> float:
    return reconstruct(decomposition).max_norm_distance(rho.matrix)


def lemma_a1_residual(rho: MinimalMixture, rs: RangeState, s: float) -> Operator:
    """
    lemma_a1_residual splits off the fraction s of the |φ⟩ weight:

        ρ = ws|φ⟩⟨φ| + (1 - ws)ρ',   ρ' = ((w - ws)|φ⟩⟨φ| + (1 - w)|φ^c⟩⟨φ^c|) / (1 - ws)

    Raises:
        DomainValidationException: unless 0 < s <= 1; for s > 1 no state operator ρ' exists.
    """

    if not math.isfinite(s) or s <= 0.0 or s > 1.0:
        raise DomainValidationException(f"s must satisfy 0 < s <= 1, got {s}")

    decomposition = counter_state(rho, rs)
    w = decomposition.w
    scale = 1.0 - w * s
    entries = (
        (w - w * s) / scale * decomposition.phi.projector().entries
        + (1.0 - w) / scale * decomposition.phi_c.projector().entries
    )
    return Operator.state(entries, tol=constants.IDENTITY_TOL)


def completion_residual(rho: MinimalMixture, rs: RangeState, w_alt: float) -> Operator:
    """
    completion_residual is the candidate (ρ - w''|φ⟩⟨φ|)/(1 - w'') that would complete |φ⟩ with weight w''.
    It is not validated as a state operator; that is what callers test.
    """

    if not math.isfinite(w_alt) or w_alt >= 1.0:
        raise DomainValidationException(f"w'' must satisfy w'' < 1, got {w_alt}")
    phi = range_state_vector(rho, rs)
    return Operator((rho.matrix.entries - w_alt * phi.projector().entries) / (1.0 - w_alt))


def is_psd(op: Operator, tol: float = constants.PSD_NEGATIVE_TOL) -> bool:
    return op.min_eigenvalue() >= -tol


def is_pure_state_operator(op: Operator, tol: float = constants.PURITY_TOL) -> bool:
    """True iff op is PSD with unit trace and a (numerically) vanishing second eigenvalue."""

    eigenvalues = op.eigenvalues()
    return bool(eigenvalues[0] >= -tol and abs(eigenvalues[0]) <= tol and abs(eigenvalues[-1] - 1.0) <= tol)


def verify_no_overweight(rho: MinimalMixture, rs: RangeState, s: float) -> bool:
    """
    verify_no_overweight checks that |φ⟩ cannot carry more than its weight w: for s > 1 the candidate
    (ρ - ws|φ⟩⟨φ|)/(1 - ws) must fail to be positive semidefinite. Returns True when it does fail,
    i.e. when the impossibility is confirmed.

    Raises:
        DomainValidationException: unless s > 1 and ws < 1.
    """

    if not math.isfinite(s) or s <= 1.0:
        raise DomainValidationException(f"s must satisfy s > 1, got {s}")
    w = weight_for(rho, rs)
    if w * s >= 1.0:
        raise DomainValidationException(f"w*s must satisfy w*s < 1, got w*s = {w * s}")

    candidate = completion_residual(rho, rs, w * s)
    confirmed = not is_psd(candidate)
    if not confirmed:
        logging.warning("Overweight s=%s for p=%s, theta=%s produced a PSD residual", s, rs.p, rs.theta)
    return confirmed
