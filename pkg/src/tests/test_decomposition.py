import math

import numpy as np
import pytest
from hypothesis import assume, example, given, seed
from hypothesis import strategies as st

from common.custom_exceptions import DomainValidationException
from models.mixture_model import MinimalMixture, PairDecomposition, RangeState
from models.state_model import StateVector
from services import decomposition_service, linear_algebra_service

RHO = MinimalMixture(0.3)
HALF = MinimalMixture(0.5)

R_VALUES = st.floats(min_value=0.05, max_value=0.5)
P_VALUES = st.floats(min_value=0.0, max_value=1.0)
THETA_VALUES = st.floats(min_value=0.0, max_value=2 * math.pi)


def test_range_state_vector_basis_cases():
    assert np.allclose(decomposition_service.range_state_vector(RHO, RangeState(1.0)).amps, [1, 0])
    assert np.allclose(decomposition_service.range_state_vector(RHO, RangeState(0.0)).amps, [0, 1])


def test_range_state_vector_interference_state():
    phi = decomposition_service.range_state_vector(HALF, RangeState(1 / math.sqrt(2)))
    assert linear_algebra_service.states_equal_up_to_phase(phi, StateVector.normalized([1.0, 1.0]))


def test_range_state_drops_meaningless_theta():
    assert RangeState(1.0, math.pi / 3).theta == 0.0
    assert RangeState(0.0, math.pi / 3).theta == 0.0
    assert RangeState(0.5, -math.pi / 2).theta == pytest.approx(3 * math.pi / 2)


@pytest.mark.parametrize("p", [-0.01, 1.01])
def test_range_state_rejects_p_outside_unit_interval(p):
    with pytest.raises(DomainValidationException):
        RangeState(p)


def test_weight_for_example():
    assert decomposition_service.weight_for(RHO, RangeState(0.6)) == pytest.approx(0.472973, abs=1e-6)


def test_weight_for_bounds():
    assert decomposition_service.weight_for(RHO, RangeState(1.0)) == pytest.approx(0.3, abs=1e-15)
    assert decomposition_service.weight_for(RHO, RangeState(0.0)) == pytest.approx(0.7, abs=1e-15)


@seed(11)
@given(r=R_VALUES, p=P_VALUES, theta=THETA_VALUES)
def test_weight_stays_between_eigenvalues(r, p, theta):
    w = decomposition_service.weight_for(MinimalMixture(r), RangeState(p, theta))
    assert r <= w <= 1 - r


@seed(12)
@given(r=R_VALUES, p=P_VALUES, other=P_VALUES)
def test_weight_never_grows_with_p(r, p, other):
    rho = MinimalMixture(r)
    low, high = sorted((p, other))
    w_low = decomposition_service.weight_for(rho, RangeState(low))
    w_high = decomposition_service.weight_for(rho, RangeState(high))
    assert w_low >= w_high - 1e-15


def test_weight_for_strictly_decreasing():
    weights = [decomposition_service.weight_for(RHO, RangeState(float(p))) for p in np.linspace(0.0, 1.0, 101)]
    assert all(after < before for before, after in zip(weights, weights[1:]))


@pytest.mark.parametrize("p, theta", [(0.0, 0.0), (0.3, 1.0), (1 / math.sqrt(2), 0.0), (1.0, 2.0)])
def test_degenerate_mixture_gives_orthogonal_halves(p, theta):
    decomposition = decomposition_service.counter_state(HALF, RangeState(p, theta))
    assert decomposition.w == 0.5
    assert abs(decomposition.overlap()) <= 1e-12
    expected = StateVector(
        [math.sqrt(1 - p * p), -p * np.exp(1j * RangeState(p, theta).theta)]
    )
    assert linear_algebra_service.states_equal_up_to_phase(decomposition.phi_c, expected)


def test_counter_state_example():
    decomposition = decomposition_service.counter_state(RHO, RangeState(0.6, math.pi / 4))
    assert decomposition.w == pytest.approx(0.472973, abs=1e-6)
    assert decomposition.w_prime == pytest.approx(1 - decomposition.w)
    assert abs(decomposition.phi_c.amps[0]) == pytest.approx(0.496139, abs=1e-6)
    assert decomposition.phi_c.amps[1] == pytest.approx(0.868243 * np.exp(1j * (math.pi / 4 + math.pi)), abs=1e-6)
    assert decomposition_service.reconstruction_residual(RHO, decomposition) <= 1e-12


def test_counter_state_at_p_one():
    decomposition = decomposition_service.counter_state(RHO, RangeState(1.0))
    assert decomposition.w == pytest.approx(0.3)
    assert np.allclose(decomposition.phi.amps, [1, 0])
    assert linear_algebra_service.states_equal_up_to_phase(decomposition.phi_c, StateVector.basis(1))


@seed(13)
@given(r=R_VALUES, p=P_VALUES, theta=THETA_VALUES)
@example(r=0.05, p=1e-9, theta=0.0)
@example(r=0.3, p=1 - 1e-9, theta=math.pi / 4)
@example(r=0.45, p=1.0, theta=5.0)
@example(r=0.5, p=0.0, theta=math.pi)
def test_reconstruction_is_exact(r, p, theta):
    rho = MinimalMixture(r)
    decomposition = decomposition_service.counter_state(rho, RangeState(p, theta))
    assert decomposition_service.reconstruction_residual(rho, decomposition) <= 1e-12


def test_reconstruction_in_rotated_eigenbasis():
    basis = np.array([[1.0, 1.0j], [1.0j, 1.0]]) / math.sqrt(2)
    rho = MinimalMixture(0.2, basis)
    decomposition = decomposition_service.counter_state(rho, RangeState(0.4, 1.0))
    assert decomposition_service.reconstruction_residual(rho, decomposition) <= 1e-12


def test_counter_range_state_is_an_involution():
    rs = RangeState(0.6, 0.0)
    counter = decomposition_service.counter_range_state(RHO, rs)
    assert counter.p == pytest.approx(0.496139, abs=1e-6)
    assert counter.theta == pytest.approx(math.pi)
    back = decomposition_service.counter_range_state(RHO, counter)
    assert rs.coefficient_distance(back) <= 1e-12


@seed(14)
@given(r=R_VALUES, p=P_VALUES, theta=THETA_VALUES)
def test_counter_of_counter_is_the_original_state(r, p, theta):
    rho, rs = MinimalMixture(r), RangeState(p, theta)
    back = decomposition_service.counter_range_state(rho, decomposition_service.counter_range_state(rho, rs))
    assert linear_algebra_service.states_equal_up_to_phase(
        decomposition_service.range_state_vector(rho, back), decomposition_service.range_state_vector(rho, rs)
    )


def test_counter_range_state_labels_the_counter_state():
    rs = RangeState(0.35, 2.0)
    decomposition = decomposition_service.counter_state(RHO, rs)
    labelled = decomposition_service.range_state_vector(RHO, decomposition_service.counter_range_state(RHO, rs))
    assert linear_algebra_service.states_equal_up_to_phase(decomposition.phi_c, labelled)


def test_p_for_weight_example():
    p = decomposition_service.p_for_weight(RHO, 0.5)
    assert p == pytest.approx(math.sqrt(0.3), abs=1e-12)
    assert decomposition_service.weight_for(RHO, RangeState(p)) == pytest.approx(0.5, abs=1e-12)


@seed(15)
@given(r=st.floats(min_value=0.05, max_value=0.49), p=P_VALUES)
def test_p_for_weight_inverts_weight_for(r, p):
    rho = MinimalMixture(r)
    w = decomposition_service.weight_for(rho, RangeState(p))
    recovered = decomposition_service.p_for_weight(rho, w)
    # p^2 is the well-conditioned quantity; p itself loses digits next to p = 0
    assert recovered**2 == pytest.approx(p**2, abs=1e-12)
    assert decomposition_service.weight_for(rho, RangeState(recovered)) == pytest.approx(w, abs=1e-12)


def test_p_for_weight_bounds():
    assert decomposition_service.p_for_weight(RHO, 0.3) == pytest.approx(1.0)
    assert decomposition_service.p_for_weight(RHO, 0.7) == pytest.approx(0.0, abs=1e-7)


def test_p_for_weight_rejects_degenerate_mixture():
    with pytest.raises(DomainValidationException, match="r = 1/2"):
        decomposition_service.p_for_weight(HALF, 0.5)


@pytest.mark.parametrize("w", [0.2, 0.8, math.nan])
def test_p_for_weight_rejects_out_of_range(w):
    with pytest.raises(DomainValidationException):
        decomposition_service.p_for_weight(RHO, w)


def test_lemma_a1_residual_half_weight():
    residual = decomposition_service.lemma_a1_residual(RHO, RangeState(0.6), 0.5)
    assert residual.trace() == pytest.approx(1.0, abs=1e-12)
    assert residual.min_eigenvalue() >= 0.0


def test_lemma_a1_residual_full_weight_is_counter_projector():
    rs = RangeState(0.6, 1.2)
    residual = decomposition_service.lemma_a1_residual(RHO, rs, 1.0)
    phi_c = decomposition_service.counter_state(RHO, rs).phi_c
    assert residual.max_norm_distance(phi_c.projector()) <= 1e-12


def test_lemma_a1_residual_small_share_rebuilds_mixture():
    rs, s = RangeState(0.6), 1e-6
    w = decomposition_service.weight_for(RHO, rs)
    residual = decomposition_service.lemma_a1_residual(RHO, rs, s)
    phi = decomposition_service.range_state_vector(RHO, rs)
    rebuilt = w * s * phi.projector().entries + (1 - w * s) * residual.entries
    assert np.max(np.abs(rebuilt - RHO.matrix.entries)) <= 1e-12


@pytest.mark.parametrize("s", [0.0, -0.5, 1.5])
def test_lemma_a1_residual_rejects_s(s):
    with pytest.raises(DomainValidationException):
        decomposition_service.lemma_a1_residual(RHO, RangeState(0.6), s)


def test_verify_no_overweight_examples():
    assert decomposition_service.verify_no_overweight(RHO, RangeState(0.6), 1.1)
    assert decomposition_service.verify_no_overweight(HALF, RangeState(1 / math.sqrt(2)), 1.5)


def test_verify_no_overweight_preconditions():
    with pytest.raises(DomainValidationException):
        decomposition_service.verify_no_overweight(RHO, RangeState(0.6), 1.0)
    with pytest.raises(DomainValidationException, match="w\\*s"):
        decomposition_service.verify_no_overweight(RHO, RangeState(0.6), 3.0)


def test_exact_weight_completes_with_a_pure_state():
    rs = RangeState(0.6, 0.3)
    w = decomposition_service.weight_for(RHO, rs)
    assert decomposition_service.is_pure_state_operator(decomposition_service.completion_residual(RHO, rs, w))


@seed(16)
@given(r=R_VALUES, p=P_VALUES, theta=THETA_VALUES, w_alt=st.floats(min_value=0.0, max_value=0.99))
def test_no_other_weight_completes_with_a_pure_state(r, p, theta, w_alt):
    rho, rs = MinimalMixture(r), RangeState(p, theta)
    assume(abs(w_alt - decomposition_service.weight_for(rho, rs)) >= 0.01)
    candidate = decomposition_service.completion_residual(rho, rs, w_alt)
    assert not (decomposition_service.is_psd(candidate) and decomposition_service.is_pure_state_operator(candidate))


def test_pair_decomposition_validates_weight():
    with pytest.raises(DomainValidationException):
        PairDecomposition(w=1.2, phi=StateVector.basis(0), phi_c=StateVector.basis(1))
