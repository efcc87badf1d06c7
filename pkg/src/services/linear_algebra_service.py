"""
linear_algebra_service implements the tensor products, partial traces and state comparisons
on the 2 ⊗ 2 composite space of an opposite subsystem (index o) and the subsystem at issue (index s).
"""
import numpy as np

from common import constants
from common.custom_exceptions import DimensionMismatchException
from models.state_model import CompositeVector, Operator, StateVector


def tensor(a: StateVector, b: StateVector) -> CompositeVector:
    """
    tensor builds |a⟩_o ⊗ |b⟩ with amplitudes (o, s) -> a_o * b_s.

    Raises:
        DimensionMismatchException: unless both factors are two-dimensional.
    """

    if a.dim != 2 or b.dim != 2:
        raise DimensionMismatchException(f"tensor needs two 2-dimensional factors, got dims {a.dim} and {b.dim}")
    return CompositeVector(np.kron(a.amps, b.amps))


def composite_projector(v: CompositeVector) -> Operator:
    return Operator(np.outer(v.amps, v.amps.conj()))


def partial_trace_opposite(v: CompositeVector) -> Operator:
    """ρ_s = Tr_o |v⟩⟨v|, the state of the subsystem at issue."""

    m = v.coefficient_matrix()
    return Operator.state(np.einsum("os,ot->st", m, m.conj()))


def partial_trace_subsystem(v: CompositeVector) -> Operator:
    """ρ_o = Tr_s |v⟩⟨v|, the state of the opposite subsystem."""

    m = v.coefficient_matrix()
    return Operator.state(np.einsum("os,ps->op", m, m.conj()))


def _as_four_index(op: Operator) -> np.ndarray:
    if op.dim != 4:
        raise DimensionMismatchException(f"Composite operator must be 4x4, got {op.dim}x{op.dim}")
    # rows (o, s), columns (o', s')
    return op.entries.reshape(2, 2, 2, 2)


def trace_out_opposite(op: Operator) -> Operator:
    """Partial trace over the opposite factor of a 4x4 composite operator."""

    return Operator(np.einsum("osot->st", _as_four_index(op)))


def trace_out_subsystem(op: Operator) -> Operator:
    """Partial trace over the subsystem factor of a 4x4 composite operator."""

    return Operator(np.einsum("osps->op", _as_four_index(op)))


def operator_tensor(a: Operator, b: Operator) -> Operator:
    if a.dim != 2 or b.dim != 2:
        raise DimensionMismatchException(f"operator_tensor needs 2x2 factors, got {a.dim} and {b.dim}")
    return Operator(np.kron(a.entries, b.entries))


def states_equal_up_to_phase(a: StateVector, b: StateVector, tol: float = constants.IDENTITY_TOL) -> bool:
    """True iff |⟨a|b⟩| >= 1 - tol."""

    return abs(a.inner(b)) >= 1.0 - tol


def states_equal_exact(a: StateVector, b: StateVector, tol: float = constants.IDENTITY_TOL) -> bool:
    """Amplitude-wise comparison, sensitive to the global phase."""

    if a.dim != b.dim:
        raise DimensionMismatchException(f"Cannot compare states of dims {a.dim} and {b.dim}")
    return float(np.max(np.abs(a.amps - b.amps))) <= tol
