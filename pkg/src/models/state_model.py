"""
state_model holds the small, immutable linear-algebra values every other module computes on:
normalized state vectors, square operators and 2⊗2 composite vectors.

Arrays are copied on construction and frozen, so instances can be shared between threads.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from common import constants
from common.custom_exceptions import DimensionMismatchException, InvalidStateException


def _frozen_complex_array(values, ndim: int, label: str) -> np.ndarray:
    array = np.array(values, dtype=np.complex128, copy=True)
    if array.ndim != ndim:
        raise DimensionMismatchException(f"{label} must be {ndim}-dimensional, got shape {array.shape}")
    if not np.all(np.isfinite(array)):
        raise InvalidStateException(f"{label} contains NaN or Inf entries")
    array.setflags(write=False)
    return array


def hermitian_eigenvalues_2x2(matrix: np.ndarray) -> tuple[float, float]:
    """
    Closed-form eigenvalues of a 2x2 Hermitian matrix, ascending.

        | a   b |
        | b*  d |   ->   (a + d)/2 ∓ sqrt(((a - d)/2)^2 + |b|^2)
    """

    a = matrix[0, 0].real
    d = matrix[1, 1].real
    b = matrix[0, 1]
    mid = 0.5 * (a + d)
    half_gap = float(np.hypot(0.5 * (a - d), abs(b)))
    return mid - half_gap, mid + half_gap


@dataclass(frozen=True, eq=False)
class StateVector:
    """
    StateVector is a unit-norm ket in a small Hilbert space. Construction rejects
    vectors whose norm is off by more than NORM_TOL; nothing is silently normalized.
    """

    amps: np.ndarray

    def __init__(self, amps):
        array = _frozen_complex_array(amps, 1, "StateVector amplitudes")
        if array.size == 0:
            raise DimensionMismatchException("StateVector needs at least one amplitude")
        norm_sq = float(np.vdot(array, array).real)
        if abs(norm_sq - 1.0) > constants.NORM_TOL:
            raise InvalidStateException(f"StateVector must have unit norm, got squared norm {norm_sq}")
        object.__setattr__(self, "amps", array)

    @classmethod
    def normalized(cls, amps) -> StateVector:
        """Builds a StateVector from an arbitrary nonzero vector by explicit normalization."""

        array = np.asarray(amps, dtype=np.complex128)
        norm = float(np.linalg.norm(array))
        if norm == 0.0 or not np.isfinite(norm):
            raise InvalidStateException("Cannot normalize a zero or non-finite vector")
        return cls(array / norm)

    @classmethod
    def basis(cls, index: int, dim: int = 2) -> StateVector:
        if not 0 <= index < dim:
            raise DimensionMismatchException(f"basis index {index} outside dimension {dim}")
        amps = np.zeros(dim, dtype=np.complex128)
        amps[index] = 1.0
        return cls(amps)

    @property
    def dim(self) -> int:
        return int(self.amps.size)

    def inner(self, other: StateVector) -> complex:
        """⟨self|other⟩."""

        if self.dim != other.dim:
            raise DimensionMismatchException(f"Cannot take inner product of dims {self.dim} and {other.dim}")
        return complex(np.vdot(self.amps, other.amps))

    def projector(self) -> Operator:
        return Operator(np.outer(self.amps, self.amps.conj()))

    def __repr__(self):
        return "StateVector(" + ", ".join(f"{a.real:.6g}{a.imag:+.6g}j" for a in self.amps) + ")"


@dataclass(frozen=True, eq=False)
class Operator:
    """
    Operator is a square complex matrix. Plain construction only checks shape and finiteness
    (commutators and observables are operators too); `Operator.state` additionally enforces
    the state-operator invariants.
    """

    entries: np.ndarray

    def __init__(self, entries):
        array = _frozen_complex_array(entries, 2, "Operator entries")
        if array.shape[0] != array.shape[1] or array.shape[0] == 0:
            raise DimensionMismatchException(f"Operator must be square, got shape {array.shape}")
        object.__setattr__(self, "entries", array)

    @classmethod
    def state(cls, entries, tol: float = constants.NORM_TOL) -> Operator:
        """Builds an operator and rejects it unless it is Hermitian, PSD and of unit trace."""

        operator = cls(entries)
        problem = operator.state_violation(tol)
        if problem:
            raise InvalidStateException(problem)
        return operator

    @property
    def dim(self) -> int:
        return int(self.entries.shape[0])

    def trace(self) -> complex:
        return complex(np.trace(self.entries))

    def hermiticity_error(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T)))

    def eigenvalues(self) -> np.ndarray:
        """Ascending eigenvalues of the Hermitian part; closed form in dimension 2."""

        hermitian = 0.5 * (self.entries + self.entries.conj().T)
        if self.dim == 2:
            return np.array(hermitian_eigenvalues_2x2(hermitian))
        return np.linalg.eigvalsh(hermitian)

    def min_eigenvalue(self) -> float:
        return float(self.eigenvalues()[0])

    def state_violation(self, tol: float = constants.NORM_TOL):
        """Returns a description of the first violated state-operator invariant, or None."""

        herm_error = self.hermiticity_error()
        if herm_error > tol:
            return f"Operator is not Hermitian (max |A - A^dagger| = {herm_error:.3e})"
        min_eig = self.min_eigenvalue()
        if min_eig < -tol:
            return f"Operator is not positive semidefinite (min eigenvalue {min_eig:.3e})"
        trace = self.trace()
        if abs(trace - 1.0) > tol:
            return f"Operator trace must be 1, got {trace.real:.12g}{trace.imag:+.3g}j"
        return None

    def is_state_operator(self, tol: float = constants.NORM_TOL) -> bool:
        return self.state_violation(tol) is None

    def max_norm_distance(self, other: Operator) -> float:
        if self.dim != other.dim:
            raise DimensionMismatchException(f"Cannot compare operators of dims {self.dim} and {other.dim}")
        return float(np.max(np.abs(self.entries - other.entries)))

    def commutator(self, other: Operator) -> Operator:
        if self.dim != other.dim:
            raise DimensionMismatchException(f"Cannot commute operators of dims {self.dim} and {other.dim}")
        return Operator(self.entries @ other.entries - other.entries @ self.entries)

    def __repr__(self):
        return f"Operator(dim={self.dim}, entries={np.array2string(self.entries, precision=6)})"


@dataclass(frozen=True, eq=False)
class CompositeVector:
    """
    CompositeVector is a unit-norm ket on the opposite ⊗ subsystem space (2 ⊗ 2).
    Amplitudes are ordered lexicographically in (o, s): index = 2*o + s.
    """

    amps: np.ndarray
    dim_o: int = 2
    dim_s: int = 2

    def __init__(self, amps):
        array = _frozen_complex_array(amps, 1, "CompositeVector amplitudes")
        if array.size != 4:
            raise DimensionMismatchException(f"CompositeVector needs 4 amplitudes, got {array.size}")
        norm_sq = float(np.vdot(array, array).real)
        if abs(norm_sq - 1.0) > constants.NORM_TOL:
            raise InvalidStateException(f"CompositeVector must have unit norm, got squared norm {norm_sq}")
        object.__setattr__(self, "amps", array)
        object.__setattr__(self, "dim_o", 2)
        object.__setattr__(self, "dim_s", 2)

    @classmethod
    def normalized(cls, amps) -> CompositeVector:
        array = np.asarray(amps, dtype=np.complex128)
        norm = float(np.linalg.norm(array))
        if norm == 0.0 or not np.isfinite(norm):
            raise InvalidStateException("Cannot normalize a zero or non-finite composite vector")
        return cls(array / norm)

    def coefficient_matrix(self) -> np.ndarray:
        """M[o, s] with |v⟩ = Σ M[o, s] |o⟩|s⟩."""

        return self.amps.reshape(self.dim_o, self.dim_s)

    def amplitude(self, o: int, s: int) -> complex:
        return complex(self.amps[self.dim_s * o + s])

    def __repr__(self):
        return "CompositeVector(" + ", ".join(f"{a.real:.6g}{a.imag:+.6g}j" for a in self.amps) + ")"
