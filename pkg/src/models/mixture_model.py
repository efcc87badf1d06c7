"""
mixture_model holds the value types of two-term decompositions: the minimal-term mixture in
spectral form, the (p, θ) parametrization of a state in its range and the resulting pair decomposition.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from common import constants, utils
from common.custom_exceptions import DimensionMismatchException, DomainValidationException
from models.state_model import Operator, StateVector, hermitian_eigenvalues_2x2

IDENTITY_BASIS = np.eye(2, dtype=np.complex128)


def orthonormal_basis(basis) -> np.ndarray:
    array = np.array(basis, dtype=np.complex128, copy=True)
    if array.shape != (2, 2):
        raise DimensionMismatchException(f"eigenbasis must be a 2x2 matrix of column vectors, got {array.shape}")
    gram = array.conj().T @ array
    if float(np.max(np.abs(gram - np.eye(2)))) > constants.NORM_TOL:
        raise DomainValidationException("eigenbasis columns must be orthonormal")
    array.setflags(write=False)
    return array


def _eigenvector_2x2(matrix: np.ndarray, eigenvalue: float) -> np.ndarray:
    a, b, d = matrix[0, 0].real, matrix[0, 1], matrix[1, 1].real
    first = np.array([b, eigenvalue - a], dtype=np.complex128)
    second = np.array([eigenvalue - d, np.conj(b)], dtype=np.complex128)
    candidate = first if np.linalg.norm(first) >= np.linalg.norm(second) else second
    norm = np.linalg.norm(candidate)
    if norm < constants.NORM_TOL:
        # already diagonal
        return np.array([1.0, 0.0], dtype=np.complex128) if abs(a - eigenvalue) <= abs(d - eigenvalue) else np.array(
            [0.0, 1.0], dtype=np.complex128
        )
    return candidate / norm


@dataclass(frozen=True, eq=False)
class MinimalMixture:
    """
    MinimalMixture is ρ = r|1⟩⟨1| + (1 - r)|2⟩⟨2| with 0 < r <= 1/2.

    The eigenbasis defaults to the canonical {e1, e2}; an explicit orthonormal pair may be supplied
    as the columns of `basis`. For r = 1/2 every basis is an eigenbasis and the supplied one is kept.
    """

    r: float
    basis: np.ndarray

    def __init__(self, r: float, basis=None):
        if not math.isfinite(r) or r <= 0.0 or r > 0.5 + constants.BOUNDARY_SNAP_TOL:
            raise DomainValidationException(f"r must satisfy 0 < r <= 1/2, got {r}")
        if abs(r - 0.5) <= constants.BOUNDARY_SNAP_TOL:
            r = 0.5
        object.__setattr__(self, "r", float(r))
        object.__setattr__(self, "basis", orthonormal_basis(IDENTITY_BASIS if basis is None else basis))

    @classmethod
    def from_operator(cls, rho: Operator) -> MinimalMixture:
        """
        from_operator finds the spectral form of an arbitrary rank-2 state operator on a 2-dim space.

        Raises:
            InvalidStateException: if rho is not a state operator.
            DomainValidationException: if rho is pure (rank 1), hence not a mixture.
        """

        rho = Operator.state(rho.entries)
        if rho.dim != 2:
            raise DimensionMismatchException(f"minimal-term mixtures live in dimension 2, got {rho.dim}")
        small, _ = hermitian_eigenvalues_2x2(rho.entries)
        if small <= constants.NORM_TOL:
            raise DomainValidationException(f"state operator has rank 1 (eigenvalue {small:.3e}); it is not a mixture")
        if abs(small - 0.5) <= constants.NORM_TOL:
            return cls(0.5)

        first = _eigenvector_2x2(rho.entries, small)
        # the orthogonal complement of `first`, so the pair is exactly orthonormal
        second = np.array([-np.conj(first[1]), np.conj(first[0])], dtype=np.complex128)
        return cls(small, np.column_stack([first, second]))

    @property
    def r_prime(self) -> float:
        return 1.0 - self.r

    @property
    def is_degenerate(self) -> bool:
        return self.r == 0.5

    def vector_from_coordinates(self, coefficients) -> np.ndarray:
        """Maps coordinates on {|1⟩, |2⟩} to canonical coordinates."""

        return self.basis @ np.asarray(coefficients, dtype=np.complex128)

    @property
    def matrix(self) -> Operator:
        diagonal = np.diag([self.r, self.r_prime]).astype(np.complex128)
        return Operator.state(self.basis @ diagonal @ self.basis.conj().T)

    def __repr__(self):
        return f"MinimalMixture(r={self.r!r})"


@dataclass(frozen=True)
class RangeState:
    """
    RangeState is the (p, θ) label of |φ⟩ = p|1⟩ + (1 - p^2)^{1/2} e^{iθ}|2⟩.
    θ is kept in [0, 2π) and fixed to 0 when p ∈ {0, 1}, where it carries no information.
    """

    p: float
    theta: float = 0.0

    def __post_init__(self):
        p = utils.snap_unit_interval(self.p, "p")
        theta = utils.canonical_angle(self.theta)
        if p in (0.0, 1.0):
            theta = 0.0
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "theta", theta)

    @property
    def p_prime(self) -> float:
        return math.sqrt(max(0.0, 1.0 - self.p * self.p))

    def coefficients(self) -> np.ndarray:
        return np.array([self.p, self.p_prime * np.exp(1j * self.theta)], dtype=np.complex128)

    def coefficient_distance(self, other: RangeState) -> float:
        """Max amplitude difference of the two (p, θ) vectors; blind to θ wherever θ is meaningless."""

        return float(np.max(np.abs(self.coefficients() - other.coefficients())))


@dataclass(frozen=True, eq=False)
class PairDecomposition:
    """
    PairDecomposition is ρ = w|φ⟩⟨φ| + (1 - w)|φ^c⟩⟨φ^c|.
    """

    w: float
    phi: StateVector
    phi_c: StateVector

    def __post_init__(self):
        if not math.isfinite(self.w) or not 0.0 <= self.w <= 1.0:
            raise DomainValidationException(f"w must satisfy 0 <= w <= 1, got {self.w}")
        if self.phi.dim != 2 or self.phi_c.dim != 2:
            raise DimensionMismatchException("decomposition states must be 2-dimensional")

    @property
    def w_prime(self) -> float:
        return 1.0 - self.w

    def overlap(self) -> complex:
        """⟨φ|φ^c⟩."""

        return self.phi.inner(self.phi_c)

    def __repr__(self):
        return f"PairDecomposition(w={self.w!r}, phi={self.phi!r}, phi_c={self.phi_c!r})"
