from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from common import constants, utils
from common.custom_exceptions import DomainValidationException
from models.mixture_model import IDENTITY_BASIS, MinimalMixture, orthonormal_basis
from models.state_model import CompositeVector, StateVector


class MeasurementBranch(str, Enum):
    MU1 = "Mu1"
    MU2 = "Mu2"

    @property
    def index(self) -> int:
        return 0 if self is MeasurementBranch.MU1 else 1


@dataclass(frozen=True, eq=False)
class SchmidtState:
    """
    SchmidtState is |ω⟩ = r^{1/2}|1⟩_o|1⟩ + (1 - r)^{1/2}|2⟩_o|2⟩, the canonical purification of a
    minimal-term mixture. `opposite_basis` holds |1⟩_o, |2⟩_o as columns (canonical unless supplied).
    """

    mixture: MinimalMixture
    composite: CompositeVector
    opposite_basis: np.ndarray

    def __init__(self, mixture: MinimalMixture, composite: CompositeVector, opposite_basis=None):
        object.__setattr__(self, "mixture", mixture)
        object.__setattr__(self, "composite", composite)
        object.__setattr__(
            self, "opposite_basis", orthonormal_basis(IDENTITY_BASIS if opposite_basis is None else opposite_basis)
        )

    @property
    def r(self) -> float:
        return self.mixture.r

    def __repr__(self):
        return f"SchmidtState(r={self.r!r}, composite={self.composite!r})"


@dataclass(frozen=True)
class YesNoMeasurement:
    """
    YesNoMeasurement is the (q, λ) label of the opposite-subsystem eigenbasis

        |μ1⟩_o = q|1⟩_o + (1 - q^2)^{1/2} e^{iλ}|2⟩_o
        |μ2⟩_o = (1 - q^2)^{1/2}|1⟩_o - q e^{iλ}|2⟩_o

    Coordinates refer to the Schmidt basis of the purification being measured. The eigenvalues
    are irrelevant labels and fixed to 1 and 2.
    """

    q: float
    lam: float = 0.0

    def __post_init__(self):
        q = utils.snap_unit_interval(self.q, "q")
        lam = utils.canonical_angle(self.lam)
        if q in (0.0, 1.0):
            lam = 0.0
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "lam", lam)

    @property
    def q_prime(self) -> float:
        return math.sqrt(max(0.0, 1.0 - self.q * self.q))

    def mu_coefficients(self, branch: MeasurementBranch) -> np.ndarray:
        phase = np.exp(1j * self.lam)
        if branch is MeasurementBranch.MU1:
            return np.array([self.q, self.q_prime * phase], dtype=np.complex128)
        return np.array([self.q_prime, -self.q * phase], dtype=np.complex128)

    def mu(self, branch: MeasurementBranch) -> StateVector:
        return StateVector(self.mu_coefficients(branch))


@dataclass(frozen=True, eq=False)
class MeasurementOutcome:
    """One branch of a selective (Lüders) measurement."""

    branch: MeasurementBranch
    probability: float
    conditional_state: StateVector
    post_measurement_state: CompositeVector

    def __post_init__(self):
        if not math.isfinite(self.probability) or not -constants.IDENTITY_TOL <= self.probability <= 1.0 + constants.IDENTITY_TOL:
            raise DomainValidationException(f"probability must satisfy 0 <= probability <= 1, got {self.probability}")

    def __repr__(self):
        return (
            "MeasurementOutcome("
            + f"branch='{self.branch.value}'"
            + f", probability={self.probability!r}"
            + f", conditional_state={self.conditional_state!r}"
            + ")"
        )
