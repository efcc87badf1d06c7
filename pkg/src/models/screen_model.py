"""
screen_model holds the sampled one-dimensional screen: the grid, the two slit waves on it and the
position densities they produce.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.integrate import trapezoid

from common import constants
from common.custom_exceptions import DimensionMismatchException, DomainValidationException, InvalidStateException


def _frozen(values, dtype, label: str, size: int) -> np.ndarray:
    array = np.array(values, dtype=dtype, copy=True)
    if array.ndim != 1 or array.size != size:
        raise DimensionMismatchException(f"{label} must hold {size} samples, got shape {array.shape}")
    if not np.all(np.isfinite(array)):
        raise InvalidStateException(f"{label} contains NaN or Inf samples")
    array.setflags(write=False)
    return array


class SuperpositionSign(str, Enum):
    PLUS = "Plus"
    MINUS = "Minus"

    @property
    def factor(self) -> float:
        return 1.0 if self is SuperpositionSign.PLUS else -1.0


@dataclass(frozen=True)
class ScreenGrid:
    """ScreenGrid is n equally spaced screen positions from x_min to x_max inclusive."""

    x_min: float
    x_max: float
    n: int

    def __post_init__(self):
        if not (math.isfinite(self.x_min) and math.isfinite(self.x_max)) or self.x_min >= self.x_max:
            raise DomainValidationException(f"grid must satisfy x_min < x_max, got [{self.x_min}, {self.x_max}]")
        if int(self.n) != self.n or self.n < 2:
            raise DomainValidationException(f"grid must satisfy n >= 2, got {self.n}")
        object.__setattr__(self, "n", int(self.n))

    @property
    def points(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n)

    @property
    def spacing(self) -> float:
        return (self.x_max - self.x_min) / (self.n - 1)

    def integrate(self, values) -> float:
        """Trapezoidal quadrature of samples on this grid."""

        return float(trapezoid(np.asarray(values), self.points))

    def integrate_complex(self, values) -> complex:
        return complex(trapezoid(np.asarray(values, dtype=np.complex128), self.points))

    def norm_sq(self, wave) -> float:
        wave = np.asarray(wave)
        return self.integrate((wave.conj() * wave).real)


@dataclass(frozen=True, eq=False)
class SlitWavePair:
    """
    SlitWavePair is ψ1, ψ2 sampled on a grid, each normalized under trapezoidal quadrature.
    """

    psi1: np.ndarray
    psi2: np.ndarray
    grid: ScreenGrid

    def __init__(self, psi1, psi2, grid: ScreenGrid):
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "psi1", _frozen(psi1, np.complex128, "psi1", grid.n))
        object.__setattr__(self, "psi2", _frozen(psi2, np.complex128, "psi2", grid.n))
        for label, wave in (("psi1", self.psi1), ("psi2", self.psi2)):
            norm_sq = grid.norm_sq(wave)
            if abs(norm_sq - 1.0) > constants.GRID_NORM_TOL:
                raise InvalidStateException(f"{label} must be grid-normalized, got squared norm {norm_sq}")

    def overlap(self) -> complex:
        """⟨ψ1|ψ2⟩ under the grid quadrature."""

        return self.grid.integrate_complex(self.psi1.conj() * self.psi2)

    def __repr__(self):
        return f"SlitWavePair(grid={self.grid!r}, overlap={self.overlap():.3e})"


@dataclass(frozen=True, eq=False)
class PatternSet:
    """
    PatternSet holds three position densities per unit length on a grid: the interference pattern,
    its counter pattern and the incoherent mixture.

    Only pointwise nonnegativity is enforced. The densities integrate to 1 whenever the slit waves
    are orthogonal; `integrals()` reports by how much they miss otherwise.
    """

    grid: ScreenGrid
    p_interference: np.ndarray
    p_counter: np.ndarray
    p_incoherent: np.ndarray

    def __init__(self, grid: ScreenGrid, p_interference, p_counter, p_incoherent):
        object.__setattr__(self, "grid", grid)
        for label, values in (
            ("p_interference", p_interference),
            ("p_counter", p_counter),
            ("p_incoherent", p_incoherent),
        ):
            array = _frozen(values, np.float64, label, grid.n)
            if float(np.min(array)) < -constants.IDENTITY_TOL:
                raise InvalidStateException(f"{label} must be nonnegative, got minimum {float(np.min(array))}")
            object.__setattr__(self, label, array)

    def integrals(self) -> dict:
        return {
            "p_interference": self.grid.integrate(self.p_interference),
            "p_counter": self.grid.integrate(self.p_counter),
            "p_incoherent": self.grid.integrate(self.p_incoherent),
        }

    def is_normalized(self, tol: float = constants.GRID_NORM_TOL) -> bool:
        return all(abs(value - 1.0) <= tol for value in self.integrals().values())

    def __repr__(self):
        return f"PatternSet(grid={self.grid!r}, integrals={self.integrals()!r})"
