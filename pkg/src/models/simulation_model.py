from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from common import constants
from common.custom_exceptions import DomainValidationException
from models.measurement_model import MeasurementBranch, YesNoMeasurement
from models.mixture_model import MinimalMixture
from models.screen_model import ScreenGrid, SlitWavePair

MAX_SEED = (1 << 64) - 1


@dataclass(frozen=True, eq=False)
class SimConfig:
    """
    SimConfig fixes one ensemble run. Screen positions are sampled only when `pair` is given;
    histograms then use `bins` equal bins over `histogram_range` (the grid span by default).
    """

    seed: int
    n_photons: int
    mixture: MinimalMixture
    measurement: YesNoMeasurement
    pair: Optional[SlitWavePair] = None
    bins: int = constants.DEFAULT_HISTOGRAM_BINS
    histogram_range: Optional[tuple] = None

    def __post_init__(self):
        if isinstance(self.seed, bool) or int(self.seed) != self.seed or not 0 <= self.seed <= MAX_SEED:
            raise DomainValidationException(f"seed must satisfy 0 <= seed <= 2^64 - 1, got {self.seed}")
        if isinstance(self.n_photons, bool) or int(self.n_photons) != self.n_photons or self.n_photons < 1:
            raise DomainValidationException(f"n must satisfy n >= 1, got {self.n_photons}")
        if int(self.bins) != self.bins or self.bins < 1:
            raise DomainValidationException(f"bins must satisfy bins >= 1, got {self.bins}")
        object.__setattr__(self, "seed", int(self.seed))
        object.__setattr__(self, "n_photons", int(self.n_photons))
        object.__setattr__(self, "bins", int(self.bins))

        if self.histogram_range is not None:
            if self.pair is None:
                raise DomainValidationException("histogram range needs a slit pair to sample positions from")
            lo, hi = (float(value) for value in self.histogram_range)
            grid = self.pair.grid
            if not (math.isfinite(lo) and math.isfinite(hi)) or lo >= hi:
                raise DomainValidationException(f"histogram range must satisfy lo < hi, got ({lo}, {hi})")
            if lo < grid.x_min or hi > grid.x_max:
                raise DomainValidationException(
                    f"histogram range must lie within [{grid.x_min}, {grid.x_max}], got ({lo}, {hi})"
                )
            object.__setattr__(self, "histogram_range", (lo, hi))

    @property
    def edges(self) -> Optional[np.ndarray]:
        if self.pair is None:
            return None
        grid = self.pair.grid
        lo, hi = self.histogram_range or (grid.x_min, grid.x_max)
        return np.linspace(lo, hi, self.bins + 1)


@dataclass(frozen=True, eq=False)
class BranchHistograms:
    """Screen-position counts per branch on shared bin edges, plus the grid they were sampled on."""

    grid: ScreenGrid
    edges: np.ndarray
    mu1_counts: np.ndarray
    mu2_counts: np.ndarray

    def counts(self, branch: MeasurementBranch) -> np.ndarray:
        return self.mu1_counts if MeasurementBranch(branch) is MeasurementBranch.MU1 else self.mu2_counts

    @property
    def merged_counts(self) -> np.ndarray:
        return self.mu1_counts + self.mu2_counts

    def rows(self):
        for index in range(self.edges.size - 1):
            yield (
                float(self.edges[index]),
                float(self.edges[index + 1]),
                int(self.mu1_counts[index]),
                int(self.mu2_counts[index]),
            )


@dataclass(frozen=True)
class ChiSquaredResult:
    label: str
    statistic: float
    dof: int
    p_value: float
    bins_used: int

    @property
    def reduced(self) -> float:
        """χ²/dof; 0 when no degrees of freedom are left."""

        return self.statistic / self.dof if self.dof > 0 else 0.0

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "statistic": self.statistic,
            "dof": self.dof,
            "reduced": self.reduced,
            "p_value": self.p_value,
            "bins_used": self.bins_used,
        }


@dataclass(frozen=True, eq=False)
class SimReport:
    seed: int
    generator: str
    n_photons: int
    counts: tuple
    analytic_weights: tuple
    histograms: Optional[BranchHistograms] = None

    @property
    def empirical_weights(self) -> tuple:
        return tuple(count / self.n_photons for count in self.counts)

    @property
    def standard_errors(self) -> tuple:
        """Binomial standard error of each empirical fraction."""

        return tuple(math.sqrt(weight * (1.0 - weight) / self.n_photons) for weight in self.empirical_weights)

    def to_dict(self) -> dict:
        result = {
            "seed": self.seed,
            "generator": self.generator,
            "n": self.n_photons,
            "branches": [
                {
                    "label": branch.value,
                    "count": int(self.counts[branch.index]),
                    "weight": self.empirical_weights[branch.index],
                    "stderr": self.standard_errors[branch.index],
                    "analytic_weight": self.analytic_weights[branch.index],
                }
                for branch in MeasurementBranch
            ],
        }
        if self.histograms is not None:
            result["histograms"] = {
                "edges": self.histograms.edges,
                MeasurementBranch.MU1.value: self.histograms.mu1_counts,
                MeasurementBranch.MU2.value: self.histograms.mu2_counts,
            }
        return result

    def __repr__(self):
        return (
            "SimReport("
            + f"seed={self.seed!r}"
            + f", n={self.n_photons!r}"
            + f", counts={self.counts!r}"
            + f", histograms={'yes' if self.histograms is not None else 'no'}"
            + ")"
        )
