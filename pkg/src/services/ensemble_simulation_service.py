"""
ensemble_simulation_service samples the ensemble view photon by photon: each photon falls into the
Mu1 subensemble with probability w = ⟨φ1'|φ1'⟩, otherwise into Mu2, and, when a slit pair is given,
lands on the screen according to the density of its branch's conditional state.

Photons are processed in fixed-size chunks and every chunk draws from its own substream spawned from
the seed, so a report depends on the seed alone and never on the number of workers.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from numpy.random import PCG64, Generator, SeedSequence
from scipy.integrate import cumulative_trapezoid
from scipy.stats import chi2

from common import constants
from common.custom_exceptions import (
    BinMismatchException,
    DomainValidationException,
    MissingHistogramException,
)
from models.measurement_model import MeasurementBranch
from models.screen_model import PatternSet, ScreenGrid
from models.simulation_model import BranchHistograms, ChiSquaredResult, SimConfig, SimReport
from services import distant_measurement_service, interference_service


def position_cdf(density, grid: ScreenGrid) -> np.ndarray:
    """Normalized cumulative trapezoid of a density; piecewise linear between grid points."""

    cdf = cumulative_trapezoid(np.asarray(density, dtype=np.float64), grid.points, initial=0.0)
    total = cdf[-1]
    if not math.isfinite(total) or total <= 0.0:
        raise DomainValidationException("density must have a positive integral on the grid")
    return cdf / total


def sample_positions(cdf: np.ndarray, grid: ScreenGrid, uniforms: np.ndarray) -> np.ndarray:
    """Inverse-CDF sampling with linear interpolation inside each grid cell."""

    x = grid.points
    upper = np.clip(np.searchsorted(cdf, uniforms, side="right"), 1, x.size - 1)
    lower = upper - 1
    step = cdf[upper] - cdf[lower]
    fraction = np.divide(uniforms - cdf[lower], step, out=np.zeros_like(uniforms), where=step > 0.0)
    return x[lower] + np.clip(fraction, 0.0, 1.0) * (x[upper] - x[lower])


def _chunk_sizes(n_photons: int) -> list:
    full, rest = divmod(n_photons, constants.SIMULATION_CHUNK_SIZE)
    return [constants.SIMULATION_CHUNK_SIZE] * full + ([rest] if rest else [])


def _branch_cdfs(config: SimConfig):
    omega = distant_measurement_service.purify(config.mixture)
    outcomes = [
        distant_measurement_service.luders_select(omega, config.measurement, branch) for branch in MeasurementBranch
    ]
    weight = outcomes[0].probability
    if config.pair is None:
        return weight, None

    cdfs = tuple(
        position_cdf(interference_service.density_for_state(config.pair, outcome.conditional_state), config.pair.grid)
        for outcome in outcomes
    )
    return weight, cdfs


def _run_chunk(config: SimConfig, weight: float, cdfs, edges, size: int, seed_sequence: SeedSequence):
    rng = Generator(PCG64(seed_sequence))
    in_mu1 = rng.random(size) < weight
    mu1_count = int(np.count_nonzero(in_mu1))
    if cdfs is None:
        return mu1_count, None, None

    grid = config.pair.grid
    mu1_positions = sample_positions(cdfs[0], grid, rng.random(mu1_count))
    mu2_positions = sample_positions(cdfs[1], grid, rng.random(size - mu1_count))
    mu1_hist, _ = np.histogram(mu1_positions, bins=edges)
    mu2_hist, _ = np.histogram(mu2_positions, bins=edges)
    return mu1_count, mu1_hist, mu2_hist


def run(config: SimConfig, workers: int = constants.DEFAULT_SIMULATION_WORKERS) -> SimReport:
    """
    run samples config.n_photons photons.

    Args:
        config: the run parameters, including the seed.
        workers: number of threads; results are bit-identical for any value.

    Returns:
        SimReport: branch counts, analytic weights and, with a slit pair, per-branch histograms.
    """

    if workers < 1:
        raise DomainValidationException(f"workers must satisfy workers >= 1, got {workers}")

    weight, cdfs = _branch_cdfs(config)
    edges = config.edges
    sizes = _chunk_sizes(config.n_photons)
    substreams = SeedSequence(config.seed).spawn(len(sizes))
    logging.info(
        "Simulating %s photons in %s chunks with %s workers (seed %s, w = %.6f)",
        config.n_photons,
        len(sizes),
        workers,
        config.seed,
        weight,
    )

    with ThreadPoolExecutor(max_workers=workers) as executor:
        chunk_results = list(
            executor.map(
                lambda item: _run_chunk(config, weight, cdfs, edges, item[0], item[1]),
                zip(sizes, substreams),
            )
        )

    mu1_total = sum(result[0] for result in chunk_results)
    histograms = None
    if cdfs is not None:
        bins = edges.size - 1
        mu1_counts = np.zeros(bins, dtype=np.int64)
        mu2_counts = np.zeros(bins, dtype=np.int64)
        for _, mu1_hist, mu2_hist in chunk_results:
            mu1_counts += mu1_hist
            mu2_counts += mu2_hist
        mu1_counts.setflags(write=False)
        mu2_counts.setflags(write=False)
        histograms = BranchHistograms(config.pair.grid, edges, mu1_counts, mu2_counts)

    report = SimReport(
        seed=config.seed,
        generator=constants.GENERATOR_NAME,
        n_photons=config.n_photons,
        counts=(mu1_total, config.n_photons - mu1_total),
        analytic_weights=(weight, 1.0 - weight),
        histograms=histograms,
    )
    logging.info("Simulation finished: %s", report)
    return report


def _expected_counts(density, grid: ScreenGrid, edges: np.ndarray, n: int) -> np.ndarray:
    cdf_at_edges = np.interp(edges, grid.points, position_cdf(density, grid))
    return n * np.diff(cdf_at_edges)


def pearson_chi_squared(label: str, observed, expected) -> ChiSquaredResult:
    """
    Pearson χ² over the bins whose expected count reaches MIN_EXPECTED_BIN_COUNT, with k - 1 degrees
    of freedom for k such bins.
    """

    observed = np.asarray(observed, dtype=np.float64)
    expected = np.asarray(expected, dtype=np.float64)
    kept = expected >= constants.MIN_EXPECTED_BIN_COUNT
    bins_used = int(np.count_nonzero(kept))
    if bins_used < 2:
        logging.warning("χ² for %s has %s usable bins; reporting no statistic", label, bins_used)
        return ChiSquaredResult(label=label, statistic=0.0, dof=0, p_value=1.0, bins_used=bins_used)

    statistic = float(np.sum((observed[kept] - expected[kept]) ** 2 / expected[kept]))
    dof = bins_used - 1
    return ChiSquaredResult(
        label=label, statistic=statistic, dof=dof, p_value=float(chi2.sf(statistic, dof)), bins_used=bins_used
    )


def chi_squared_against(report: SimReport, analytic: PatternSet) -> dict:
    """
    chi_squared_against compares the Mu1 histogram with analytic.p_interference, the Mu2 histogram
    with analytic.p_counter and the merged histogram with analytic.p_incoherent.

    Raises:
        MissingHistogramException: if the report has no histograms.
        BinMismatchException: if the histograms were not sampled on the analytic grid.
    """

    histograms = report.histograms
    if histograms is None:
        raise MissingHistogramException("χ² needs a report with screen histograms; run with a slit pair")
    if histograms.grid != analytic.grid:
        raise BinMismatchException(f"histograms live on {histograms.grid!r}, densities on {analytic.grid!r}")
    if histograms.edges[0] < analytic.grid.x_min or histograms.edges[-1] > analytic.grid.x_max:
        raise BinMismatchException("histogram edges extend beyond the analytic grid")

    grid, edges = analytic.grid, histograms.edges
    mu1_n, mu2_n = report.counts
    results = {
        MeasurementBranch.MU1.value: pearson_chi_squared(
            MeasurementBranch.MU1.value,
            histograms.mu1_counts,
            _expected_counts(analytic.p_interference, grid, edges, mu1_n),
        ),
        MeasurementBranch.MU2.value: pearson_chi_squared(
            MeasurementBranch.MU2.value,
            histograms.mu2_counts,
            _expected_counts(analytic.p_counter, grid, edges, mu2_n),
        ),
        "merged": pearson_chi_squared(
            "merged",
            histograms.merged_counts,
            _expected_counts(analytic.p_incoherent, grid, edges, report.n_photons),
        ),
    }
    for result in results.values():
        logging.debug("χ² %s: %.6g over %s dof (p = %.3g)", result.label, result.statistic, result.dof, result.p_value)
    return results
