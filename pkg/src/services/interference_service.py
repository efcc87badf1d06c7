"""
interference_service computes the two-slit screen densities.

With ψ1, ψ2 the slit waves on the screen:

    p_i(x)   = (|ψ1|^2 + |ψ2|^2 + 2 Re(ψ1* ψ2)) / 2      interference
    p_i^c(x) = (|ψ1|^2 + |ψ2|^2 - 2 Re(ψ1* ψ2)) / 2      counter interference
    p(x)     = (|ψ1|^2 + |ψ2|^2) / 2                     incoherent mixture

so p_i + p_i^c = 2p pointwise: the two interference terms cancel.
"""
import logging
import math

import numpy as np

from common import constants
from common.custom_exceptions import DegenerateSuperpositionException, DomainValidationException
from models.mixture_model import PairDecomposition
from models.screen_model import PatternSet, ScreenGrid, SlitWavePair, SuperpositionSign
from models.state_model import StateVector


def preset_grid() -> ScreenGrid:
    return ScreenGrid(constants.PRESET_X_MIN, constants.PRESET_X_MAX, constants.PRESET_N)


def normalize_wave(wave, grid: ScreenGrid) -> np.ndarray:
    """
    Raises:
        DegenerateSuperpositionException: if the wave vanishes on the grid.
    """

    wave = np.asarray(wave, dtype=np.complex128)
    norm_sq = grid.norm_sq(wave)
    if not math.isfinite(norm_sq) or norm_sq <= constants.MIN_BRANCH_PROBABILITY:
        raise DegenerateSuperpositionException(f"wave has grid norm^2 {norm_sq:.3e} and cannot be normalized")
    return wave / math.sqrt(norm_sq)


def gaussian_two_slit(grid: ScreenGrid, separation: float, width: float, tilt: float) -> SlitWavePair:
    """
    gaussian_two_slit builds Gaussian slit waves centered at ∓separation/2,

        ψ1(x) ∝ exp(-(x + separation/2)^2 / width^2) exp(-i tilt x / 2)
        ψ2(x) ∝ exp(-(x - separation/2)^2 / width^2) exp(+i tilt x / 2)

    so the relative phase of ψ2 against ψ1 grows as tilt·x and the fringe period is 2π/tilt.
    `width` is the 1/e half-width of the amplitude.

    Raises:
        DomainValidationException: if width <= 0, a parameter is not finite or an envelope
            does not reach the grid.
    """

    for name, value in (("separation", separation), ("width", width), ("tilt", tilt)):
        if not math.isfinite(value):
            raise DomainValidationException(f"{name} must be finite, got {value}")
    if width <= 0.0:
        raise DomainValidationException(f"width must satisfy width > 0, got {width}")

    x = grid.points
    waves = []
    for center, phase_sign in ((-0.5 * separation, -1.0), (0.5 * separation, 1.0)):
        envelope = np.exp(-(((x - center) / width) ** 2))
        wave = envelope * np.exp(1j * phase_sign * 0.5 * tilt * x)
        try:
            waves.append(normalize_wave(wave, grid))
        except DegenerateSuperpositionException as ex:
            raise DomainValidationException(
                f"slit centered at {center} has no support on the grid [{grid.x_min}, {grid.x_max}]"
            ) from ex

    pair = SlitWavePair(waves[0], waves[1], grid)
    logging.debug("Gaussian two-slit pair built, overlap %.3e", abs(pair.overlap()))
    return pair


def preset_pair() -> SlitWavePair:
    return gaussian_two_slit(
        preset_grid(), constants.PRESET_SEPARATION, constants.PRESET_WIDTH, constants.PRESET_TILT
    )


def superpose(pair: SlitWavePair, sign: SuperpositionSign) -> np.ndarray:
    """
    superpose returns (ψ1 ± ψ2)/√2, renormalized on the grid since sampled slit waves are only
    approximately orthogonal.

    Raises:
        DegenerateSuperpositionException: for MINUS with ψ1 = ψ2 pointwise.
    """

    sign = SuperpositionSign(sign)
    combined = (pair.psi1 + sign.factor * pair.psi2) / math.sqrt(2.0)
    return normalize_wave(combined, pair.grid)


def patterns(pair: SlitWavePair) -> PatternSet:
    first = np.abs(pair.psi1) ** 2
    second = np.abs(pair.psi2) ** 2
    cross = 2.0 * np.real(pair.psi1.conj() * pair.psi2)
    p_incoherent = 0.5 * (first + second)
    return PatternSet(
        grid=pair.grid,
        # rounding can leave tiny negatives where the fringe is fully dark
        p_interference=np.maximum(0.5 * (first + second + cross), 0.0),
        p_counter=np.maximum(0.5 * (first + second - cross), 0.0),
        p_incoherent=p_incoherent,
    )


def wave_for_state(pair: SlitWavePair, state: StateVector) -> np.ndarray:
    """
    wave_for_state maps c1|1⟩ + c2|2⟩ of the subsystem space, with |1⟩ ↔ ψ1 and |2⟩ ↔ ψ2,
    to the grid-normalized screen wave c1 ψ1 + c2 ψ2.
    """

    if state.dim != 2:
        raise DomainValidationException(f"state must be 2-dimensional, got dim {state.dim}")
    return normalize_wave(state.amps[0] * pair.psi1 + state.amps[1] * pair.psi2, pair.grid)


def density_for_state(pair: SlitWavePair, state: StateVector) -> np.ndarray:
    return np.abs(wave_for_state(pair, state)) ** 2


def branch_patterns(pair: SlitWavePair, decomposition: PairDecomposition) -> PatternSet:
    """
    branch_patterns gives the screen densities of the two states of a decomposition and their
    w-weighted mixture. For the 45° erasure decomposition of r = 1/2 these are p_i, p_i^c and p.
    """

    phi_density = density_for_state(pair, decomposition.phi)
    phi_c_density = density_for_state(pair, decomposition.phi_c)
    return PatternSet(
        grid=pair.grid,
        p_interference=phi_density,
        p_counter=phi_c_density,
        p_incoherent=decomposition.w * phi_density + decomposition.w_prime * phi_c_density,
    )


def cancellation_residual(pair: SlitWavePair, pattern_set: PatternSet) -> float:
    """max |p_i + p_i^c - |ψ1|^2 - |ψ2|^2| over the grid."""

    total = np.abs(pair.psi1) ** 2 + np.abs(pair.psi2) ** 2
    return float(np.max(np.abs(pattern_set.p_interference + pattern_set.p_counter - total)))


def fringe_visibility(density, grid: ScreenGrid, window=None) -> float:
    """
    fringe_visibility is (max - min)/(max + min) of the density over window = (lo, hi),
    the whole grid by default.
    """

    density = np.asarray(density, dtype=np.float64)
    x = grid.points
    lo, hi = (grid.x_min, grid.x_max) if window is None else window
    if lo >= hi:
        raise DomainValidationException(f"window must satisfy lo < hi, got ({lo}, {hi})")
    selected = density[(x >= lo) & (x <= hi)]
    if selected.size == 0:
        raise DomainValidationException(f"window ({lo}, {hi}) contains no grid points")

    high, low = float(np.max(selected)), float(np.min(selected))
    if high + low <= 0.0:
        return 0.0
    return (high - low) / (high + low)
