import math

import numpy as np
import pytest

from common import constants
from common.custom_exceptions import (
    DegenerateSuperpositionException,
    DomainValidationException,
    InvalidStateException,
)
from models.measurement_model import YesNoMeasurement
from models.mixture_model import MinimalMixture
from models.screen_model import PatternSet, ScreenGrid, SlitWavePair, SuperpositionSign
from models.state_model import StateVector
from services import distant_measurement_service, interference_service

# slits close enough together for their waves to overlap on the screen, with fast fringes
FRINGE_GRID = ScreenGrid(-10.0, 10.0, 4096)
FRINGE_TILT = 12.0
FRINGE_PERIOD = 2 * math.pi / FRINGE_TILT


@pytest.fixture(scope="module")
def preset():
    return interference_service.preset_pair()


@pytest.fixture(scope="module")
def fringe_pair():
    return interference_service.gaussian_two_slit(FRINGE_GRID, separation=1.0, width=2.0, tilt=FRINGE_TILT)


def test_screen_grid_validation():
    with pytest.raises(DomainValidationException):
        ScreenGrid(1.0, 1.0, 10)
    with pytest.raises(DomainValidationException):
        ScreenGrid(0.0, 1.0, 1)
    grid = ScreenGrid(0.0, 1.0, 11)
    assert grid.spacing == pytest.approx(0.1)
    assert grid.points[-1] == 1.0
    assert grid.integrate(np.ones(11)) == pytest.approx(1.0)


def test_preset_waves_are_grid_normalized(preset):
    assert preset.grid == interference_service.preset_grid()
    assert preset.grid.n == constants.PRESET_N
    for wave in (preset.psi1, preset.psi2):
        assert preset.grid.norm_sq(wave) == pytest.approx(1.0, abs=1e-8)


def test_preset_slits_barely_overlap(preset):
    assert abs(preset.overlap()) < 1e-8


def test_overlap_keeps_imaginary_part(preset):
    pair = SlitWavePair(preset.psi1, 1j * preset.psi1, preset.grid)
    assert pair.overlap() == pytest.approx(1j, abs=1e-8)


def test_grid_integrates_complex_samples():
    grid = ScreenGrid(0.0, 1.0, 11)
    assert grid.integrate_complex(np.full(11, 2.0 - 3.0j)) == pytest.approx(2.0 - 3.0j)


def test_preset_patterns_cancel_and_are_normalized(preset):
    pattern_set = interference_service.patterns(preset)
    assert pattern_set.grid.n == 2048
    assert interference_service.cancellation_residual(preset, pattern_set) <= 1e-12
    for integral in pattern_set.integrals().values():
        assert integral == pytest.approx(1.0, abs=1e-8)


def test_coincident_slits_give_identical_waves():
    pair = interference_service.gaussian_two_slit(FRINGE_GRID, separation=0.0, width=1.0, tilt=0.0)
    assert np.allclose(pair.psi1, pair.psi2, atol=0.0)
    assert abs(pair.overlap()) == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize(
    "separation, width, tilt",
    [(4.0, 0.0, 6.0), (4.0, -1.0, 6.0), (math.inf, 0.5, 6.0), (4.0, 0.5, math.nan)],
)
def test_gaussian_two_slit_rejects_bad_parameters(separation, width, tilt):
    with pytest.raises(DomainValidationException):
        interference_service.gaussian_two_slit(FRINGE_GRID, separation, width, tilt)


def test_gaussian_two_slit_rejects_slits_off_the_grid():
    with pytest.raises(DomainValidationException, match="no support"):
        interference_service.gaussian_two_slit(ScreenGrid(0.0, 1.0, 64), separation=100.0, width=0.1, tilt=0.0)


def test_slit_wave_pair_requires_normalized_waves():
    grid = ScreenGrid(-1.0, 1.0, 5)
    with pytest.raises(InvalidStateException):
        SlitWavePair(np.ones(5), np.ones(5), grid)


def test_superpose_orthogonal_plus_needs_no_renormalization(preset):
    plus = interference_service.superpose(preset, SuperpositionSign.PLUS)
    assert np.allclose(plus, (preset.psi1 + preset.psi2) / math.sqrt(2), atol=1e-10)


def test_superpose_coincident_slits():
    pair = interference_service.gaussian_two_slit(FRINGE_GRID, separation=0.0, width=1.0, tilt=0.0)
    assert np.allclose(interference_service.superpose(pair, "Plus"), pair.psi1, atol=1e-12)
    with pytest.raises(DegenerateSuperpositionException):
        interference_service.superpose(pair, SuperpositionSign.MINUS)


def test_minus_then_plus_regenerates_first_slit(preset):
    plus = interference_service.superpose(preset, SuperpositionSign.PLUS)
    minus = interference_service.superpose(preset, SuperpositionSign.MINUS)
    rotated = SlitWavePair(plus, minus, preset.grid)
    assert np.allclose(interference_service.superpose(rotated, SuperpositionSign.PLUS), preset.psi1, atol=1e-8)


def test_patterns_cancel_pointwise(fringe_pair):
    pattern_set = interference_service.patterns(fringe_pair)
    assert interference_service.cancellation_residual(fringe_pair, pattern_set) <= 1e-12
    mean = 0.5 * (pattern_set.p_interference + pattern_set.p_counter)
    assert np.max(np.abs(mean - pattern_set.p_incoherent)) <= 1e-12


def test_patterns_are_normalized_for_orthogonal_slits(fringe_pair):
    pattern_set = interference_service.patterns(fringe_pair)
    assert pattern_set.is_normalized()
    assert pattern_set.integrals()["p_incoherent"] == pytest.approx(1.0, abs=1e-8)


def test_fringe_visibility(fringe_pair):
    pattern_set = interference_service.patterns(fringe_pair)
    window = (-0.5, 0.5)
    assert interference_service.fringe_visibility(pattern_set.p_interference, FRINGE_GRID, window) > 0.9
    assert interference_service.fringe_visibility(pattern_set.p_counter, FRINGE_GRID, window) > 0.9
    assert interference_service.fringe_visibility(pattern_set.p_incoherent, FRINGE_GRID, window) < 0.1


def test_counter_pattern_is_displaced_by_half_a_period(fringe_pair):
    pattern_set = interference_service.patterns(fringe_pair)
    x = FRINGE_GRID.points
    centre = np.abs(x) <= FRINGE_PERIOD / 2
    next_half = (x >= 0.0) & (x <= FRINGE_PERIOD)
    tolerance = FRINGE_PERIOD / 8

    assert abs(x[centre][np.argmax(pattern_set.p_interference[centre])]) <= tolerance
    assert abs(x[centre][np.argmin(pattern_set.p_counter[centre])]) <= tolerance
    assert abs(x[next_half][np.argmax(pattern_set.p_counter[next_half])] - FRINGE_PERIOD / 2) <= tolerance
    assert abs(x[next_half][np.argmin(pattern_set.p_interference[next_half])] - FRINGE_PERIOD / 2) <= tolerance

    window = (-0.5, 0.5)
    v_interference = interference_service.fringe_visibility(pattern_set.p_interference, FRINGE_GRID, window)
    v_counter = interference_service.fringe_visibility(pattern_set.p_counter, FRINGE_GRID, window)
    assert v_interference == pytest.approx(v_counter, abs=0.02)


def test_fringe_visibility_rejects_bad_window(fringe_pair):
    pattern_set = interference_service.patterns(fringe_pair)
    with pytest.raises(DomainValidationException):
        interference_service.fringe_visibility(pattern_set.p_incoherent, FRINGE_GRID, (1.0, -1.0))
    with pytest.raises(DomainValidationException):
        interference_service.fringe_visibility(pattern_set.p_incoherent, FRINGE_GRID, (20.0, 30.0))


def test_pattern_set_rejects_negative_density():
    grid = ScreenGrid(0.0, 1.0, 3)
    with pytest.raises(InvalidStateException):
        PatternSet(grid, [0.0, -1.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0])


def test_density_for_state_maps_basis_to_slits(fringe_pair):
    density = interference_service.density_for_state(fringe_pair, StateVector.basis(0))
    assert np.allclose(density, np.abs(fringe_pair.psi1) ** 2, atol=1e-12)


def test_branch_patterns_of_erasure_are_interference_patterns(fringe_pair):
    omega = distant_measurement_service.purify(MinimalMixture(0.5))
    induced = distant_measurement_service.induced_decomposition(omega, YesNoMeasurement(1 / math.sqrt(2), 0.0))
    analytic = interference_service.branch_patterns(fringe_pair, induced)
    expected = interference_service.patterns(fringe_pair)
    assert np.allclose(analytic.p_interference, expected.p_interference, atol=1e-10)
    assert np.allclose(analytic.p_counter, expected.p_counter, atol=1e-10)
    assert np.allclose(analytic.p_incoherent, expected.p_incoherent, atol=1e-10)
