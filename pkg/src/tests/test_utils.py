import logging
import math

import pytest

from common import utils
from common.custom_exceptions import DomainValidationException, InconsistentDecompositionException


@pytest.mark.parametrize(
    "angle, expected",
    [
        (0.0, 0.0),
        (math.pi, math.pi),
        (-math.pi / 4, 7 * math.pi / 4),
        (2 * math.pi, 0.0),
        (5 * math.pi, math.pi),
    ],
)
def test_canonical_angle(angle, expected):
    assert utils.canonical_angle(angle) == pytest.approx(expected, abs=1e-12)
    assert 0.0 <= utils.canonical_angle(angle) < 2 * math.pi


@pytest.mark.parametrize("angle", [math.nan, math.inf])
def test_canonical_angle_rejects_non_finite(angle):
    with pytest.raises(DomainValidationException):
        utils.canonical_angle(angle)


def test_snap_unit_interval():
    assert utils.snap_unit_interval(0.25, "p") == 0.25
    assert utils.snap_unit_interval(1.0 + 1e-15, "p") == 1.0
    assert utils.snap_unit_interval(-1e-15, "p") == 0.0
    assert utils.snap_unit_interval(1e-15, "p") == 0.0


@pytest.mark.parametrize("value", [-0.1, 1.1, math.nan])
def test_snap_unit_interval_names_the_bound(value):
    with pytest.raises(DomainValidationException, match="q"):
        utils.snap_unit_interval(value, "q")


def test_clamp_radicand_passes_nonnegative():
    assert utils.clamp_radicand(0.25, "x") == 0.25
    assert utils.clamp_radicand(0.0, "x") == 0.0


def test_clamp_radicand_silently_clamps_rounding_noise(caplog):
    with caplog.at_level(logging.WARNING):
        assert utils.clamp_radicand(-1e-13, "x") == 0.0
    assert not caplog.records


def test_clamp_radicand_warns_near_failure(caplog):
    with caplog.at_level(logging.WARNING):
        assert utils.clamp_radicand(-1e-10, "x") == 0.0
    assert "clamped" in caplog.text


def test_clamp_radicand_rejects_negative():
    with pytest.raises(InconsistentDecompositionException):
        utils.clamp_radicand(-1e-6, "x")
