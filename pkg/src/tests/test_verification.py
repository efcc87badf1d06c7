import numpy as np
import pytest

from common.custom_exceptions import DomainValidationException
from services import verification_service

SUITE_NAMES = [
    "reconstruction",
    "weight_bounds",
    "monotonicity",
    "degenerate_orthogonality",
    "uniqueness",
    "lemma_a1",
    "roundtrip_decomposition",
    "roundtrip_measurement",
    "weight_routes",
    "luders_counter_states",
    "distant_criterion",
    "erasure",
    "counter_involution",
]


@pytest.fixture(scope="module")
def report():
    return verification_service.run_all(grid_steps=4, samples=40, seed=7)


def test_every_suite_runs_and_passes(report):
    assert [suite.name for suite in report.suites] == SUITE_NAMES
    for suite in report.suites:
        assert suite.cases > 0, suite.name
        assert suite.passed, suite.to_dict()
    assert report.passed


def test_identity_suites_stay_within_tolerance(report):
    for name in ("reconstruction", "roundtrip_decomposition", "roundtrip_measurement", "weight_routes"):
        assert report.suite(name).max_residual <= 1e-12


def test_grid_covers_boundaries():
    assert verification_service.grid_r(4) == [0.125, 0.25, 0.375, 0.5]
    assert verification_service.grid_unit(4) == [0.0, 0.25, 0.5, 0.75, 1.0]


def test_distant_criterion_includes_degenerate_cases(report):
    # every tenth random case is a Schmidt-basis measurement, plus the r = 1/2 sample
    assert report.suite("distant_criterion").cases == 40 + verification_service.DEGENERATE_SAMPLES


def test_report_is_reproducible(report):
    again = verification_service.run_all(grid_steps=4, samples=40, seed=7)
    assert again.to_dict() == report.to_dict()


def test_random_suites_depend_on_seed():
    first = verification_service.check_uniqueness(5, np.random.default_rng(1))
    second = verification_service.check_uniqueness(5, np.random.default_rng(1))
    assert first.to_dict() == second.to_dict()
    assert first.passed


@pytest.mark.parametrize("grid_steps, samples", [(0, 10), (4, 0)])
def test_run_all_rejects_empty_runs(grid_steps, samples):
    with pytest.raises(DomainValidationException):
        verification_service.run_all(grid_steps=grid_steps, samples=samples, seed=0)
