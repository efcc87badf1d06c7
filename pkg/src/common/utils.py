import configparser
import logging
import math
import os

from common import config_reader, constants
from common.custom_exceptions import (
    DomainValidationException,
    InconsistentDecompositionException,
    MissingConfigException,
)

TWO_PI = 2.0 * math.pi


def string_is_not_empty(input_str):
    return input_str is not None and len(input_str) > 0


def _get_option(section, option):
    if config_reader.config_data is None or not config_reader.config_data.has_option(section, option):
        return None

    try:
        value = config_reader.config_data.get(section, option).strip()
    except configparser.Error as ex:
        raise MissingConfigException(f"{section}.{option} cannot be resolved: {ex}") from ex
    if value.startswith(("'", '"')) and value.endswith(("'", '"')):
        value = value.strip("'\"")
    return value


def get_env():
    env = _get_option("Main", "env")
    return env.lower() if string_is_not_empty(env) else constants.DEFAULT_ENV


def get_log_level() -> int:
    """
    get_log_level reads Main.log-level from config and converts it to a logging level.

    Raises:
        MissingConfigException: If the option is present but does not name a logging level.

    Returns:
        int: the logging level, INFO when the option is missing.
    """

    level_name = _get_option("Main", "log-level")
    if level_name is None:
        return logging.getLevelName(constants.DEFAULT_LOG_LEVEL)

    level = logging.getLevelName(level_name.upper())
    if not isinstance(level, int):
        raise MissingConfigException(f"Main.log-level has unknown value '{level_name}'.")
    return level


def get_log_file_path():
    """
    get_log_file_path resolves Main.log-file against the app base dir.

    Returns:
        str | None: absolute log file path, or None when file logging is disabled.
    """

    log_file = _get_option("Main", "log-file")
    if not string_is_not_empty(log_file):
        return None

    if os.path.isabs(log_file):
        return log_file
    return os.path.join(config_reader.config_data.get("Main", "app_base_dir"), log_file)


def get_simulation_workers() -> int:
    workers = _get_option("Simulation", "workers")
    if workers is None:
        return constants.DEFAULT_SIMULATION_WORKERS

    if not string_is_not_empty(workers):
        raise MissingConfigException("Simulation.workers is present but has empty value.")
    try:
        count = int(workers)
    except ValueError as ex:
        raise MissingConfigException(f"Simulation.workers must be an integer, got '{workers}'.") from ex
    if count < 1:
        raise MissingConfigException(f"Simulation.workers must be >= 1, got {count}.")
    return count


def canonical_angle(angle: float) -> float:
    """Wraps an angle into [0, 2π)."""

    if not math.isfinite(angle):
        raise DomainValidationException(f"angle must be finite, got {angle}")
    wrapped = math.fmod(angle, TWO_PI)
    if wrapped < 0.0:
        wrapped += TWO_PI
    # a tiny negative remainder shifts onto 2π itself
    if wrapped >= TWO_PI:
        wrapped = 0.0
    return wrapped


def snap_unit_interval(value: float, name: str) -> float:
    """
    snap_unit_interval validates that value lies in [0, 1] and pulls values within
    BOUNDARY_SNAP_TOL of either end onto that end.

    Raises:
        DomainValidationException: naming the bound when value is outside [0, 1].
    """

    if not math.isfinite(value):
        raise DomainValidationException(f"{name} must be finite, got {value}")
    if value < -constants.BOUNDARY_SNAP_TOL or value > 1.0 + constants.BOUNDARY_SNAP_TOL:
        raise DomainValidationException(f"{name} must satisfy 0 <= {name} <= 1, got {value}")
    if value <= constants.BOUNDARY_SNAP_TOL:
        return 0.0
    if value >= 1.0 - constants.BOUNDARY_SNAP_TOL:
        return 1.0
    return float(value)


def clamp_radicand(value: float, label: str) -> float:
    """
    clamp_radicand turns rounding noise below zero into an exact zero.

    Raises:
        InconsistentDecompositionException: if value is below -RADICAND_FAILURE_TOL.
    """

    if value >= 0.0:
        return value
    if value >= -constants.RADICAND_CLAMP_TOL:
        return 0.0
    if value >= -constants.RADICAND_FAILURE_TOL:
        logging.warning("Radicand %s = %.3e clamped to zero", label, value)
        return 0.0
    raise InconsistentDecompositionException(f"Radicand {label} = {value} is negative; inputs are inconsistent.")
