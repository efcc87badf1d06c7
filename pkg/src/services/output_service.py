"""
output_service serializes command results: JSON artifacts with lossless floats and
versioned CSV tables. Artifacts go to stdout unless an output path is given.
"""
import csv
import io
import json
import logging
import math
import os
import sys
from enum import Enum

import numpy as np

from common import constants
from common.custom_exceptions import DomainValidationException

PATTERN_CSV_HEADER = ["x", "p_i", "p_i_c", "p_mix"]
HISTOGRAM_CSV_HEADER = ["bin_left", "bin_right", "mu1_count", "mu2_count"]


def _format_float(value: float, float_format: str) -> str:
    if not math.isfinite(value):
        raise DomainValidationException(f"artifacts carry finite numbers only, got {value}")
    return format(value, float_format)


class ArtifactJSONEncoder(json.JSONEncoder):
    """
    ArtifactJSONEncoder writes complex numbers as [re, im] and numpy scalars and arrays as plain
    JSON values. Floats keep the encoder's shortest round-trip repr, at most 17 significant digits.
    """

    def default(self, o):
        if isinstance(o, (complex, np.complexfloating)):
            return [float(o.real), float(o.imag)]
        if isinstance(o, np.bool_):
            return bool(o)
        if isinstance(o, np.integer):
            return int(o)
        if isinstance(o, np.floating):
            return float(o)
        if isinstance(o, np.ndarray):
            return o.tolist()
        if isinstance(o, Enum):
            return o.value
        return super().default(o)


def tolerances() -> dict:
    return {
        "norm": constants.NORM_TOL,
        "identity": constants.IDENTITY_TOL,
        "boundary_snap": constants.BOUNDARY_SNAP_TOL,
        "radicand_clamp": constants.RADICAND_CLAMP_TOL,
        "radicand_failure": constants.RADICAND_FAILURE_TOL,
        "psd_negative": constants.PSD_NEGATIVE_TOL,
        "purity": constants.PURITY_TOL,
        "commutator": constants.COMMUTATOR_TOL,
        "orthogonality": constants.ORTHOGONALITY_TOL,
        "min_branch_probability": constants.MIN_BRANCH_PROBABILITY,
        "grid_norm": constants.GRID_NORM_TOL,
    }


def json_artifact(command: str, inputs: dict, result: dict) -> str:
    document = {
        "schema": constants.JSON_SCHEMA_VERSION,
        "float_repr": constants.JSON_FLOAT_REPR,
        "command": command,
        "inputs": inputs,
        "tolerances": tolerances(),
        "result": result,
    }
    try:
        text = json.dumps(document, cls=ArtifactJSONEncoder, indent=2, ensure_ascii=False, allow_nan=False)
    except ValueError as ex:
        raise DomainValidationException(f"artifacts carry finite numbers only: {ex}") from ex
    return text + "\n"


def _csv_table(schema_line: str, header: list, rows) -> str:
    buffer = io.StringIO()
    buffer.write(schema_line + "\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(
            [_format_float(value, constants.CSV_FLOAT_FORMAT) if isinstance(value, float) else value for value in row]
        )
    return buffer.getvalue()


def pattern_csv(pattern_set) -> str:
    """x, p_i, p_i_c, p_mix per grid point."""

    rows = zip(
        (float(x) for x in pattern_set.grid.points),
        (float(v) for v in pattern_set.p_interference),
        (float(v) for v in pattern_set.p_counter),
        (float(v) for v in pattern_set.p_incoherent),
    )
    return _csv_table(constants.PATTERN_CSV_SCHEMA, PATTERN_CSV_HEADER, rows)


def histogram_csv(histograms) -> str:
    return _csv_table(constants.HISTOGRAM_CSV_SCHEMA, HISTOGRAM_CSV_HEADER, histograms.rows())


def emit(text: str, output_path=None):
    """Writes an artifact to output_path, or to stdout when no path is given."""

    if output_path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return

    directory = os.path.dirname(os.path.abspath(output_path))
    os.makedirs(directory, exist_ok=True)
    with open(output_path, "w", encoding="utf-8", newline="") as artifact_file:
        artifact_file.write(text)
    logging.info("Artifact written to '%s'", output_path)
