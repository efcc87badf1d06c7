"""
    Common constants.
"""

CONFIG_FILE_NAME = "counter-erasure-config.ini"
DEFAULT_ENV = "local"
DEFAULT_LOG_LEVEL = "INFO"
DEFAULT_SIMULATION_WORKERS = 1

# validation tolerance for states and operators handed in from outside
NORM_TOL = 1e-10
# tolerance for identities between quantities computed internally
IDENTITY_TOL = 1e-12
# p, q within this distance of 0 or 1 are snapped onto the boundary
BOUNDARY_SNAP_TOL = 1e-14

RADICAND_CLAMP_TOL = 1e-12
RADICAND_FAILURE_TOL = 1e-9
PSD_NEGATIVE_TOL = 1e-9
PURITY_TOL = 1e-9
COMMUTATOR_TOL = 1e-12
# the commutator test and the overlap test share one threshold; close to it the two may still disagree
ORTHOGONALITY_TOL = 1e-12
MIN_BRANCH_PROBABILITY = 1e-14
GRID_NORM_TOL = 1e-8

# Gaussian two-slit preset. Conventions only, nothing here is measured data.
PRESET_X_MIN = -10.0
PRESET_X_MAX = 10.0
PRESET_N = 2048
PRESET_SEPARATION = 4.0
PRESET_WIDTH = 0.5
PRESET_TILT = 6.0

DEFAULT_HISTOGRAM_BINS = 64
MIN_EXPECTED_BIN_COUNT = 5.0
# photons per random substream; fixing it keeps results independent of the worker count
SIMULATION_CHUNK_SIZE = 1 << 14
GENERATOR_NAME = "numpy.random.PCG64/SeedSequence.spawn"

JSON_SCHEMA_VERSION = "counter-erasure/1"
JSON_FLOAT_REPR = "shortest-roundtrip"
CSV_FLOAT_FORMAT = ".17g"
PATTERN_CSV_SCHEMA = "# counter-erasure pattern v1"
HISTOGRAM_CSV_SCHEMA = "# counter-erasure histogram v1"

DEFAULT_VERIFY_GRID_STEPS = 10
DEFAULT_VERIFY_SAMPLES = 1000
DEFAULT_VERIFY_SEED = 20240601
