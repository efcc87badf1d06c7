import logging
import math
import os

import click
import dotenv

from common import config_reader, constants, logging_config, utils
from common.custom_exceptions import CounterErasureException
from models.measurement_model import MeasurementBranch
from models.run_spec_model import Command, OutputFormat, RunSpec
from services import main_service


def bootstrap():
    # STEP 1: get app base dir
    dir_of_src = os.path.abspath(os.path.dirname(__file__))
    app_base_dir = os.path.dirname(dir_of_src)

    # --------------------------------------------------
    # STEP 2: configure stderr logging and read env vars to infer env
    logger = logging_config.configure_logging()
    logger.debug("App base directory inferred as '%s'", app_base_dir)

    app_env = os.environ.get("APP_ENV")

    if not app_env:
        app_env = constants.DEFAULT_ENV
        logger.warning("No APP_ENV env variable found. Defaulting to '%s'", app_env)
    else:
        logger.debug("APP_ENV inferred from environment variable as %s", app_env)

    # --------------------------------------------------
    # STEP 3: read app config
    dot_env_file_path = os.path.join(app_base_dir, "config-files", app_env, ".env")
    dotenv.load_dotenv(dot_env_file_path)
    config_reader.read_config(app_env, app_base_dir)

    # --------------------------------------------------
    # STEP 4: reconfigure logging from the config
    logger = logging_config.configure_logging(utils.get_log_file_path(), utils.get_log_level())
    logger.debug("App bootstrap completed for env '%s'.", utils.get_env())
    return logger


def _fail(ctx: click.Context, message: str):
    click.echo(f"Error: {message}", err=True)
    ctx.exit(1)


def _run(ctx: click.Context, command: Command, params: dict, output_format=OutputFormat.JSON, out=None):
    try:
        spec = RunSpec(command=command, params=params, output_format=output_format, output_path=out)
        main_service.execute(spec)
    except CounterErasureException as ex:
        logging.error("Command '%s' failed: %s", command.value, ex)
        _fail(ctx, str(ex))
    except Exception as ex:
        logging.exception("Unexpected failure in command '%s'", command.value)
        _fail(ctx, f"unexpected failure: {ex}")


def _angle(radians, degrees, name: str, default: float = 0.0) -> float:
    if radians is not None and degrees is not None:
        raise click.UsageError(f"--{name} and --{name}-deg are mutually exclusive")
    if degrees is not None:
        return math.radians(degrees)
    return default if radians is None else radians


def out_option(func):
    return click.option(
        "--out", type=click.Path(dir_okay=False), default=None, help="Write the artifact to this file instead of stdout."
    )(func)


def r_option(func):
    return click.option("--r", "r", type=float, required=True, help="Smaller eigenvalue r of the mixture, 0 < r <= 1/2.")(
        func
    )


def range_state_options(func):
    func = click.option("--theta-deg", type=float, default=None, help="θ in degrees.")(func)
    func = click.option("--theta", type=float, default=None, help="θ in radians (default 0).")(func)
    return click.option("--p", "p", type=float, required=True, help="p in [0, 1].")(func)


def measurement_options(func):
    func = click.option(
        "--analyzer-deg",
        type=float,
        default=None,
        help="Linear analyzer angle from H towards V, instead of --q/--lambda.",
    )(func)
    func = click.option("--lambda-deg", "lambda_deg", type=float, default=None, help="λ in degrees.")(func)
    func = click.option("--lambda", "lam", type=float, default=None, help="λ in radians (default 0).")(func)
    return click.option("--q", "q", type=float, default=None, help="q in [0, 1].")(func)


def geometry_options(func):
    func = click.option("--tilt", type=float, default=constants.PRESET_TILT, show_default=True)(func)
    func = click.option("--width", type=float, default=constants.PRESET_WIDTH, show_default=True)(func)
    func = click.option("--separation", type=float, default=constants.PRESET_SEPARATION, show_default=True)(func)
    func = click.option("--grid-n", type=int, default=constants.PRESET_N, show_default=True)(func)
    func = click.option("--x-max", type=float, default=constants.PRESET_X_MAX, show_default=True)(func)
    return click.option("--x-min", type=float, default=constants.PRESET_X_MIN, show_default=True)(func)


def _range_state_params(r, p, theta, theta_deg) -> dict:
    return {"r": r, "p": p, "theta": _angle(theta, theta_deg, "theta"), "theta_deg": theta_deg}


def _measurement_params(q, lam, lambda_deg, analyzer_deg) -> dict:
    if analyzer_deg is not None:
        if q is not None or lam is not None or lambda_deg is not None:
            raise click.UsageError("--analyzer-deg cannot be combined with --q, --lambda or --lambda-deg")
        return {"analyzer_deg": analyzer_deg}
    if q is None:
        raise click.UsageError("Missing option '--q' (or '--analyzer-deg')")
    return {"q": q, "lambda": _angle(lam, lambda_deg, "lambda"), "lambda_deg": lambda_deg}


def _geometry_params(x_min, x_max, grid_n, separation, width, tilt) -> dict:
    return {
        "x_min": x_min,
        "x_max": x_max,
        "n_grid": grid_n,
        "separation": separation,
        "width": width,
        "tilt": tilt,
    }


@click.group()
@click.pass_context
def main(ctx):
    """Counter erasure: two-term decompositions of mixed qubit states and their distant preparation."""

    try:
        bootstrap()
    except CounterErasureException as ex:
        _fail(ctx, str(ex))


@main.command()
@r_option
@range_state_options
@out_option
@click.pass_context
def decompose(ctx, r, p, theta, theta_deg, out):
    """The (p, θ)-decomposition: weight w, |φ⟩ and its counter state."""

    _run(ctx, Command.DECOMPOSE, _range_state_params(r, p, theta, theta_deg), out=out)


@main.command()
@r_option
@range_state_options
@out_option
@click.pass_context
def counter(ctx, r, p, theta, theta_deg, out):
    """The counter state |φ^c⟩ and its own (p, θ) label."""

    _run(ctx, Command.COUNTER, _range_state_params(r, p, theta, theta_deg), out=out)


@main.command("measurement-for")
@r_option
@range_state_options
@out_option
@click.pass_context
def measurement_for(ctx, r, p, theta, theta_deg, out):
    """The (q, λ)-measurement on the purification that prepares the (p, θ)-decomposition."""

    _run(ctx, Command.MEASUREMENT_FOR, _range_state_params(r, p, theta, theta_deg), out=out)


@main.command("decomposition-for")
@r_option
@measurement_options
@out_option
@click.pass_context
def decomposition_for(ctx, r, q, lam, lambda_deg, analyzer_deg, out):
    """The (p, θ)-decomposition prepared by a (q, λ)-measurement."""

    params = dict({"r": r}, **_measurement_params(q, lam, lambda_deg, analyzer_deg))
    _run(ctx, Command.DECOMPOSITION_FOR, params, out=out)


@main.command()
@r_option
@out_option
@click.pass_context
def purify(ctx, r, out):
    """The Schmidt purification |ω⟩ and both reduced states."""

    _run(ctx, Command.PURIFY, {"r": r}, out=out)


@main.command()
@r_option
@measurement_options
@click.option(
    "--branch",
    type=click.Choice([branch.value for branch in MeasurementBranch]),
    default=None,
    help="Select one outcome; both are reported by default.",
)
@out_option
@click.pass_context
def measure(ctx, r, q, lam, lambda_deg, analyzer_deg, branch, out):
    """Selective and nonselective measurement on the purification."""

    params = dict({"r": r, "branch": branch}, **_measurement_params(q, lam, lambda_deg, analyzer_deg))
    _run(ctx, Command.MEASURE, params, out=out)


@main.command("distant-check")
@r_option
@measurement_options
@out_option
@click.pass_context
def distant_check(ctx, r, q, lam, lambda_deg, analyzer_deg, out):
    """Whether the measurement commutes with the opposite reduced state."""

    params = dict({"r": r}, **_measurement_params(q, lam, lambda_deg, analyzer_deg))
    _run(ctx, Command.DISTANT_CHECK, params, out=out)


@main.command()
@geometry_options
@click.option("--format", "output_format", type=click.Choice([f.value for f in OutputFormat]), default="csv")
@out_option
@click.pass_context
def pattern(ctx, x_min, x_max, grid_n, separation, width, tilt, output_format, out):
    """Interference, counter-interference and incoherent screen densities."""

    params = _geometry_params(x_min, x_max, grid_n, separation, width, tilt)
    _run(ctx, Command.PATTERN, params, output_format=output_format, out=out)


@main.command()
@r_option
@measurement_options
@click.option("--n", "n", type=int, default=100_000, show_default=True, help="Number of photons.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--screen/--no-screen", default=True, show_default=True, help="Sample screen positions.")
@click.option("--bins", type=int, default=constants.DEFAULT_HISTOGRAM_BINS, show_default=True)
@click.option("--hist-range", type=(float, float), default=None, help="Histogram range; the grid span by default.")
@geometry_options
@click.option("--format", "output_format", type=click.Choice([f.value for f in OutputFormat]), default="json")
@out_option
@click.pass_context
def simulate(
    ctx, r, q, lam, lambda_deg, analyzer_deg, n, seed, screen, bins, hist_range, x_min, x_max, grid_n, separation,
    width, tilt, output_format, out,
):
    """Monte Carlo ensemble: branch tallies and screen histograms."""

    params = dict(
        {"r": r, "n": n, "seed": seed, "screen": screen, "bins": bins, "histogram_range": hist_range},
        **_measurement_params(q, lam, lambda_deg, analyzer_deg),
    )
    if screen:
        params.update(_geometry_params(x_min, x_max, grid_n, separation, width, tilt))
    _run(ctx, Command.SIMULATE, params, output_format=output_format, out=out)


@main.command()
@click.option("--grid-steps", type=int, default=constants.DEFAULT_VERIFY_GRID_STEPS, show_default=True)
@click.option("--samples", type=int, default=constants.DEFAULT_VERIFY_SAMPLES, show_default=True)
@click.option("--seed", type=int, default=constants.DEFAULT_VERIFY_SEED, show_default=True)
@out_option
@click.pass_context
def verify(ctx, grid_steps, samples, seed, out):
    """Run every invariant suite; exit status 0 iff all pass."""

    _run(ctx, Command.VERIFY, {"grid_steps": grid_steps, "samples": samples, "seed": seed}, out=out)


if __name__ == "__main__":
    main()
