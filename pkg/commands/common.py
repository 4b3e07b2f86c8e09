"""
Pieces shared by every subcommand: unit-aware particle and sweep options,
output writing, and the mapping from toolkit errors to exit codes.
"""

import functools
import logging
from typing import Any, Callable, Optional, Sequence, Type

import click
from pydantic import BaseModel, ValidationError

from models.errors import ConvergenceErrorResponse, ErrorResponse
from models.propagator import Contour, QuadratureConfig
from models.runs import (
    Command,
    OutputSpec,
    ParticleSource,
    RunConfig,
    Spacing,
    SweepSpec,
)
from services.constants import ghz_angular_to_rad_s
from services.emit import render_rows
from services.errors import ConvergenceError, SpacelikeError
from services.propagator import default_quadrature_config

logger = logging.getLogger(__name__)

USAGE_EXIT_CODE = 2


def frequency(
    rad_s: Optional[float], ghz_angular: Optional[float], name: str
) -> Optional[float]:
    """Angular frequency in rad/s from either unit flag; both at once is a usage error."""
    if rad_s is not None and ghz_angular is not None:
        raise click.UsageError(
            f"give either --{name}-rad-s or --{name}-ghz-angular, not both"
        )
    if ghz_angular is not None:
        return ghz_angular_to_rad_s(ghz_angular)
    return rad_s


def particle_options(command: Callable) -> Callable:
    options = [
        click.option("--electron", is_flag=True, default=False, help="Use the electron."),
        click.option("--mass-kg", type=float, default=None, help="Rest mass in kg."),
        click.option(
            "--cutoff-rad-s",
            type=float,
            default=None,
            help="Guided photon: waveguide cutoff in rad/s.",
        ),
        click.option(
            "--cutoff-ghz-angular",
            type=float,
            default=None,
            help="Guided photon: cutoff in units of 1e9 rad/s (no factor 2*pi).",
        ),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def particle_source(
    electron: bool,
    mass_kg: Optional[float],
    cutoff_rad_s: Optional[float],
    cutoff_ghz_angular: Optional[float],
) -> ParticleSource:
    """The selected particle source; the electron when no source flag is given."""
    cutoff = frequency(cutoff_rad_s, cutoff_ghz_angular, "cutoff")
    if not electron and mass_kg is None and cutoff is None:
        electron = True
    return ParticleSource(electron=electron, mass_kg=mass_kg, cutoff_rad_s=cutoff)


def sweep_options(
    variable: str,
    start: Optional[float],
    stop: Optional[float],
    count: int,
    spacing: Spacing,
) -> Callable[[Callable], Callable]:
    def decorate(command: Callable) -> Callable:
        options = [
            click.option("--variable", default=variable, show_default=True),
            click.option("--start", type=float, default=start, show_default=True),
            click.option("--stop", type=float, default=stop, show_default=True),
            click.option("--count", type=int, default=count, show_default=True),
            click.option(
                "--spacing",
                type=click.Choice([s.value for s in Spacing]),
                default=spacing.value,
                show_default=True,
            ),
        ]
        for option in reversed(options):
            command = option(command)
        return command

    return decorate


def build_sweep(
    variable: str, start: float, stop: float, count: int, spacing: str
) -> SweepSpec:
    return SweepSpec(
        variable=variable, start=start, stop=stop, count=count, spacing=Spacing(spacing)
    )


def quadrature_options(command: Callable) -> Callable:
    command = click.option(
        "--contour",
        type=click.Choice([c.value for c in Contour]),
        default=Contour.ROTATED.value,
        show_default=True,
        help="Momentum contour: rotated (no oscillation) or real_axis.",
    )(command)
    command = click.option(
        "--max-evals", type=int, default=None, help="Quadrature evaluation budget."
    )(command)
    command = click.option(
        "--tolerance", type=float, default=None, help="Relative quadrature tolerance."
    )(command)
    return command


def build_quadrature(
    tolerance: Optional[float], max_evals: Optional[int], contour: str
) -> QuadratureConfig:
    defaults = default_quadrature_config()
    return QuadratureConfig(
        tolerance=defaults.tolerance if tolerance is None else tolerance,
        max_evals=defaults.max_evals if max_evals is None else max_evals,
        contour=Contour(contour),
    )


def run_config(command: Command, **fields: Any) -> RunConfig:
    """
    Validated configuration of one run. The output target comes from the
    command group; a command invoked on its own writes CSV to standard output.
    """
    output = click.get_current_context().find_object(OutputSpec) or OutputSpec()
    config = RunConfig(command=command, output=output, **fields)
    logger.debug(f"Run configuration: {config.model_dump_json()}")
    return config


def write_rows(
    rows: Sequence[BaseModel], row_type: Type[BaseModel], output: OutputSpec
) -> None:
    text = render_rows(rows, row_type, output.format)
    destination = "-" if output.path is None else str(output.path)
    with click.open_file(destination, "w", encoding="utf-8") as stream:
        stream.write(text)
    logger.info(f"Wrote {len(rows)} rows to {output.path or 'standard output'}")


def _fail(ctx: click.Context, response: ErrorResponse) -> None:
    click.echo(response.model_dump_json(), err=True)
    ctx.exit(response.exit_code)


def reports_errors(command: Callable[..., Any]) -> Callable[..., Any]:
    """
    Turn toolkit failures into an ErrorResponse on standard error and the
    matching exit code. Validation failures of CLI input count as usage errors.
    """

    @functools.wraps(command)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        ctx = click.get_current_context()
        try:
            return command(*args, **kwargs)
        except (click.ClickException, click.exceptions.Exit, click.Abort):
            raise
        except ConvergenceError as e:
            logger.error(f"{ctx.info_name}: {e.message}")
            best = complex(e.best_estimate)
            _fail(
                ctx,
                ConvergenceErrorResponse(
                    message=e.message,
                    details=e.details,
                    best_estimate_re=best.real,
                    best_estimate_im=best.imag,
                    error_bound=e.error_bound,
                    evaluations=e.evaluations,
                ),
            )
        except SpacelikeError as e:
            logger.error(f"{ctx.info_name}: {e.message}")
            _fail(
                ctx,
                ErrorResponse(
                    error=type(e).__name__,
                    message=e.message,
                    exit_code=e.exit_code,
                    details=e.details,
                ),
            )
        except ValidationError as e:
            logger.error(f"{ctx.info_name}: invalid input: {e.error_count()} error(s)")
            _fail(
                ctx,
                ErrorResponse(
                    error="ValidationError",
                    message=f"invalid {e.title} input",
                    exit_code=USAGE_EXIT_CODE,
                    details=str(e),
                ),
            )
        except Exception as e:
            logger.exception(f"{ctx.info_name}: unexpected failure")
            _fail(
                ctx,
                ErrorResponse(
                    error=type(e).__name__,
                    message=str(e),
                    exit_code=SpacelikeError.exit_code,
                ),
            )

    return wrapper
