import logging
from typing import Optional

import click

from commands.common import (
    build_sweep,
    frequency,
    reports_errors,
    run_config,
    sweep_options,
    write_rows,
)
from models.runs import Command, Spacing, WaveguideRow
from services.scenarios import REFERENCE_CUTOFF_RAD_S, run_waveguide

logger = logging.getLogger(__name__)


@click.command()
@click.option("--cutoff-rad-s", type=float, default=None, help="TE10 cutoff in rad/s.")
@click.option(
    "--cutoff-ghz-angular",
    type=float,
    default=None,
    help="TE10 cutoff in units of 1e9 rad/s (no factor 2*pi).",
)
@sweep_options("ratio", 0.6, 1.4, 9, Spacing.LINEAR)
@reports_errors
def waveguide(
    cutoff_rad_s: Optional[float],
    cutoff_ghz_angular: Optional[float],
    variable: str,
    start: float,
    stop: float,
    count: int,
    spacing: str,
) -> None:
    """
    TE10 mode character across a frequency sweep straddling cutoff.

    --variable ratio sweeps omega/omega_c, --variable omega sweeps rad/s.
    The cutoff defaults to 9.49e9 rad/s.
    """
    omega_c = frequency(cutoff_rad_s, cutoff_ghz_angular, "cutoff")
    if omega_c is None:
        omega_c = REFERENCE_CUTOFF_RAD_S
    cfg = run_config(
        Command.WAVEGUIDE, sweep=build_sweep(variable, start, stop, count, spacing)
    )
    logger.info(f"Waveguide sweep of {variable} at omega_c={omega_c:.6e} rad/s")
    write_rows(run_waveguide(omega_c, cfg.sweep), WaveguideRow, cfg.output)
