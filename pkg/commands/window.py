import logging
from typing import Optional

import click

from commands.common import (
    build_sweep,
    particle_options,
    particle_source,
    reports_errors,
    run_config,
    sweep_options,
    write_rows,
)
from models.runs import Command, Spacing, WindowRow
from services.scenarios import default_window_sweep, resolve_particle, run_window

logger = logging.getLogger(__name__)


@click.command()
@particle_options
@sweep_options("dr", None, None, 21, Spacing.LINEAR)
@click.option(
    "--dt",
    "fixed_dt",
    type=float,
    default=0.0,
    show_default=True,
    help="Time separation in s held fixed in a dr sweep.",
)
@click.option(
    "--dr",
    "fixed_dr",
    type=float,
    default=0.0,
    show_default=True,
    help="Distance in m held fixed in a dt sweep.",
)
@reports_errors
def window(
    electron: bool,
    mass_kg: Optional[float],
    cutoff_rad_s: Optional[float],
    cutoff_ghz_angular: Optional[float],
    variable: str,
    start: Optional[float],
    stop: Optional[float],
    count: int,
    spacing: str,
    fixed_dt: float,
    fixed_dr: float,
) -> None:
    """
    Causal class and Weinberg-window membership along a dr (m) or dt (s) sweep.

    Without --start/--stop the sweep spans twice the particle's Compton
    wavelength (or its light-travel time, both signs, for dt).
    """
    source = particle_source(electron, mass_kg, cutoff_rad_s, cutoff_ghz_angular)
    particle = resolve_particle(source)
    if start is None and stop is None:
        sweep = default_window_sweep(particle, variable, count)
    elif start is None or stop is None:
        raise click.UsageError("give both --start and --stop, or neither")
    else:
        sweep = build_sweep(variable, start, stop, count, spacing)
    cfg = run_config(Command.WINDOW, particle=source, sweep=sweep)
    rows = run_window(particle, cfg.sweep, fixed_dt=fixed_dt, fixed_dr=fixed_dr)
    logger.info(f"Window sweep of {variable}: {len(rows)} rows")
    write_rows(rows, WindowRow, cfg.output)
