import logging
from typing import Optional

import click

from commands.common import (
    build_quadrature,
    build_sweep,
    particle_options,
    particle_source,
    quadrature_options,
    reports_errors,
    run_config,
    sweep_options,
    write_rows,
)
from models.propagator import Method
from models.runs import Command, PropagatorRow, Spacing
from services.scenarios import resolve_particle, run_propagator

logger = logging.getLogger(__name__)

METHOD_CHOICES = [m.value for m in Method] + ["both"]


@click.command()
@particle_options
@sweep_options("z", 0.1, 10.0, 50, Spacing.LOG)
@click.option(
    "--method",
    type=click.Choice(METHOD_CHOICES),
    default="both",
    show_default=True,
    help="Evaluation method(s); rows list closed_form before quadrature.",
)
@click.option(
    "--z",
    "fixed_z",
    type=float,
    default=1.0,
    show_default=True,
    help="Invariant argument held fixed in a rapidity sweep.",
)
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
@click.option(
    "--rapidity",
    "fixed_rapidity",
    type=float,
    default=0.0,
    show_default=True,
    help="Boost rapidity applied in a z sweep.",
)
@quadrature_options
@reports_errors
def propagator(
    electron: bool,
    mass_kg: Optional[float],
    cutoff_rad_s: Optional[float],
    cutoff_ghz_angular: Optional[float],
    variable: str,
    start: float,
    stop: float,
    count: int,
    spacing: str,
    method: str,
    fixed_z: float,
    fixed_dt: float,
    fixed_dr: float,
    fixed_rapidity: float,
    tolerance: Optional[float],
    max_evals: Optional[int],
    contour: str,
) -> None:
    """
    Spacelike amplitude D(t, r) along a sweep of z, dr (m), dt (s) or rapidity.
    """
    cfg = run_config(
        Command.PROPAGATOR,
        particle=particle_source(electron, mass_kg, cutoff_rad_s, cutoff_ghz_angular),
        sweep=build_sweep(variable, start, stop, count, spacing),
        quadrature=build_quadrature(tolerance, max_evals, contour),
    )
    methods = list(Method) if method == "both" else [Method(method)]
    logger.info(f"Propagator sweep of {variable} with {count} points, methods {method}")
    rows = run_propagator(
        resolve_particle(cfg.particle),
        cfg.sweep,
        methods=methods,
        quadrature=cfg.quadrature,
        fixed_z=fixed_z,
        fixed_dt=fixed_dt,
        fixed_dr=fixed_dr,
        fixed_rapidity=fixed_rapidity,
    )
    write_rows(rows, PropagatorRow, cfg.output)
