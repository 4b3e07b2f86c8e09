import logging
from typing import Optional

import click

from commands.common import frequency, reports_errors, run_config, write_rows
from models.nearfield import NearFieldSpec
from models.runs import Command, NearfieldRow
from services.nearfield import replacement_kappa
from services.scenarios import REFERENCE_CUTOFF_RAD_S, run_nearfield
from services.waveguide import te10_width_for_cutoff

logger = logging.getLogger(__name__)


@click.command()
@click.option("--width-m", type=float, default=None, help="Slab width a in m.")
@click.option(
    "--cutoff-rad-s", type=float, default=None, help="Cutoff fixing a = c*pi/omega_c."
)
@click.option(
    "--cutoff-ghz-angular",
    type=float,
    default=None,
    help="Cutoff in units of 1e9 rad/s (no factor 2*pi).",
)
@click.option(
    "--omega-rad-s", type=float, default=None, help="Angular frequency, rad/s."
)
@click.option(
    "--omega-ghz-angular",
    type=float,
    default=None,
    help="Angular frequency in units of 1e9 rad/s (no factor 2*pi).",
)
@click.option("--e0", type=float, default=1.0, show_default=True)
@click.option("--nx", type=int, default=11, show_default=True, help="Points across a.")
@click.option("--nz", type=int, default=11, show_default=True, help="Points along z.")
@click.option(
    "--z-max-m",
    type=float,
    default=None,
    help="Grid depth in m; three decay lengths 1/kappa by default.",
)
@click.option(
    "--step-m",
    type=float,
    default=None,
    help="Finite-difference step h in m; 5e-4*a/pi by default.",
)
@click.option("--time-s", type=float, default=0.0, show_default=True)
@reports_errors
def nearfield(
    width_m: Optional[float],
    cutoff_rad_s: Optional[float],
    cutoff_ghz_angular: Optional[float],
    omega_rad_s: Optional[float],
    omega_ghz_angular: Optional[float],
    e0: float,
    nx: int,
    nz: int,
    z_max_m: Optional[float],
    step_m: Optional[float],
    time_s: float,
) -> None:
    """
    Evanescent TE10 field E_y on an (x, z) grid with wave-equation residuals.

    The slab is set by --width-m or by a cutoff (9.49e9 rad/s by default);
    the frequency defaults to 0, the static aerial-array limit.
    """
    cfg = run_config(Command.NEARFIELD)
    omega_c = frequency(cutoff_rad_s, cutoff_ghz_angular, "cutoff")
    if width_m is not None and omega_c is not None:
        raise click.UsageError("give either --width-m or a cutoff, not both")
    if width_m is None:
        width_m = te10_width_for_cutoff(omega_c or REFERENCE_CUTOFF_RAD_S)
    omega = frequency(omega_rad_s, omega_ghz_angular, "omega") or 0.0

    spec = NearFieldSpec(a=width_m, omega=omega, E0=e0)
    if z_max_m is None:
        z_max_m = 3.0 / replacement_kappa(spec.omega, spec.omega_c)
    logger.info(f"Near field on a={spec.a:.6e} m at omega={spec.omega:.6e} rad/s")
    rows = run_nearfield(spec, nx, nz, z_max_m, t=time_s, h=step_m)
    write_rows(rows, NearfieldRow, cfg.output)
