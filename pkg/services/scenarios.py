"""
Sweep execution behind each CLI command.

Every ``run_*`` function takes already-validated inputs and returns the rows
in their emitted order; rendering and I/O stay in the commands.
"""

import logging
import math
from typing import Iterable, Optional, Sequence

import numpy as np

from models.nearfield import NearFieldSpec
from models.physics import MassiveParticle
from models.propagator import Method, QuadratureConfig, SpacetimeSeparation
from models.runs import (
    NearfieldRow,
    ParticleSource,
    PropagatorRow,
    ReportRow,
    SweepSpec,
    WaveguideRow,
    WindowRow,
)
from services.constants import (
    CONSTANTS,
    electron,
    guided_photon,
    metres_to_mm,
    particle_from_mass,
)
from services.errors import SweepError
from services.nearfield import nearfield_ey, wave_equation_residual
from services.propagator import (
    asymptotic_ratio,
    augmented_observable_interval,
    boost_family,
    default_quadrature_config,
    observability_threshold,
    propagator_closed_form,
    propagator_quadrature,
    separation_from_lab,
    weinberg_window,
)
from services.specfun import bessel_k0_integral_oracle
from services.waveguide import (
    mode_summary,
    observable_spacelike_bound,
    te10_width_for_cutoff,
)

logger = logging.getLogger(__name__)

REFERENCE_CUTOFF_RAD_S = 9.49e9
REFERENCE_ELECTRON_MM = 3.87e-10
REFERENCE_GUIDED_MM = 31.6
REPORT_Z_VALUES = (0.5, 1.0, 2.0, 5.0)
REPORT_ASYMPTOTIC_Z = 20.0
REPORT_PHOTON_COUNTS = (1, 1_000, 1_000_000)
# second differences of fields below this leave the normal double range
NEARFIELD_FLOOR = math.sqrt(float(np.finfo(float).tiny))

PROPAGATOR_VARIABLES = ("z", "dr", "dt", "rapidity")
WINDOW_VARIABLES = ("dr", "dt")
WAVEGUIDE_VARIABLES = ("omega", "ratio")


def resolve_particle(source: ParticleSource) -> MassiveParticle:
    if source.electron:
        return electron()
    if source.mass_kg is not None:
        return particle_from_mass(source.mass_kg)
    return guided_photon(source.cutoff_rad_s)


def check_sweep_variable(sweep: SweepSpec, valid: Sequence[str]) -> None:
    if sweep.variable not in valid:
        raise SweepError(
            f"invalid sweep variable '{sweep.variable}'; valid variables are: "
            + ", ".join(valid),
            details=f"valid={list(valid)!r}",
        )


def _deviation(value: float, against: float) -> float:
    return abs(value - against) / abs(against)


def run_report() -> list[ReportRow]:
    """
    Reference numbers side by side with their computed values.

    ``relative_deviation`` compares ``computed`` with ``reference_value`` when
    a reference figure exists and with ``cross_check`` otherwise.
    """
    rows: list[ReportRow] = []
    reference_electron = electron()

    electron_mm = metres_to_mm(reference_electron.compton_wavelength)
    rows.append(
        ReportRow(
            quantity="electron_compton_wavelength",
            unit="mm",
            reference_value=REFERENCE_ELECTRON_MM,
            computed=electron_mm,
            relative_deviation=_deviation(electron_mm, REFERENCE_ELECTRON_MM),
        )
    )

    photon = guided_photon(REFERENCE_CUTOFF_RAD_S)
    bound_mm = metres_to_mm(observable_spacelike_bound(REFERENCE_CUTOFF_RAD_S))
    photon_mm = metres_to_mm(photon.compton_wavelength)
    rows.append(
        ReportRow(
            quantity="guided_photon_compton_wavelength",
            unit="mm",
            reference_value=REFERENCE_GUIDED_MM,
            computed=bound_mm,
            cross_check=photon_mm,
            relative_deviation=_deviation(bound_mm, REFERENCE_GUIDED_MM),
        )
    )
    rows.append(
        ReportRow(
            quantity="compton_wavelength_ratio",
            unit="1",
            computed=bound_mm / electron_mm,
        )
    )

    threshold = observability_threshold()
    oracle_threshold = (bessel_k0_integral_oracle(1.0) / (2.0 * math.pi)) ** 2
    rows.append(
        ReportRow(
            quantity="observability_threshold",
            unit="1",
            computed=threshold,
            cross_check=oracle_threshold,
            relative_deviation=_deviation(threshold, oracle_threshold),
        )
    )

    # z is dimensionless, so the electron serves for every D(z) row
    lam = reference_electron.compton_wavelength
    for z in REPORT_Z_VALUES:
        sep = SpacetimeSeparation(dt=0.0, dr=z * lam)
        closed = propagator_closed_form(sep, reference_electron).amplitude.re
        quad = propagator_quadrature(sep, reference_electron).amplitude.re
        rows.append(
            ReportRow(
                quantity=f"propagator_amplitude(z={z:g})",
                unit="1",
                computed=closed,
                cross_check=quad,
                relative_deviation=_deviation(closed, quad),
            )
        )

    rows.append(
        ReportRow(
            quantity="te10_width_for_reference_cutoff",
            unit="mm",
            computed=metres_to_mm(te10_width_for_cutoff(REFERENCE_CUTOFF_RAD_S)),
        )
    )

    ratio = asymptotic_ratio(REPORT_ASYMPTOTIC_Z)
    rows.append(
        ReportRow(
            quantity=f"asymptotic_ratio(z={REPORT_ASYMPTOTIC_Z:g})",
            unit="1",
            reference_value=1.0,
            computed=ratio,
            relative_deviation=_deviation(ratio, 1.0),
        )
    )

    for n_photons in REPORT_PHOTON_COUNTS:
        rows.append(
            ReportRow(
                quantity=f"augmented_observable_interval(N={n_photons})",
                unit="mm",
                computed=metres_to_mm(augmented_observable_interval(photon, n_photons)),
            )
        )
    return rows


def _propagator_separation(
    variable: str,
    value: float,
    particle: MassiveParticle,
    fixed_z: float,
    fixed_dt: float,
    fixed_dr: float,
    fixed_rapidity: float,
) -> SpacetimeSeparation:
    lam = particle.compton_wavelength
    if variable == "z":
        return boost_family(value * lam, [fixed_rapidity])[0]
    if variable == "rapidity":
        return boost_family(fixed_z * lam, [value])[0]
    if variable == "dr":
        return separation_from_lab(fixed_dt, value)
    return separation_from_lab(value, fixed_dr)


def run_propagator(
    particle: MassiveParticle,
    sweep: SweepSpec,
    methods: Iterable[Method] = tuple(Method),
    quadrature: Optional[QuadratureConfig] = None,
    fixed_z: float = 1.0,
    fixed_dt: float = 0.0,
    fixed_dr: float = 0.0,
    fixed_rapidity: float = 0.0,
) -> list[PropagatorRow]:
    """One row per sweep point per method, closed form before quadrature."""
    check_sweep_variable(sweep, PROPAGATOR_VARIABLES)
    chosen = set(methods)
    ordered = [m for m in Method if m in chosen]
    if not ordered:
        raise SweepError("at least one evaluation method is required")
    cfg = quadrature or default_quadrature_config()

    rows: list[PropagatorRow] = []
    for value in sweep.points():
        sep = _propagator_separation(
            sweep.variable, value, particle, fixed_z, fixed_dt, fixed_dr, fixed_rapidity
        )
        for method in ordered:
            if method is Method.CLOSED_FORM:
                result = propagator_closed_form(sep, particle)
            else:
                result = propagator_quadrature(sep, particle, cfg)
            rows.append(
                PropagatorRow(
                    z=result.z,
                    amplitude_re=result.amplitude.re,
                    amplitude_im=result.amplitude.im,
                    probability=result.probability,
                    method=result.method,
                    in_window=result.in_weinberg_window,
                )
            )
    logger.info(f"Propagator sweep over {sweep.variable}: {len(rows)} rows")
    return rows


def default_window_sweep(
    particle: MassiveParticle, variable: str, count: int
) -> SweepSpec:
    """Sweep to twice the Compton wavelength (dr) or +/- twice its light time (dt)."""
    lam = particle.compton_wavelength
    if variable == "dt":
        span = 2.0 * lam / CONSTANTS.c
        return SweepSpec(variable=variable, start=-span, stop=span, count=count)
    return SweepSpec(variable=variable, start=0.0, stop=2.0 * lam, count=count)


def run_window(
    particle: MassiveParticle,
    sweep: SweepSpec,
    fixed_dt: float = 0.0,
    fixed_dr: float = 0.0,
) -> list[WindowRow]:
    check_sweep_variable(sweep, WINDOW_VARIABLES)
    rows: list[WindowRow] = []
    for value in sweep.points():
        if sweep.variable == "dr":
            sep = separation_from_lab(fixed_dt, value)
        else:
            sep = separation_from_lab(value, fixed_dr)
        length = sep.invariant_length
        rows.append(
            WindowRow(
                dt=sep.dt,
                dr=sep.dr,
                interval_sq=sep.interval_squared,
                z=None if length is None else length / particle.compton_wavelength,
                causal_class=sep.causal_class,
                in_window=weinberg_window(sep, particle),
            )
        )
    return rows


def run_waveguide(omega_c: float, sweep: SweepSpec) -> list[WaveguideRow]:
    """
    Classify TE10 at every swept frequency. ``ratio`` sweeps omega/omega_c;
    non-positive frequencies are skipped and an all-invalid range is rejected.
    """
    check_sweep_variable(sweep, WAVEGUIDE_VARIABLES)
    scale = omega_c if sweep.variable == "ratio" else 1.0
    omegas = [value * scale for value in sweep.points()]
    valid = [omega for omega in omegas if omega > 0.0]
    if not valid:
        raise SweepError(
            "frequency range contains no positive frequency",
            details=f"start={sweep.start!r}, stop={sweep.stop!r}",
        )
    if len(valid) < len(omegas):
        logger.warning(f"Skipping {len(omegas) - len(valid)} non-positive frequencies")

    bound_mm = metres_to_mm(observable_spacelike_bound(omega_c))
    rows = []
    for omega in valid:
        character, wavenumber = mode_summary(omega, omega_c)
        rows.append(
            WaveguideRow(
                omega=omega,
                character=character,
                k_z_or_kappa=wavenumber,
                bound_mm=bound_mm,
            )
        )
    return rows


def default_nearfield_step(spec: NearFieldSpec) -> float:
    """h = 5e-4 * a / pi"""
    return 5e-4 * spec.a / math.pi


def run_nearfield(
    spec: NearFieldSpec,
    nx: int,
    nz: int,
    z_max: float,
    t: float = 0.0,
    h: Optional[float] = None,
) -> list[NearfieldRow]:
    """
    Field on an nx-by-nz grid over [0, a] x [0, z_max], rows ordered by z
    then x. The residual is filled at points at least 2h inside the slab
    where the field is at least NEARFIELD_FLOOR; deeper points are left empty.
    """
    if nx < 3 or nz < 3:
        raise SweepError(
            "near-field grid needs at least 3 points along each axis",
            details=f"nx={nx!r}, nz={nz!r}",
        )
    if not z_max > 0.0:
        raise SweepError("near-field grid needs z_max > 0", details=f"z_max={z_max!r}")
    step = default_nearfield_step(spec) if h is None else h

    xs = np.linspace(0.0, spec.a, nx)
    xs[-1] = spec.a
    zs = np.linspace(0.0, z_max, nz)
    margin = 2.0 * step

    rows = []
    below_floor = 0
    for z in map(float, zs):
        for x in map(float, xs):
            value = nearfield_ey(spec, x, z, t)
            interior = margin <= x <= spec.a - margin and z >= margin
            residual = None
            if interior and abs(value) < NEARFIELD_FLOOR:
                below_floor += 1
            elif interior:
                residual = wave_equation_residual(spec, (x, z), t, step)
            rows.append(
                NearfieldRow(
                    x=x,
                    z=z,
                    field_re=value.re,
                    field_im=value.im,
                    magnitude=abs(value),
                    residual=residual,
                )
            )
    if below_floor:
        logger.warning(
            f"Near field is below {NEARFIELD_FLOOR:.3e} at {below_floor} interior "
            f"points; their residual is left empty"
        )
    logger.info(f"Near-field grid {nx}x{nz}: {len(rows)} rows, step h={step:.3e} m")
    return rows
