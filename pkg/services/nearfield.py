"""
Near field of an aerial array, written as the evanescent TE10 field of a slab.

Replacing omega_c/c by kappa = sqrt(omega_c^2 - omega^2)/c turns the static
array field E0 sin(pi x/a) exp(-z/z0) into the below-cutoff guide field
E_y = E0 sin(pi x/a) exp(i omega t) exp(-kappa z). ``wave_equation_residual``
checks that field against the scalar wave equation with central second
differences in x and z and the exact harmonic time derivative.
"""

import cmath
import logging
import math
from typing import Callable, Optional

from models.nearfield import NearFieldSpec
from models.physics import ComplexValue
from services.constants import CONSTANTS
from services.errors import DomainError

logger = logging.getLogger(__name__)

FieldFunction = Callable[[float, float, float], complex]


def replacement_kappa(omega: float, omega_c: float) -> float:
    """kappa = sqrt(omega_c^2 - omega^2)/c in 1/m; omega_c/c at omega = 0."""
    if not omega_c > 0.0:
        raise DomainError("cutoff frequency must be positive", details=f"omega_c={omega_c!r}")
    if not 0.0 <= omega < omega_c:
        raise DomainError(
            "replacement is defined below cutoff only (0 <= omega < omega_c)",
            details=f"omega={omega!r}, omega_c={omega_c!r}",
        )
    # same factorisation as waveguide.classify_mode so both give identical kappa
    return math.sqrt(abs((omega - omega_c) * (omega + omega_c))) / CONSTANTS.c


def _sine_profile(x: float, a: float) -> float:
    # reflect about a/2 so that x = a gives exactly zero
    if x > 0.5 * a:
        return math.sin(math.pi * (a - x) / a)
    return math.sin(math.pi * x / a)


def _field(spec: NearFieldSpec, kappa: float, x: float, z: float, t: float) -> complex:
    return (
        spec.E0
        * _sine_profile(x, spec.a)
        * cmath.exp(1j * spec.omega * t)
        * math.exp(-kappa * z)
    )


def nearfield_ey(spec: NearFieldSpec, x: float, z: float, t: float) -> ComplexValue:
    if not (0.0 <= x <= spec.a and z >= 0.0):
        raise DomainError(
            "near-field point lies outside the slab",
            details=f"x={x!r} (0..{spec.a!r}), z={z!r} (>= 0)",
        )
    kappa = replacement_kappa(spec.omega, spec.omega_c)
    return ComplexValue.from_complex(_field(spec, kappa, x, z, t))


def wave_equation_residual(
    spec: NearFieldSpec,
    point: tuple[float, float],
    t: float,
    h: float,
    field: Optional[FieldFunction] = None,
) -> float:
    """
    |(d2/dx2 + d2/dz2 + omega^2/c^2) E| / |E| at ``point``, in 1/m^2.

    The spatial derivatives are central second differences with step ``h``,
    so for the slab field the result is h^2 ((pi/a)^4 + kappa^4) / 12 to
    leading order. ``field`` replaces the slab field by any callable
    ``(x, z, t) -> complex``, which is how the plane-wave and perturbed-decay
    controls are run.
    """
    x, z = point
    if not h > 0.0:
        raise DomainError("finite-difference step must be positive", details=f"h={h!r}")
    margin = 2.0 * h
    if not (margin <= x <= spec.a - margin and z >= margin):
        raise DomainError(
            "residual point must lie at least 2h inside the slab",
            details=f"x={x!r}, z={z!r}, h={h!r}, a={spec.a!r}",
        )
    if field is None:
        kappa = replacement_kappa(spec.omega, spec.omega_c)

        def field(x_: float, z_: float, t_: float) -> complex:
            return _field(spec, kappa, x_, z_, t_)

    centre = field(x, z, t)
    magnitude = abs(centre)
    if magnitude == 0.0:
        raise DomainError(
            "field vanishes at the residual point; relative residual undefined",
            details=f"x={x!r}, z={z!r}",
        )
    d2x = (field(x + h, z, t) - 2.0 * centre + field(x - h, z, t)) / (h * h)
    d2z = (field(x, z + h, t) - 2.0 * centre + field(x, z - h, t)) / (h * h)
    # -(1/c^2) d2/dt2 of a harmonic exp(i omega t) field
    time_term = (spec.omega / CONSTANTS.c) ** 2 * centre
    return abs(d2x + d2z + time_term) / magnitude
