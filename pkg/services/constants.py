"""
Physical constants, boundary unit conversions and the Compton-wavelength /
effective-mass relations shared by every other module.

Everything inside the toolkit is SI. Millimetres and "GHz" (the angular
10^9 rad/s reading) only appear at the CLI and report boundary.
"""

import logging

from models.physics import CODATA_2018, GuidedPhoton, MassiveParticle, RestMass
from services.errors import DomainError

logger = logging.getLogger(__name__)

CONSTANTS = CODATA_2018

MM_PER_M = 1e3
RAD_S_PER_GHZ_ANGULAR = 1e9


def ghz_angular_to_rad_s(value: float) -> float:
    """Scale a "GHz" figure used as an angular frequency; no factor of 2*pi"""
    return value * RAD_S_PER_GHZ_ANGULAR


def metres_to_mm(value: float) -> float:
    return value * MM_PER_M


def mm_to_metres(value: float) -> float:
    return value / MM_PER_M


def compton_wavelength(mass: float) -> float:
    """Reduced Compton wavelength hbar/(m*c) in metres for a mass in kg."""
    if not mass > 0.0:
        raise DomainError(
            "Compton wavelength is defined only for positive mass",
            details=f"mass={mass!r}",
        )
    return CONSTANTS.hbar / (mass * CONSTANTS.c)


def effective_photon_mass(omega_c: float) -> float:
    """Effective mass hbar*omega_c/c^2 (kg) of photons in a guide with cutoff omega_c (rad/s)."""
    if not omega_c > 0.0:
        raise DomainError(
            "effective photon mass needs a positive cutoff frequency",
            details=f"omega_c={omega_c!r}",
        )
    return CONSTANTS.hbar * omega_c / CONSTANTS.c**2


def particle_from_mass(mass: float) -> MassiveParticle:
    return MassiveParticle(
        mass=mass, compton_wavelength=compton_wavelength(mass), origin=RestMass()
    )


def electron() -> MassiveParticle:
    return particle_from_mass(CONSTANTS.m_electron)


def guided_photon(omega_c: float) -> MassiveParticle:
    """
    Photon inside a hollow guide treated as a free particle of mass
    hbar*omega_c/c^2; its Compton wavelength is c/omega_c.
    """
    mass = effective_photon_mass(omega_c)
    logger.debug(f"Guided photon at omega_c={omega_c:.6e} rad/s has m_eff={mass:.6e} kg")
    return MassiveParticle(
        mass=mass,
        compton_wavelength=compton_wavelength(mass),
        origin=GuidedPhoton(omega_c=omega_c),
    )
