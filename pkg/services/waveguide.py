"""
Rectangular hollow-waveguide mode physics.

TE modes only. The field convention is exp(+i omega t) with exp(-i k_z z);
below cutoff k_z = -i kappa, which turns the propagation factor into the
attenuation factor exp(i omega t - kappa z).
"""

import cmath
import logging
import math
from functools import partial

from models.physics import ComplexValue
from models.waveguide import (
    AtCutoff,
    Evanescent,
    EvanescentDecay,
    FieldDecomposition,
    LongitudinalFactor,
    ModeCharacter,
    ModeIndex,
    PropagationPhase,
    Propagating,
    RectWaveguide,
    UniformOscillation,
)
from services.constants import CONSTANTS, effective_photon_mass
from services.errors import DomainError

logger = logging.getLogger(__name__)

CUTOFF_RTOL = 1e-12


def transverse_wavenumbers(wg: RectWaveguide, mode: ModeIndex) -> tuple[float, float]:
    """(k_x, k_y) = (n pi / a, l pi / b)"""
    return mode.n * math.pi / wg.a, mode.l * math.pi / wg.b


def cutoff_angular_frequency(wg: RectWaveguide, mode: ModeIndex) -> float:
    """omega_c = c sqrt(k_x^2 + k_y^2) in rad/s"""
    k_x, k_y = transverse_wavenumbers(wg, mode)
    return CONSTANTS.c * math.hypot(k_x, k_y)


def te10_width_for_cutoff(omega_c: float) -> float:
    """Broad-wall width a (m) whose TE10 cutoff is omega_c: a = c pi / omega_c"""
    if not omega_c > 0.0:
        raise DomainError("cutoff frequency must be positive", details=f"omega_c={omega_c!r}")
    return CONSTANTS.c * math.pi / omega_c


def classify_mode(omega: float, omega_c: float) -> ModeCharacter:
    if not (omega > 0.0 and omega_c > 0.0):
        raise DomainError(
            "mode classification needs positive frequencies",
            details=f"omega={omega!r}, omega_c={omega_c!r}",
        )
    if abs(omega - omega_c) <= CUTOFF_RTOL * omega_c:
        return AtCutoff()
    # (w - wc)(w + wc) keeps the difference of squares accurate near cutoff
    spread = math.sqrt(abs((omega - omega_c) * (omega + omega_c))) / CONSTANTS.c
    if omega > omega_c:
        return Propagating(k_z=spread)
    return Evanescent(kappa=spread)


def _check_cross_section(wg: RectWaveguide, x: float, y: float) -> None:
    if not (0.0 <= x <= wg.a and 0.0 <= y <= wg.b):
        raise DomainError(
            "point lies outside the guide cross-section",
            details=f"x={x!r} (0..{wg.a!r}), y={y!r} (0..{wg.b!r})",
        )


def _longitudinal_wavenumber(character: ModeCharacter) -> complex:
    if isinstance(character, Propagating):
        return complex(character.k_z, 0.0)
    if isinstance(character, Evanescent):
        return -1j * character.kappa
    return 0j


def field_ex(
    wg: RectWaveguide,
    mode: ModeIndex,
    omega: float,
    point: tuple[float, float, float],
    t: float,
    amplitude: float = 1.0,
) -> ComplexValue:
    """E_x = A cos(k_x x) sin(k_y y) exp(i omega t - i k_z z) with complex k_z below cutoff."""
    x, y, z = point
    _check_cross_section(wg, x, y)
    k_x, k_y = transverse_wavenumbers(wg, mode)
    k_z = _longitudinal_wavenumber(classify_mode(omega, cutoff_angular_frequency(wg, mode)))
    value = (
        amplitude
        * math.cos(k_x * x)
        * math.sin(k_y * y)
        * cmath.exp(1j * omega * t - 1j * k_z * z)
    )
    return ComplexValue.from_complex(value)


def _standing_factor(
    wg: RectWaveguide, amplitude: float, k_x: float, k_y: float, x: float, y: float
) -> float:
    _check_cross_section(wg, x, y)
    return amplitude * math.cos(k_x * x) * math.sin(k_y * y)


def decompose_field(
    wg: RectWaveguide, mode: ModeIndex, omega: float, amplitude: float = 1.0
) -> FieldDecomposition:
    """
    Split E_x into f(x, y) = A cos(k_x x) sin(k_y y) and a tagged longitudinal
    factor. The transverse factor is a standing wave for every mode; the
    longitudinal one is a travelling phase above cutoff and a pure decay
    (carrying kappa and no real wavenumber) below it.
    """
    k_x, k_y = transverse_wavenumbers(wg, mode)
    character = classify_mode(omega, cutoff_angular_frequency(wg, mode))
    longitudinal: LongitudinalFactor
    if isinstance(character, Propagating):
        longitudinal = PropagationPhase(omega=omega, k_z=character.k_z)
    elif isinstance(character, Evanescent):
        longitudinal = EvanescentDecay(omega=omega, kappa=character.kappa)
    else:
        longitudinal = UniformOscillation(omega=omega)
    return FieldDecomposition(
        standing_factor=partial(_standing_factor, wg, amplitude, k_x, k_y),
        longitudinal=longitudinal,
    )


def observable_spacelike_bound(omega_c: float) -> float:
    """c / omega_c (m): the guided photon's effective Compton wavelength"""
    if not omega_c > 0.0:
        raise DomainError(
            "observable bound needs a positive cutoff frequency",
            details=f"omega_c={omega_c!r}",
        )
    return CONSTANTS.c / omega_c


def dispersion_identity_check(
    omega: float, character: ModeCharacter, omega_c: float
) -> float:
    """
    Relative residual of (hbar omega)^2 = (m_eff c^2)^2 + (hbar k_z c)^2.

    Guided dispersion restated as the energy-momentum relation of a free
    particle of mass m_eff = hbar omega_c / c^2; stated for propagating modes.
    """
    if not isinstance(character, Propagating):
        raise DomainError(
            "dispersion identity is stated for propagating modes only",
            details=f"character={character.kind}",
        )
    hbar, c = CONSTANTS.hbar, CONSTANTS.c
    energy = hbar * omega
    rest_energy = effective_photon_mass(omega_c) * c**2
    momentum_energy = hbar * character.k_z * c
    return abs(energy**2 - rest_energy**2 - momentum_energy**2) / energy**2


def mode_summary(omega: float, omega_c: float) -> tuple[str, float]:
    """(character kind, k_z or kappa) as emitted by the waveguide sweep; 0 at cutoff"""
    character = classify_mode(omega, omega_c)
    if isinstance(character, Propagating):
        return character.kind, character.k_z
    if isinstance(character, Evanescent):
        return character.kind, character.kappa
    return character.kind, 0.0
