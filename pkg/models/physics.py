import math
from typing import Annotated, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator


class PhysicalConstants(BaseModel):
    """SI values of the constants every module shares"""

    model_config = ConfigDict(frozen=True)

    c: float = Field(gt=0.0, description="speed of light, m/s")
    hbar: float = Field(gt=0.0, description="reduced Planck constant, J*s")
    m_electron: float = Field(gt=0.0, description="electron rest mass, kg")


# CODATA 2018; c is exact by definition of the metre.
CODATA_2018 = PhysicalConstants(
    c=2.99792458e8,
    hbar=1.054571817e-34,
    m_electron=9.1093837015e-31,
)


class ComplexValue(BaseModel):
    """A complex number whose components are guaranteed finite"""

    model_config = ConfigDict(frozen=True)

    re: float = Field(allow_inf_nan=False)
    im: float = Field(allow_inf_nan=False)

    @classmethod
    def from_complex(cls, value: complex) -> "ComplexValue":
        return cls(re=value.real, im=value.imag)

    def __complex__(self) -> complex:
        return complex(self.re, self.im)

    def __abs__(self) -> float:
        return math.hypot(self.re, self.im)

    @property
    def modulus_squared(self) -> float:
        return self.re * self.re + self.im * self.im

    def conjugate(self) -> "ComplexValue":
        return ComplexValue(re=self.re, im=-self.im)


class RestMass(BaseModel):
    """Particle characterised by its ordinary rest mass"""

    model_config = ConfigDict(frozen=True)

    kind: Literal["rest_mass"] = "rest_mass"


class GuidedPhoton(BaseModel):
    """Photon in a hollow guide, massive through the guide's cutoff"""

    model_config = ConfigDict(frozen=True)

    kind: Literal["guided_photon"] = "guided_photon"
    omega_c: float = Field(gt=0.0, allow_inf_nan=False, description="rad/s")


ParticleOrigin = Annotated[Union[RestMass, GuidedPhoton], Field(discriminator="kind")]


class MassiveParticle(BaseModel):
    """
    A mass together with its reduced Compton wavelength.

    Build instances through ``services.constants`` (``electron``,
    ``particle_from_mass``, ``guided_photon``) rather than directly; the
    validator only checks that the stored fields agree with each other.
    """

    model_config = ConfigDict(frozen=True)

    mass: float = Field(gt=0.0, allow_inf_nan=False, description="kg")
    compton_wavelength: float = Field(gt=0.0, allow_inf_nan=False, description="m")
    origin: ParticleOrigin = Field(default_factory=RestMass)

    @model_validator(mode="after")
    def _check_consistency(self) -> "MassiveParticle":
        const = CODATA_2018
        expected = const.hbar / (self.mass * const.c)
        if not math.isclose(self.compton_wavelength, expected, rel_tol=1e-12):
            raise ValueError(
                f"compton_wavelength {self.compton_wavelength!r} does not match "
                f"hbar/(m*c) = {expected!r}"
            )
        if isinstance(self.origin, GuidedPhoton):
            mass = const.hbar * self.origin.omega_c / const.c**2
            if not math.isclose(self.mass, mass, rel_tol=1e-12):
                raise ValueError(
                    f"guided photon mass {self.mass!r} does not match "
                    f"hbar*omega_c/c^2 = {mass!r}"
                )
        return self


class K0Value(BaseModel):
    """Value of K0 plus whether it fell below the smallest normal double"""

    model_config = ConfigDict(frozen=True)

    z: float
    value: float = Field(ge=0.0)
    underflow: bool = False
