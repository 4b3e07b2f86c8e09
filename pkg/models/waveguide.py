import cmath
from typing import Annotated, Callable, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator


class RectWaveguide(BaseModel):
    """Hollow rectangular pipe; cross-section 0 <= x <= a, 0 <= y <= b"""

    model_config = ConfigDict(frozen=True)

    a: float = Field(gt=0.0, allow_inf_nan=False, description="broad wall, m")
    b: float = Field(gt=0.0, allow_inf_nan=False, description="narrow wall, m")

    @model_validator(mode="after")
    def _broad_wall_first(self) -> "RectWaveguide":
        if not self.a > self.b:
            raise ValueError(f"waveguide needs a > b > 0, got a={self.a!r}, b={self.b!r}")
        return self


class ModeIndex(BaseModel):
    """TE mode indices (n along x, l along y)"""

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=0)
    l: int = Field(ge=0)  # noqa: E741

    @model_validator(mode="after")
    def _not_both_zero(self) -> "ModeIndex":
        if self.n == 0 and self.l == 0:
            raise ValueError("mode (0, 0) does not exist")
        return self

    @property
    def label(self) -> str:
        return f"TE{self.n}{self.l}"


TE10 = ModeIndex(n=1, l=0)


class Propagating(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["propagating"] = "propagating"
    k_z: float = Field(gt=0.0, description="rad/m")


class Evanescent(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["evanescent"] = "evanescent"
    kappa: float = Field(gt=0.0, description="1/m")


class AtCutoff(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["at_cutoff"] = "at_cutoff"


ModeCharacter = Annotated[
    Union[Propagating, Evanescent, AtCutoff], Field(discriminator="kind")
]


class PropagationPhase(BaseModel):
    """exp(i(omega t - k_z z)): a travelling wave along the guide"""

    model_config = ConfigDict(frozen=True)

    kind: Literal["propagating"] = "propagating"
    omega: float
    k_z: float

    def factor(self, z: float, t: float) -> complex:
        return cmath.exp(1j * (self.omega * t - self.k_z * z))


class EvanescentDecay(BaseModel):
    """exp(i omega t - kappa z): no real wavenumber along the guide"""

    model_config = ConfigDict(frozen=True)

    kind: Literal["evanescent"] = "evanescent"
    omega: float
    kappa: float

    def factor(self, z: float, t: float) -> complex:
        return cmath.exp(1j * self.omega * t - self.kappa * z)


class UniformOscillation(BaseModel):
    """exp(i omega t) at cutoff, where both k_z and kappa vanish"""

    model_config = ConfigDict(frozen=True)

    kind: Literal["at_cutoff"] = "at_cutoff"
    omega: float

    def factor(self, z: float, t: float) -> complex:
        return cmath.exp(1j * self.omega * t)


LongitudinalFactor = Annotated[
    Union[PropagationPhase, EvanescentDecay, UniformOscillation],
    Field(discriminator="kind"),
]


class FieldDecomposition(BaseModel):
    """E_x split into its transverse standing-wave factor and longitudinal factor"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    standing_factor: Callable[[float, float], float]
    longitudinal: LongitudinalFactor

    def evaluate(self, x: float, y: float, z: float, t: float) -> complex:
        return self.standing_factor(x, y) * self.longitudinal.factor(z, t)
