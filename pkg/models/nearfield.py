import math
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from models.physics import CODATA_2018

CUTOFF_MATCH_RTOL = 1e-12


class NearFieldSpec(BaseModel):
    """
    Slab of width ``a`` carrying the below-cutoff TE10 field.

    ``omega_c`` may be omitted, in which case it is derived as c*pi/a. When
    given it has to agree with that value to 1e-12 relative.
    """

    model_config = ConfigDict(frozen=True)

    a: float = Field(gt=0.0, allow_inf_nan=False, description="slab width, m")
    omega: float = Field(ge=0.0, allow_inf_nan=False, description="rad/s")
    omega_c: Optional[float] = Field(default=None, gt=0.0, description="rad/s")
    E0: float = Field(default=1.0, allow_inf_nan=False)

    @model_validator(mode="after")
    def _check_cutoff(self) -> "NearFieldSpec":
        expected = CODATA_2018.c * math.pi / self.a
        if self.omega_c is None:
            object.__setattr__(self, "omega_c", expected)
        elif not math.isclose(self.omega_c, expected, rel_tol=CUTOFF_MATCH_RTOL):
            raise ValueError(
                f"omega_c={self.omega_c!r} does not match c*pi/a = {expected!r}"
            )
        if not self.omega < self.omega_c:
            raise ValueError(
                f"near field is the evanescent regime: need omega < omega_c, "
                f"got omega={self.omega!r}, omega_c={self.omega_c!r}"
            )
        return self

    @property
    def static_decay_length(self) -> float:
        """z0 = a/pi = c/omega_c"""
        return self.a / math.pi
