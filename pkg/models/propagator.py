import math
from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from models.physics import CODATA_2018, ComplexValue

LIGHTLIKE_RTOL = 1e-12


class CausalClass(str, Enum):
    SPACELIKE = "spacelike"
    LIGHTLIKE = "lightlike"
    TIMELIKE = "timelike"


class Observability(str, Enum):
    NONNEGLIGIBLE = "nonnegligible"
    NEGLIGIBLE = "negligible"


class Method(str, Enum):
    # declaration order is the emitted row order
    CLOSED_FORM = "closed_form"
    QUADRATURE = "quadrature"


class Contour(str, Enum):
    # rotated: u -> u + i pi/2, where the integrand is exp(-z cosh) and positive
    ROTATED = "rotated"
    # real_axis: the oscillatory integral as written, with sequence acceleration
    REAL_AXIS = "real_axis"


class SpacetimeSeparation(BaseModel):
    """
    Separation (dt, dr) between emission and absorption events.

    The causal class is always derived from the interval; it is never stored.
    """

    model_config = ConfigDict(frozen=True)

    dt: float = Field(allow_inf_nan=False, description="s, any sign")
    dr: float = Field(ge=0.0, allow_inf_nan=False, description="m")

    @property
    def c_dt(self) -> float:
        return CODATA_2018.c * self.dt

    @property
    def interval_squared(self) -> float:
        """dr^2 - c^2 dt^2 in m^2; positive for spacelike separations"""
        return self.dr * self.dr - self.c_dt * self.c_dt

    @property
    def causal_class(self) -> CausalClass:
        spatial = self.dr * self.dr
        temporal = self.c_dt * self.c_dt
        if abs(spatial - temporal) <= LIGHTLIKE_RTOL * max(spatial, temporal):
            return CausalClass.LIGHTLIKE
        if spatial > temporal:
            return CausalClass.SPACELIKE
        return CausalClass.TIMELIKE

    @property
    def is_spacelike(self) -> bool:
        return self.causal_class is CausalClass.SPACELIKE

    @property
    def invariant_length(self) -> Optional[float]:
        """sqrt(dr^2 - c^2 dt^2) for spacelike separations, else None"""
        if not self.is_spacelike:
            return None
        return math.sqrt(self.interval_squared)

    @property
    def apparent_speed_ratio(self) -> Optional[float]:
        """dr / (c |dt|); None in the equal-time frame"""
        if self.dt == 0.0:
            return None
        return self.dr / abs(self.c_dt)


class QuadratureConfig(BaseModel):
    """Controls for the momentum-integral evaluation of D(t, r)"""

    model_config = ConfigDict(frozen=True)

    tolerance: float = Field(default=1e-9, gt=0.0, lt=1.0, description="relative")
    max_evals: int = Field(default=2_000_000, ge=1_000)
    nodes_per_panel: int = Field(default=24, ge=4, le=256)
    min_panels: int = Field(default=8, ge=3)
    max_bisections: int = Field(default=30, ge=0)
    contour: Contour = Contour.ROTATED


class PropagatorResult(BaseModel):
    """Normalised spacelike amplitude D(t, r) = K0(z)/(2 pi) and derived flags"""

    model_config = ConfigDict(frozen=True)

    z: float = Field(gt=0.0)
    amplitude: ComplexValue
    probability: float = Field(ge=0.0)
    in_weinberg_window: bool
    above_threshold: bool
    method: Method
    underflow: bool = False
    error_estimate: float = Field(default=0.0, ge=0.0)
    evaluations: int = Field(default=0, ge=0)
