"""
Run configuration assembled by the CLI and the row models every command
emits. Row field order is the emitted column order.
"""

from enum import Enum
from pathlib import Path
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from models.propagator import CausalClass, Method, QuadratureConfig


class Command(str, Enum):
    REPORT = "report"
    PROPAGATOR = "propagator"
    WINDOW = "window"
    WAVEGUIDE = "waveguide"
    NEARFIELD = "nearfield"


class Spacing(str, Enum):
    LINEAR = "linear"
    LOG = "log"


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


class SweepSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    variable: str
    start: float = Field(allow_inf_nan=False)
    stop: float = Field(allow_inf_nan=False)
    count: int = Field(ge=2)
    spacing: Spacing = Spacing.LINEAR

    @model_validator(mode="after")
    def _check_range(self) -> "SweepSpec":
        if not self.start < self.stop:
            raise ValueError(f"sweep needs start < stop, got {self.start!r} >= {self.stop!r}")
        if self.spacing is Spacing.LOG and not self.start > 0.0:
            raise ValueError(f"log spacing needs start > 0, got {self.start!r}")
        return self

    def points(self) -> list[float]:
        if self.spacing is Spacing.LOG:
            values = np.geomspace(self.start, self.stop, self.count)
        else:
            values = np.linspace(self.start, self.stop, self.count)
        # pin the endpoints exactly; geomspace goes through exp/log
        values[0], values[-1] = self.start, self.stop
        return [float(v) for v in values]


class OutputSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    format: OutputFormat = OutputFormat.CSV
    path: Optional[Path] = Field(default=None, description="None means standard output")


class ParticleSource(BaseModel):
    """Exactly one of: the electron, an explicit mass, a guide cutoff (rad/s)"""

    model_config = ConfigDict(frozen=True)

    electron: bool = False
    mass_kg: Optional[float] = Field(default=None, gt=0.0, allow_inf_nan=False)
    cutoff_rad_s: Optional[float] = Field(default=None, gt=0.0, allow_inf_nan=False)

    @model_validator(mode="after")
    def _exactly_one(self) -> "ParticleSource":
        given = [self.electron, self.mass_kg is not None, self.cutoff_rad_s is not None]
        if sum(given) != 1:
            raise ValueError(
                "specify exactly one particle source: electron, mass or cutoff"
            )
        return self


class RunConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    command: Command
    particle: Optional[ParticleSource] = None
    sweep: Optional[SweepSpec] = None
    output: OutputSpec = Field(default_factory=OutputSpec)
    quadrature: Optional[QuadratureConfig] = Field(
        default=None, description="None means the settings defaults"
    )


class PropagatorRow(BaseModel):
    z: float
    amplitude_re: float
    amplitude_im: float
    probability: float
    method: Method
    in_window: bool


class WindowRow(BaseModel):
    dt: float
    dr: float
    interval_sq: float
    z: Optional[float] = None
    causal_class: CausalClass
    in_window: bool


class WaveguideRow(BaseModel):
    omega: float
    character: str
    k_z_or_kappa: float
    bound_mm: float


class NearfieldRow(BaseModel):
    x: float
    z: float
    field_re: float
    field_im: float
    magnitude: float
    residual: Optional[float] = None


class ReportRow(BaseModel):
    quantity: str
    unit: str
    reference_value: Optional[float] = None
    computed: float
    cross_check: Optional[float] = None
    relative_deviation: Optional[float] = None
