from typing import Optional

from pydantic import BaseModel, ConfigDict


class ErrorResponse(BaseModel):
    """Error document written to standard error when a command fails"""

    error: str
    message: str
    exit_code: int
    details: Optional[str] = None


class ConvergenceErrorResponse(ErrorResponse):
    """Error document for an unconverged quadrature, with its best estimate"""

    # an unbounded error is written as "Infinity" rather than null
    model_config = ConfigDict(ser_json_inf_nan="strings")

    error: str = "ConvergenceError"
    exit_code: int = 4
    best_estimate_re: float
    best_estimate_im: float
    error_bound: float
    evaluations: int
