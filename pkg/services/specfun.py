"""
Modified Bessel function K0 and the zero-order Hankel function of the
second kind on the negative imaginary axis.

K0 is evaluated in two regimes: the convergent ascending series for
z <= 2 and the Chebyshev expansion of the exponentially scaled function
(``scipy.special.k0e``) beyond. ``bessel_k0_integral_oracle`` evaluates the
integral representation directly, as an independent cross-check for the
tests and the report.
"""

import logging
import math
import sys
from functools import lru_cache

import numpy as np
from scipy import special

from models.physics import ComplexValue, K0Value
from services.errors import DomainError

logger = logging.getLogger(__name__)

SERIES_LIMIT = 2.0
ORACLE_TRUNCATION = 1e-18
MIN_ORACLE_NODES = 64

_LOG_TINY = math.log(sys.float_info.min)


def _require_positive(z: float, what: str) -> None:
    if not z > 0.0:
        raise DomainError(
            f"{what} is evaluated only for z > 0 (logarithmic singularity at 0)",
            details=f"z={z!r}",
        )


def _k0_series(z: float) -> float:
    # K0(z) = -(ln(z/2) + gamma) I0(z) + sum_k H_k (z^2/4)^k / (k!)^2
    q = 0.25 * z * z
    term = 1.0
    i0 = 1.0
    tail = 0.0
    harmonic = 0.0
    k = 0
    while True:
        k += 1
        term *= q / (k * k)
        harmonic += 1.0 / k
        i0 += term
        tail += harmonic * term
        if term < 1e-17 * i0:
            break
    return -(math.log(0.5 * z) + np.euler_gamma) * i0 + tail


def evaluate_k0(z: float) -> K0Value:
    """K0(z) for z > 0, flagging (and zeroing) values below the normal double range."""
    _require_positive(z, "K0")
    if z <= SERIES_LIMIT:
        return K0Value(z=z, value=_k0_series(z))
    scaled = float(special.k0e(z))
    if scaled <= 0.0 or math.log(scaled) - z < _LOG_TINY:
        logger.warning(f"K0({z:.6g}) underflows double precision; returning 0")
        return K0Value(z=z, value=0.0, underflow=True)
    return K0Value(z=z, value=scaled * math.exp(-z))


def bessel_k0(z: float) -> float:
    return evaluate_k0(z).value


@lru_cache(maxsize=16)
def legendre_rule(n_nodes: int) -> tuple[np.ndarray, np.ndarray]:
    nodes, weights = special.roots_legendre(n_nodes)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def oracle_truncation_point(z: float) -> float:
    """
    Upper limit u_max of the oracle integral.

    Chosen so that exp(-z*(cosh(u_max) - 1)) = 1e-18, which also gives
    exp(-z*cosh(u_max)) < 1e-18 since exp(-z) < 1.
    """
    _require_positive(z, "K0 oracle")
    return math.acosh(1.0 - math.log(ORACLE_TRUNCATION) / z)


def bessel_k0_integral_oracle(z: float, n_nodes: int = 4096) -> float:
    """
    K0(z) = int_0^inf exp(-z cosh u) du by Gauss-Legendre on [0, u_max].

    Cross-check only; evaluation paths call ``bessel_k0``.
    """
    _require_positive(z, "K0 oracle")
    if n_nodes < MIN_ORACLE_NODES:
        raise DomainError(
            f"K0 oracle needs at least {MIN_ORACLE_NODES} nodes",
            details=f"n_nodes={n_nodes!r}",
        )
    u_max = oracle_truncation_point(z)
    nodes, weights = legendre_rule(n_nodes)
    half = 0.5 * u_max
    u = half * (nodes + 1.0)
    # cosh(u) - 1 = 2 sinh(u/2)^2 keeps the exponent accurate near u = 0
    integrand = np.exp(-2.0 * z * np.sinh(0.5 * u) ** 2)
    return float(math.exp(-z) * half * np.dot(weights, integrand))


def hankel2_0_imag(z: float) -> ComplexValue:
    """
    H0^(2)(-i z) for real z > 0.

    Uses H0^(2)(-i z) = (2i/pi) K0(z): purely imaginary with positive
    imaginary part, so that (-i/4) H0^(2)(-i z) = K0(z)/(2 pi) is real and
    positive and decays like sqrt(1/z) exp(-z).
    """
    _require_positive(z, "H0^(2)(-iz)")
    return hankel2_0_from_k0(bessel_k0(z))


def hankel2_0_from_k0(k0: float) -> ComplexValue:
    """H0^(2)(-i z) = (2i/pi) K0(z) from an already evaluated K0(z)."""
    return ComplexValue(re=0.0, im=2.0 * k0 / math.pi)
