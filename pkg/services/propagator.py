"""
Spacelike propagation amplitude D(t, r) of a massive scalar particle.

Two independent evaluations are provided:

* ``propagator_closed_form``: (-i/4) H0^(2)(-i z) = K0(z)/(2 pi) with
  z = sqrt(r^2 - c^2 t^2) / lambda_bar;
* ``propagator_quadrature``: the one-dimensional momentum integral
  int dp/(2 pi) c/(2 E_p) exp[-i(E_p t - p r)/hbar], evaluated after the
  substitution p = m c sinh u, either on the contour Im u = pi/2 where it no
  longer oscillates, or on the real axis over half-period panels of its
  phase with Wynn-epsilon acceleration of the panel partial sums.

Plus the observability helpers: Weinberg window, probability threshold,
negligible/nonnegligible classification, boost families, and the
photon-number augmented observable interval.
"""

import logging
import math
from functools import lru_cache
from typing import Callable, Iterable, Optional, Sequence

import numpy as np
from scipy import optimize

from models.physics import ComplexValue, MassiveParticle
from models.propagator import (
    CausalClass,
    Contour,
    Method,
    Observability,
    PropagatorResult,
    QuadratureConfig,
    SpacetimeSeparation,
)
from services.constants import CONSTANTS
from services.errors import ConvergenceError, DomainError
from services.specfun import (
    bessel_k0,
    evaluate_k0,
    hankel2_0_from_k0,
    hankel2_0_imag,
    legendre_rule,
)
from settings import get_settings

logger = logging.getLogger(__name__)

# relative gap below which two epsilon-table entries count as equal
_EPSILON_TABLE_FLOOR = 1e-14
# partial sums fed to the epsilon table
_EPSILON_WINDOW = 21
_EPS = float(np.finfo(float).eps)
# multiple of eps * |partial sum| that cancellation leaves unresolvable
_ROUNDOFF_FACTOR = 1e3
# the rotated contour cuts a panel each time the integrand drops by this many e-folds
_ROTATED_LEVEL_STEP = 1.0
_TINY = float(np.finfo(float).tiny)


def default_quadrature_config() -> QuadratureConfig:
    settings = get_settings()
    return QuadratureConfig(
        tolerance=settings.SPACELIKE_TOL, max_evals=settings.SPACELIKE_MAX_EVALS
    )


def separation_from_lab(dt: float, dr: float) -> SpacetimeSeparation:
    """Build a separation from lab-frame values, reporting bad input as a domain error."""
    if not (math.isfinite(dt) and math.isfinite(dr)) or dr < 0.0:
        raise DomainError(
            "separation needs finite dt and a non-negative distance dr",
            details=f"dt={dt!r}, dr={dr!r}",
        )
    return SpacetimeSeparation(dt=dt, dr=dr)


def _invariant_argument(sep: SpacetimeSeparation, p: MassiveParticle) -> float:
    causal = sep.causal_class
    if causal is not CausalClass.SPACELIKE:
        raise DomainError(
            "closed form stated only for spacelike interval",
            details=f"dt={sep.dt!r}, dr={sep.dr!r} is {causal.value}",
        )
    return sep.invariant_length / p.compton_wavelength


def weinberg_window(sep: SpacetimeSeparation, p: MassiveParticle) -> bool:
    """0 < dr^2 - c^2 dt^2 <= lambda_bar^2, both inequalities as written."""
    interval_sq = sep.interval_squared
    return 0.0 < interval_sq <= p.compton_wavelength**2


@lru_cache(maxsize=1)
def observability_threshold() -> float:
    """
    |(-i/4) H0^(2)(-i)|^2 = (K0(1)/(2 pi))^2.

    The squared bracket is read as a squared modulus; the literal square of
    the purely imaginary H0^(2)(-i) would be negative.
    """
    return abs(-0.25j * complex(hankel2_0_imag(1.0))) ** 2


def _build_result(
    z: float,
    amplitude: complex,
    method: Method,
    sep: SpacetimeSeparation,
    p: MassiveParticle,
    underflow: bool = False,
    error_estimate: float = 0.0,
    evaluations: int = 0,
) -> PropagatorResult:
    value = ComplexValue.from_complex(amplitude)
    return PropagatorResult(
        z=z,
        amplitude=value,
        probability=value.modulus_squared,
        in_weinberg_window=weinberg_window(sep, p),
        above_threshold=z <= 1.0,
        method=method,
        underflow=underflow,
        error_estimate=error_estimate,
        evaluations=evaluations,
    )


def propagator_closed_form(
    sep: SpacetimeSeparation, p: MassiveParticle
) -> PropagatorResult:
    z = _invariant_argument(sep, p)
    k0 = evaluate_k0(z)
    if k0.underflow:
        return _build_result(z, 0j, Method.CLOSED_FORM, sep, p, underflow=True)
    amplitude = -0.25j * complex(hankel2_0_from_k0(k0.value))
    return _build_result(z, complex(amplitude.real, 0.0), Method.CLOSED_FORM, sep, p)


def classify_observable(sep: SpacetimeSeparation, p: MassiveParticle) -> Observability:
    """Nonnegligible iff 0 > c^2 dt^2 - dr^2 >= -lambda_bar^2."""
    _invariant_argument(sep, p)
    if weinberg_window(sep, p):
        return Observability.NONNEGLIGIBLE
    return Observability.NEGLIGIBLE


def boost_family(rho: float, rapidities: Iterable[float]) -> list[SpacetimeSeparation]:
    """Separations (rho sinh chi / c, rho cosh chi) sharing the invariant length rho."""
    if not rho > 0.0:
        raise DomainError(
            "boost family needs a positive invariant length", details=f"rho={rho!r}"
        )
    return [
        SpacetimeSeparation(dt=rho * math.sinh(chi) / CONSTANTS.c, dr=rho * math.cosh(chi))
        for chi in rapidities
    ]


def asymptotic_amplitude(z: float) -> float:
    """Leading large-z form sqrt(pi/(2z)) exp(-z) / (2 pi)."""
    if not z > 0.0:
        raise DomainError("asymptotic form needs z > 0", details=f"z={z!r}")
    return math.sqrt(math.pi / (2.0 * z)) * math.exp(-z) / (2.0 * math.pi)


def asymptotic_ratio(z: float) -> float:
    """D(z) over its leading asymptotic form; below 1, tending to 1 as z grows."""
    leading = asymptotic_amplitude(z)
    if leading == 0.0:
        raise DomainError("asymptotic form underflows", details=f"z={z!r}")
    return bessel_k0(z) / (2.0 * math.pi) / leading


def augmented_observable_interval(p: MassiveParticle, n_photons: int) -> float:
    """
    Largest invariant length (m) at which at least one of ``n_photons``
    independent quanta crosses with probability at or above the threshold.
    """
    if n_photons < 1:
        raise DomainError(
            "need at least one photon", details=f"n_photons={n_photons!r}"
        )
    threshold = observability_threshold()
    if n_photons == 1:
        return p.compton_wavelength
    # 1 - (1 - P)^N = threshold  <=>  P = 1 - (1 - threshold)^(1/N)
    target = -math.expm1(math.log1p(-threshold) / n_photons)

    def excess(z: float) -> float:
        return (bessel_k0(z) / (2.0 * math.pi)) ** 2 - target

    z = optimize.brentq(excess, 1.0, 700.0, xtol=1e-14, rtol=1e-14)
    logger.debug(f"{n_photons} photons stretch the observable interval to z={z:.6f}")
    return z * p.compton_wavelength


class _MomentumIntegrand:
    """
    Momentum-integral integrand after p = m c sinh u, as a function of u.

    dp c/(2 E_p) becomes du/2: the m c of dp/du cancels the one in E_p.
    The exponent -(E_p t - p r)/hbar is written with the light-cone
    combinations r -/+ c t, so that phase(u) = alpha e^u - beta e^-u with
    alpha, beta > 0 for spacelike input.

    The integrand is entire in u and decays in the strip 0 < Im u < pi/2, so
    the contour may be moved to Im u = pi/2. There the exponent becomes
    -(alpha e^v + beta e^-v) and the integrand is positive with no
    oscillation left.
    """

    def __init__(self, sep: SpacetimeSeparation, p: MassiveParticle):
        lam = p.compton_wavelength
        self.mc = p.mass * CONSTANTS.c
        self.alpha = 0.5 * (sep.dr - sep.c_dt) / lam
        self.beta = 0.5 * (sep.dr + sep.c_dt) / lam
        self.root_alpha = math.sqrt(self.alpha)
        self.root_beta = math.sqrt(self.beta)
        self.evaluations = 0

    def phase(self, u: np.ndarray) -> np.ndarray:
        return self.alpha * np.exp(u) - self.beta * np.exp(-u)

    def __call__(self, u: np.ndarray) -> np.ndarray:
        self.evaluations += u.size
        momentum = self.mc * np.sinh(u)
        energy = np.sqrt((momentum * CONSTANTS.c) ** 2 + (self.mc * CONSTANTS.c) ** 2)
        jacobian = self.mc * np.cosh(u)
        weight = CONSTANTS.c / (2.0 * energy) * jacobian / (2.0 * math.pi)
        return weight * np.exp(1j * self.phase(u))

    def rapidity_at_phase(self, s: float) -> float:
        """The u where the phase equals s (the phase is strictly increasing)."""
        root = math.sqrt(s * s + 4.0 * self.alpha * self.beta)
        if s >= 0.0:
            w = (s + root) / (2.0 * self.alpha)
        else:
            w = 2.0 * self.beta / (root - s)
        return math.log(w)

    @property
    def centre(self) -> float:
        """Re u where the rotated integrand peaks; 0 in the equal-time frame."""
        return 0.5 * math.log(self.beta / self.alpha)

    def rotated(self, v: np.ndarray) -> np.ndarray:
        """
        Integrand at u = v + i pi/2 multiplied by exp(z).

        alpha e^v + beta e^-v - z equals (sqrt(alpha) e^(v/2) - sqrt(beta) e^(-v/2))^2,
        so the scaled exponent is formed without cancellation.
        """
        self.evaluations += v.size
        gap = self.root_alpha * np.exp(0.5 * v) - self.root_beta * np.exp(-0.5 * v)
        return np.exp(-gap * gap) / (4.0 * math.pi)


def _gauss_legendre(
    f: Callable[[np.ndarray], np.ndarray], a: float, b: float, n_nodes: int
) -> complex:
    nodes, weights = legendre_rule(n_nodes)
    half = 0.5 * (b - a)
    return complex(half * np.dot(weights, f(half * nodes + (a + half))))


def _adaptive_panel(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    cfg: QuadratureConfig,
    tol: float,
) -> tuple[complex, float]:
    """Integral over [a, b] by bisection, with the summed |refined - coarse| of accepted pieces."""
    whole = _gauss_legendre(f, a, b, cfg.nodes_per_panel)
    stack = [(a, b, whole, tol, cfg.max_bisections)]
    total = 0j
    error = 0.0
    while stack:
        lo, hi, estimate, local_tol, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        left = _gauss_legendre(f, lo, mid, cfg.nodes_per_panel)
        right = _gauss_legendre(f, mid, hi, cfg.nodes_per_panel)
        refined = left + right
        # never chase a tolerance below the rounding floor of the panel sum
        floor = 64.0 * _EPS * max(abs(refined), abs(left) + abs(right))
        if abs(refined - estimate) <= max(local_tol, floor) or depth == 0:
            total += refined
            error += abs(refined - estimate)
        else:
            stack.append((lo, mid, left, 0.5 * local_tol, depth - 1))
            stack.append((mid, hi, right, 0.5 * local_tol, depth - 1))
    return total, error


def _wynn_epsilon(partial_sums: Sequence[float]) -> float:
    """Limit estimate of a sequence of partial sums from Wynn's epsilon table."""
    if len(partial_sums) < 3:
        return partial_sums[-1]
    current = list(partial_sums)
    previous = [0.0] * (len(current) + 1)
    best = current[-1]
    for column in range(1, len(partial_sums)):
        following = []
        for j in range(len(current) - 1):
            delta = current[j + 1] - current[j]
            scale = max(abs(current[j + 1]), abs(current[j]))
            if abs(delta) <= _EPSILON_TABLE_FLOOR * scale:
                return best
            following.append(previous[j + 1] + 1.0 / delta)
        previous, current = current, following
        if column % 2 == 0:
            best = current[-1]
        if len(current) < 2:
            break
    return best


def _budget_exhausted(
    z: float, integrand: _MomentumIntegrand, best: complex, relative: float, panels: int
) -> ConvergenceError:
    logger.error(f"quadrature z={z:.6g} exhausted {integrand.evaluations} evaluations")
    return ConvergenceError(
        "momentum integral did not converge within the evaluation budget",
        best_estimate=best,
        error_bound=relative,
        evaluations=integrand.evaluations,
        details=f"z={z!r}, panels={panels}",
    )


def _rotated_contour(
    sep: SpacetimeSeparation,
    p: MassiveParticle,
    cfg: QuadratureConfig,
    z: float,
    integrand: _MomentumIntegrand,
) -> PropagatorResult:
    # panel edges sit where the scaled integrand has fallen by e^-level
    def edge(level: float) -> float:
        return math.acosh(1.0 + level / z)

    centre = integrand.centre
    width = edge(_ROTATED_LEVEL_STEP)
    lo, hi = centre - width, centre + width
    rough = abs(_gauss_legendre(integrand.rotated, lo, hi, cfg.nodes_per_panel))
    panel_tol = cfg.tolerance * 1e-3 * rough
    central, panel_error = _adaptive_panel(integrand.rotated, lo, hi, cfg, panel_tol)
    total = central.real

    panels = 1
    while True:
        inner = edge(panels * _ROTATED_LEVEL_STEP)
        outer_level = (panels + 1) * _ROTATED_LEVEL_STEP
        outer = edge(outer_level)
        for lo, hi in ((centre + inner, centre + outer), (centre - outer, centre - inner)):
            value, error = _adaptive_panel(integrand.rotated, lo, hi, cfg, panel_tol)
            total += value.real
            panel_error += error
        panels += 1

        # both tails: int_W^inf exp(-z (cosh w - 1)) dw <= exp(-level) / (z sinh W)
        tail = 2.0 * math.exp(-outer_level) / (z * math.sinh(outer)) / (4.0 * math.pi)
        relative = (panel_error + tail) / total
        scaled = math.exp(-z)
        if integrand.evaluations >= cfg.max_evals:
            best = complex(scaled * total, 0.0)
            raise _budget_exhausted(z, integrand, best, relative, 2 * panels - 1)
        if panels >= cfg.min_panels and relative <= cfg.tolerance / 10.0:
            break

    logger.debug(
        f"quadrature z={z:.6g}: {2 * panels - 1} rotated panels, "
        f"{integrand.evaluations} evaluations, rel. error {relative:.3e}"
    )
    amplitude = scaled * total
    if amplitude < _TINY:
        logger.warning(f"quadrature amplitude underflows at z={z:.6g}")
        return _build_result(
            z,
            0j,
            Method.QUADRATURE,
            sep,
            p,
            underflow=True,
            error_estimate=relative,
            evaluations=integrand.evaluations,
        )
    return _build_result(
        z,
        complex(amplitude, 0.0),
        Method.QUADRATURE,
        sep,
        p,
        error_estimate=relative,
        evaluations=integrand.evaluations,
    )


def _real_axis(
    sep: SpacetimeSeparation,
    p: MassiveParticle,
    cfg: QuadratureConfig,
    z: float,
    integrand: _MomentumIntegrand,
) -> PropagatorResult:
    half_pi = 0.5 * math.pi
    central, _ = _adaptive_panel(
        integrand,
        integrand.rapidity_at_phase(-half_pi),
        integrand.rapidity_at_phase(half_pi),
        cfg,
        tol=cfg.tolerance * 1e-6,
    )
    panel_tol = cfg.tolerance * 1e-4 * max(abs(central), 1e-300)

    real_sums = [central.real]
    imag_sum = central.imag
    estimates: list[float] = []
    relative = math.inf
    k = 0
    while True:
        k += 1
        inner, outer = (k - 0.5) * math.pi, (k + 0.5) * math.pi
        forward, _ = _adaptive_panel(
            integrand,
            integrand.rapidity_at_phase(inner),
            integrand.rapidity_at_phase(outer),
            cfg,
            panel_tol,
        )
        backward, _ = _adaptive_panel(
            integrand,
            integrand.rapidity_at_phase(-outer),
            integrand.rapidity_at_phase(-inner),
            cfg,
            panel_tol,
        )
        pair = forward + backward
        real_sums.append(real_sums[-1] + pair.real)
        imag_sum += pair.imag
        estimates.append(_wynn_epsilon(real_sums[-_EPSILON_WINDOW:]))

        if len(estimates) >= 3:
            best = estimates[-1]
            error = abs(best - estimates[-2]) + abs(best - estimates[-3])
            relative = error / best if best > 0.0 else math.inf

        if k >= cfg.min_panels and len(estimates) >= 3:
            if relative < cfg.tolerance / 10.0:
                logger.debug(
                    f"quadrature z={z:.6g}: {2 * k + 1} panels, "
                    f"{integrand.evaluations} evaluations, rel. error {relative:.3e}"
                )
                return _build_result(
                    z,
                    complex(best, imag_sum),
                    Method.QUADRATURE,
                    sep,
                    p,
                    error_estimate=relative,
                    evaluations=integrand.evaluations,
                )
            window = real_sums[-_EPSILON_WINDOW:]
            attainable = _ROUNDOFF_FACTOR * _EPS * max(map(abs, window))
            if error <= attainable:
                logger.error(
                    f"quadrature z={z:.6g}: cancellation floor {attainable:.3e} "
                    f"leaves rel. error {relative:.3e} above tolerance"
                )
                raise ConvergenceError(
                    "cancellation between panels keeps the real-axis integral above "
                    "tolerance; use the rotated contour",
                    best_estimate=complex(best, imag_sum),
                    error_bound=relative,
                    evaluations=integrand.evaluations,
                    details=f"z={z!r}, panels={2 * k + 1}",
                )

        if integrand.evaluations >= cfg.max_evals:
            raise _budget_exhausted(
                z, integrand, complex(estimates[-1], imag_sum), relative, 2 * k + 1
            )


def propagator_quadrature(
    sep: SpacetimeSeparation,
    p: MassiveParticle,
    cfg: Optional[QuadratureConfig] = None,
) -> PropagatorResult:
    """
    D(t, r) from the momentum integral, normalised like the closed form.

    A result is returned only when its relative error estimate is at most
    ``cfg.tolerance``; otherwise ``ConvergenceError`` carries the best
    estimate and its bound.

    ``Contour.ROTATED`` (the default) integrates on Im u = pi/2, cut where
    the scaled integrand has dropped by successive factors of e, and bounds
    the two tails analytically. ``Contour.REAL_AXIS`` cuts the real axis
    where the phase equals +/-(k + 1/2) pi, pairs panel k >= 1 with its
    mirror, extrapolates the real partial sums with Wynn's epsilon
    algorithm and sums the imaginary parts (which cancel pairwise for a
    spacelike interval) directly. Its partial sums are far larger than D
    once z grows, so it raises rather than return a result swamped by
    cancellation.
    """
    cfg = cfg or default_quadrature_config()
    z = _invariant_argument(sep, p)
    integrand = _MomentumIntegrand(sep, p)
    if cfg.contour is Contour.REAL_AXIS:
        return _real_axis(sep, p, cfg, z, integrand)
    return _rotated_contour(sep, p, cfg, z, integrand)
