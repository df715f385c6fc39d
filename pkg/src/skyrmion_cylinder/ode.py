"""Independent dynamical route to the shape function.

The profile module evaluates the solution from its elliptic closed form;
this module reaches the same solution by integrating the field equation

    F'' = [ (1 + sin^2 F / L^2) sin 2F - (F'^2 / L^2) sin 2F ]
          / (1 + 2 sin^2 F / L^2)

and monitors the conserved combination

    C = (L^2 + 2 sin^2 F) F'^2 - sin^2 F (2 L^2 + sin^2 F),

which is constant along every solution and zero exactly on the finite-energy
separatrix.  Solutions with C > 0 have F' bounded away from zero and diverge;
solutions with C < 0 stay trapped between consecutive multiples of pi and
oscillate.  ``classify_by_c`` applies that dichotomy and confirms it against
a finite-window integration.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np
from scipy.integrate import solve_ivp

from . import defaults
from .exceptions import ClassificationError, ConvergenceError, DomainError
from .profile import SampledProfile, _check_radius


@dataclasses.dataclass(frozen=True)
class ShootState:
    """Phase-space point of the radial field equation."""

    psi: float
    f: float
    f_prime: float


@dataclasses.dataclass(frozen=True)
class StepControl:
    """Tolerances for the adaptive integrator and the conservation budget."""

    rtol: float = defaults.TOL
    atol: float = defaults.TOL
    max_c_residual: float = 1e-8


def rhs_second_order(s: ShootState, L) -> float:
    """F'' at the given state, from the field equation (denominator >= 1,
    so the right-hand side is smooth everywhere)."""
    L = _check_radius(L)
    s2 = math.sin(s.f) ** 2
    sin2f = math.sin(2.0 * s.f)
    L2 = L * L
    return ((1.0 + s2 / L2) * sin2f - (s.f_prime ** 2 / L2) * sin2f) / (1.0 + 2.0 * s2 / L2)


def conserved_c(s: ShootState, L) -> float:
    """The conserved combination C; zero exactly on the finite-energy
    separatrix, positive on divergent solutions, negative on oscillatory
    ones."""
    L = _check_radius(L)
    L2 = L * L
    s2 = math.sin(s.f) ** 2
    return (L2 + 2.0 * s2) * s.f_prime ** 2 - s2 * (2.0 * L2 + s2)


def first_integral_fprime(f: float, L) -> float:
    """Positive branch of the separatrix slope,
    F' = sin f sqrt((2 L^2 + sin^2 f)/(L^2 + 2 sin^2 f)), for f in [0, pi]."""
    L = _check_radius(L)
    f = float(f)
    if not (0.0 <= f <= math.pi):
        raise DomainError(f"profile angle must lie in [0, pi], got {f}")
    s = math.sin(f)
    s2 = s * s
    L2 = L * L
    return s * math.sqrt((2.0 * L2 + s2) / (L2 + 2.0 * s2))


def _rhs_vector(L: float):
    L2 = L * L

    def rhs(_psi, y):
        f, fp = y
        s2 = math.sin(f) ** 2
        sin2f = math.sin(2.0 * f)
        return (fp, ((1.0 + s2 / L2) * sin2f - (fp * fp / L2) * sin2f)
                / (1.0 + 2.0 * s2 / L2))

    return rhs


def shoot(L, psi_max: float = defaults.PSI_MAX,
          step_control: StepControl | None = None,
          n_points: int = 1201) -> SampledProfile:
    """Integrate the field equation both ways from the canonical data
    F(0) = pi/2, F'(0) = sqrt((2 L^2 + 1)/(L^2 + 2)) and sample the result
    on a uniform symmetric grid.

    The returned profile carries the integrated derivative samples.  The
    conserved combination C is evaluated on every sample; drift beyond the
    step-control budget aborts with diagnostics, since it signals that the
    requested tolerances did not hold.
    """
    L = _check_radius(L)
    if not (psi_max > 0.0 and math.isfinite(psi_max)):
        raise DomainError(f"psi_max must be positive and finite, got {psi_max}")
    ctrl = step_control if step_control is not None else StepControl()
    n = int(n_points)
    if n < 3:
        raise DomainError(f"grid needs at least 3 points, got {n}")
    if n % 2 == 0:
        n += 1
    psi = np.linspace(-psi_max, psi_max, n)
    half = n // 2
    fp0 = math.sqrt((2.0 * L * L + 1.0) / (L * L + 2.0))
    y0 = (0.5 * math.pi, fp0)
    rhs = _rhs_vector(L)

    fwd = solve_ivp(rhs, (0.0, psi_max), y0, method="DOP853",
                    t_eval=psi[half:], rtol=ctrl.rtol, atol=ctrl.atol)
    bwd = solve_ivp(rhs, (0.0, -psi_max), y0, method="DOP853",
                    t_eval=psi[half::-1], rtol=ctrl.rtol, atol=ctrl.atol)
    if not (fwd.success and bwd.success):
        raise ConvergenceError(
            f"adaptive integration failed at L={L}: "
            f"{fwd.message if not fwd.success else bwd.message}")

    f = np.concatenate([bwd.y[0][:0:-1], fwd.y[0]])
    fp = np.concatenate([bwd.y[1][:0:-1], fwd.y[1]])
    s2 = np.sin(f) ** 2
    c_residual = (L * L + 2.0 * s2) * fp * fp - s2 * (2.0 * L * L + s2)
    worst = float(np.max(np.abs(c_residual)))
    if worst > ctrl.max_c_residual:
        raise ConvergenceError(
            f"conservation drift {worst:.3e} exceeds budget "
            f"{ctrl.max_c_residual:.3e} at L={L} "
            f"(rtol={ctrl.rtol}, atol={ctrl.atol}); tighten the tolerances")
    return SampledProfile(psi, f, L, f_prime=fp)


def shoot_c_residuals(p: SampledProfile, L) -> np.ndarray:
    """Conserved-combination values on every sample of a profile — the
    conservation diagnostic exported alongside shooting output."""
    L = _check_radius(L)
    fp = p.slopes()
    s2 = np.sin(p.f_values) ** 2
    return (L * L + 2.0 * s2) * fp * fp - s2 * (2.0 * L * L + s2)


def classify_by_c(f0: float, fp0: float, L,
                  window: float = defaults.CLASSIFY_WINDOW) -> str:
    """Classify the solution through (F, F') = (f0, fp0) at psi = 0 as
    ``"separatrix"``, ``"divergent"``, or ``"oscillatory"`` by the sign of
    the conserved combination C, confirmed over a finite window.

    The separatrix band is |C| <= 1e-10 (1 + 2 L^2), a scale-aware threshold.
    Otherwise the equation is integrated over [-window, window] and the
    C-sign prediction is checked against the qualitative behaviour:

    * C > 0: F' may never vanish; the samples must be strictly monotone
      (divergence is additionally confirmed early if |F - pi/2| exceeds
      10 pi, the documented escape threshold).
    * C < 0: F may never leave the open strip (m pi, (m+1) pi) that
      contains f0.

    Both checks hold exactly for the true dynamics, so a violation signals
    an integrator fault and raises :class:`ClassificationError`.  The window
    and thresholds are documented desk-scale proxies for asymptotic
    statements, not derived quantities.
    """
    L = _check_radius(L)
    f0 = float(f0)
    fp0 = float(fp0)
    if not (math.isfinite(f0) and math.isfinite(fp0)):
        raise DomainError(f"initial data must be finite, got ({f0}, {fp0})")
    if not (window > 0.0 and math.isfinite(window)):
        raise DomainError(f"window must be positive and finite, got {window}")

    c0 = conserved_c(ShootState(0.0, f0, fp0), L)
    if abs(c0) <= defaults.SEPARATRIX_RTOL * (1.0 + 2.0 * L * L):
        return "separatrix"

    rhs = _rhs_vector(L)
    escape = defaults.DIVERGENCE_STRIP * math.pi

    def escaped(_psi, y):
        return (y[0] - 0.5 * math.pi) ** 2 - escape * escape

    escaped.terminal = True
    samples = []
    for sign in (1.0, -1.0):
        t_eval = sign * np.linspace(0.0, window, 2001)
        sol = solve_ivp(rhs, (0.0, sign * window), (f0, fp0), method="DOP853",
                        t_eval=t_eval, rtol=1e-10, atol=1e-12, events=escaped)
        if not sol.success:
            raise ClassificationError(
                f"integration failed while confirming the class at L={L}: {sol.message}")
        samples.append(sol)

    f_all = np.concatenate([samples[1].y[0][::-1], samples[0].y[0]])
    fp_all = np.concatenate([samples[1].y[1][::-1], samples[0].y[1]])

    if c0 > 0.0:
        if np.any(fp_all * math.copysign(1.0, fp0) <= 0.0):
            raise ClassificationError(
                f"C = {c0:.6g} > 0 predicts a monotone solution, but the "
                f"integrated slope changed sign — integrator inconsistency")
        return "divergent"

    strip_lo = math.pi * math.floor(f0 / math.pi)
    strip_hi = strip_lo + math.pi
    if np.any(f_all <= strip_lo) or np.any(f_all >= strip_hi):
        raise ClassificationError(
            f"C = {c0:.6g} < 0 predicts confinement to ({strip_lo:.6g}, "
            f"{strip_hi:.6g}), but the integrated solution left the strip — "
            f"integrator inconsistency")
    return "oscillatory"
