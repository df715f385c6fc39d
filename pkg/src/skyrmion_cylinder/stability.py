"""Second variation of the energy at the finite-energy solution.

Perturbing E[F + eps h] for h vanishing at the ends gives

    E[F + eps h] = E[F] + eps^2 * Q[h] + o(eps^2),
    Q[h] = 4 pi int dpsi [ (1/2) a h'^2 + b h h' + (1/2) c h^2 ],

with coefficient functions that are exact second partials of the energy
density along the solution:

    a = 2 L + (4/L) sin^2 F                              (h'^2 part)
    b = (4/L) sin 2F F'                                  (h h' part)
    c = 4 L cos 2F + (2/L)(2 cos 2F sin^2 F + sin^2 2F
                           + 2 cos 2F F'^2)              (h^2 part)

Integrating the cross term by parts turns the stationarity condition into
the self-adjoint eigenvalue problem

    4 pi [ -(a h')' + (c - b') h ] = lambda w h,

discretized here with second-order central differences and Dirichlet ends.
The weight convention w = 8 pi L^3 fixes only the overall eigenvalue scale;
eigenvalue signs and eigenfunction shapes are the convention-independent
deliverables.  Translation symmetry makes h = F' an exact zero mode, and the
discrete lowest eigenvalue converges to zero under grid refinement with a
nodeless eigenfunction — the solution is marginally stable.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np
from scipy.integrate import simpson
from scipy.linalg import eigh_tridiagonal

from . import defaults
from .exceptions import ConvergenceError, DomainError
from .profile import SampledProfile, _check_radius, build_exact_profile


@dataclasses.dataclass(frozen=True)
class HessianCoeffs:
    """Coefficient arrays of the second-variation quadratic form on a grid.

    ``a``, ``b``, ``c`` multiply h'^2, h h', and h^2 respectively (each with
    the conventional 1/2 on the squares); ``weight`` is the norm weight
    (constant 8 pi L^3); ``b_prime`` holds the analytic derivative of ``b``
    along the solution, used for the self-adjoint potential c - b'.
    """

    grid: np.ndarray
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    weight: np.ndarray
    b_prime: np.ndarray | None = None


@dataclasses.dataclass(frozen=True)
class Spectrum:
    """Lowest eigenpairs of the discretized second variation.

    ``eigenvalues`` ascend; ``eigenfunctions`` has one grid function per row,
    zero at the boundary nodes and orthonormal under the weight inner
    product (rectangle rule).
    """

    eigenvalues: np.ndarray
    eigenfunctions: np.ndarray


def hessian_coefficients(p: SampledProfile, L,
                         residual_budget: float = 1e-6) -> HessianCoeffs:
    """Second-variation coefficients along a finite-energy solution.

    The input must actually solve the field equation: the conserved
    combination is evaluated on every sample and the profile is rejected
    when its magnitude exceeds ``residual_budget`` times the natural scale
    (1 + 2 L^2).  The analytic derivative of the cross-term coefficient is
    attached, with F'' taken from the field equation.
    """
    L = _check_radius(L)
    f = p.f_values
    fp = p.slopes()
    L2 = L * L
    s2 = np.sin(f) ** 2
    residual = np.abs((L2 + 2.0 * s2) * fp * fp - s2 * (2.0 * L2 + s2))
    worst = float(np.max(residual))
    if worst > residual_budget * (1.0 + 2.0 * L2):
        raise DomainError(
            f"profile is not a finite-energy solution: conservation residual "
            f"{worst:.3e} exceeds budget {residual_budget * (1.0 + 2.0 * L2):.3e}")
    sin2f = np.sin(2.0 * f)
    cos2f = np.cos(2.0 * f)
    fpp = ((1.0 + s2 / L2) * sin2f - (fp * fp / L2) * sin2f) / (1.0 + 2.0 * s2 / L2)
    a = 2.0 * L + 4.0 * s2 / L
    b = 4.0 / L * sin2f * fp
    b_prime = 4.0 / L * (2.0 * cos2f * fp * fp + sin2f * fpp)
    c = 4.0 * L * cos2f + 2.0 / L * (2.0 * cos2f * s2 + sin2f * sin2f
                                     + 2.0 * cos2f * fp * fp)
    weight = np.full(f.shape, 8.0 * math.pi * L ** 3)
    return HessianCoeffs(grid=p.psi_grid, a=a, b=b, c=c, weight=weight,
                         b_prime=b_prime)


def hessian_quadratic_form(coeffs: HessianCoeffs, h) -> float:
    """Second-variation value Q[h] of a perturbation sampled on the
    coefficient grid.  The perturbation must vanish at the boundary nodes
    (test-space condition); its derivative is taken by central differences.
    Returns the full quadratic coefficient of E[F + eps h] in eps^2."""
    h = np.asarray(h, dtype=float)
    if h.shape != coeffs.grid.shape:
        raise DomainError(
            f"perturbation shape {h.shape} does not match grid shape "
            f"{coeffs.grid.shape}")
    scale = float(np.max(np.abs(h)))
    bound = 1e-12 * max(scale, 1.0)
    if abs(float(h[0])) > bound or abs(float(h[-1])) > bound:
        raise DomainError("perturbation must vanish at the grid boundary")
    hp = np.gradient(h, coeffs.grid)
    density = 0.5 * coeffs.a * hp * hp + coeffs.b * h * hp + 0.5 * coeffs.c * h * h
    return 4.0 * math.pi * float(simpson(density, x=coeffs.grid))


def _derivative_grid(y: np.ndarray, dx: float) -> np.ndarray:
    """Fourth-order central differences inside, second-order at the edges."""
    out = np.empty_like(y)
    out[2:-2] = (-y[4:] + 8.0 * y[3:-1] - 8.0 * y[1:-3] + y[:-4]) / (12.0 * dx)
    out[0] = (y[1] - y[0]) / dx
    out[-1] = (y[-1] - y[-2]) / dx
    out[1] = (y[2] - y[0]) / (2.0 * dx)
    out[-2] = (y[-1] - y[-3]) / (2.0 * dx)
    return out


def solve_spectrum(coeffs: HessianCoeffs, n_modes: int) -> Spectrum:
    """Lowest ``n_modes`` eigenpairs of the self-adjoint form
    4 pi [-(a h')' + (c - b') h] = lambda w h with Dirichlet ends.

    The flux term is discretized with midpoint-averaged a, giving a
    symmetric tridiagonal matrix; eigenvalues are scaled by 4 pi / w.
    Eigenfunctions are returned on the full grid (zeros at the ends),
    orthonormal under the rectangle-rule weight inner product, with the
    sign fixed so the largest-magnitude component is positive.
    """
    grid = coeffs.grid
    n = grid.size
    n_modes = int(n_modes)
    if n_modes < 1 or n_modes > n - 2:
        raise DomainError(f"n_modes must lie in [1, {n - 2}], got {n_modes}")
    steps = np.diff(grid)
    dx = float(steps[0])
    if not np.allclose(steps, dx, rtol=1e-10, atol=0.0):
        raise DomainError("spectrum discretization requires a uniform grid")
    w0 = float(coeffs.weight[0])
    if not np.allclose(coeffs.weight, w0, rtol=1e-12, atol=0.0):
        raise DomainError("spectrum discretization requires a constant weight")
    if coeffs.b_prime is not None:
        potential = coeffs.c - coeffs.b_prime
    else:
        potential = coeffs.c - _derivative_grid(coeffs.b, dx)

    a_mid = 0.5 * (coeffs.a[:-1] + coeffs.a[1:])
    diag = (a_mid[:-1] + a_mid[1:]) / dx ** 2 + potential[1:-1]
    off = -a_mid[1:-1] / dx ** 2
    mu, vec = eigh_tridiagonal(diag, off, select="i",
                               select_range=(0, n_modes - 1))
    eigenvalues = 4.0 * math.pi * mu / w0

    funcs = np.zeros((n_modes, n))
    for m in range(n_modes):
        v = vec[:, m]
        norm = math.sqrt(w0 * dx) * float(np.linalg.norm(v))
        v = v / norm
        if v[int(np.argmax(np.abs(v)))] < 0.0:
            v = -v
        funcs[m, 1:-1] = v
    eigenvalues.setflags(write=False)
    funcs.setflags(write=False)
    return Spectrum(eigenvalues=eigenvalues, eigenfunctions=funcs)


def translation_mode_overlap(spectrum: Spectrum, p: SampledProfile) -> float:
    """Cosine of the angle between the lowest eigenfunction and the profile
    derivative (the analytic zero mode), on the grid."""
    v = spectrum.eigenfunctions[0]
    fp = p.slopes()
    denom = float(np.linalg.norm(v)) * float(np.linalg.norm(fp))
    if denom == 0.0:
        raise DomainError("cannot form an overlap with a vanishing vector")
    return abs(float(v @ fp)) / denom


def stability_report(L, psi_max: float = defaults.PSI_MAX,
                     n: int = defaults.GRID_N, n_modes: int = 4) -> dict:
    """Spectrum summary for the exact solution at radius L, in the shape of
    the JSON export: L, psi_max, n_grid, eigenvalues, overlap_with_Fprime."""
    L = _check_radius(L)
    p = build_exact_profile(L, psi_max=psi_max, n=n)
    coeffs = hessian_coefficients(p, L)
    spectrum = solve_spectrum(coeffs, n_modes)
    return {
        "L": L,
        "psi_max": float(psi_max),
        "n_grid": int(n),
        "eigenvalues": [float(v) for v in spectrum.eigenvalues],
        "overlap_with_Fprime": translation_mode_overlap(spectrum, p),
    }


def zero_mode_refinement(L, psi_max: float = defaults.PSI_MAX,
                         n: int = defaults.GRID_N,
                         shrink_floor: float = 2.0) -> tuple[float, float]:
    """Lowest eigenvalue at resolution n and at doubled resolution.

    The translation zero mode is exact only in the continuum; its discrete
    eigenvalue must shrink under grid doubling.  Raises
    :class:`ConvergenceError` when doubling fails to shrink it by at least
    ``shrink_floor`` (a second-order scheme contracts by about 4).
    """
    lam = []
    for points in (int(n), 2 * (int(n) - 1) + 1):
        p = build_exact_profile(L, psi_max=psi_max, n=points)
        spectrum = solve_spectrum(hessian_coefficients(p, L), 1)
        lam.append(float(spectrum.eigenvalues[0]))
    coarse, fine = lam
    if abs(coarse) < 1e-14:
        return coarse, fine
    if abs(coarse) / max(abs(fine), 1e-300) < shrink_floor:
        raise ConvergenceError(
            f"grid doubling shrank the zero-mode eigenvalue only from "
            f"{coarse:.3e} to {fine:.3e} (need a factor {shrink_floor})")
    return coarse, fine
