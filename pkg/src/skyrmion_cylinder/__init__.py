"""Exact 1-Skyrmion hedgehog of the SU(2) Skyrme model on the metric
three-cylinder: closed-form shape function, energy curve and its minimum,
independent shooting verification, and the marginal-stability spectrum."""

from .elliptic import (ellip_e, ellip_f, ellip_pi, elliprc, elliprd, elliprf,
                       elliprj, oracle_quadrature)
from .energy import (BOGOMOLNY_UNIT, EnergyBreakdown, MinimizationResult,
                     bogomolny_bound, energy_approx, energy_closed_form,
                     energy_quadrature, energy_scan, first_order_min_radius,
                     minimize_energy, minimize_energy_detailed, sigma_energy,
                     write_breakdown_csv)
from .exceptions import ClassificationError, ConvergenceError, DomainError
from .ode import (ShootState, StepControl, classify_by_c, conserved_c,
                  first_integral_fprime, rhs_second_order, shoot,
                  shoot_c_residuals)
from .profile import (ModulusSet, SampledProfile, approx_profile,
                      build_approx_profile, build_exact_profile, chi_of_psi,
                      f_of_psi, g_of_l, limiting_profiles, modulus_from_radius,
                      phi_of_f, psi_of_chi, psi_of_f_exact, topological_charge,
                      write_profile_csv)
from .stability import (HessianCoeffs, Spectrum, hessian_coefficients,
                        hessian_quadratic_form, solve_spectrum,
                        stability_report, translation_mode_overlap,
                        zero_mode_refinement)

__version__ = "0.1.0"

__all__ = [
    "BOGOMOLNY_UNIT",
    "ClassificationError",
    "ConvergenceError",
    "DomainError",
    "EnergyBreakdown",
    "HessianCoeffs",
    "MinimizationResult",
    "ModulusSet",
    "SampledProfile",
    "ShootState",
    "Spectrum",
    "StepControl",
    "approx_profile",
    "bogomolny_bound",
    "build_approx_profile",
    "build_exact_profile",
    "chi_of_psi",
    "classify_by_c",
    "conserved_c",
    "ellip_e",
    "ellip_f",
    "ellip_pi",
    "elliprc",
    "elliprd",
    "elliprf",
    "elliprj",
    "energy_approx",
    "energy_closed_form",
    "energy_quadrature",
    "energy_scan",
    "f_of_psi",
    "first_integral_fprime",
    "first_order_min_radius",
    "g_of_l",
    "hessian_coefficients",
    "hessian_quadratic_form",
    "limiting_profiles",
    "minimize_energy",
    "minimize_energy_detailed",
    "modulus_from_radius",
    "oracle_quadrature",
    "phi_of_f",
    "psi_of_chi",
    "psi_of_f_exact",
    "rhs_second_order",
    "shoot",
    "shoot_c_residuals",
    "sigma_energy",
    "solve_spectrum",
    "stability_report",
    "topological_charge",
    "translation_mode_overlap",
    "write_breakdown_csv",
    "write_profile_csv",
    "zero_mode_refinement",
]
