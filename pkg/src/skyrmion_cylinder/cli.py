"""Command-line front end.

Every computation is exposed as a subcommand that emits a deterministic CSV
or JSON artifact: identical flags produce byte-identical files.  CSV output
is UTF-8 with \\n newlines, a header row, and 17-significant-digit floats.
Exit codes: 0 on success, 2 for flag/usage errors, 3 for domain errors
(invalid physical inputs), 4 for convergence or classification failures.

When ``--output`` is a relative path and the environment variable
``SKYRMION_CYLINDER_OUTPUT_DIR`` is set, the file is written inside that
directory; without ``--output`` the artifact goes to stdout.
"""

from __future__ import annotations

import functools
import io
import json
import math
import os
import sys

import click
import numpy as np

from . import defaults
from .energy import (BOGOMOLNY_UNIT, energy_scan, minimize_energy_detailed)
from .exceptions import ClassificationError, ConvergenceError, DomainError
from .ode import ShootState, conserved_c, classify_by_c, shoot, shoot_c_residuals
from .profile import (approx_profile, chi_of_psi, f_of_psi, limiting_profiles,
                      modulus_from_radius)
from .stability import stability_report


def _resolve_output(path: str | None) -> str | None:
    if path is None:
        return None
    if not os.path.isabs(path):
        base = os.environ.get(defaults.OUTPUT_DIR_ENV)
        if base:
            return os.path.join(base, path)
    return path


def _emit(text: str, output: str | None) -> None:
    path = _resolve_output(output)
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _json_text(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _mapped_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except DomainError as exc:
            click.echo(f"error: {exc}", err=True)
            raise SystemExit(3)
        except (ConvergenceError, ClassificationError) as exc:
            click.echo(f"error: {exc}", err=True)
            raise SystemExit(4)

    return wrapper


@click.group()
def main() -> None:
    """Exact 1-Skyrmion hedgehog on the metric three-cylinder: profiles,
    energies, minimization, shooting verification, and stability spectra."""


@main.command("profile")
@click.option("--L", "l_value", type=float, required=True,
              help="Cylinder radius L > 0.")
@click.option("--psi-max", type=float, default=defaults.PSI_MAX,
              show_default=True, help="Half-width of the radial grid.")
@click.option("--grid-n", type=int, default=defaults.GRID_N,
              show_default=True, help="Number of grid points.")
@click.option("--shift", type=float, default=0.0, show_default=True,
              help="Translate the profile: evaluate it at psi - shift.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
              default="csv", show_default=True)
@click.option("--output", "-o", default=None, help="Output file path.")
@_mapped_errors
def cmd_profile(l_value, psi_max, grid_n, shift, fmt, output):
    """Exact, variational, and bounding profiles on a uniform grid."""
    ms = modulus_from_radius(l_value)
    grid = np.linspace(-psi_max, psi_max, int(grid_n))
    rows = []
    for psi in grid:
        at = float(psi) - shift
        lower, upper = limiting_profiles(at)
        rows.append((float(psi), f_of_psi(at, ms), approx_profile(at, l_value),
                     lower, upper, chi_of_psi(float(psi))))
    header = ("psi", "F_exact", "F_approx", "F_lower", "F_upper", "chi")
    if fmt == "csv":
        buf = io.StringIO()
        buf.write(",".join(header) + "\n")
        for row in rows:
            buf.write(",".join(_fmt(v) for v in row) + "\n")
        _emit(buf.getvalue(), output)
    else:
        _emit(_json_text([dict(zip(header, row)) for row in rows]), output)


@main.command("scan")
@click.option("--l-min", type=float, default=0.3, show_default=True)
@click.option("--l-max", type=float, default=3.0, show_default=True)
@click.option("--n", "n_points", type=int, default=100, show_default=True)
@click.option("--spacing", type=click.Choice(["linear", "log"]),
              default="linear", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
              default="csv", show_default=True)
@click.option("--output", "-o", default=None, help="Output file path.")
@_mapped_errors
def cmd_scan(l_min, l_max, n_points, spacing, fmt, output):
    """Closed-form energy curve over a range of radii."""
    if not (0.0 < l_min < l_max) or not math.isfinite(l_max):
        raise DomainError(f"need 0 < l-min < l-max, got ({l_min}, {l_max})")
    if n_points < 2:
        raise DomainError(f"need at least 2 scan points, got {n_points}")
    if spacing == "linear":
        l_values = np.linspace(l_min, l_max, n_points)
    else:
        l_values = np.geomspace(l_min, l_max, n_points)
    rows = energy_scan(l_values)
    header = ("L", "E_over_12pi2", "E_approx_over_12pi2")
    if fmt == "csv":
        buf = io.StringIO()
        buf.write(",".join(header) + "\n")
        for row in rows:
            buf.write(",".join(_fmt(v) for v in row) + "\n")
        _emit(buf.getvalue(), output)
    else:
        _emit(_json_text([dict(zip(header, row)) for row in rows]), output)


@main.command("minimize")
@click.option("--kind", type=click.Choice(["exact", "approx"]),
              default="exact", show_default=True)
@click.option("--bracket-lo", type=float, default=0.3, show_default=True)
@click.option("--bracket-hi", type=float, default=2.0, show_default=True)
@click.option("--tol", type=float, default=defaults.TOL, show_default=True)
@click.option("--output", "-o", default=None, help="Output file path.")
@_mapped_errors
def cmd_minimize(kind, bracket_lo, bracket_hi, tol, output):
    """Minimum-energy radius of the exact or variational energy curve."""
    res = minimize_energy_detailed(kind=kind, bracket=(bracket_lo, bracket_hi),
                                   tol=tol)
    other = "approx" if kind == "exact" else "exact"
    res_other = minimize_energy_detailed(kind=other,
                                         bracket=(bracket_lo, bracket_hi),
                                         tol=tol)
    e_exact = res.E_min if kind == "exact" else res_other.E_min
    e_approx = res.E_min if kind == "approx" else res_other.E_min
    payload = {
        "kind": kind,
        "L_min": res.L_min,
        "E_min": res.E_min,
        "E_min_over_12pi2": res.E_min / BOGOMOLNY_UNIT,
        "iterations": res.iterations,
        "approx_excess_over_exact": (e_approx - e_exact) / e_exact,
    }
    _emit(_json_text(payload), output)


@main.command("stability")
@click.option("--L", "l_value", type=float, required=True,
              help="Cylinder radius L > 0.")
@click.option("--psi-max", type=float, default=defaults.PSI_MAX,
              show_default=True)
@click.option("--grid-n", type=int, default=defaults.GRID_N, show_default=True)
@click.option("--n-modes", type=int, default=4, show_default=True)
@click.option("--output", "-o", default=None, help="Output file path.")
@_mapped_errors
def cmd_stability(l_value, psi_max, grid_n, n_modes, output):
    """Lowest eigenvalues of the second variation at the exact solution."""
    report = stability_report(l_value, psi_max=psi_max, n=grid_n,
                              n_modes=n_modes)
    _emit(_json_text(report), output)


@main.command("shoot")
@click.option("--L", "l_value", type=float, required=True,
              help="Cylinder radius L > 0.")
@click.option("--psi-max", type=float, default=defaults.PSI_MAX,
              show_default=True)
@click.option("--grid-n", type=int, default=defaults.GRID_N, show_default=True)
@click.option("--tol", type=float, default=defaults.TOL, show_default=True,
              help="Integrator relative/absolute tolerance.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
              default="csv", show_default=True)
@click.option("--output", "-o", default=None, help="Output file path.")
@_mapped_errors
def cmd_shoot(l_value, psi_max, grid_n, tol, fmt, output):
    """Integrate the field equation from the canonical initial data and
    report the sampled solution with its conservation residual."""
    from .ode import StepControl

    ctrl = StepControl(rtol=tol, atol=tol)
    p = shoot(l_value, psi_max=psi_max, step_control=ctrl, n_points=grid_n)
    residual = shoot_c_residuals(p, l_value)
    header = ("psi", "F", "chi", "C_residual")
    if fmt == "csv":
        buf = io.StringIO()
        buf.write(",".join(header) + "\n")
        for psi, f, r in zip(p.psi_grid, p.f_values, residual):
            buf.write(f"{psi:.17g},{f:.17g},{chi_of_psi(float(psi)):.17g},"
                      f"{r:.17g}\n")
        _emit(buf.getvalue(), output)
    else:
        rows = [dict(zip(header, (float(psi), float(f),
                                  chi_of_psi(float(psi)), float(r))))
                for psi, f, r in zip(p.psi_grid, p.f_values, residual)]
        _emit(_json_text(rows), output)


@main.command("classify")
@click.option("--L", "l_value", type=float, required=True,
              help="Cylinder radius L > 0.")
@click.option("--f0", type=float, required=True, help="Initial angle F(0).")
@click.option("--fp0", type=float, required=True, help="Initial slope F'(0).")
@click.option("--window", type=float, default=defaults.CLASSIFY_WINDOW,
              show_default=True)
@click.option("--output", "-o", default=None, help="Output file path.")
@_mapped_errors
def cmd_classify(l_value, f0, fp0, window, output):
    """Classify the solution through (f0, fp0) by its conserved combination."""
    label = classify_by_c(f0, fp0, l_value, window=window)
    payload = {
        "C": conserved_c(ShootState(0.0, f0, fp0), l_value),
        "class": label,
        "window": float(window),
    }
    _emit(_json_text(payload), output)


if __name__ == "__main__":
    main()
