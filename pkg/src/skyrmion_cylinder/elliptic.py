"""Incomplete Legendre elliptic integrals of the first, second, and third kind.

Conventions
-----------
All three integrals take the amplitude first and the modulus k (not m = k^2)
second:

    ellip_f(phi, k)      = integral_0^{sin phi} dx / sqrt((1-x^2)(1-k^2 x^2))
    ellip_e(phi, k)      = integral_0^{sin phi} sqrt((1-k^2 x^2)/(1-x^2)) dx
    ellip_pi(phi, nu, k) = integral_0^{sin phi} dx / ((1+nu x^2) sqrt((1-x^2)(1-k^2 x^2)))

with 0 <= phi <= pi/2 and k^2 < 1 strictly.  The third kind is restricted to
the proper regime 1 + nu sin^2(phi) > 0; arguments with a pole inside the
integration range are rejected rather than assigned a principal value.

Evaluation uses Carlson's symmetric standard forms (duplication theorem with
a fifth-order series tail), which stay accurate for k close to 1.  The
symmetric forms ``elliprf``, ``elliprd``, ``elliprj``, ``elliprc`` are module
level so callers with analytically simplified arguments can avoid the
cancellation-prone generic reductions.

``oracle_quadrature`` is a deliberately independent evaluation path (adaptive
Gauss-Kronrod on the defining integrand) used by the test suite to check the
closed forms; it shares no code with them.
"""

from __future__ import annotations

import math

import scipy.integrate

from .exceptions import ConvergenceError, DomainError

_EPS = 2.220446049250313e-16


def elliprc(x: float, y: float) -> float:
    """Carlson's degenerate symmetric integral R_C(x, y) for x >= 0, y > 0.

    R_C(x, y) = (1/2) integral_0^inf dt / ((t+y) sqrt(t+x)).
    """
    if x < 0.0 or y <= 0.0:
        raise DomainError(f"elliprc requires x >= 0, y > 0, got ({x}, {y})")
    d = (y - x) / x if x > 0.0 else math.inf
    if abs(d) < 0.08:
        # atan(sqrt(d))/sqrt(d) as a series in d; valid for either sign
        term, acc, n = 1.0, 1.0, 1
        while True:
            term *= -d
            delta = term / (2 * n + 1)
            acc += delta
            if abs(delta) <= 0.25 * _EPS * abs(acc):
                break
            n += 1
        return acc / math.sqrt(x)
    if d > 0.0:
        s = math.sqrt(y - x)
        return math.atan2(s, math.sqrt(x)) / s
    s = math.sqrt(x - y)
    return math.log((math.sqrt(x) + s) / math.sqrt(y)) / s


def _duplication_start(args: tuple[float, ...]) -> None:
    if any(not math.isfinite(v) for v in args):
        raise DomainError(f"non-finite Carlson argument {args}")


def elliprf(x: float, y: float, z: float) -> float:
    """Carlson's symmetric integral of the first kind R_F(x, y, z).

    Arguments must be nonnegative with at most one of them zero.
    """
    _duplication_start((x, y, z))
    if min(x, y, z) < 0.0 or sorted((x, y, z))[1] == 0.0:
        raise DomainError(f"elliprf arguments must be >= 0 with at most one zero: ({x}, {y}, {z})")
    A0 = (x + y + z) / 3.0
    An, xn, yn, zn = A0, x, y, z
    Q = (3.0 * _EPS) ** (-0.125) * max(abs(A0 - x), abs(A0 - y), abs(A0 - z))
    f = 1.0
    while Q * f > abs(An):
        lam = (math.sqrt(xn) * math.sqrt(yn) + math.sqrt(xn) * math.sqrt(zn)
               + math.sqrt(yn) * math.sqrt(zn))
        An = (An + lam) * 0.25
        xn = (xn + lam) * 0.25
        yn = (yn + lam) * 0.25
        zn = (zn + lam) * 0.25
        f *= 0.25
    X = f * (A0 - x) / An
    Y = f * (A0 - y) / An
    Z = -(X + Y)
    E2 = X * Y - Z * Z
    E3 = X * Y * Z
    return (1.0 - E2 / 10.0 + E3 / 14.0 + E2 * E2 / 24.0 - 3.0 * E2 * E3 / 44.0) / math.sqrt(An)


def elliprd(x: float, y: float, z: float) -> float:
    """Carlson's degenerate integral of the second kind R_D(x, y, z) = R_J(x, y, z, z).

    x, y >= 0 with at most one zero; z > 0.
    """
    _duplication_start((x, y, z))
    if min(x, y) < 0.0 or z <= 0.0 or x + y == 0.0:
        raise DomainError(f"elliprd requires x, y >= 0 (not both zero), z > 0: ({x}, {y}, {z})")
    A0 = (x + y + 3.0 * z) / 5.0
    An, xn, yn, zn = A0, x, y, z
    Q = (0.25 * _EPS) ** (-0.125) * max(abs(A0 - x), abs(A0 - y), abs(A0 - z))
    f = 1.0
    s = 0.0
    while Q * f > abs(An):
        rx, ry, rz = math.sqrt(xn), math.sqrt(yn), math.sqrt(zn)
        lam = rx * ry + rx * rz + ry * rz
        s += f / (rz * (zn + lam))
        An = (An + lam) * 0.25
        xn = (xn + lam) * 0.25
        yn = (yn + lam) * 0.25
        zn = (zn + lam) * 0.25
        f *= 0.25
    X = f * (A0 - x) / An
    Y = f * (A0 - y) / An
    Z = -(X + Y) / 3.0
    E2 = X * Y - 6.0 * Z * Z
    E3 = (3.0 * X * Y - 8.0 * Z * Z) * Z
    E4 = 3.0 * (X * Y - Z * Z) * Z * Z
    E5 = X * Y * Z ** 3
    series = (1.0 - 3.0 * E2 / 14.0 + E3 / 6.0 + 9.0 * E2 * E2 / 88.0
              - 3.0 * E4 / 22.0 - 9.0 * E2 * E3 / 52.0 + 3.0 * E5 / 26.0)
    return f * series / (An * math.sqrt(An)) + 3.0 * s


def elliprj(x: float, y: float, z: float, p: float) -> float:
    """Carlson's symmetric integral of the third kind R_J(x, y, z, p).

    x, y, z >= 0 with at most one zero; p > 0 (the proper, non-Cauchy case).
    """
    _duplication_start((x, y, z, p))
    if min(x, y, z) < 0.0 or sorted((x, y, z))[1] == 0.0:
        raise DomainError(f"elliprj arguments must be >= 0 with at most one zero: ({x}, {y}, {z})")
    if p <= 0.0:
        raise DomainError(f"elliprj requires p > 0 (no principal-value evaluation), got p={p}")
    A0 = (x + y + z + 2.0 * p) / 5.0
    delta = (p - x) * (p - y) * (p - z)
    An, xn, yn, zn, pn = A0, x, y, z, p
    Q = (0.25 * _EPS) ** (-0.125) * max(abs(A0 - x), abs(A0 - y), abs(A0 - z), abs(A0 - p))
    f = 1.0
    s = 0.0
    while Q * f > abs(An):
        rx, ry, rz, rp = math.sqrt(xn), math.sqrt(yn), math.sqrt(zn), math.sqrt(pn)
        Dn = (rp + rx) * (rp + ry) * (rp + rz)
        En = delta * f ** 3 / (Dn * Dn)
        if En < -0.5:
            # RC(1, 1+En) loses digits to cancellation for En near -1;
            # this equivalent argument (p > 0 guarantees it is positive) does not
            rc = elliprc(1.0, 2.0 * rp * (pn + rx * (ry + rz) + ry * rz) / Dn)
        else:
            rc = elliprc(1.0, 1.0 + En)
        s += f / Dn * rc
        lam = rx * ry + rx * rz + ry * rz
        An = (An + lam) * 0.25
        xn = (xn + lam) * 0.25
        yn = (yn + lam) * 0.25
        zn = (zn + lam) * 0.25
        pn = (pn + lam) * 0.25
        f *= 0.25
    X = f * (A0 - x) / An
    Y = f * (A0 - y) / An
    Z = f * (A0 - z) / An
    P = (-X - Y - Z) / 2.0
    E2 = X * Y + X * Z + Y * Z - 3.0 * P * P
    E3 = X * Y * Z + 2.0 * E2 * P + 4.0 * P ** 3
    E4 = (2.0 * X * Y * Z + E2 * P + 3.0 * P ** 3) * P
    E5 = X * Y * Z * P * P
    series = (1.0 - 3.0 * E2 / 14.0 + E3 / 6.0 + 9.0 * E2 * E2 / 88.0
              - 3.0 * E4 / 22.0 - 9.0 * E2 * E3 / 52.0 + 3.0 * E5 / 26.0)
    return f * series / (An * math.sqrt(An)) + 6.0 * s


def _check_phi_k(phi: float, k: float) -> None:
    if not (0.0 <= phi <= math.pi / 2):
        raise DomainError(f"amplitude must lie in [0, pi/2], got {phi}")
    if not (k * k < 1.0):
        raise DomainError(f"modulus must satisfy k^2 < 1, got k={k}")


def ellip_f(phi: float, k: float) -> float:
    """Incomplete elliptic integral of the first kind F(phi, k), amplitude first."""
    _check_phi_k(phi, k)
    s = math.sin(phi)
    if s == 0.0:
        return 0.0
    return s * elliprf(math.cos(phi) ** 2, 1.0 - (k * s) ** 2, 1.0)


def ellip_e(phi: float, k: float) -> float:
    """Incomplete elliptic integral of the second kind E(phi, k), amplitude first."""
    _check_phi_k(phi, k)
    s = math.sin(phi)
    if s == 0.0:
        return 0.0
    c2 = math.cos(phi) ** 2
    y = 1.0 - (k * s) ** 2
    return s * (elliprf(c2, y, 1.0) - (k * s) ** 2 * elliprd(c2, y, 1.0) / 3.0)


def ellip_pi(phi: float, nu: float, k: float) -> float:
    """Incomplete elliptic integral of the third kind Pi(phi, nu, k).

    Characteristic convention: the integrand carries 1/(1 + nu x^2), so
    nu = 0 reduces to ``ellip_f``.  Only the proper regime
    1 + nu sin^2(phi) > 0 is evaluated; anything else raises
    :class:`DomainError` (no principal-value convention is adopted, and the
    singular regime never arises in the profile map, which integrates the
    combined proper form instead).
    """
    _check_phi_k(phi, k)
    s = math.sin(phi)
    if s == 0.0:
        return 0.0
    p = 1.0 + nu * s * s
    if p <= 0.0:
        raise DomainError(
            f"third-kind pole inside integration range: 1 + nu sin^2(phi) = {p} <= 0")
    c2 = math.cos(phi) ** 2
    y = 1.0 - (k * s) ** 2
    if nu == 0.0:
        return s * elliprf(c2, y, 1.0)
    return s * (elliprf(c2, y, 1.0) - nu * s * s * elliprj(c2, y, 1.0, p) / 3.0)


def oracle_quadrature(integrand, a: float, b: float, tol: float = 1e-10,
                      budget: int = 200) -> float:
    """Adaptive quadrature of ``integrand`` over [a, b] to absolute error ``tol``.

    Independent check path for the closed forms above: Gauss-Kronrod
    subdivision (QUADPACK), nothing shared with the duplication algorithms.
    Integrable endpoint singularities of 1/sqrt type are handled by the
    extrapolating rule.  Raises :class:`ConvergenceError` if the error
    estimate still exceeds ``tol`` after ``budget`` subdivisions, where
    ``tol`` is floored at a few ulps of the result since no quadrature can
    certify below double-precision roundoff.
    """
    out = scipy.integrate.quad(integrand, a, b, epsabs=tol, epsrel=max(tol, 1e-13),
                               limit=budget, full_output=True)
    result, abserr = out[0], out[1]
    if len(out) > 3:  # explanation message present => warning condition
        raise ConvergenceError(f"quadrature did not converge: {out[3]}")
    if abserr > tol + 100.0 * _EPS * abs(result):
        raise ConvergenceError(
            f"quadrature error estimate {abserr:.3e} exceeds tolerance {tol:.3e}")
    return result
