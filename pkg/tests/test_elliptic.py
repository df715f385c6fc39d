"""Elliptic integrals: reference values, algebraic identities, domain
enforcement, and agreement with the independent quadrature oracle."""

import math

import numpy as np
import pytest

from skyrmion_cylinder import (
    ConvergenceError,
    DomainError,
    ellip_e,
    ellip_f,
    ellip_pi,
    elliprc,
    elliprd,
    elliprf,
    elliprj,
    oracle_quadrature,
)


def test_carlson_reference_values():
    """Standard check values of the symmetric integrals (30-digit arithmetic)."""
    assert elliprf(1.0, 2.0, 0.0) == pytest.approx(1.3110287771460599052, rel=1e-13)
    assert elliprf(2.0, 3.0, 4.0) == pytest.approx(0.58408284167715170669, rel=1e-13)
    assert elliprc(0.0, 0.25) == pytest.approx(math.pi, rel=1e-13)
    assert elliprc(2.25, 2.0) == pytest.approx(math.log(2.0), rel=1e-13)
    assert elliprd(0.0, 2.0, 1.0) == pytest.approx(1.7972103521033883112, rel=1e-13)
    assert elliprd(2.0, 3.0, 4.0) == pytest.approx(0.16510527294261053349, rel=1e-13)
    assert elliprj(0.0, 1.0, 2.0, 3.0) == pytest.approx(0.77688623778582332014, rel=1e-13)
    assert elliprj(2.0, 3.0, 4.0, 5.0) == pytest.approx(0.14297579667156753833, rel=1e-13)


def test_carlson_identities():
    """Permutation symmetry, homogeneity, and the degenerate reductions."""
    rng = np.random.default_rng(20250811)
    for _ in range(50):
        x, y, z = rng.uniform(0.05, 5.0, size=3)
        p, lam = rng.uniform(0.05, 5.0, size=2)
        rf = elliprf(x, y, z)
        assert elliprf(z, x, y) == pytest.approx(rf, rel=1e-14)
        assert elliprf(y, z, x) == pytest.approx(rf, rel=1e-14)
        assert elliprf(lam * x, lam * y, lam * z) == pytest.approx(
            rf / math.sqrt(lam), rel=1e-13)
        rj = elliprj(x, y, z, p)
        assert elliprj(y, x, z, p) == pytest.approx(rj, rel=1e-13)
        assert elliprj(lam * x, lam * y, lam * z, lam * p) == pytest.approx(
            rj / lam ** 1.5, rel=1e-13)
        # degenerate cases: R_D(x,y,z) = R_J(x,y,z,z) and R_C(x,y) = R_F(x,y,y)
        assert elliprd(x, y, z) == pytest.approx(elliprj(x, y, z, z), rel=1e-12)
        assert elliprc(x, y) == pytest.approx(elliprf(x, y, y), rel=1e-13)
    # equal arguments collapse to elementary values
    for v in (0.3, 1.0, 7.5):
        assert elliprf(v, v, v) == pytest.approx(1.0 / math.sqrt(v), rel=1e-14)


def test_carlson_domain_errors():
    with pytest.raises(DomainError):
        elliprf(-1.0, 1.0, 1.0)
    with pytest.raises(DomainError):
        elliprf(0.0, 0.0, 1.0)  # two zeros
    with pytest.raises(DomainError):
        elliprf(math.nan, 1.0, 1.0)
    with pytest.raises(DomainError):
        elliprc(-0.5, 1.0)
    with pytest.raises(DomainError):
        elliprc(1.0, 0.0)
    with pytest.raises(DomainError):
        elliprd(1.0, 1.0, 0.0)  # z must be positive
    with pytest.raises(DomainError):
        elliprd(0.0, 0.0, 1.0)
    with pytest.raises(DomainError):
        elliprj(1.0, 2.0, 3.0, 0.0)  # p must be positive
    with pytest.raises(DomainError):
        elliprj(1.0, 2.0, 3.0, -1.0)
    with pytest.raises(DomainError):
        elliprj(math.inf, 2.0, 3.0, 1.0)


def test_legendre_trivial_values():
    for k in (0.0, 0.3, 0.8, 0.999):
        assert ellip_f(0.0, k) == 0.0
        assert ellip_e(0.0, k) == 0.0
        assert ellip_pi(0.0, 1.5, k) == 0.0
    for phi in (0.2, 0.9, math.pi / 2):
        # zero modulus collapses both kinds to the amplitude itself
        assert ellip_f(phi, 0.0) == pytest.approx(phi, rel=1e-14)
        assert ellip_e(phi, 0.0) == pytest.approx(phi, rel=1e-14)
    # complete integrals at the self-dual modulus 1/sqrt(2)
    k = 1.0 / math.sqrt(2.0)
    assert ellip_f(math.pi / 2, k) == pytest.approx(1.8540746773013719184, rel=1e-14)
    assert ellip_e(math.pi / 2, k) == pytest.approx(1.3506438810476755025, rel=1e-14)
    # third kind: nu = 0 reduces to the first kind, and the elementary case
    # integral_0^{pi/2} dt/(1 + 3 sin^2 t) = pi/4
    for phi, k in ((0.7, 0.2), (1.2, 0.9), (math.pi / 2, 0.5)):
        assert ellip_pi(phi, 0.0, k) == pytest.approx(ellip_f(phi, k), rel=1e-14)
    assert ellip_pi(math.pi / 2, 3.0, 0.0) == pytest.approx(math.pi / 4, rel=1e-14)


def test_legendre_frozen_point():
    """The amplitude/modulus pair (pi/3, 2/sqrt(7)) that feeds the first-order
    minimum-radius formula, pinned to independently computed digits."""
    k = 2.0 / math.sqrt(7.0)
    assert ellip_f(math.pi / 3, k) == pytest.approx(1.1602703804109251818, rel=1e-14)
    assert ellip_e(math.pi / 3, k) == pytest.approx(0.95211060108304481237, rel=1e-14)


def test_legendre_orderings():
    """E(phi,k) <= phi <= F(phi,k), strict for phi, k > 0; monotone in both
    arguments with the expected directions."""
    phis = np.linspace(0.1, math.pi / 2, 9)
    ks = np.array([0.1, 0.4, 0.7, 0.95])
    for k in ks:
        f_vals = np.array([ellip_f(p, k) for p in phis])
        e_vals = np.array([ellip_e(p, k) for p in phis])
        assert np.all(e_vals < phis)
        assert np.all(phis < f_vals)
        assert np.all(np.diff(f_vals) > 0.0)
        assert np.all(np.diff(e_vals) > 0.0)
    for phi in (0.5, 1.3):
        f_in_k = np.array([ellip_f(phi, k) for k in ks])
        e_in_k = np.array([ellip_e(phi, k) for k in ks])
        assert np.all(np.diff(f_in_k) > 0.0)
        assert np.all(np.diff(e_in_k) < 0.0)


def test_closed_forms_match_quadrature_oracle():
    """Dual-route check: every closed form against adaptive quadrature of its
    defining integrand, over randomly drawn (phi, nu, k) triples."""
    rng = np.random.default_rng(20250812)
    for _ in range(100):
        phi = rng.uniform(0.05, math.pi / 2)
        k = rng.uniform(0.05, 0.95)
        nu = rng.uniform(-0.8, 4.0)
        k2 = k * k

        def d_first(t):
            return 1.0 / math.sqrt(1.0 - k2 * math.sin(t) ** 2)

        def d_second(t):
            return math.sqrt(1.0 - k2 * math.sin(t) ** 2)

        def d_third(t):
            s2 = math.sin(t) ** 2
            return 1.0 / ((1.0 + nu * s2) * math.sqrt(1.0 - k2 * s2))

        assert ellip_f(phi, k) == pytest.approx(
            oracle_quadrature(d_first, 0.0, phi, tol=1e-12), rel=1e-10)
        assert ellip_e(phi, k) == pytest.approx(
            oracle_quadrature(d_second, 0.0, phi, tol=1e-12), rel=1e-10)
        assert ellip_pi(phi, nu, k) == pytest.approx(
            oracle_quadrature(d_third, 0.0, phi, tol=1e-12), rel=1e-10)
    # modulus close to 1, where naive reductions would lose digits
    for k in (0.9999, 0.999999):
        k2 = k * k
        val = oracle_quadrature(
            lambda t: 1.0 / math.sqrt(1.0 - k2 * math.sin(t) ** 2),
            0.0, math.pi / 2, tol=1e-11)
        assert ellip_f(math.pi / 2, k) == pytest.approx(val, rel=1e-9)


def test_oracle_handles_endpoint_singularity():
    """The x-substituted first-kind integrand has an integrable 1/sqrt
    singularity at sin(phi) = 1; the oracle's extrapolating rule absorbs it."""
    val = oracle_quadrature(lambda x: 1.0 / math.sqrt(1.0 - x * x), 0.0, 1.0,
                            tol=1e-10)
    assert val == pytest.approx(math.pi / 2, rel=1e-10)
    k = 0.9
    target = ellip_f(math.pi / 2, k)
    val = oracle_quadrature(
        lambda x: 1.0 / math.sqrt((1.0 - x * x) * (1.0 - (k * x) ** 2)),
        0.0, 1.0, tol=1e-10)
    assert val == pytest.approx(target, rel=1e-9)


def test_oracle_budget_exhaustion():
    with pytest.raises(ConvergenceError):
        oracle_quadrature(lambda x: math.sin(1000.0 * x), 0.0, 10.0,
                          tol=1e-12, budget=2)


def test_legendre_domain_errors():
    with pytest.raises(DomainError):
        ellip_f(-0.1, 0.5)
    with pytest.raises(DomainError):
        ellip_f(math.pi / 2 + 0.1, 0.5)
    with pytest.raises(DomainError):
        ellip_f(0.5, 1.0)  # k^2 must be < 1
    with pytest.raises(DomainError):
        ellip_e(0.5, -1.2)
    with pytest.raises(DomainError):
        ellip_pi(math.pi / 2, -1.0, 0.5)  # pole at the endpoint
    with pytest.raises(DomainError):
        ellip_pi(math.pi / 2, -2.0, 0.5)  # pole inside the range
