"""Field-equation route: right-hand side, conserved combination, shooting
integration against the closed form, and the C-sign classification."""

import math

import numpy as np
import pytest

from skyrmion_cylinder import (
    ClassificationError,
    ConvergenceError,
    DomainError,
    ShootState,
    StepControl,
    classify_by_c,
    conserved_c,
    f_of_psi,
    first_integral_fprime,
    modulus_from_radius,
    rhs_second_order,
    shoot,
    shoot_c_residuals,
    topological_charge,
)


def canonical_slope(L: float) -> float:
    return math.sqrt((2.0 * L * L + 1.0) / (L * L + 2.0))


def test_rhs_values():
    # sin(2F) = 0 at the midpoint and the vacua, so F'' vanishes there
    assert rhs_second_order(ShootState(0.0, 0.5 * math.pi, 0.7), 1.0) == (
        pytest.approx(0.0, abs=1e-15))
    assert rhs_second_order(ShootState(0.0, 0.0, 0.0), 2.0) == 0.0
    assert rhs_second_order(ShootState(0.0, math.pi, 0.0), 2.0) == (
        pytest.approx(0.0, abs=1e-15))
    # hand-evaluated point: F = pi/4, F' = 0, L = 1
    assert rhs_second_order(ShootState(0.0, 0.25 * math.pi, 0.0), 1.0) == (
        pytest.approx(0.75, rel=1e-14))
    # reflection antisymmetry of the equation about the midpoint
    for f, fp, L in ((0.4, 0.3, 0.8), (1.2, 1.1, 2.0)):
        assert rhs_second_order(ShootState(0.0, math.pi - f, fp), L) == (
            pytest.approx(-rhs_second_order(ShootState(0.0, f, fp), L),
                          rel=1e-12))
    with pytest.raises(DomainError):
        rhs_second_order(ShootState(0.0, 1.0, 0.0), -1.0)


def test_conserved_combination_values():
    for L in (0.5, 1.0, 3.0):
        # equilibrium at the midpoint: C = -(2 L^2 + 1)
        assert conserved_c(ShootState(0.0, 0.5 * math.pi, 0.0), L) == (
            pytest.approx(-(2.0 * L * L + 1.0), rel=1e-14))
        # the canonical initial data lie on the C = 0 level set
        c0 = conserved_c(ShootState(0.0, 0.5 * math.pi, canonical_slope(L)), L)
        assert abs(c0) < 1e-14 * (1.0 + 2.0 * L * L)
    # pure-slope state at a vacuum: C = L^2 fp^2 > 0
    assert conserved_c(ShootState(0.0, math.pi, 0.5), 2.0) == (
        pytest.approx(1.0, rel=1e-12))


def test_first_integral_slope():
    assert first_integral_fprime(0.5 * math.pi, 1.0) == pytest.approx(1.0, rel=1e-15)
    assert first_integral_fprime(0.0, 1.0) == 0.0
    assert first_integral_fprime(math.pi, 1.0) == pytest.approx(0.0, abs=1e-15)
    # slope/sin(F) approaches sqrt(2) toward the vacua
    for L in (0.3, 1.0, 4.0):
        ratio = first_integral_fprime(1e-6, L) / math.sin(1e-6)
        assert ratio == pytest.approx(math.sqrt(2.0), rel=1e-9)
    # bounds (1/2) sin^2 F < F'^2 < 2 sin^2 F strictly inside (0, pi)
    for L in (0.2, 1.0, 5.0):
        for f in np.linspace(0.05, math.pi - 0.05, 50):
            fp2 = first_integral_fprime(f, L) ** 2
            s2 = math.sin(f) ** 2
            assert 0.5 * s2 < fp2 < 2.0 * s2
            # and the pair (f, F'(f)) sits on the zero level set
            c = conserved_c(ShootState(0.0, f, first_integral_fprime(f, L)), L)
            assert abs(c) < 1e-13 * (1.0 + 2.0 * L * L)
    with pytest.raises(DomainError):
        first_integral_fprime(-0.1, 1.0)
    with pytest.raises(DomainError):
        first_integral_fprime(math.pi + 0.1, 1.0)


def test_shoot_canonical_data():
    p = shoot(1.0)
    n = p.psi_grid.size
    assert n == 1201
    half = n // 2
    assert p.f_values[half] == 0.5 * math.pi
    assert p.f_prime[half] == 1.0
    # monotone on the inner window; in the far tail the ~1e-12 level-set
    # drift of any shot trajectory allows 1e-7-scale turnarounds
    inner = np.abs(p.psi_grid) <= 8.0
    assert np.all(np.diff(p.f_values[inner]) > 0.0)
    assert np.max(np.abs(shoot_c_residuals(p, 1.0))) < 1e-8
    # forward and backward branches mirror each other
    assert np.max(np.abs(p.f_values + p.f_values[::-1] - math.pi)) < 1e-6
    assert topological_charge(p) == 1


def test_shoot_matches_inversion():
    """Dual route: the integrated field equation against the inverted
    elliptic closed form, sample by sample."""
    for L in (0.5, 2.0):
        ms = modulus_from_radius(L)
        p = shoot(L, psi_max=6.0, n_points=601)
        worst = max(abs(p.f_values[i] - f_of_psi(p.psi_grid[i], ms))
                    for i in range(p.psi_grid.size))
        assert worst < 1e-8


def test_shoot_satisfies_field_equation():
    """Differentiating the integrated slope reproduces the equation's
    right-hand side on the grid interior."""
    p = shoot(1.0, psi_max=6.0, n_points=1201)
    fp = p.f_prime
    h = p.psi_grid[1] - p.psi_grid[0]
    fd = (-fp[4:] + 8.0 * fp[3:-1] - 8.0 * fp[1:-3] + fp[:-4]) / (12.0 * h)
    rhs = np.array([
        rhs_second_order(ShootState(p.psi_grid[i], p.f_values[i], fp[i]), 1.0)
        for i in range(2, p.psi_grid.size - 2)])
    assert np.max(np.abs(fd - rhs)) < 1e-6


def test_shoot_charge_on_long_window():
    p = shoot(1.0, psi_max=20.0, n_points=801)
    assert topological_charge(p) == 1


def test_shoot_tolerance_control():
    # sloppy integrator tolerances overdraw the conservation budget
    with pytest.raises(ConvergenceError):
        shoot(1.0, step_control=StepControl(rtol=1e-3, atol=1e-3))
    # an unattainable budget is reported rather than silently missed
    with pytest.raises(ConvergenceError):
        shoot(1.0, step_control=StepControl(max_c_residual=1e-14))
    with pytest.raises(DomainError):
        shoot(-1.0)
    with pytest.raises(DomainError):
        shoot(1.0, psi_max=0.0)
    with pytest.raises(DomainError):
        shoot(1.0, n_points=2)
    # even grid sizes are promoted to odd so the midpoint exists
    assert shoot(1.0, psi_max=4.0, n_points=10).psi_grid.size == 11


def test_classify_examples():
    fp0 = canonical_slope(1.0)
    assert classify_by_c(0.5 * math.pi, fp0, 1.0) == "separatrix"
    assert classify_by_c(0.5 * math.pi, 2.0, 1.0) == "divergent"
    assert classify_by_c(0.5 * math.pi, 0.5, 1.0) == "oscillatory"
    # the midpoint equilibrium stays put, which counts as oscillatory (C < 0)
    assert classify_by_c(0.5 * math.pi, 0.0, 1.0) == "oscillatory"
    # slope reversal does not change the class (C is even in F')
    assert classify_by_c(0.5 * math.pi, -2.0, 1.0) == "divergent"
    assert classify_by_c(1.0, -0.2, 1.0) == classify_by_c(1.0, 0.2, 1.0)
    with pytest.raises(DomainError):
        classify_by_c(math.nan, 1.0, 1.0)
    with pytest.raises(DomainError):
        classify_by_c(1.0, 1.0, 1.0, window=-3.0)


def test_classify_agrees_with_sign_of_c():
    """Property check: the reported class matches the sign of the conserved
    combination for random initial states (the separatrix band excepted)."""
    rng = np.random.default_rng(20250817)
    checked = 0
    for _ in range(30):
        f0 = rng.uniform(0.1, math.pi - 0.1)
        fp0 = rng.uniform(0.0, 3.0)
        L = rng.uniform(0.3, 3.0)
        c = conserved_c(ShootState(0.0, f0, fp0), L)
        if abs(c) <= 1e-10 * (1.0 + 2.0 * L * L):
            continue
        label = classify_by_c(f0, fp0, L)
        assert label == ("divergent" if c > 0.0 else "oscillatory")
        checked += 1
    assert checked >= 25


def test_classify_near_separatrix():
    """States just off the zero level set still classify cleanly by sign."""
    L = 1.0
    fp0 = canonical_slope(L)
    for delta, expect in ((1e-4, "divergent"), (-1e-4, "oscillatory")):
        label = classify_by_c(0.5 * math.pi, fp0 * (1.0 + delta), L)
        assert label == expect
    # and dead on the level set, the band catches it
    assert classify_by_c(0.5 * math.pi, fp0, L) == "separatrix"
