"""Right-hand-side assembly, the smallness functional, and the form mismatch.

The independent oracle here is a brute-force pipeline built on product_direct
(the O(N^2) convolution) and raw symbol arrays; the library path uses padded
FFT products.  On band-limited data both are exact, so they must agree to
rounding.
"""

import math

import numpy as np
import pytest

from chgevrey.model import (
    ModelParams,
    StateFunctionals,
    formulation_residual,
    functional_H,
    h_of_u,
    lipschitz_ratio,
    nonlocal_source,
    rhs,
    small_data_check,
)
from chgevrey.spectral import (
    GevreyIndex,
    SpectralField,
    TorusGrid,
    field_from_modes,
    gevrey_norm,
    product_direct,
    random_field,
    to_physical,
    to_spectral,
)

GRID = TorusGrid(64)
FREE = ModelParams(lam=1.0)  # all coupling coefficients zero


def constant_field(c, grid=GRID):
    return to_spectral(np.full(grid.n_points, float(c)), grid)


def brute_rhs(u: SpectralField, p: ModelParams) -> SpectralField:
    """Direct-convolution reference for F(u); exact for band <= n/8 data."""
    g = u.grid
    k = g.wavenumbers.copy()
    k[g.n_points // 2] = 0.0
    d = lambda f: f.with_coeffs(1j * k * f.coeffs)
    ux = d(u)
    u2 = product_direct(u, u)
    u3 = product_direct(u2, u)
    u4 = product_direct(u3, u)
    h = (
        (p.alpha + p.Gamma_coef) * u
        + (p.beta / 3.0) * u3
        + (p.gamma / 4.0) * u4
    )
    inner = -1.0 * h + u2 + 0.5 * product_direct(ux, ux)
    q = d(inner).coeffs / (1.0 + g.wavenumbers**2)
    advection = product_direct(u, ux) + p.Gamma_coef * ux
    return u.with_coeffs(
        -advection.coeffs - p.lam * u.coeffs - q
    )


# --- h -------------------------------------------------------------------


def test_h_zero_field():
    z = field_from_modes(GRID, {})
    p = ModelParams(alpha=1.0, beta=2.0, gamma=3.0, Gamma_coef=0.5)
    assert np.max(np.abs(h_of_u(z, p).coeffs)) == 0.0


def test_h_constant_closed_form():
    p = ModelParams(alpha=1.0, beta=2.0, gamma=3.0, Gamma_coef=0.5)
    c = 0.5
    expected = (p.alpha + p.Gamma_coef) * c + (p.beta / 3.0) * c**3 + (p.gamma / 4.0) * c**4
    out = h_of_u(constant_field(c), p)
    assert out.coeff(0) == pytest.approx(expected, rel=1e-12)
    assert np.max(np.abs(out.coeffs[1:])) < 1e-14


def test_h_linear_part_passes_cosine_through():
    p = ModelParams(alpha=1.0)
    u = field_from_modes(GRID, {1: 0.5})
    out = h_of_u(u, p)
    assert np.max(np.abs(out.coeffs - u.coeffs)) < 1e-14


# --- Q -------------------------------------------------------------------


def test_source_vanishes_on_constants():
    p = ModelParams(alpha=0.3, beta=1.0, gamma=-2.0, Gamma_coef=0.7)
    q = nonlocal_source(constant_field(1.7), p)
    assert np.max(np.abs(q.coeffs)) <= 1e-15


def test_source_of_cosine_closed_form():
    # u = cos x, all couplings zero: inner = u^2 + u_x^2/2 = 3/4 + cos(2x)/4,
    # so Q = -(1-dxx)^{-1} dx inner = sin(2x)/10
    u = field_from_modes(GRID, {1: 0.5})
    q = nonlocal_source(u, FREE)
    expected = np.sin(2 * GRID.x) / 10.0
    assert np.max(np.abs(to_physical(q) - expected)) < 1e-12


def test_source_is_mean_free():
    u = random_field(GRID, np.random.default_rng(1), band=GRID.n_points // 8)
    p = ModelParams(alpha=0.2, beta=0.4, gamma=0.1, Gamma_coef=-0.3)
    assert abs(nonlocal_source(u, p).coeff(0)) <= 1e-14


def test_source_linear_in_alpha():
    u = random_field(GRID, np.random.default_rng(2), band=GRID.n_points // 8)
    q0 = nonlocal_source(u, ModelParams(alpha=0.0))
    q1 = nonlocal_source(u, ModelParams(alpha=0.4))
    q2 = nonlocal_source(u, ModelParams(alpha=0.8))
    lhs = q2.coeffs - q0.coeffs
    rhs_ = 2.0 * (q1.coeffs - q0.coeffs)
    assert np.max(np.abs(lhs - rhs_)) <= 1e-12 * max(1.0, np.max(np.abs(q2.coeffs)))


# --- F -------------------------------------------------------------------


def test_rhs_zero_field():
    z = field_from_modes(GRID, {})
    assert np.max(np.abs(rhs(z, FREE).coeffs)) == 0.0


def test_rhs_constant_decays_exponentially():
    p = ModelParams(alpha=0.0, lam=2.0)
    c = 0.3
    out = rhs(constant_field(c), p)
    assert out.coeff(0) == pytest.approx(-p.lam * c, rel=1e-13)
    assert np.max(np.abs(out.coeffs[1:])) < 1e-14


def test_rhs_cosine_closed_form():
    # all parameters zero except lam; subtract the -lam*u part by hand
    u = field_from_modes(GRID, {1: 0.5})
    out = rhs(u, FREE)
    nonlinear = out.coeffs + FREE.lam * u.coeffs
    expected = 0.6 * np.sin(2 * GRID.x)
    assert np.max(np.abs(to_physical(u.with_coeffs(nonlinear)) - expected)) < 1e-12


def test_rhs_matches_direct_convolution_oracle():
    rng = np.random.default_rng(3)
    for p in (
        FREE,
        ModelParams(alpha=0.2, beta=0.7, gamma=-0.4, Gamma_coef=0.3, lam=0.5),
    ):
        u = random_field(GRID, rng, band=GRID.n_points // 8)
        fast = rhs(u, p)
        slow = brute_rhs(u, p)
        scale = max(1.0, float(np.max(np.abs(slow.coeffs))))
        assert np.max(np.abs(fast.coeffs - slow.coeffs)) <= 1e-12 * scale


# --- smallness functional -------------------------------------------------


def test_functional_H_frozen_values():
    z = field_from_modes(GRID, {})
    assert functional_H(z, ModelParams(alpha=1.0, Gamma_coef=-2.0), s=2.0) == pytest.approx(3.0)
    u = field_from_modes(GRID, {3: 0.5})  # cos 3x, H^2 norm sqrt(50)
    p = ModelParams(beta=3.0)
    assert functional_H(u, p, s=2.0) == pytest.approx(math.sqrt(50.0) + 50.0, rel=1e-12)


def test_functional_H_requires_s_above_three_halves():
    u = field_from_modes(GRID, {1: 0.5})
    with pytest.raises(ValueError):
        functional_H(u, FREE, s=1.5)


def test_small_data_boundary_included():
    z = field_from_modes(GRID, {})
    p = ModelParams(alpha=0.1, lam=1.0, epsilon=0.1)  # H0 == lam*epsilon exactly
    assert small_data_check(z, p, s=2.0)
    p_over = ModelParams(alpha=0.1 + 1e-9, lam=1.0, epsilon=0.1)
    assert not small_data_check(z, p_over, s=2.0)


def test_state_functionals_validation():
    StateFunctionals(H0=1.0, H_t=0.5, s=2.0)
    with pytest.raises(ValueError):
        StateFunctionals(H0=1.0, H_t=0.5, s=1.0)


# --- form mismatch --------------------------------------------------------


def test_formulation_residual_zero_for_alpha_zero():
    u = field_from_modes(GRID, {1: 0.5})
    p = ModelParams(alpha=0.0, beta=0.5, gamma=0.2, Gamma_coef=0.3, lam=1.0)
    assert formulation_residual(u, p) <= 1e-10


def test_formulation_residual_detects_alpha():
    c = 0.5
    p = ModelParams(alpha=0.3, lam=1.0)
    # constant field: lifted form gives -lam*c, local form alpha*c - lam*c
    assert formulation_residual(constant_field(c), p) == pytest.approx(
        abs(p.alpha * c), rel=1e-12
    )
    assert formulation_residual(field_from_modes(GRID, {}), p) == 0.0


# --- Lipschitz ratio ------------------------------------------------------


def test_lipschitz_ratio_bounded_by_fixed_point_constant():
    # ratios measured in a unit ball around a small datum stay far below
    # L/(delta_wide-delta_narrow)^sigma with the calibration constant at 1
    from chgevrey.analyticity import lifespan_bounds

    rng = np.random.default_rng(5)
    sigma, s = 1.0, 2.0
    dw, dn = 0.75, 0.5
    u0 = field_from_modes(GRID, {1: 0.005})
    ball_radius = 1.0
    norm_u0 = gevrey_norm(u0, GevreyIndex(sigma, 1.0, s))
    bounds = lifespan_bounds(norm_u0 + ball_radius, sigma, c_prime=1.0)
    ceiling = bounds.L / (dw - dn) ** sigma
    worst = 0.0
    for _ in range(20):
        du = random_field(GRID, rng, band=8)
        dv = random_field(GRID, rng, band=8)
        du = du * (0.3 / max(gevrey_norm(du, GevreyIndex(sigma, dw, s)), 1e-30))
        dv = dv * (0.3 / max(gevrey_norm(dv, GevreyIndex(sigma, dw, s)), 1e-30))
        r = lipschitz_ratio(u0 + du, u0 + dv, FREE, sigma, dw, dn, s)
        worst = max(worst, r)
    assert worst <= ceiling
    assert worst > 0.0
