"""Grid/field plumbing, transforms, weighted norms, and the two product routes.

Expected values are hand mode sums frozen here, independent of the library
code paths (e.g. cos 3x has coefficients 1/2 at modes +-3, so the s=2 Sobolev
mode sum is 2*(1+9)^2*(1/4) = 50).
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chgevrey.spectral import (
    GevreyIndex,
    GridMismatchError,
    ModeOverflowError,
    NormOverflowError,
    SpectralField,
    SymmetryError,
    TorusGrid,
    derivative,
    field_from_modes,
    gevrey_multiplier,
    gevrey_norm,
    gevrey_norm_bar,
    helmholtz,
    helmholtz_inv,
    product,
    product_direct,
    random_field,
    sobolev_norm,
    to_physical,
    to_spectral,
)

GRID = TorusGrid(64)


def cos_field(mode: int, grid: TorusGrid = GRID, amplitude: float = 1.0) -> SpectralField:
    return field_from_modes(grid, {mode: amplitude / 2.0})


# --- grid -----------------------------------------------------------------


def test_grid_validation():
    with pytest.raises(ValueError):
        TorusGrid(6)
    with pytest.raises(ValueError):
        TorusGrid(33)
    with pytest.raises(ValueError):
        TorusGrid(64, period=0.0)


def test_grid_mode_layout():
    g = TorusGrid(8)
    assert list(g.modes) == [0, 1, 2, 3, 4, -3, -2, -1]
    assert g.index_of(-3) == 5
    assert g.index_of(4) == 4
    with pytest.raises(ValueError):
        g.index_of(-4)  # the band keeps +n/2, not -n/2
    # default period 2*pi gives integer wavenumbers
    assert np.allclose(g.wavenumbers, g.modes)
    gp = TorusGrid(8, period=4.0 * math.pi)
    assert gp.wavenumbers[1] == pytest.approx(0.5)


# --- transforms -----------------------------------------------------------


def test_constant_field_coefficients():
    f = to_spectral(np.full(GRID.n_points, 2.5), GRID)
    assert f.coeff(0) == pytest.approx(2.5)
    assert np.max(np.abs(f.coeffs[1:])) < 1e-14


def test_cosine_coefficients():
    f = to_spectral(np.cos(3 * GRID.x), GRID)
    assert f.coeff(3) == pytest.approx(0.5, abs=1e-14)
    assert f.coeff(-3) == pytest.approx(0.5, abs=1e-14)
    assert abs(f.coeff(2)) < 1e-14


@settings(max_examples=50, deadline=None)
@given(
    st.lists(
        st.floats(min_value=-1e6, max_value=1e6, allow_nan=False),
        min_size=64,
        max_size=64,
    )
)
def test_round_trip(samples):
    f = to_spectral(np.array(samples), GRID)
    back = to_physical(f, imag_tol=1e-4)
    assert np.max(np.abs(back - np.array(samples))) <= 1e-12 * max(
        1.0, np.max(np.abs(samples))
    )


def test_to_physical_rejects_broken_symmetry():
    # single complex exponential e^{i2x}: no conjugate partner
    f = field_from_modes(GRID, {2: 1.0}, hermitian=False)
    with pytest.raises(SymmetryError):
        to_physical(f)


def test_hermitian_defect():
    good = cos_field(3)
    assert good.hermitian_defect() < 1e-15
    bad = field_from_modes(GRID, {2: 1.0}, hermitian=False)
    assert bad.hermitian_defect() == pytest.approx(1.0)


# --- diagonal operators ---------------------------------------------------


def test_derivative_cosine():
    f = cos_field(3)
    expected = -3.0 * np.sin(3 * GRID.x)
    assert np.max(np.abs(to_physical(derivative(f)) - expected)) < 1e-12


def test_derivative_constant_and_single_mode():
    const = to_spectral(np.full(GRID.n_points, 4.0), GRID)
    assert np.max(np.abs(derivative(const).coeffs)) == 0.0
    raw = field_from_modes(GRID, {2: 1.0}, hermitian=False)
    d = derivative(raw)
    assert d.coeff(2) == pytest.approx(2j)


def test_derivative_zeroes_nyquist():
    g = TorusGrid(16)
    f = field_from_modes(g, {8: 1.0}, hermitian=False)
    assert np.max(np.abs(derivative(f).coeffs)) == 0.0


def test_helmholtz_inverse_pair():
    f = cos_field(3)
    assert to_physical(helmholtz_inv(f)) == pytest.approx(np.cos(3 * GRID.x) / 10.0)
    rng = np.random.default_rng(7)
    g = random_field(GRID, rng)
    round_trip = helmholtz(helmholtz_inv(g))
    assert np.max(np.abs(round_trip.coeffs - g.coeffs)) < 1e-12


def test_gevrey_multiplier_single_mode():
    raw = field_from_modes(GRID, {2: 1.0}, hermitian=False)
    out = gevrey_multiplier(raw, 1.0, 1.0)
    assert out.coeff(2) == pytest.approx(math.exp(math.sqrt(5.0)))


def test_gevrey_multiplier_identity_and_inverse():
    rng = np.random.default_rng(11)
    f = random_field(GRID, rng)
    same = gevrey_multiplier(f, 0.0, 1.0)
    assert np.max(np.abs(same.coeffs - f.coeffs)) == 0.0
    there = gevrey_multiplier(f, 0.5, 1.0)
    back = gevrey_multiplier(there, -0.5, 1.0)
    assert np.max(np.abs(back.coeffs - f.coeffs)) <= 1e-10 * np.max(np.abs(f.coeffs))


def test_gevrey_multiplier_overflow_names_mode():
    f = cos_field(31)
    with pytest.raises(ModeOverflowError) as err:
        gevrey_multiplier(f, 1e4, 1.0)
    assert abs(err.value.mode) == 31


# --- norms ----------------------------------------------------------------


def test_sobolev_norm_frozen_values():
    f = cos_field(3)
    assert sobolev_norm(f, 2.0) == pytest.approx(math.sqrt(50.0), rel=1e-12)
    assert sobolev_norm(f, 0.0) == pytest.approx(math.sqrt(0.5), rel=1e-12)
    const = to_spectral(np.ones(GRID.n_points), GRID)
    assert sobolev_norm(const, 5.0) == pytest.approx(1.0, rel=1e-14)
    zero = field_from_modes(GRID, {})
    assert sobolev_norm(zero, 2.0) == 0.0


def test_gevrey_norm_frozen_value():
    f = cos_field(3)
    expected = math.sqrt(0.5 * math.exp(math.sqrt(10.0)))
    assert gevrey_norm(f, GevreyIndex(1.0, 0.5, 0.0)) == pytest.approx(expected, rel=1e-12)


def test_gevrey_norm_delta_zero_is_sobolev():
    rng = np.random.default_rng(3)
    f = random_field(GRID, rng)
    for s in (0.0, 1.0, 2.5):
        assert gevrey_norm(f, GevreyIndex(1.0, 0.0, s)) == pytest.approx(
            sobolev_norm(f, s), rel=1e-12
        )


def test_gevrey_norm_monotone_in_delta_s_sigma():
    rng = np.random.default_rng(5)
    for _ in range(10):
        f = random_field(GRID, rng)
        n_small = gevrey_norm(f, GevreyIndex(1.0, 0.2, 1.0))
        assert gevrey_norm(f, GevreyIndex(1.0, 0.6, 1.0)) >= n_small
        assert gevrey_norm(f, GevreyIndex(1.0, 0.2, 2.0)) >= n_small
        # smaller sigma weights every mode more heavily
        assert gevrey_norm(f, GevreyIndex(2.0, 0.2, 1.0)) <= n_small


def test_gevrey_norm_bar_single_mode():
    raw = field_from_modes(GRID, {2: 1.0}, hermitian=False)
    assert gevrey_norm_bar(raw, GevreyIndex(1.0, 1.0, 0.0)) == pytest.approx(
        math.exp(2.0), rel=1e-12
    )


def test_norm_equivalence_sandwich():
    rng = np.random.default_rng(9)
    for delta in (0.1, 0.7):
        f = random_field(GRID, rng)
        idx = GevreyIndex(1.0, delta, 1.5)
        bar = gevrey_norm_bar(f, idx)
        smooth = gevrey_norm(f, idx)
        assert bar <= smooth * (1.0 + 1e-12)
        assert smooth <= math.exp(delta) * bar * (1.0 + 1e-12)


def test_norm_overflow_raises():
    f = cos_field(31)
    with pytest.raises(NormOverflowError):
        gevrey_norm(f, GevreyIndex(1.0, 100.0, 0.0))


def test_parseval_mean_square():
    rng = np.random.default_rng(13)
    samples = rng.standard_normal(GRID.n_points)
    f = to_spectral(samples, GRID)
    mode_sum_sq = gevrey_norm(f, GevreyIndex(1.0, 0.0, 0.0)) ** 2
    assert mode_sum_sq == pytest.approx(np.mean(samples**2), rel=1e-10)


# --- products -------------------------------------------------------------


def test_product_by_one_and_by_zero():
    rng = np.random.default_rng(17)
    f = random_field(GRID, rng)
    one = to_spectral(np.ones(GRID.n_points), GRID)
    zero = field_from_modes(GRID, {})
    assert np.max(np.abs(product(f, one).coeffs - f.coeffs)) < 1e-14
    assert np.max(np.abs(product(f, zero).coeffs)) == 0.0


def test_product_cosine_squared():
    f = cos_field(1)
    sq = product(f, f)
    # cos^2 x = 1/2 + cos(2x)/2
    assert sq.coeff(0) == pytest.approx(0.5, abs=1e-14)
    assert sq.coeff(2) == pytest.approx(0.25, abs=1e-14)
    assert abs(sq.coeff(1)) < 1e-14


def test_product_direct_single_modes():
    f = field_from_modes(GRID, {1: 1.0}, hermitian=False)
    g = field_from_modes(GRID, {2: 1.0}, hermitian=False)
    fg = product_direct(f, g)
    assert fg.coeff(3) == pytest.approx(1.0)
    nz = np.flatnonzero(np.abs(fg.coeffs) > 0)
    assert list(nz) == [GRID.index_of(3)]


def test_product_agrees_with_direct_on_band_limited_pairs():
    grid = TorusGrid(128)
    rng = np.random.default_rng(42)
    for _ in range(20):
        f = random_field(grid, rng, band=grid.n_points // 3)
        g = random_field(grid, rng, band=grid.n_points // 3)
        fast = product(f, g)
        slow = product_direct(f, g)
        assert np.max(np.abs(fast.coeffs - slow.coeffs)) <= 1e-10


def test_product_direct_commutes_exactly():
    grid = TorusGrid(64)
    rng = np.random.default_rng(23)
    f = random_field(grid, rng)
    g = random_field(grid, rng)
    assert product_direct(f, g).coeffs.tobytes() == product_direct(g, f).coeffs.tobytes()


def test_product_direct_size_guard():
    grid = TorusGrid(1024)
    f = field_from_modes(grid, {1: 1.0})
    with pytest.raises(ValueError):
        product_direct(f, f)


def test_product_grid_mismatch():
    f = cos_field(1)
    g = field_from_modes(TorusGrid(32), {1: 0.5})
    with pytest.raises(GridMismatchError):
        product(f, g)


def test_product_preserves_hermitian_symmetry():
    rng = np.random.default_rng(29)
    # keep the product inside the paired band |m| <= n/2 - 1: the +n/2 corner
    # slot has no conjugate partner to mirror into
    f = random_field(GRID, rng, band=GRID.n_points // 8)
    g = random_field(GRID, rng, band=GRID.n_points // 8)
    for op_out in (product(f, g), derivative(f), helmholtz_inv(f), gevrey_multiplier(f, 0.3, 1.0)):
        assert op_out.hermitian_defect() < 1e-12


def test_field_arithmetic():
    f = cos_field(1)
    g = cos_field(2)
    h = 2.0 * f + g - f
    assert h.coeff(1) == pytest.approx(0.5)
    assert h.coeff(2) == pytest.approx(0.5)
    with pytest.raises(TypeError):
        f * g  # field*field must go through product()
