"""
Tests for the cubic B-spline basis and the sample grid
"""
import numpy as np
import pytest
from hypothesis import given, settings as hyp_settings, strategies as st
from scipy.interpolate import BSpline

from core.errors import DimensionError, InvalidArgumentError, OutOfDomainError
from core.spline.basis import (
    build_basis,
    eval_basis,
    eval_basis_all,
    eval_curve,
    greville_abscissae,
)
from core.spline.sample_grid import build_sample_grid


def test_single_span_basis_is_bernstein():
    basis = build_basis(4, 1.0)
    np.testing.assert_allclose(eval_basis(basis, 0.5), [0.125, 0.375, 0.375, 0.125], atol=1e-15)


def test_clamped_knot_vector():
    basis = build_basis(9, 2.0)
    assert len(basis.knots) == 13
    np.testing.assert_array_equal(basis.knots[:4], 0.0)
    np.testing.assert_array_equal(basis.knots[-4:], 2.0)
    np.testing.assert_allclose(basis.knots[4:9], [1 / 3, 2 / 3, 1.0, 4 / 3, 5 / 3], atol=1e-15)
    with pytest.raises(ValueError):
        basis.knots[0] = 1.0


def test_invalid_basis_arguments():
    with pytest.raises(InvalidArgumentError):
        build_basis(3, 1.0)
    with pytest.raises(InvalidArgumentError):
        build_basis(9, 0.0)
    with pytest.raises(InvalidArgumentError):
        eval_basis(build_basis(9, 2.0), 1.0, deriv_order=4)


@pytest.mark.parametrize("u", [-0.1, 2.1])
def test_out_of_domain(basis9, u):
    with pytest.raises(OutOfDomainError):
        eval_basis(basis9, u)


@hyp_settings(max_examples=60, deadline=None)
@given(u=st.floats(min_value=0.0, max_value=2.0, allow_nan=False))
def test_partition_of_unity(u):
    basis = build_basis(9, 2.0)
    values = eval_basis_all(basis, u)
    assert values[0].sum() == pytest.approx(1.0, abs=1e-12)
    assert np.all(values[0] >= -1e-15)
    np.testing.assert_allclose(values[1:].sum(axis=1), 0.0, atol=1e-9)
    assert np.count_nonzero(values[0]) <= 4


@pytest.mark.parametrize("order", [1, 2, 3])
@pytest.mark.parametrize("u", [0.5, 1.2, 1.8])
def test_derivatives_match_finite_differences(basis9, order, u):
    h = 1e-5
    lower = eval_basis(basis9, u - h, order - 1)
    upper = eval_basis(basis9, u + h, order - 1)
    np.testing.assert_allclose(eval_basis(basis9, u, order), (upper - lower) / (2 * h), atol=1e-6)


@pytest.mark.parametrize("u", [0.0, 0.1, 0.5, 0.9, 1.7, 1.99])
def test_matches_scipy_bspline(basis9, u):
    identity = np.eye(basis9.n_u)
    for order in range(4):
        expected = np.array([
            BSpline(basis9.knots, identity[i], 3)(u, nu=order) for i in range(basis9.n_u)
        ])
        np.testing.assert_allclose(eval_basis(basis9, u, order), expected, atol=1e-9)


def test_greville_control_points_reproduce_straight_line(basis9, straight9):
    np.testing.assert_allclose(eval_curve(basis9, straight9, 1.3), [1.3, 0.0, 0.0, 0.0], atol=1e-14)
    np.testing.assert_allclose(eval_curve(basis9, straight9, 1.3, 1), [1.0, 0.0, 0.0, 0.0], atol=1e-13)
    np.testing.assert_allclose(eval_curve(basis9, straight9, 1.3, 2), 0.0, atol=1e-10)


def test_curve_interpolates_end_control_points(basis9, curved9):
    np.testing.assert_allclose(eval_curve(basis9, curved9, 0.0), curved9[0], atol=1e-15)
    np.testing.assert_allclose(eval_curve(basis9, curved9, 2.0), curved9[-1], atol=1e-14)


def test_curve_rejects_wrong_control_count(basis9):
    with pytest.raises(DimensionError):
        eval_curve(basis9, np.zeros((8, 4)), 1.0)


def test_greville_abscissae_span_the_domain(basis9):
    g = greville_abscissae(basis9)
    assert g[0] == 0.0
    assert g[-1] == pytest.approx(2.0)
    assert np.all(np.diff(g) > 0)


def test_sample_grid(basis9, grid9):
    assert grid9.n_s == 101
    assert grid9.du == pytest.approx(0.02)
    for order in range(4):
        assert grid9.matrix(order).shape == (101, 9)
    np.testing.assert_allclose(grid9.matrix(0).sum(axis=1), 1.0, atol=1e-12)
    assert grid9.weights.sum() == pytest.approx(2.0)
    assert grid9.integrate(grid9.u_values) == pytest.approx(2.0)
    np.testing.assert_allclose(grid9.matrix(2)[50], eval_basis(basis9, 1.0, 2), atol=1e-12)
    with pytest.raises(ValueError):
        grid9.matrix(1)[0, 0] = 1.0


def test_sample_grid_needs_two_points(basis9):
    with pytest.raises(InvalidArgumentError):
        build_sample_grid(basis9, 1)


@hyp_settings(max_examples=40, deadline=None)
@given(
    u=st.floats(min_value=0.0, max_value=2.0),
    scale=st.floats(min_value=-5.0, max_value=5.0),
    seed=st.integers(min_value=0, max_value=1000),
)
def test_curve_is_linear_in_control_points(u, scale, seed):
    basis = build_basis(9, 2.0)
    rng = np.random.default_rng(seed)
    a, b = rng.standard_normal((2, 9, 4))
    for order in range(4):
        combined = eval_curve(basis, scale * a + b, u, order)
        separate = scale * eval_curve(basis, a, u, order) + eval_curve(basis, b, u, order)
        np.testing.assert_allclose(combined, separate, rtol=1e-10, atol=1e-9)
