import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from legw.calculus import spectral_derivative
from legw.errors import DegenerateMetric, NotPeriodic, OrderTooHigh
from legw.exemplars import equatorial_sphere, flat_minimal_torus, random_unitary
from legw.invariants import gauss_residual
from legw.surface import (
    ImmersionGrid,
    frame_orthonormality,
    fundamental_data,
    h_derivatives,
    intrinsic_ops,
    legendre_residual,
    sample_to_grid,
)
from legw.variational import band_limited_function


def periodic_mesh(n=32):
    u = 2 * np.pi * np.arange(n) / n
    return np.meshgrid(u, u, indexing="ij")


# ---- spectral derivative ---------------------------------------------------------


def test_spectral_derivative_sin():
    U, V = periodic_mesh()
    np.testing.assert_allclose(spectral_derivative(np.sin(U), 1, 0), np.cos(U), atol=1e-12)


def test_spectral_derivative_constant():
    c = np.full((32, 32), 3.7)
    for order in [(1, 0), (0, 1), (2, 3), (3, 3)]:
        np.testing.assert_allclose(spectral_derivative(c, *order), 0.0, atol=1e-13)


def test_spectral_derivative_complex_exponential():
    U, V = periodic_mesh()
    phase = 2 * U + 3 * V
    expected = (2j) ** 2 * (3j) * np.exp(1j * phase)
    np.testing.assert_allclose(spectral_derivative(np.cos(phase), 2, 1), expected.real, atol=1e-10)
    np.testing.assert_allclose(spectral_derivative(np.sin(phase), 2, 1), expected.imag, atol=1e-10)


def test_spectral_derivative_order_limit():
    with pytest.raises(OrderTooHigh):
        spectral_derivative(np.zeros((16, 16)), 4, 3)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3), st.floats(-3, 3), st.floats(-3, 3))
def test_spectral_derivative_is_linear(ou, ov, a, b):
    U, V = periodic_mesh(16)
    f, g = np.cos(U + 2 * V), np.sin(3 * U) * np.cos(V)
    lhs = spectral_derivative(a * f + b * g, ou, ov)
    rhs = a * spectral_derivative(f, ou, ov) + b * spectral_derivative(g, ou, ov)
    np.testing.assert_allclose(lhs, rhs, atol=1e-9)


def test_spectral_derivative_component_axes():
    U, V = periodic_mesh()
    field = np.stack([np.sin(U), np.cos(V)])
    out = spectral_derivative(field, 0, 1, axes=(-2, -1))
    np.testing.assert_allclose(out[0], 0.0, atol=1e-12)
    np.testing.assert_allclose(out[1], -np.sin(V), atol=1e-12)


# ---- grids and analytic immersions -------------------------------------------


def test_sample_flat_torus_unit_norm(flat32):
    np.testing.assert_allclose(np.linalg.norm(flat32.values, axis=-1), 1.0, atol=1e-14)


def test_sample_flat_torus_legendre(flat32):
    assert legendre_residual(flat32) <= 1e-12


def test_sample_sphere_is_not_periodic():
    with pytest.raises(NotPeriodic):
        sample_to_grid(equatorial_sphere(), 32, 32)


def test_grid_rejects_odd_or_small_sizes():
    with pytest.raises(ValueError):
        ImmersionGrid(np.tile([1.0, 0, 0, 0, 0, 0], (15, 16, 1)))
    with pytest.raises(ValueError):
        ImmersionGrid(np.tile([1.0, 0, 0, 0, 0, 0], (18, 17, 1)))


def test_grid_rejects_non_unit_values():
    with pytest.raises(ValueError, match="unit"):
        ImmersionGrid(np.tile([2.0, 0, 0, 0, 0, 0], (16, 16, 1)))


def test_grid_is_immutable(flat32):
    with pytest.raises(ValueError):
        flat32.values[0, 0, 0] = 0.0


def test_analytic_partials_match_spectral_derivatives(flat32):
    torus = flat_minimal_torus()
    U, V = flat32.mesh()
    partials = torus.partials(U, V, 6)
    for (a, b), exact in partials.items():
        numeric = np.moveaxis(flat32.derivative(a, b), 0, -1)
        np.testing.assert_allclose(numeric, exact, atol=1e-8, err_msg=f"order {(a, b)}")


def test_analytic_position_unit_norm():
    sphere = equatorial_sphere(unitary=random_unitary(3))
    theta = np.linspace(0.2, np.pi - 0.2, 7)
    phi = np.linspace(0, 2 * np.pi, 7)
    p = sphere.position(theta, phi)
    np.testing.assert_allclose(np.linalg.norm(p, axis=-1), 1.0, atol=1e-12)


def test_legendre_unchanged_by_diagonal_phase(flat32, perturbed32):
    phases = np.exp(1j * np.array([0.3, -1.1, 2.0]))
    for grid in (flat32, perturbed32):
        z = grid.values[..., :3] + 1j * grid.values[..., 3:]
        rotated = ImmersionGrid(np.concatenate([(z * phases).real, (z * phases).imag], axis=-1))
        assert abs(legendre_residual(rotated) - legendre_residual(grid)) <= 1e-12


def test_legendre_product_torus_fails(product32):
    assert legendre_residual(product32) >= 0.1


# ---- fundamental data ------------------------------------------------------------


def test_flat_torus_S_equals_two(flat32):
    np.testing.assert_allclose(fundamental_data(flat32).sqlen, 2.0, atol=1e-8)


def test_flat_torus_minimal(flat32):
    np.testing.assert_allclose(fundamental_data(flat32).Hcomp, 0.0, atol=1e-8)


def test_flat_torus_metric(flat32):
    g = fundamental_data(flat32).g
    np.testing.assert_allclose(g, np.broadcast_to([[2 / 3, 1 / 3], [1 / 3, 2 / 3]], g.shape), atol=1e-12)


def test_sphere_totally_geodesic(sphere_jets):
    fd = fundamental_data(sphere_jets)
    assert np.abs(fd.sqlen).max() <= 1e-10
    np.testing.assert_allclose(fd.gauss, 1.0, atol=1e-8)


def test_second_fundamental_form_symmetric(perturbed32):
    h = fundamental_data(perturbed32).h
    np.testing.assert_allclose(h, np.swapaxes(h, -1, -2), atol=1e-12)


@pytest.mark.parametrize("name", ["flat32", "perturbed32", "sphere_jets"])
def test_h_fully_symmetric(name, request):
    h = fundamental_data(request.getfixturevalue(name)).h[..., :2, :, :]  # h[k, i, j]
    for perm in [(0, 2, 1), (1, 0, 2), (2, 1, 0)]:
        axes = tuple(h.ndim - 3 + p for p in perm)
        full = tuple(range(h.ndim - 3)) + axes
        np.testing.assert_allclose(h, np.transpose(h, full), atol=1e-8)


@pytest.mark.parametrize("name", ["flat32", "perturbed32", "sphere_jets"])
def test_reeb_orthogonality(name, request):
    h3 = fundamental_data(request.getfixturevalue(name)).h[..., 2, :, :]
    assert np.abs(h3).max() <= 1e-8


def test_reeb_orthogonality_fails_off_legendrian(product32):
    assert np.abs(fundamental_data(product32).h[..., 2, :, :]).max() > 1e-2


@pytest.mark.parametrize("name", ["flat32", "perturbed32", "sphere_jets"])
def test_frame_orthonormal(name, request):
    assert frame_orthonormality(request.getfixturevalue(name)) <= 1e-10


@pytest.mark.parametrize("name", ["flat32", "perturbed32", "sphere_jets"])
def test_gauss_relation(name, request):
    assert np.abs(gauss_residual(request.getfixturevalue(name))).max() <= 1e-6


def test_parametrization_invariance(perturbed32):
    a, b = 5, 3
    base, moved = perturbed32.geometry, perturbed32.shifted(a, b).geometry
    for attr in ("S", "H2", "K"):
        shifted = np.roll(getattr(base, attr), (-a, -b), axis=(0, 1))
        np.testing.assert_allclose(getattr(moved, attr), shifted, atol=1e-8, err_msg=attr)


def test_degenerate_metric_raises():
    U, V = periodic_mesh(16)
    p = np.stack([np.cos(U), np.sin(U), 0 * U, 0 * U, 0 * U, 0 * U], axis=-1)  # independent of v
    with pytest.raises(DegenerateMetric):
        fundamental_data(ImmersionGrid(p))


# ---- intrinsic operators ---------------------------------------------------------


def test_laplacian_integrates_to_zero(flat32):
    U, V = flat32.mesh()
    lap = intrinsic_ops(flat32).laplacian(np.cos(U) * np.sin(V))
    assert abs(flat32.integrate(lap)) <= 1e-10


def test_divergence_integrates_to_zero(perturbed32):
    geom = perturbed32.geometry
    a = band_limited_function(perturbed32, seed=4)
    b = band_limited_function(perturbed32, seed=5)
    X = np.moveaxis(a * geom.Fa[0] + b * geom.Fa[1], 0, -1)
    assert abs(perturbed32.integrate(intrinsic_ops(perturbed32).divergence(X))) <= 1e-10


def test_laplacian_of_constant(perturbed32):
    lap = intrinsic_ops(perturbed32).laplacian(np.full(perturbed32.shape, 2.5))
    assert np.abs(lap).max() <= 1e-13


def test_laplacian_eigenfunction_on_flat_torus(flat32):
    # g^{-1} = [[2, -1], [-1, 2]], so cos(u) has eigenvalue -2
    U, _ = flat32.mesh()
    np.testing.assert_allclose(intrinsic_ops(flat32).laplacian(np.cos(U)), -2 * np.cos(U), atol=1e-12)


def test_gradient_is_tangent(perturbed32):
    s = band_limited_function(perturbed32, seed=2)
    grad = intrinsic_ops(perturbed32).gradient(s)
    np.testing.assert_allclose(np.sum(grad * perturbed32.values, axis=-1), 0.0, atol=1e-12)
    R = perturbed32.geometry.value(perturbed32.geometry.reeb)
    np.testing.assert_allclose(np.einsum("c...,...c->...", R, grad), 0.0, atol=1e-10)


def test_codifferential_is_minus_divergence(perturbed32):
    geom = perturbed32.geometry
    a = band_limited_function(perturbed32, seed=8)
    b = band_limited_function(perturbed32, seed=9)
    X = a * geom.Fa[0] + b * geom.Fa[1]
    w = geom.one_form(X)
    ops = intrinsic_ops(perturbed32)
    np.testing.assert_allclose(ops.codifferential(*w), -ops.divergence(np.moveaxis(X, 0, -1)), atol=1e-9)


def test_exterior_derivative_of_gradient_vanishes(perturbed32):
    geom = perturbed32.geometry
    s = band_limited_function(perturbed32, seed=3)
    w = [geom.d(s, 1, 0), geom.d(s, 0, 1)]
    assert np.abs(intrinsic_ops(perturbed32).exterior_derivative(*w)).max() <= 1e-10


# ---- covariant derivative of A ------------------------------------------------------


def test_flat_torus_parallel_second_fundamental_form(flat32):
    hd = h_derivatives(flat32)
    assert np.abs(hd.grad_T_h_sq).max() <= 1e-6


def test_flat_torus_splitting(flat32):
    hd = h_derivatives(flat32)
    assert np.abs(hd.grad_h_sq - fundamental_data(flat32).sqlen).max() <= 1e-6


@pytest.mark.parametrize("name", ["flat32", "perturbed32", "sphere_jets"])
def test_splitting_identity(name, request):
    surface = request.getfixturevalue(name)
    hd = h_derivatives(surface)
    assert np.abs(hd.splitting_residual - fundamental_data(surface).sqlen).max() <= 1e-5


@pytest.mark.parametrize("name", ["flat32", "perturbed32", "sphere_jets"])
def test_codazzi(name, request):
    assert h_derivatives(request.getfixturevalue(name)).codazzi_residual <= 1e-6


@pytest.mark.parametrize("name", ["flat32", "perturbed32"])
def test_reeb_transfer(name, request):
    surface = request.getfixturevalue(name)
    residual = h_derivatives(surface).reeb_transfer_residual(fundamental_data(surface).h, sign=1.0)
    assert residual <= 1e-6


@pytest.mark.parametrize("name", ["flat32", "perturbed32", "sphere_jets"])
def test_reeb_transfer_oriented(name, request):
    surface = request.getfixturevalue(name)
    residual = h_derivatives(surface).reeb_transfer_residual(fundamental_data(surface).h, sign=-1.0)
    assert residual <= 1e-6
