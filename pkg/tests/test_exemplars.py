import numpy as np
import pytest

from legw.errors import DriftExceeded, EvaluationOutsideChart
from legw.exemplars import (
    FLAT_TORUS_W,
    SURFACES,
    contact_perturb,
    equatorial_sphere,
    flat_minimal_torus,
    negative_controls,
    perturbed_torus,
    sample_chart_points,
)
from legw.invariants import willmore_energy
from legw.surface import ImmersionGrid, fundamental_data, legendre_residual, point_jet, sample_to_grid


def complex_coords(values):
    return values[..., :3] + 1j * values[..., 3:]


def test_flat_torus_defining_conditions():
    torus = flat_minimal_torus()
    u, v = np.meshgrid(np.linspace(0, 2 * np.pi, 9), np.linspace(0, 2 * np.pi, 9))
    z = complex_coords(torus.position(u, v))
    np.testing.assert_allclose(np.abs(z) ** 2, 1 / 3, atol=1e-15)
    np.testing.assert_allclose(np.imag(np.prod(z, axis=-1)), 0.0, atol=1e-15)
    np.testing.assert_allclose(np.real(np.prod(z, axis=-1)), 3**-1.5, atol=1e-15)


def test_flat_torus_periodic():
    torus = flat_minimal_torus()
    np.testing.assert_allclose(torus.position(0.3, 1.1), torus.position(0.3 + 2 * np.pi, 1.1 - 4 * np.pi), atol=1e-14)


def test_flat_torus_metric_and_curvature(flat32):
    fd = fundamental_data(flat32)
    expected = np.array(flat_minimal_torus().known["g"][0])
    np.testing.assert_allclose(fd.g, np.broadcast_to(expected, fd.g.shape), atol=1e-12)
    np.testing.assert_allclose(fd.gauss, 0.0, atol=1e-10)


def test_flat_torus_known_values(flat32):
    fd = fundamental_data(flat32)
    np.testing.assert_allclose(fd.sqlen, 2.0, atol=1e-8)
    np.testing.assert_allclose(np.sqrt(fd.H2), 0.0, atol=1e-8)
    np.testing.assert_allclose(fd.det_h_sum, -1.0, atol=1e-6)
    assert willmore_energy(flat32) == pytest.approx(FLAT_TORUS_W, rel=1e-6)


def test_sphere_chart_parametrization():
    sphere = equatorial_sphere()
    p = sphere.position(np.array([0.5, 1.5]), np.array([0.0, 2.0]))
    np.testing.assert_allclose(p[0], [np.sin(0.5), 0, np.cos(0.5), 0, 0, 0], atol=1e-15)
    np.testing.assert_allclose(p[..., 3:], 0.0)


def test_sphere_legendre_pointwise(sphere_jets):
    assert legendre_residual(sphere_jets) <= 1e-14


def test_sphere_totally_geodesic_50_points():
    sphere = equatorial_sphere()
    jets = point_jet(sphere, *sample_chart_points(sphere, 50, seed=9))
    fd = fundamental_data(jets)
    assert np.abs(fd.sqlen).max() <= 1e-10
    np.testing.assert_allclose(fd.gauss, 1.0, atol=1e-8)


def test_sphere_outside_chart():
    with pytest.raises(EvaluationOutsideChart):
        equatorial_sphere().position(np.array([0.1]), np.array([0.0]))


def test_contact_perturb_zero_eps_is_identity(flat32):
    out = contact_perturb(flat32, eps=0.0)
    np.testing.assert_array_equal(out.values, flat32.values)


def test_contact_perturb_legendre(perturbed32):
    assert legendre_residual(perturbed32) <= 1e-7


def test_contact_perturb_legendre_larger_eps(flat32):
    assert legendre_residual(contact_perturb(flat32, eps=0.05)) <= 1e-6


def test_contact_perturb_first_order_convergence(flat32):
    eps = np.array([0.02, 0.01, 0.005])
    dist = [np.abs(contact_perturb(flat32, eps=e).values - flat32.values).max() for e in eps]
    orders = np.log(np.array(dist[:-1]) / dist[1:]) / np.log(2)
    np.testing.assert_allclose(orders, 1.0, atol=0.05)


def test_contact_perturb_energy_difference_informational(flat32):
    diffs = [willmore_energy(contact_perturb(flat32, eps=e)) - FLAT_TORUS_W for e in (0.02, 0.01)]
    order = np.log(abs(diffs[0]) / abs(diffs[1])) / np.log(2)
    assert abs(diffs[1]) < abs(diffs[0])
    assert order >= 1.0


def test_contact_perturb_drift_guard():
    U, V = np.meshgrid(2 * np.pi * np.arange(16) / 16, 2 * np.pi * np.arange(16) / 16, indexing="ij")
    z = np.stack([np.cos(U) + 1j * np.cos(V), np.sin(U) + 1j * np.sin(V), 0 * U], axis=-1) / np.sqrt(2)
    base = ImmersionGrid(np.concatenate([z.real, z.imag], axis=-1))
    with pytest.raises(DriftExceeded):
        contact_perturb(base, eps=0.01)


def test_negative_controls():
    product, rotated = negative_controls()
    assert legendre_residual(sample_to_grid(product, 32, 32)) >= 0.1
    jets = point_jet(rotated, *sample_chart_points(rotated, 50, seed=2))
    assert legendre_residual(jets) <= 1e-10
    assert np.abs(fundamental_data(jets).sqlen).max() <= 1e-10


def test_product_torus_violates_reeb_orthogonality(product32):
    assert np.abs(fundamental_data(product32).h[..., 2, :, :]).max() > 1e-8


def test_registry_reports_known_values_with_provenance():
    for spec in SURFACES.values():
        for key, (value, tag) in spec.known.items():
            assert tag in {"CLASSICAL", "DERIVED", "TRIVIAL"}, (spec.name, key)
    assert set(SURFACES) >= {"flat_minimal_torus", "equatorial_sphere", "perturbed_torus", "negative_control_1"}


def test_registry_builds(perturbed32):
    grid = SURFACES["perturbed_torus"].build(32, 32)
    np.testing.assert_array_equal(grid.values, perturbed32.values)
    assert SURFACES["equatorial_sphere"].build().is_chart


def test_perturbed_torus_deterministic():
    np.testing.assert_array_equal(perturbed_torus(16).values, perturbed_torus(16).values)
