from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from legw.calculus import Jet, JetCalculus, MAX_ORDER
from legw.errors import OrderTooHigh
from legw.exemplars import flat_minimal_torus
from legw.surface import point_jet
from legw.variational import cslw_residual, key_identity_residual


def exp_cos_jet(u, v, degree=MAX_ORDER):
    """Jet of f = exp(u) cos(v): d^a_u d^b_v f = exp(u) cos(v + b pi/2)."""
    parts = {
        (a, n - a): np.exp(u) * np.cos(v + (n - a) * np.pi / 2)
        for n in range(degree + 1)
        for a in range(n + 1)
    }
    return Jet.from_partials(parts, degree)


def partial(jet, a, b):
    """Recover d^a_u d^b_v from Taylor coefficients."""
    from math import factorial

    return jet.data[jet.alg.index[(a, b)]] * factorial(a) * factorial(b)


U0 = np.array([0.1, -0.7, 1.3])
V0 = np.array([0.4, 2.0, -1.1])


def test_from_partials_round_trip():
    f = exp_cos_jet(U0, V0)
    np.testing.assert_allclose(partial(f, 2, 3), np.exp(U0) * np.cos(V0 + 1.5 * np.pi), atol=1e-14)


def test_product_rule():
    f = exp_cos_jet(U0, V0)
    g = f * f  # exp(2u) cos(v)^2 = exp(2u) (1 + cos 2v) / 2
    for a, b in [(0, 0), (1, 0), (2, 1), (3, 3), (0, 6)]:
        expected = 2.0**a * np.exp(2 * U0) * (0.5 * (b == 0) + 0.5 * 2.0**b * np.cos(2 * V0 + b * np.pi / 2))
        np.testing.assert_allclose(partial(g, a, b), expected, rtol=1e-12)


def test_reciprocal_and_sqrt():
    f = exp_cos_jet(U0, np.zeros(3))  # positive near v = 0
    one = f * f.reciprocal()
    np.testing.assert_allclose(one.data[0], 1.0, atol=1e-15)
    np.testing.assert_allclose(one.data[1:], 0.0, atol=1e-12)
    root = f.sqrt()
    back = root * root
    np.testing.assert_allclose(back.data, f.data, rtol=1e-12, atol=1e-13)


def test_diff_matches_shifted_partials():
    f = exp_cos_jet(U0, V0)
    d = f.diff(1, 2)
    np.testing.assert_allclose(partial(d, 0, 0), np.exp(U0) * np.cos(V0 + np.pi), atol=1e-14)
    np.testing.assert_allclose(partial(d, 1, 1), np.exp(U0) * np.cos(V0 + 1.5 * np.pi), atol=1e-14)


def test_jet_order_limit():
    with pytest.raises(OrderTooHigh):
        JetCalculus().d(exp_cos_jet(U0, V0), 5, 2)


def test_broadcast_against_component_axis():
    f = exp_cos_jet(U0, V0)
    vec = Jet(np.stack([f.data, 2 * f.data], axis=1), f.alg)  # shape (2, 3)
    out = vec * f
    assert out.shape == (2, 3)
    np.testing.assert_allclose(out.data[:, 1], 2 * (f * f).data, rtol=1e-14)


coeff = st.floats(-3, 3, allow_nan=False)


@settings(max_examples=25, deadline=None)
@given(st.lists(coeff, min_size=28, max_size=28), st.lists(coeff, min_size=28, max_size=28))
def test_product_commutes(a, b):
    from legw.calculus import jet_algebra

    alg = jet_algebra(MAX_ORDER)
    x, y = Jet(np.array(a)[:, None], alg), Jet(np.array(b)[:, None], alg)
    np.testing.assert_allclose((x * y).data, (y * x).data, atol=1e-12)


def test_binomial_truncation():
    # (1 + u)^3 truncated at degree 2
    from legw.calculus import jet_algebra

    alg = jet_algebra(2)
    data = np.zeros((alg.size,))
    data[alg.index[(0, 0)]] = 1.0
    data[alg.index[(1, 0)]] = 1.0
    cube = Jet(data, alg) ** 3
    assert cube.data[alg.index[(2, 0)]] == comb(3, 2)
    assert cube.data[alg.index[(1, 0)]] == 3


def test_jets_agree_with_grid(flat32, perturbed32):
    torus = flat_minimal_torus()
    U, V = flat32.mesh()
    idx = (np.array([0, 5, 17]), np.array([3, 9, 30]))
    jets = point_jet(torus, U[idx], V[idx])
    gj, gg = jets.geometry, flat32.geometry
    for attr in ("S", "K", "H2", "det_h_sum"):
        np.testing.assert_allclose(gj.value(getattr(gj, attr)), getattr(gg, attr)[idx], atol=1e-10, err_msg=attr)
    np.testing.assert_allclose(cslw_residual(jets), cslw_residual(flat32)[idx], atol=1e-8)
    np.testing.assert_allclose(
        key_identity_residual(jets, -1.0), key_identity_residual(flat32, -1.0)[idx], atol=1e-9
    )
