import numpy as np
import pytest

from legw.exemplars import (
    equatorial_sphere,
    flat_minimal_torus,
    perturbed_torus,
    product_torus,
    sample_chart_points,
)
from legw.surface import point_jet, sample_to_grid


@pytest.fixture(scope="session")
def flat32():
    return sample_to_grid(flat_minimal_torus(), 32, 32)


@pytest.fixture(scope="session")
def perturbed32():
    return perturbed_torus(32, eps=0.01)


@pytest.fixture(scope="session")
def product32():
    return sample_to_grid(product_torus(), 32, 32)


@pytest.fixture(scope="session")
def sphere_jets():
    sphere = equatorial_sphere()
    u, v = sample_chart_points(sphere, 200, seed=0)
    return point_jet(sphere, u, v)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
