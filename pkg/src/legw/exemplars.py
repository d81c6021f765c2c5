"""Closed-form exemplar surfaces and generators of generic Legendrian data."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .calculus import MAX_ORDER
from .errors import EvaluationOutsideChart

SQRT3 = np.sqrt(3.0)
FLAT_TORUS_W = 4 * np.pi**2 / SQRT3


def _to_real(z):
    """Complex ``(..., 3)`` -> real ``(..., 6)`` as ``(x1, x2, x3, y1, y2, y3)``."""
    return np.concatenate([z.real, z.imag], axis=-1)


def _trig(fn, x, order):
    # d^n/dx^n of sin/cos is a phase shift by n*pi/2
    return fn(x + order * np.pi / 2)


@dataclass
class AnalyticImmersion:
    """An immersion with closed-form partial derivatives up to order 6.

    ``partials(u, v, max_order)`` returns ``{(a, b): array(..., 6)}`` for all
    ``a + b <= max_order``.
    """

    name: str
    evaluator: Callable
    periodic: tuple = (True, True)
    domain: tuple = ((0.0, 2 * np.pi), (0.0, 2 * np.pi))
    topology: str = "torus"
    legendrian: bool = True
    known: dict = field(default_factory=dict)

    @property
    def is_chart(self):
        return not all(self.periodic)

    def check_domain(self, u, v):
        for coord, (lo, hi), per, label in zip((u, v), self.domain, self.periodic, "uv"):
            if per:
                continue
            c = np.asarray(coord)
            if np.any(c < lo) or np.any(c > hi):
                raise EvaluationOutsideChart(
                    f"{self.name}: {label} outside [{lo:.4g}, {hi:.4g}]"
                )

    def partials(self, u, v, max_order=MAX_ORDER):
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        self.check_domain(u, v)
        return self.evaluator(u, v, max_order)

    def position(self, u, v):
        return self.partials(u, v, 0)[(0, 0)]


def _orders(max_order):
    return [(a, n - a) for n in range(max_order + 1) for a in range(n + 1)]


# --------------------------------------------------------------------------
# flat minimal (hexagonal) torus
# --------------------------------------------------------------------------


def _flat_torus_eval(u, v, max_order):
    out = {}
    eu = np.exp(1j * u)[..., None]
    ev = np.exp(1j * v)[..., None]
    ew = np.exp(-1j * (u + v))[..., None]
    zero = np.zeros_like(eu)
    for a, b in _orders(max_order):
        z1 = (1j) ** a * eu if b == 0 else zero
        z2 = (1j) ** b * ev if a == 0 else zero
        z3 = (-1j) ** (a + b) * ew
        out[(a, b)] = _to_real(np.concatenate([z1, z2, z3], axis=-1) / SQRT3)
    return out


def flat_minimal_torus():
    """``F(u, v) = 3^{-1/2} (e^{iu}, e^{iv}, e^{-i(u+v)})``."""
    return AnalyticImmersion(
        name="flat_minimal_torus",
        evaluator=_flat_torus_eval,
        known={
            "S": (2.0, "CLASSICAL"),
            "H": (0.0, "CLASSICAL"),
            "K": (0.0, "DERIVED"),
            "W": (float(FLAT_TORUS_W), "DERIVED"),
            "det_h1_plus_det_h2": (-1.0, "CLASSICAL"),
            "g": ([[2 / 3, 1 / 3], [1 / 3, 2 / 3]], "DERIVED"),
        },
    )


# --------------------------------------------------------------------------
# equatorial sphere chart (poles excluded)
# --------------------------------------------------------------------------

THETA_MARGIN = 0.2


def _sphere_eval_factory(unitary=None):
    def evaluate(theta, phi, max_order):
        out = {}
        zero = np.zeros_like(theta)
        for a, b in _orders(max_order):
            x1 = _trig(np.sin, theta, a) * _trig(np.cos, phi, b)
            x2 = _trig(np.sin, theta, a) * _trig(np.sin, phi, b)
            x3 = _trig(np.cos, theta, a) if b == 0 else zero
            z = np.stack([x1, x2, x3], axis=-1).astype(complex)
            if unitary is not None:
                z = z @ unitary.T
            out[(a, b)] = _to_real(z)
        return out

    return evaluate


def equatorial_sphere(unitary=None, name="equatorial_sphere"):
    """Real great 2-sphere ``(sin t cos f, sin t sin f, cos t, 0, 0, 0)``.

    Chart over ``t in [0.2, pi - 0.2]``, ``f`` periodic.  An optional complex
    3x3 ``unitary`` is applied to ``z``; unitaries preserve the contact
    structure, so the image stays Legendrian.
    """
    return AnalyticImmersion(
        name=name,
        evaluator=_sphere_eval_factory(unitary),
        periodic=(False, True),
        domain=((THETA_MARGIN, np.pi - THETA_MARGIN), (0.0, 2 * np.pi)),
        topology="sphere",
        known={"S": (0.0, "TRIVIAL"), "H": (0.0, "TRIVIAL"), "K": (1.0, "TRIVIAL"), "W": (0.0, "TRIVIAL")},
    )


def random_unitary(seed=0):
    """Haar-ish random U(3) element via QR of a complex Gaussian matrix."""
    rng = np.random.default_rng(seed)
    m = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    q, r = np.linalg.qr(m)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def sample_chart_points(immersion, n, seed=0):
    """Uniform random points inside the admissible chart domain."""
    rng = np.random.default_rng(seed)
    (u0, u1), (v0, v1) = immersion.domain
    return rng.uniform(u0, u1, n), rng.uniform(v0, v1, n)


# --------------------------------------------------------------------------
# negative controls
# --------------------------------------------------------------------------


def _product_torus_eval(u, v, max_order):
    # z1 = (cos u + i cos v)/sqrt2, z2 = (sin u + i sin v)/sqrt2, z3 = 0
    out = {}
    for a, b in _orders(max_order):
        cu = _trig(np.cos, u, a) if b == 0 else np.zeros_like(u)
        su = _trig(np.sin, u, a) if b == 0 else np.zeros_like(u)
        cv = _trig(np.cos, v, b) if a == 0 else np.zeros_like(v)
        sv = _trig(np.sin, v, b) if a == 0 else np.zeros_like(v)
        zero = np.zeros_like(u + v)
        comps = [cu + zero, su + zero, zero, cv + zero, sv + zero, zero]
        out[(a, b)] = np.stack(comps, axis=-1) / np.sqrt(2.0)
    return out


def product_torus():
    """Clifford torus in the ``C^2`` factor; not Legendrian."""
    return AnalyticImmersion(
        name="negative_control_1",
        evaluator=_product_torus_eval,
        legendrian=False,
        known={"legendre_residual_min": (0.1, "DERIVED")},
    )


def negative_controls():
    """Surfaces that must visibly fail (or deliberately pass) Legendre checks."""
    return [
        product_torus(),
        equatorial_sphere(unitary=random_unitary(7), name="rotated_equatorial_sphere"),
    ]


def contact_perturb(base, s=None, eps=0.01, n_substeps=20, drift_limit=1e-5):
    """Deform a Legendrian grid along the contact field ``V(s)`` for ``tau in [0, eps]``.

    ``s`` is a function ``(U, V) -> array`` on the parameter domain held fixed
    while the surface moves (default ``cos u cos v``).  RK4 in ``n_substeps``
    with renormalisation to the sphere after every substep.
    """
    from .errors import DriftExceeded
    from .surface import ImmersionGrid, legendre_residual
    from .variational import contact_variation

    if s is None:
        s = lambda U, V: np.cos(U) * np.cos(V)  # noqa: E731
    if eps == 0:
        return base
    U, V = base.mesh()
    sval = np.asarray(s(U, V), dtype=float)
    h = eps / n_substeps

    def rate(values):
        grid = ImmersionGrid(values, check=False)
        return contact_variation(grid, sval).V

    x = base.values
    for _ in range(n_substeps):
        k1 = rate(x)
        k2 = rate(_renorm(x + 0.5 * h * k1))
        k3 = rate(_renorm(x + 0.5 * h * k2))
        k4 = rate(_renorm(x + h * k3))
        x = _renorm(x + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4))
    out = ImmersionGrid(x)
    res = legendre_residual(out)
    if res > drift_limit:
        raise DriftExceeded(f"contact_perturb: legendre residual {res:.3e} > {drift_limit:.1e}")
    return out


def _renorm(x):
    return x / np.linalg.norm(x, axis=-1, keepdims=True)


def perturbed_torus(n=32, eps=0.01, n_substeps=20):
    """``contact_perturb(flat torus grid, cos u cos v, eps)``."""
    from .surface import sample_to_grid

    return contact_perturb(sample_to_grid(flat_minimal_torus(), n, n), eps=eps, n_substeps=n_substeps)


@dataclass
class ExemplarSpec:
    """Registry entry: an analytic immersion or a grid generator."""

    name: str
    topology: str
    kind: str  # "analytic" or "generator"
    factory: Callable
    parameters: dict = field(default_factory=dict)
    known: dict = field(default_factory=dict)

    def build(self, nu=32, nv=32):
        """An :class:`ImmersionGrid` for periodic surfaces, else the chart itself."""
        from .surface import sample_to_grid

        if self.kind == "generator":
            return self.factory(nu, nv)
        immersion = self.factory()
        if immersion.is_chart:
            return immersion
        return sample_to_grid(immersion, nu, nv)


def _perturbed_generator(nu, nv, eps=0.01):
    from .surface import sample_to_grid

    return contact_perturb(sample_to_grid(flat_minimal_torus(), nu, nv), eps=eps)


def _analytic(factory):
    imm = factory()
    return ExemplarSpec(imm.name, imm.topology, "analytic", factory, known=dict(imm.known))


def exemplar_specs():
    return [
        _analytic(flat_minimal_torus),
        _analytic(equatorial_sphere),
        ExemplarSpec(
            "perturbed_torus",
            "torus",
            "generator",
            _perturbed_generator,
            parameters={"eps": 0.01, "s": "cos u cos v", "n_substeps": 20},
        ),
        _analytic(product_torus),
        _analytic(lambda: negative_controls()[1]),
    ]


SURFACES = {spec.name: spec for spec in exemplar_specs()}
