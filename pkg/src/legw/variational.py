"""Mean curvature, the Willmore operator, csL residuals and contact variations.

Every function accepts an :class:`~legw.surface.ImmersionGrid` or a
:class:`~legw.surface.PointJet`; outputs are points-first numpy arrays.

Sign conventions follow :mod:`legw.sasakian` (``R = J0 p``).  In this
orientation the Reeb component of the normal Laplacian satisfies
``<Delta^nu H, R> = 2 div JH``, and the first variation of ``W`` along the
contact field ``V(s) = s R + 1/2 J grad s`` is

    dW = int <W, V> dmu = 1/2 int s div(J W + 4 J H) dmu,

which is why :data:`~legw.geometry.JH_COEFFICIENT` is ``+4``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import JH_COEFFICIENT, as_points_first, dot
from .sasakian import j0
from .surface import ImmersionGrid

# pairing constant of the Reeb-component L2 metric <V1, V2> = 1/4 int s1 s2
METRIC_PAIRING = 0.25
# constant in front of int <W, V> in the stated first-variation formula
FIRST_VARIATION_FACTOR = 0.5


def _points(surface, arr, ncomp=0):
    return as_points_first(surface.geometry.value(arr), ncomp)


@dataclass
class NormalField:
    """A field in ``span(Je1, Je2, R)`` with its adapted-frame components."""

    vectors: np.ndarray  # (*pts, 6)
    components: np.ndarray  # (*pts, 3)
    leakage: float  # max norm of the tangential part
    route_discrepancy: float | None = None

    @property
    def reeb_component(self):
        return self.components[..., 2]

    @property
    def norm(self):
        return np.linalg.norm(self.vectors, axis=-1)


def _normal_field(surface, w, route_discrepancy=None):
    geom = surface.geometry
    comps = [dot(w, nu) for nu in geom.normals]
    tang = [dot(w, e) for e in geom.frame]
    leak = np.sqrt(geom.value(tang[0]) ** 2 + geom.value(tang[1]) ** 2)
    return NormalField(
        vectors=_points(surface, w, 1),
        components=np.stack([geom.value(c) for c in comps], axis=-1),
        leakage=float(np.max(leak)),
        route_discrepancy=route_discrepancy,
    )


def mean_curvature(surface):
    """``H = 1/2 tr A``."""
    return _normal_field(surface, surface.geometry.H)


def normal_laplacian_H(surface):
    """``Delta^nu H`` via the projected sphere connection."""
    return _normal_field(surface, surface.geometry.normal_laplacian_H)


def willmore_operator(surface):
    """``W = Delta^nu H + sum_ij A_ij <A_ij, H> - 2|H|^2 H``.

    The trace-free assembly ``Delta^nu H + Q(A°) H`` is computed as well and
    the pointwise sup of the difference is stored in ``route_discrepancy``.
    """
    geom = surface.geometry
    W = geom.willmore_vector
    diff = geom.value(W - geom.willmore_vector_tracefree)
    disc = float(np.max(np.sqrt(np.sum(diff * diff, axis=0))))
    return _normal_field(surface, W, route_discrepancy=disc)


def csl_residual(surface):
    """``div_g (J H)``; zero exactly on contact stationary Legendrian surfaces."""
    return _points(surface, surface.geometry.csl)


def cslw_residual(surface, jh_coefficient=JH_COEFFICIENT):
    """``s_f = div_g (J W + c J H)`` with ``c = jh_coefficient``."""
    geom = surface.geometry
    if jh_coefficient == JH_COEFFICIENT:
        return _points(surface, geom.cslw)
    return _points(surface, geom.cslw_with(jh_coefficient))


def key_identity_residual(surface, sign=1.0):
    """Pointwise ``<Delta^nu H, R> + sign * 2 div JH``.

    ``sign=+1`` is the form belonging to the ``R = -J0 p`` orientation;
    ``sign=-1`` is the one that vanishes for ``R = J0 p``.
    """
    geom = surface.geometry
    val = dot(geom.normal_laplacian_H, geom.reeb) + sign * 2.0 * geom.csl
    return _points(surface, val)


def reeb_component_residual(surface, sign=1.0):
    """Pointwise ``<W, R> + sign * 2 div JH``."""
    geom = surface.geometry
    val = dot(geom.willmore_vector, geom.reeb) + sign * 2.0 * geom.csl
    return _points(surface, val)


# --------------------------------------------------------------------------
# contact variations
# --------------------------------------------------------------------------


@dataclass
class ContactVariation:
    """Generating function ``s`` and its field ``V = s R + 1/2 J grad s``."""

    s: np.ndarray
    V: np.ndarray  # (*pts, 6)
    points: np.ndarray  # (*pts, 6)

    @property
    def reeb_residual(self):
        """``max |alpha(V) - s|``."""
        alpha = np.sum(self.V * j0(self.points), axis=-1)
        return float(np.max(np.abs(alpha - self.s)))

    @property
    def tangency(self):
        """``max |<V, p>|``."""
        return float(np.max(np.abs(np.sum(self.V * self.points, axis=-1))))

    def scaled(self, c):
        return ContactVariation(c * self.s, c * self.V, self.points)


def contact_variation(surface, s):
    """The contact field generated by ``s`` on the surface."""
    geom = surface.geometry
    if isinstance(surface, ImmersionGrid):
        s = np.asarray(s, dtype=float)
        if s.ndim == 0:
            s = np.full(surface.shape, float(s))
    V = geom.contact_field(s)
    return ContactVariation(
        s=np.asarray(geom.value(s), dtype=float),
        V=_points(surface, V, 1),
        points=_points(surface, geom.F, 1),
    )


def deform(grid, V, tau):
    """``F + tau V`` reprojected onto the sphere."""
    x = grid.values + tau * np.asarray(V)
    x = x / np.linalg.norm(x, axis=-1, keepdims=True)
    return ImmersionGrid(x)


def band_limited_function(grid, seed=0, max_mode=3):
    """Random real trigonometric polynomial with ``|k_u|, |k_v| <= max_mode``."""
    rng = np.random.default_rng(seed)
    U, V = grid.mesh()
    out = np.zeros_like(U)
    for a in range(-max_mode, max_mode + 1):
        for b in range(0, max_mode + 1):
            c, d = rng.normal(size=2) / (1.0 + a * a + b * b)
            out += c * np.cos(a * U + b * V) + d * np.sin(a * U + b * V)
    return out


# --------------------------------------------------------------------------
# finite-difference oracles
# --------------------------------------------------------------------------


def _central(fn, grid, V, tau):
    return (fn(deform(grid, V, tau)) - fn(deform(grid, V, -tau))) / (2.0 * tau)


def _observed_order(taus, fd):
    """Order ``p`` from successive differences of central quotients."""
    taus = np.asarray(taus, dtype=float)
    fd = np.asarray(fd, dtype=float)
    if len(taus) < 3:
        return float("nan")
    e1 = abs(fd[0] - fd[1])
    e2 = abs(fd[1] - fd[2])
    if e1 == 0 or e2 == 0:
        return float("inf")
    return float(np.log(e1 / e2) / np.log(taus[0] / taus[1]))


@dataclass
class VariationReport:
    """Finite-difference derivative against an analytic first-variation value."""

    taus: list
    fd: list
    analytic: float
    observed_order: float
    extras: dict = field(default_factory=dict)

    @property
    def fd_final(self):
        return self.fd[-1]

    @property
    def ratio(self):
        """``fd / analytic`` at the smallest ``tau``."""
        return self.fd[-1] / self.analytic if self.analytic != 0 else float("nan")

    @property
    def relative_error(self):
        scale = abs(self.analytic)
        if scale == 0:
            return abs(self.fd[-1])
        return abs(self.fd[-1] - self.analytic) / scale

    def as_dict(self):
        return {
            "taus": list(self.taus),
            "fd": list(self.fd),
            "analytic": self.analytic,
            "ratio": self.ratio,
            "relative_error": self.relative_error,
            "observed_order": self.observed_order,
            **self.extras,
        }


def first_variation_check(grid, variation, taus=(4e-3, 2e-3, 1e-3, 1e-4)):
    """Central differences of ``W`` along ``variation`` vs ``1/2 int <W, V>``."""
    from .invariants import willmore_energy

    taus = list(taus)
    fd = [_central(willmore_energy, grid, variation.V, t) for t in taus]
    W = willmore_operator(grid).vectors
    pairing = grid.integrate(np.sum(W * variation.V, axis=-1))
    return VariationReport(
        taus=taus,
        fd=fd,
        analytic=FIRST_VARIATION_FACTOR * pairing,
        observed_order=_observed_order(taus, fd),
        extras={"int_W_dot_V": pairing},
    )


def gradient_check(grid, s, tau=1e-4, jh_coefficient=JH_COEFFICIENT):
    """Central difference of ``W`` along ``V(s)`` vs ``1/4 int s_f s``."""
    from .invariants import willmore_energy

    cv = contact_variation(grid, s)
    fd = _central(willmore_energy, grid, cv.V, tau)
    sf = cslw_residual(grid, jh_coefficient)
    return VariationReport(
        taus=[tau],
        fd=[fd],
        analytic=METRIC_PAIRING * grid.integrate(sf * cv.s),
        observed_order=float("nan"),
    )


def area_variation_check(grid, s, taus=(4e-3, 2e-3, 1e-3, 1e-4)):
    """Central differences of the area along ``V(s)`` vs ``-2 int <H, V>``.

    ``extras['int_s_csl']`` holds ``int s div JH`` for the csl oracle; the two
    agree up to sign with the constant 1.
    """
    cv = contact_variation(grid, s)
    taus = list(taus)
    fd = [_central(lambda g: g.area(), grid, cv.V, t) for t in taus]
    H = mean_curvature(grid).vectors
    return VariationReport(
        taus=taus,
        fd=fd,
        analytic=-2.0 * grid.integrate(np.sum(H * cv.V, axis=-1)),
        observed_order=_observed_order(taus, fd),
        extras={"int_s_csl": grid.integrate(cv.s * csl_residual(grid))},
    )


def metric_pairing(grid, s1, s2):
    """``<V(s1), V(s2)> = 1/4 int s1 s2 dmu``."""
    return METRIC_PAIRING * grid.integrate(np.asarray(s1) * np.asarray(s2))
