"""Parametrized Legendrian surfaces: periodic grids, chart jets, and their geometry."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .calculus import GridCalculus, Jet, JetCalculus, MAX_ORDER, spectral_derivative
from .errors import NotPeriodic
from .geometry import Geometry, as_points_first, dot, tensor

UNIT_TOL = 1e-10


class ImmersionGrid:
    """Samples ``F(u_i, v_j)`` on the uniform ``nu x nv`` grid of ``[0, 2pi)^2``.

    ``values`` has shape ``(nu, nv, 6)``.  The grid is treated as immutable;
    spectral derivatives of ``F`` and the :class:`Geometry` are cached.
    """

    def __init__(self, values, check=True):
        values = np.array(values, dtype=float)
        if values.ndim != 3 or values.shape[-1] != 6:
            raise ValueError(f"expected (nu, nv, 6) values, got {values.shape}")
        nu, nv = values.shape[:2]
        if check:
            if nu < 16 or nv < 16 or nu % 2 or nv % 2:
                raise ValueError(f"grid sizes must be even and >= 16, got {nu}x{nv}")
            err = np.abs(np.linalg.norm(values, axis=-1) - 1.0).max()
            if err > UNIT_TOL:
                raise ValueError(f"grid values are not unit vectors (max deviation {err:.2e})")
            if not np.all(np.isfinite(values)):
                raise ValueError("grid values must be finite")
        values.setflags(write=False)
        self.values = values
        self._cache = {}

    @property
    def nu(self):
        return self.values.shape[0]

    @property
    def nv(self):
        return self.values.shape[1]

    @property
    def shape(self):
        return (self.nu, self.nv)

    def mesh(self):
        u = 2 * np.pi * np.arange(self.nu) / self.nu
        v = 2 * np.pi * np.arange(self.nv) / self.nv
        return np.meshgrid(u, v, indexing="ij")

    @cached_property
    def components(self):
        """Component-first view ``(6, nu, nv)``."""
        return np.ascontiguousarray(np.moveaxis(self.values, -1, 0))

    def derivative(self, order_u, order_v):
        """Cached spectral derivative of ``F``, component-first."""
        key = (order_u, order_v)
        if key not in self._cache:
            self._cache[key] = spectral_derivative(self.components, order_u, order_v, axes=(-2, -1))
        return self._cache[key]

    @cached_property
    def calc(self):
        return GridCalculus(self.nu, self.nv)

    @cached_property
    def geometry(self):
        return Geometry(self.calc, self.components, dF=self.derivative)

    def integrate(self, f):
        """``int f dmu`` for a scalar field on the grid."""
        return self.calc.integrate(np.asarray(f) * self.geometry.sqrt_g)

    def area(self):
        return self.calc.integrate(self.geometry.sqrt_g)

    def with_values(self, values, check=True):
        return ImmersionGrid(values, check=check)

    def shifted(self, su, sv):
        """Reparametrize by an integer grid shift ``(u, v) -> (u + su du, v + sv dv)``."""
        return ImmersionGrid(np.roll(self.values, (-su, -sv), axis=(0, 1)))


@dataclass
class PointJet:
    """Taylor jets of ``F`` up to ``degree`` at a batch of chart points."""

    u: np.ndarray
    v: np.ndarray
    F: Jet
    degree: int = MAX_ORDER

    @cached_property
    def geometry(self):
        return Geometry(JetCalculus(), self.F)

    @property
    def npoints(self):
        return self.F.shape[-1]


def point_jet(immersion, u, v, degree=MAX_ORDER):
    """Build the jet of an :class:`AnalyticImmersion` at points ``(u, v)``."""
    u = np.atleast_1d(np.asarray(u, dtype=float))
    v = np.atleast_1d(np.asarray(v, dtype=float))
    partials = immersion.partials(u, v, degree)
    # (npoints, 6) -> (6, npoints)
    comp_first = {k: np.moveaxis(val, -1, 0) for k, val in partials.items()}
    return PointJet(u=u, v=v, F=Jet.from_partials(comp_first, degree), degree=degree)


def sample_to_grid(immersion, nu, nv):
    """Sample a doubly periodic analytic immersion on the uniform grid."""
    if immersion.is_chart:
        raise NotPeriodic(f"{immersion.name} is a chart; evaluate it pointwise with point_jet")
    u = 2 * np.pi * np.arange(nu) / nu
    v = 2 * np.pi * np.arange(nv) / nv
    U, V = np.meshgrid(u, v, indexing="ij")
    return ImmersionGrid(immersion.position(U, V))


def geometry_of(surface):
    """The :class:`Geometry` of a grid or point jet."""
    return surface.geometry


def _points(surface, arr, ncomp=0):
    """Values of a field as points-first numpy arrays."""
    geom = surface.geometry
    return as_points_first(geom.value(arr), ncomp)


@dataclass
class FundamentalData:
    """Per-point first and second fundamental forms in the adapted frame.

    Arrays are points-first: on a grid ``g`` has shape ``(nu, nv, 2, 2)``, at
    ``n`` chart points ``(n, 2, 2)``.  ``frame`` stacks ``e1, e2, Je1, Je2, R``
    along axis ``-2``; ``h[..., beta, i, j]`` for ``beta`` in (Je1, Je2, R).
    """

    g: np.ndarray
    ginv: np.ndarray
    christoffel: np.ndarray
    frame: np.ndarray
    h: np.ndarray
    Hcomp: np.ndarray
    H2: np.ndarray
    sqlen: np.ndarray
    gauss: np.ndarray
    det_h_sum: np.ndarray


def fundamental_data(surface):
    """Adapted frame, metric, Christoffels, ``h^beta_ij``, ``H^beta``, ``S``, ``K``."""
    geom = surface.geometry
    frame = tensor(list(geom.frame) + list(geom.normals))
    return FundamentalData(
        g=_points(surface, tensor(geom.g), 2),
        ginv=_points(surface, tensor(geom.ginv), 2),
        christoffel=_points(surface, tensor(geom.christoffel), 3),
        frame=_points(surface, frame, 2),
        h=_points(surface, tensor(geom.h), 3),
        Hcomp=_points(surface, tensor(geom.H_components), 1),
        H2=_points(surface, geom.H2),
        sqlen=_points(surface, geom.S),
        gauss=_points(surface, geom.K),
        det_h_sum=_points(surface, geom.det_h_sum),
    )


def frame_orthonormality(surface):
    """Max deviation of ``{e1, e2, Je1, Je2, R}`` from an orthonormal set."""
    fr = fundamental_data(surface).frame
    gram = np.einsum("...ik,...jk->...ij", fr, fr)
    return float(np.abs(gram - np.eye(5)).max())


def legendre_residual(surface):
    """``max(|alpha(F_u)|/|F_u|, |alpha(F_v)|/|F_v|)`` over the sample."""
    geom = surface.geometry
    R = geom.reeb
    worst = 0.0
    for Fa in geom.Fa:
        ratio = geom.value(dot(R, Fa)) / np.sqrt(geom.value(dot(Fa, Fa)))
        worst = max(worst, float(np.abs(ratio).max()))
    return worst


@dataclass
class IntrinsicOps:
    """Intrinsic differential operators of the induced metric on a surface."""

    surface: object

    @property
    def geom(self):
        return self.surface.geometry

    def _field(self, s):
        if isinstance(self.surface, ImmersionGrid):
            return np.asarray(s, dtype=float)
        return s

    def gradient(self, s):
        """Ambient gradient vector field, points-first ``(*pts, 6)``."""
        return _points(self.surface, self.geom.grad(self._field(s)), 1)

    def divergence(self, X):
        """Divergence of a tangent field given points-first ``(*pts, 6)``."""
        Xc = np.moveaxis(np.asarray(X, dtype=float), -1, 0)
        return _points(self.surface, self.geom.div(Xc))

    def laplacian(self, s):
        return _points(self.surface, self.geom.laplacian(self._field(s)))

    def codifferential(self, w_u, w_v):
        return _points(self.surface, self.geom.codifferential([self._field(w_u), self._field(w_v)]))

    def exterior_derivative(self, w_u, w_v):
        return _points(self.surface, self.geom.exterior_derivative([self._field(w_u), self._field(w_v)]))


def intrinsic_ops(surface):
    return IntrinsicOps(surface)


@dataclass
class HDerivatives:
    """Covariant derivative of ``A`` and the derived split norms."""

    hcov: np.ndarray  # (*pts, beta, i, j, k)
    grad_h_sq: np.ndarray
    grad_T_h_sq: np.ndarray
    grad_nu_H_sq: np.ndarray
    grad_T_H_sq: np.ndarray

    @property
    def codazzi_residual(self):
        return float(np.abs(self.hcov - np.swapaxes(self.hcov, -1, -2)).max())

    def reeb_transfer_residual(self, h, sign=-1.0):
        """``max |h^3_ijk - sign * h^k_ij|``.

        With ``R = J0 p`` one has ``nabla_X R = J X`` and hence
        ``h^3_ijk = -h^k_ij``; ``sign=+1`` tests the opposite orientation.
        """
        h3 = self.hcov[..., 2, :, :, :]
        hk = np.moveaxis(h[..., :2, :, :], -3, -1)  # (..., i, j, k) = h^k_ij
        return float(np.abs(h3 - sign * hk).max())

    @property
    def splitting_residual(self):
        return self.grad_h_sq - self.grad_T_h_sq


def h_derivatives(surface):
    geom = surface.geometry
    return HDerivatives(
        hcov=_points(surface, tensor(geom.hcov), 4),
        grad_h_sq=_points(surface, geom.grad_h_sq),
        grad_T_h_sq=_points(surface, geom.grad_T_h_sq),
        grad_nu_H_sq=_points(surface, geom.grad_nu_H_sq),
        grad_T_H_sq=_points(surface, geom.grad_T_H_sq),
    )
