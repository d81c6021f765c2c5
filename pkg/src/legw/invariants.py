"""Willmore energy, Gauss and Simons identities, gap quantities.

Scalar fields are returned points-first; integrals use the trapezoidal rule
on periodic grids, which is spectrally accurate for smooth integrands.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import as_points_first
from .surface import ImmersionGrid, point_jet


def _points(surface, arr, ncomp=0):
    return as_points_first(surface.geometry.value(arr), ncomp)


def _integrate(surface, f):
    if not isinstance(surface, ImmersionGrid):
        raise TypeError("integration needs a periodic grid; use chart_willmore_energy for charts")
    return surface.integrate(f)


def willmore_density(surface):
    """``1/2 (S - 2|H|^2)`` pointwise."""
    geom = surface.geometry
    return _points(surface, 0.5 * (geom.S - 2.0 * geom.H2))


def willmore_energy(grid):
    """``W = 1/2 int (S - 2|H|^2) dmu``."""
    return _integrate(grid, willmore_density(grid))


@dataclass
class ChartEnergy:
    """Band quadrature of ``W`` over a pole-excluded chart."""

    margins: tuple
    band_values: tuple
    extrapolated: float


def chart_willmore_energy(immersion, margins=(0.2, 0.4), n_theta=24, n_phi=32):
    """``W`` over ``theta in [m, pi - m]`` for each margin ``m``.

    Gauss-Legendre in ``theta`` and the trapezoidal rule in ``phi``.  The
    omitted caps have area ``O(m^2)``, so ``(4 W(m) - W(2m)) / 3`` removes the
    leading cap contribution when the margins are in ratio 2.
    """
    nodes, weights = np.polynomial.legendre.leggauss(n_theta)
    phi = 2 * np.pi * np.arange(n_phi) / n_phi
    values = []
    for m in margins:
        lo, hi = m, np.pi - m
        theta = 0.5 * (hi - lo) * nodes + 0.5 * (hi + lo)
        T, P = np.meshgrid(theta, phi, indexing="ij")
        jet = point_jet(immersion, T.ravel(), P.ravel(), degree=2)
        dens = willmore_density(jet) * jet.geometry.value(jet.geometry.sqrt_g)
        w = np.outer(0.5 * (hi - lo) * weights, np.full(n_phi, 2 * np.pi / n_phi)).ravel()
        values.append(float(np.sum(dens * w)))
    if len(margins) == 2 and np.isclose(margins[1], 2 * margins[0]):
        extra = (4 * values[0] - values[1]) / 3
    else:
        extra = values[0]
    return ChartEnergy(margins=tuple(margins), band_values=tuple(values), extrapolated=extra)


def gauss_residual(surface):
    """``2K - 2 - 4|H|^2 + S`` with ``K`` from the intrinsic metric."""
    geom = surface.geometry
    return _points(surface, 2.0 * geom.K - 2.0 - 4.0 * geom.H2 + geom.S)


# --------------------------------------------------------------------------
# gap quantities
# --------------------------------------------------------------------------


@dataclass
class GapReport:
    s_min: float
    s_max: float
    rho2: np.ndarray
    dets: np.ndarray
    gap_integrand: np.ndarray
    integrated_gap: float | None

    @property
    def rho2_min(self):
        return float(np.min(self.rho2))


def gap_report(surface):
    """``S`` range, ``rho^2``, ``det h^1 + det h^2`` and ``(rho^2 + S/2)(2 - S)``."""
    geom = surface.geometry
    S = _points(surface, geom.S)
    rho2 = _points(surface, geom.rho2)
    gap = (rho2 + 0.5 * S) * (2.0 - S)
    total = surface.integrate(gap) if isinstance(surface, ImmersionGrid) else None
    return GapReport(
        s_min=float(S.min()),
        s_max=float(S.max()),
        rho2=rho2,
        dets=_points(surface, geom.det_h_sum),
        gap_integrand=gap,
        integrated_gap=total,
    )


# --------------------------------------------------------------------------
# Simons-type inequality
# --------------------------------------------------------------------------


@dataclass
class SimonsReport:
    """Both sides of the Simons-type inequality for Legendrian surfaces.

    ``rhs = |nabla^T h|^2 - 4|nabla^nu H|^2 + div_term + S + 2(1 + H^2) rho^2
    - rho^4 - S^2/2`` and ``slack = lhs - rhs``.  ``equality_residual`` is
    the exact identity before the final inequality step,
    ``lhs - (|nabla h|^2 - 4|nabla^nu H|^2 + div_term + 2 K rho^2
    - 2 (det h^1 + det h^2)^2)``.
    """

    lhs: np.ndarray
    rhs: np.ndarray
    slack: np.ndarray
    div_term: np.ndarray
    equality_residual: np.ndarray
    splitting_residual: np.ndarray
    integrated_div_term: float | None = None
    integrated_slack: float | None = None
    area: float | None = None


def simons_report(surface):
    geom = surface.geometry
    S, H2, rho2, K = geom.S, geom.H2, geom.rho2, geom.K
    lhs = 0.5 * geom.laplacian(S)
    divt = geom.simons_divergence_term
    rhs = (
        geom.grad_T_h_sq
        - 4.0 * geom.grad_nu_H_sq
        + divt
        + S
        + 2.0 * (1.0 + H2) * rho2
        - rho2 * rho2
        - 0.5 * S * S
    )
    exact = geom.grad_h_sq - 4.0 * geom.grad_nu_H_sq + divt + 2.0 * K * rho2 - 2.0 * geom.det_h_sum**2
    rep = SimonsReport(
        lhs=_points(surface, lhs),
        rhs=_points(surface, rhs),
        slack=_points(surface, lhs - rhs),
        div_term=_points(surface, divt),
        equality_residual=_points(surface, lhs - exact),
        splitting_residual=_points(surface, geom.grad_h_sq - geom.grad_T_h_sq - S),
    )
    if isinstance(surface, ImmersionGrid):
        rep.integrated_div_term = surface.integrate(rep.div_term)
        rep.integrated_slack = surface.integrate(rep.slack)
        rep.area = surface.area()
    return rep


# --------------------------------------------------------------------------
# mean curvature form and the Willmore integral identity
# --------------------------------------------------------------------------


@dataclass
class MeanCurvatureFormResiduals:
    closedness: float  # max |d(H _| omega)|
    coclosedness_link: float  # max |delta(H _| omega) + div JH|


def random_tangent_field(grid, seed=0, max_mode=3):
    """Band-limited random tangent field ``a F_u + b F_v``, points-first."""
    from .variational import band_limited_function

    geom = grid.geometry
    a = band_limited_function(grid, seed=seed, max_mode=max_mode)
    b = band_limited_function(grid, seed=seed + 1, max_mode=max_mode)
    return _points(grid, a * geom.Fa[0] + b * geom.Fa[1], 1)


def mean_curvature_form_residuals(surface, tangent_field=None):
    """Closedness of the 1-form dual to ``JH`` (or to ``tangent_field``)."""
    geom = surface.geometry
    if tangent_field is None:
        X = geom.JH
    else:
        X = np.moveaxis(np.asarray(tangent_field, dtype=float), -1, 0)
    w = geom.one_form(X)
    closed = _points(surface, geom.exterior_derivative(w))
    link = _points(surface, geom.codifferential(w) + geom.div(X))
    return MeanCurvatureFormResiduals(
        closedness=float(np.max(np.abs(closed))),
        coclosedness_link=float(np.max(np.abs(link))),
    )


@dataclass
class WillmoreIdentity:
    grad_nu_H_integral: float
    sigma_integral: float
    sigma_asymmetry: float
    pointwise_gap_min: float  # min of H^2 rho^2 - sum sigma~ H H
    rho2_consistency: float  # max |rho^2 - tr sigma~|

    @property
    def residual(self):
        return abs(self.grad_nu_H_integral - self.sigma_integral)


def willmore_identity(grid):
    """Both sides of ``int |nabla^nu H|^2 = int sigma~_ab H^a H^b``."""
    geom = grid.geometry
    st = geom.sigma_tilde
    asym = max(
        float(np.max(np.abs(geom.value(st[a][b]) - geom.value(st[b][a]))))
        for a in range(3)
        for b in range(3)
    )
    trace = st[0][0] + st[1][1] + st[2][2]
    gap = _points(grid, geom.H2 * geom.rho2 - geom.sigma_HH)
    return WillmoreIdentity(
        grad_nu_H_integral=_integrate(grid, _points(grid, geom.grad_nu_H_sq)),
        sigma_integral=_integrate(grid, _points(grid, geom.sigma_HH)),
        sigma_asymmetry=asym,
        pointwise_gap_min=float(np.min(gap)),
        rho2_consistency=float(np.max(np.abs(_points(grid, geom.rho2 - trace)))),
    )


def willmore_identity_residual(grid):
    return willmore_identity(grid).residual


# --------------------------------------------------------------------------
# residual report
# --------------------------------------------------------------------------


@dataclass
class Check:
    """A named check: ``value`` compared against ``tolerance``."""

    name: str
    value: float
    tolerance: float | None
    status: str = "pass"
    note: str = ""
    extra: dict = field(default_factory=dict)

    @property
    def passed(self):
        return self.status == "pass"

    def as_dict(self):
        out = {"value": self.value, "tolerance": self.tolerance, "pass": self.status == "pass", "status": self.status}
        if self.note:
            out["note"] = self.note
        out.update(self.extra)
        return out


def check_upper(name, value, tolerance, note=""):
    """``value <= tolerance`` (NaN fails)."""
    value = float(value)
    ok = bool(np.isfinite(value) and value <= tolerance)
    return Check(name, value, tolerance, "pass" if ok else "fail", note)


def check_lower(name, value, bound, note=""):
    """``value >= bound``; stored tolerance is the bound."""
    value = float(value)
    ok = bool(np.isfinite(value) and value >= bound)
    return Check(name, value, bound, "pass" if ok else "fail", note)


def skipped(name, tolerance=None, note=""):
    return Check(name, float("nan"), tolerance, "skipped", note)

