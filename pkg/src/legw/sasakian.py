"""Standard Sasakian structure on S^5 in R^6 = C^3.

Coordinates are ordered ``(x1, x2, x3, y1, y2, y3)`` with ``z_j = x_j + i y_j``.
Vectors carry their 6 components on the last axis, so every function here
broadcasts over leading (point) axes.

Orientation: ``R(p) = J0 p`` and ``alpha(v) = <J0 p, v>`` so that
``alpha(R) = +1`` for ``alpha0 = sum x dy - y dx``; ``J`` is ``J0`` composed
with the projection along ``R``.  With this orientation the Reeb field
satisfies ``nabla_X R = +J X`` and ``(nabla_X J) Y = alpha(Y) X - g(X, Y) R``;
the opposite-sign forms hold for ``R = -J0 p``.  :func:`structure_checks`
reports both.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonTangent

TANGENCY_TOL = 1e-10


def j0(v):
    """Standard complex structure, ``J0(x, y) = (-y, x)``."""
    v = np.asarray(v, dtype=float)
    return np.concatenate([-v[..., 3:], v[..., :3]], axis=-1)


def _dot(a, b):
    return np.sum(a * b, axis=-1)


def _require_tangent(p, v, name="v", tol=TANGENCY_TOL):
    bad = np.abs(_dot(p, v))
    if np.any(bad > tol):
        raise NonTangent(f"{name} is not tangent to S^5: |<p,{name}>| = {bad.max():.3e}")


def contact_form(p, v, tol=TANGENCY_TOL):
    """``alpha_p(v) = <J0 p, v>`` for ``v`` tangent to S^5 at ``p``."""
    p = np.asarray(p, dtype=float)
    v = np.asarray(v, dtype=float)
    _require_tangent(p, v, tol=tol)
    return _dot(j0(p), v)


def reeb(p):
    """Reeb field ``R(p) = J0 p``."""
    return j0(p)


def extended_j(p, v, tol=TANGENCY_TOL):
    """``J(v) = J0(v - alpha(v) R)``; kills ``R`` and restricts to ``J0`` on xi."""
    p = np.asarray(p, dtype=float)
    v = np.asarray(v, dtype=float)
    a = contact_form(p, v, tol=tol)
    return j0(v - a[..., None] * reeb(p))


def sphere_covariant(p, euclid_deriv, x, y, tol=TANGENCY_TOL):
    """Levi-Civita derivative of the round S^5 via the Gauss formula.

    ``euclid_deriv`` is the Euclidean directional derivative ``D_x Y`` of a
    tangent field ``Y`` whose value at ``p`` is ``y``.
    """
    p = np.asarray(p, dtype=float)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    _require_tangent(p, x, "x", tol)
    _require_tangent(p, y, "y", tol)
    return np.asarray(euclid_deriv, dtype=float) + _dot(x, y)[..., None] * p


def contact_projection(p, v):
    """``pi(v) = v - alpha(v) R`` (no tangency check)."""
    return v - _dot(j0(p), v)[..., None] * reeb(p)


def omega(v, w):
    """Bilinear form ``<J0 v, w>`` used as the symplectic form on xi."""
    return _dot(j0(v), w)


def dalpha0(v, w):
    """Exterior derivative of ``alpha0``: ``2 sum_j (v_xj w_yj - v_yj w_xj)``."""
    v = np.asarray(v, dtype=float)
    w = np.asarray(w, dtype=float)
    return 2.0 * np.sum(v[..., :3] * w[..., 3:] - v[..., 3:] * w[..., :3], axis=-1)


@dataclass
class StructureReport:
    """Maximum residuals of the closed-form structure identities."""

    reeb_derivative: float
    j_derivative: float
    j_isometry: float
    alpha_reeb: float
    j_reeb: float
    j_squared: float
    compatibility: float
    # derivative identities in the form that holds for R = J0 p
    reeb_derivative_oriented: float
    j_derivative_oriented: float
    # d(alpha0)(v, J v) / |v|^2 on xi; 2 for alpha0 = sum x dy - y dx
    dalpha_ratio: float
    nsamples: int

    def as_dict(self):
        return dict(self.__dict__)

    @property
    def max_residual(self):
        return max(
            self.reeb_derivative,
            self.j_derivative,
            self.j_isometry,
            self.alpha_reeb,
            self.j_reeb,
            self.j_squared,
            self.compatibility,
        )


def random_tangent_samples(n, rng=None):
    """Random ``(p, x, y)`` with ``p`` on S^5 and ``x, y`` tangent at ``p``."""
    rng = np.random.default_rng(rng)
    p = rng.normal(size=(n, 6))
    p /= np.linalg.norm(p, axis=-1, keepdims=True)
    x = rng.normal(size=(n, 6))
    y = rng.normal(size=(n, 6))
    x -= _dot(x, p)[:, None] * p
    y -= _dot(y, p)[:, None] * p
    return p, x, y


def structure_checks(p, x, y):
    """Residuals of the Sasakian identities at samples ``(p, x, y)``.

    Arrays have shape ``(n, 6)``.  Covariant derivatives of the ambient fields
    ``R`` and ``J`` are evaluated in closed form: ``R`` and ``J0`` are linear
    maps of R^6, so ``D_x R = J0 x`` and ``D_x (J Y) = J0 D_x Y + ...`` follow
    from the product rule.  The residuals reported are

    * ``nabla_x R - J x``
    * ``(nabla_x J) y + g(x, y) R - alpha(y) x``
    * ``<J v, J w> - <v, w>`` for ``v, w`` in xi

    together with the pointwise algebraic identities.  The first two are
    the identities of the ``R = -J0 p`` orientation and evaluate to ``2|J x|``
    and ``2|g(x, y) R - alpha(y) x|`` here; the ``*_oriented`` fields hold the
    sign-flipped forms ``nabla_x R - J x`` and
    ``(nabla_x J) y + g(x, y) R - alpha(y) x``, which vanish.
    """
    p = np.asarray(p, dtype=float)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    _require_tangent(p, x, "x")
    _require_tangent(p, y, "y")
    R = reeb(p)
    ax = _dot(R, x)
    ay = _dot(R, y)
    Jx = extended_j(p, x)

    # nabla_x R = D_x(J0 p) + <x, R> p
    nab_R = sphere_covariant(p, j0(x), x, R)
    res_reeb = np.linalg.norm(nab_R + Jx, axis=-1)
    res_reeb_or = np.linalg.norm(nab_R - Jx, axis=-1)

    # (nabla_x J) y for the field Y(q) = y - <y, q> q (tangent, equals y at p):
    # D_x Y = -<y, x> p - <y, p> x = -<x, y> p
    DxY = -_dot(x, y)[..., None] * p
    nab_Y = sphere_covariant(p, DxY, x, y)
    # J Y(q) = J0 Y(q) + alpha_q(Y(q)) q ; differentiate along x at p
    JY = extended_j(p, y)
    dalpha = _dot(j0(x), y) + _dot(R, DxY)
    D_JY = j0(DxY) + dalpha[..., None] * p + ay[..., None] * x
    nab_JY = sphere_covariant(p, D_JY, x, JY)
    dJ = nab_JY - extended_j(p, nab_Y)
    gxy = _dot(x, y)[..., None]
    res_j = np.linalg.norm(dJ - gxy * R + ay[..., None] * x, axis=-1)
    res_j_or = np.linalg.norm(dJ + gxy * R - ay[..., None] * x, axis=-1)

    v = contact_projection(p, x)
    w = contact_projection(p, y)
    Jv = extended_j(p, v)
    Jw = extended_j(p, w)
    res_iso = np.abs(_dot(Jv, Jw) - _dot(v, w))
    res_alpha = np.abs(contact_form(p, R) - 1.0)
    res_jr = np.linalg.norm(extended_j(p, R), axis=-1)
    res_j2 = np.linalg.norm(extended_j(p, Jx) + x - ax[..., None] * R, axis=-1)
    res_compat = np.abs(omega(v, Jw) - _dot(v, w))
    vv = _dot(v, v)
    da = dalpha0(v, extended_j(p, v))
    dalpha_ratio = float(np.median(da[vv > 0] / vv[vv > 0])) if np.any(vv > 0) else float("nan")

    return StructureReport(
        reeb_derivative=float(res_reeb.max()),
        j_derivative=float(res_j.max()),
        j_isometry=float(res_iso.max()),
        alpha_reeb=float(res_alpha.max()),
        j_reeb=float(res_jr.max()),
        j_squared=float(res_j2.max()),
        compatibility=float(res_compat.max()),
        reeb_derivative_oriented=float(res_reeb_or.max()),
        j_derivative_oriented=float(res_j_or.max()),
        dalpha_ratio=dalpha_ratio,
        nsamples=int(p.shape[0]),
    )
