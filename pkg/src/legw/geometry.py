"""Extrinsic and intrinsic geometry of a surface in S^5, backend-agnostic.

:class:`Geometry` evaluates every curvature quantity of an immersion ``F``
given a calculus (``GridCalculus`` or ``JetCalculus``).  All fields are
component-first; scalar fields have the point shape, vector fields carry a
leading axis of length 6.  Quantities are computed lazily and cached.

Nested differentiation is used throughout: ``H`` is assembled from second
derivatives of ``F`` and then differentiated again by the same calculus,
which keeps the code at the level of the formulas.  On grids this relies on
spectral accuracy; on jets it is exact.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

from .calculus import Jet, sqrt, stack
from .errors import DegenerateMetric

DET_TOL = 1e-10

# coefficient c in s_f = div(J W + c J H); +4 makes s_f the L2 gradient density
# of W along contact variations sR + 1/2 J grad s when R = J0 p
JH_COEFFICIENT = 4.0


def dot(a, b):
    return (a * b).sum(axis=0)


def concat_components(parts):
    if any(isinstance(p, Jet) for p in parts):
        alg = next(p.alg for p in parts if isinstance(p, Jet))
        return Jet(np.concatenate([p.data for p in parts], axis=1), alg)
    return np.concatenate(parts, axis=0)


def j0(v):
    """``J0`` on component-first vectors."""
    return concat_components([-v[3:6], v[0:3]])


class Geometry:
    """Lazily evaluated geometry of ``F`` (shape ``(6, *points)``)."""

    def __init__(self, calc, F, dF=None):
        self.calc = calc
        self.F = F
        self._dF = dF

    # -- derivatives ----------------------------------------------------------
    def dF(self, a, b):
        if self._dF is not None:
            return self._dF(a, b)
        return self.calc.d(self.F, a, b)

    def d(self, f, a, b=None):
        """Partial derivative; ``d(f, axis)`` for first order along an axis."""
        if b is None:
            return self.calc.d(f, 1, 0) if a == 0 else self.calc.d(f, 0, 1)
        return self.calc.d(f, a, b)

    def grad_coords(self, f):
        return [self.d(f, 0), self.d(f, 1)]

    def value(self, f):
        return self.calc.value(f)

    # -- first fundamental form --------------------------------------------
    @cached_property
    def Fa(self):
        return [self.dF(1, 0), self.dF(0, 1)]

    @cached_property
    def Fab(self):
        uu, uv, vv = self.dF(2, 0), self.dF(1, 1), self.dF(0, 2)
        return [[uu, uv], [uv, vv]]

    @cached_property
    def g(self):
        Fu, Fv = self.Fa
        guu, guv, gvv = dot(Fu, Fu), dot(Fu, Fv), dot(Fv, Fv)
        return [[guu, guv], [guv, gvv]]

    @cached_property
    def det_g(self):
        g = self.g
        det = g[0][0] * g[1][1] - g[0][1] * g[0][1]
        val = np.asarray(self.value(det))
        if np.any(val <= DET_TOL):
            raise DegenerateMetric(f"det g min {val.min():.3e} <= {DET_TOL:.0e}")
        return det

    @cached_property
    def ginv(self):
        g, det = self.g, self.det_g
        inv = 1.0 / det
        return [[g[1][1] * inv, -g[0][1] * inv], [-g[0][1] * inv, g[0][0] * inv]]

    @cached_property
    def sqrt_g(self):
        return sqrt(self.det_g)

    @cached_property
    def christoffel(self):
        """``Gamma[c][a][b] = g^{cd} <F_ab, F_d>``."""
        gi, Fa, Fab = self.ginv, self.Fa, self.Fab
        low = [[[dot(Fab[a][b], Fa[d]) for b in range(2)] for a in range(2)] for d in range(2)]
        return [
            [[gi[c][0] * low[0][a][b] + gi[c][1] * low[1][a][b] for b in range(2)] for a in range(2)]
            for c in range(2)
        ]

    # -- adapted frame ---------------------------------------------------------
    @cached_property
    def reeb(self):
        return j0(self.F)

    def jmap(self, w):
        """Extended ``J``: ``J0(w - alpha(w) R)``."""
        R = self.reeb
        return j0(w - dot(R, w) * R)

    @cached_property
    def frame_coeffs(self):
        """``E[i][a]`` with ``e_i = E[i][a] F_a`` (Gram-Schmidt from ``F_u``)."""
        g, det = self.g, self.det_g
        r1 = 1.0 / sqrt(g[0][0])
        n = sqrt(det / g[0][0])
        return [[r1, 0.0 * r1], [-(g[0][1] / g[0][0]) / n, 1.0 / n]]

    @cached_property
    def frame(self):
        E, Fa = self.frame_coeffs, self.Fa
        return [E[i][0] * Fa[0] + E[i][1] * Fa[1] for i in range(2)]

    @cached_property
    def normals(self):
        e1, e2 = self.frame
        return [self.jmap(e1), self.jmap(e2), self.reeb]

    def normal_part(self, w):
        """Orthogonal projection onto the normal bundle of the surface in S^5."""
        e1, e2 = self.frame
        F = self.F
        return w - dot(w, F) * F - dot(w, e1) * e1 - dot(w, e2) * e2

    def tangent_components(self, X):
        """Contravariant components ``X^a`` of the tangential part of ``X``."""
        gi, Fa = self.ginv, self.Fa
        low = [dot(X, Fa[0]), dot(X, Fa[1])]
        return [gi[a][0] * low[0] + gi[a][1] * low[1] for a in range(2)]

    def to_frame(self, T2):
        """Coordinate 2-tensor ``T[a][b]`` -> orthonormal-frame ``T[i][j]``."""
        E = self.frame_coeffs
        return [
            [sum(E[i][a] * E[j][b] * T2[a][b] for a in range(2) for b in range(2)) for j in range(2)]
            for i in range(2)
        ]

    # -- second fundamental form ---------------------------------------------
    @cached_property
    def A(self):
        Fab = self.Fab
        uu, uv, vv = (self.normal_part(Fab[0][0]), self.normal_part(Fab[0][1]), self.normal_part(Fab[1][1]))
        return [[uu, uv], [uv, vv]]

    @cached_property
    def A_frame(self):
        return self.to_frame(self.A)

    @cached_property
    def h(self):
        """``h[beta][i][j] = <A(e_i, e_j), nu_beta>``."""
        Ae = self.A_frame
        return [[[dot(Ae[i][j], nu) for j in range(2)] for i in range(2)] for nu in self.normals]

    @cached_property
    def H(self):
        gi, A = self.ginv, self.A
        return 0.5 * (gi[0][0] * A[0][0] + 2.0 * gi[0][1] * A[0][1] + gi[1][1] * A[1][1])

    @cached_property
    def H_components(self):
        return [dot(self.H, nu) for nu in self.normals]

    @cached_property
    def H2(self):
        return dot(self.H, self.H)

    @cached_property
    def S(self):
        Ae = self.A_frame
        return dot(Ae[0][0], Ae[0][0]) + 2.0 * dot(Ae[0][1], Ae[0][1]) + dot(Ae[1][1], Ae[1][1])

    @cached_property
    def rho2(self):
        return self.S - 2.0 * self.H2

    @cached_property
    def det_h_sum(self):
        h = self.h
        return sum(h[s][0][0] * h[s][1][1] - h[s][0][1] * h[s][0][1] for s in range(2))

    @cached_property
    def K_extrinsic(self):
        return 1.0 + 2.0 * self.H2 - 0.5 * self.S

    @cached_property
    def K(self):
        """Gauss curvature from the metric alone (Brioschi formula)."""
        d = self.d
        E, Fm, G = self.g[0][0], self.g[0][1], self.g[1][1]
        Eu, Ev = d(E, 0), d(E, 1)
        Fu, Fv = d(Fm, 0), d(Fm, 1)
        Gu, Gv = d(G, 0), d(G, 1)
        Evv = self.calc.d(E, 0, 2)
        Guu = self.calc.d(G, 2, 0)
        Fuv = self.calc.d(Fm, 1, 1)
        m11 = -0.5 * Evv + Fuv - 0.5 * Guu
        m12, m13 = 0.5 * Eu, Fu - 0.5 * Ev
        m21, m31 = Fv - 0.5 * Gu, 0.5 * Gv
        det1 = m11 * (E * G - Fm * Fm) - m12 * (m21 * G - Fm * m31) + m13 * (m21 * Fm - E * m31)
        a, b = 0.5 * Ev, 0.5 * Gu
        det2 = -a * (a * G - Fm * b) + b * (a * Fm - E * b)
        return (det1 - det2) / (self.det_g * self.det_g)

    # -- intrinsic operators -------------------------------------------------
    def div_coords(self, Xa):
        """Divergence of a tangent field given by components ``X^a``."""
        sg = self.sqrt_g
        return (self.d(sg * Xa[0], 0) + self.d(sg * Xa[1], 1)) / sg

    def div(self, X):
        """Divergence of the tangential part of an ambient vector field."""
        return self.div_coords(self.tangent_components(X))

    def raise_index(self, w):
        gi = self.ginv
        return [gi[a][0] * w[0] + gi[a][1] * w[1] for a in range(2)]

    def grad(self, s):
        """Ambient gradient vector ``g^{ab} s_b F_a``."""
        ga = self.raise_index(self.grad_coords(s))
        return ga[0] * self.Fa[0] + ga[1] * self.Fa[1]

    def laplacian(self, s):
        return self.div_coords(self.raise_index(self.grad_coords(s)))

    def codifferential(self, w):
        """``delta w = -g^{ab} (d_a w_b - Gamma^c_ab w_c)`` for ``w = (w_u, w_v)``.

        Assembled from Christoffel symbols rather than the ``sqrt(g)`` form of
        :meth:`div_coords`, so ``delta w = -div w^sharp`` is a genuine check.
        """
        gi, Gam = self.ginv, self.christoffel
        dw = [self.grad_coords(w[b]) for b in range(2)]  # dw[b][a] = d_a w_b
        out = 0.0
        for a in range(2):
            for b in range(2):
                cov = dw[b][a] - Gam[0][a][b] * w[0] - Gam[1][a][b] * w[1]
                out = out + gi[a][b] * cov
        return -out

    def exterior_derivative(self, w):
        """Scalar ``dw / dmu`` of a 1-form ``(w_u, w_v)``."""
        return (self.d(w[1], 0) - self.d(w[0], 1)) / self.sqrt_g

    def one_form(self, X):
        """Metric dual ``(<X, F_u>, <X, F_v>)`` of an ambient tangent field."""
        return [dot(X, self.Fa[0]), dot(X, self.Fa[1])]

    # -- normal connection and Willmore operator ------------------------------
    @cached_property
    def grad_nu_H(self):
        """``nabla^nu_a H`` for ``a = u, v``."""
        return [self.normal_part(self.d(self.H, a)) for a in range(2)]

    @cached_property
    def normal_laplacian_H(self):
        N = self.raise_index(self.grad_nu_H)
        sg = self.sqrt_g
        raw = (self.d(sg * N[0], 0) + self.d(sg * N[1], 1)) / sg
        return self.normal_part(raw)

    @cached_property
    def AAH(self):
        """``sum_ij A(e_i,e_j) <A(e_i,e_j), H>``."""
        Ae, H = self.A_frame, self.H
        return (
            Ae[0][0] * dot(Ae[0][0], H)
            + 2.0 * Ae[0][1] * dot(Ae[0][1], H)
            + Ae[1][1] * dot(Ae[1][1], H)
        )

    @cached_property
    def willmore_vector(self):
        """``Delta^nu H + sum A <A, H> - 2|H|^2 H``."""
        return self.normal_laplacian_H + self.AAH - 2.0 * self.H2 * self.H

    @cached_property
    def willmore_vector_tracefree(self):
        """``Delta^nu H + Q(A°) H`` with ``A° = A - H g``."""
        Ae, H = self.A_frame, self.H
        T = [[Ae[0][0] - H, Ae[0][1]], [Ae[0][1], Ae[1][1] - H]]
        Q = T[0][0] * dot(T[0][0], H) + 2.0 * T[0][1] * dot(T[0][1], H) + T[1][1] * dot(T[1][1], H)
        return self.normal_laplacian_H + Q

    @cached_property
    def JH(self):
        return self.jmap(self.H)

    @cached_property
    def JW(self):
        return self.jmap(self.willmore_vector)

    @cached_property
    def csl(self):
        """``div_g (J H)``."""
        return self.div(self.JH)

    @cached_property
    def cslw(self):
        """``s_f = div_g (J W + 4 J H)``."""
        return self.cslw_with(JH_COEFFICIENT)

    def cslw_with(self, coefficient):
        """``div_g (J W + c J H)`` for an arbitrary coefficient ``c``."""
        return self.div(self.JW + coefficient * self.JH)

    def contact_field(self, s):
        """``s R + 1/2 J grad s``."""
        return s * self.reeb + 0.5 * self.jmap(self.grad(s))

    @cached_property
    def velocity(self):
        return self.contact_field(-self.cslw)

    # -- covariant derivative of A ------------------------------------------
    @cached_property
    def nabla_A(self):
        """``(nabla_c A)_ab`` as ambient normal vectors, indexed ``[c][a][b]``."""
        A, Gam = self.A, self.christoffel
        dA = {}
        for c in range(2):
            for a in range(2):
                for b in range(a, 2):
                    dA[(c, a, b)] = self.normal_part(self.d(A[a][b], c))
        out = [[[None, None], [None, None]], [[None, None], [None, None]]]
        for c in range(2):
            for a in range(2):
                for b in range(2):
                    val = dA[(c, min(a, b), max(a, b))]
                    for e in range(2):
                        val = val - Gam[e][c][a] * A[e][b] - Gam[e][c][b] * A[a][e]
                    out[c][a][b] = val
        return out

    @cached_property
    def nabla_A_frame(self):
        """Frame components ``[i][j][k]`` of ``(nabla_{e_k} A)(e_i, e_j)``."""
        E, nA = self.frame_coeffs, self.nabla_A
        out = [[[None] * 2 for _ in range(2)] for _ in range(2)]
        for i in range(2):
            for j in range(2):
                for k in range(2):
                    acc = None
                    for a in range(2):
                        for b in range(2):
                            for c in range(2):
                                term = E[i][a] * E[j][b] * E[k][c] * nA[c][a][b]
                                acc = term if acc is None else acc + term
                    out[i][j][k] = acc
        return out

    @cached_property
    def hcov(self):
        """``hcov[beta][i][j][k] = h^beta_{ijk}``."""
        nAe = self.nabla_A_frame
        return [
            [[[dot(nAe[i][j][k], nu) for k in range(2)] for j in range(2)] for i in range(2)]
            for nu in self.normals
        ]

    @cached_property
    def grad_h_sq(self):
        nAe = self.nabla_A_frame
        return sum(dot(nAe[i][j][k], nAe[i][j][k]) for i in range(2) for j in range(2) for k in range(2))

    @cached_property
    def grad_T_h_sq(self):
        hc = self.hcov
        return sum(hc[s][i][j][k] ** 2 for s in range(2) for i in range(2) for j in range(2) for k in range(2))

    @cached_property
    def grad_nu_H_sq(self):
        N = self.grad_nu_H
        gi = self.ginv
        return sum(gi[a][b] * dot(N[a], N[b]) for a in range(2) for b in range(2))

    @cached_property
    def grad_T_H_sq(self):
        N = self.grad_nu_H
        gi = self.ginv
        out = 0.0
        for nu in self.normals[:2]:
            c = [dot(N[0], nu), dot(N[1], nu)]
            out = out + sum(gi[a][b] * c[a] * c[b] for a in range(2) for b in range(2))
        return out

    @cached_property
    def simons_divergence_term(self):
        """``sum (h^beta_ij h^beta_kki)_j = div Y``, ``Y_b = 2 g^{ac} <A_ab, nabla^nu_c H>``."""
        A, N, gi = self.A, self.grad_nu_H, self.ginv
        Y = [
            2.0 * sum(gi[a][c] * dot(A[a][b], N[c]) for a in range(2) for c in range(2))
            for b in range(2)
        ]
        return self.div_coords(self.raise_index(Y))

    # -- trace-free quantities -------------------------------------------------
    @cached_property
    def sigma_tilde(self):
        """``sigma~_{alpha beta} = sum_ij h~^alpha_ij h~^beta_ij`` (3x3 nested list)."""
        h, Hc = self.h, self.H_components
        ht = [[[h[b][i][j] - (Hc[b] if i == j else 0.0) for j in range(2)] for i in range(2)] for b in range(3)]
        return [
            [sum(ht[a][i][j] * ht[b][i][j] for i in range(2) for j in range(2)) for b in range(3)]
            for a in range(3)
        ]

    @cached_property
    def sigma_HH(self):
        st, Hc = self.sigma_tilde, self.H_components
        return sum(st[a][b] * Hc[a] * Hc[b] for a in range(3) for b in range(3))


def as_points_first(arr, ncomp_axes):
    """Move trailing point axes of a component-first array to the front."""
    arr = np.asarray(arr)
    npts = arr.ndim - ncomp_axes
    return np.moveaxis(arr, list(range(ncomp_axes, arr.ndim)), list(range(npts)))


def tensor(items):
    """Nested list of scalar fields -> stacked component-first field."""
    if isinstance(items, list):
        return stack([tensor(x) for x in items])
    return items
