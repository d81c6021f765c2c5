"""Differentiation backends.

Two calculi share one interface so that the geometric pipeline in
:mod:`legw.geometry` is written once:

* :class:`GridCalculus` -- Fourier spectral differentiation on a uniform
  doubly periodic grid over ``[0, 2pi)^2``.
* :class:`JetCalculus` -- exact differentiation of truncated bivariate Taylor
  polynomials (:class:`Jet`) centred at chart points.  Used for charts that
  cannot be gridded periodically (the equatorial sphere).

Fields are laid out component-first: a vector field on a grid is an array of
shape ``(6, nu, nv)``, the same field as a jet is a :class:`Jet` whose
``shape`` is ``(6, npoints)``.
"""

from __future__ import annotations

from functools import lru_cache
from math import factorial

import numpy as np

from .errors import OrderTooHigh

MAX_ORDER = 6


def _wavenumbers(n, order, real_half=False):
    """Multiplier ``(ik)^order`` for an n-point periodic axis.

    The Nyquist mode is dropped for odd orders, kept as ``(i n/2)^order`` for
    even orders.
    """
    if real_half:
        k = np.arange(n // 2 + 1, dtype=float)
    else:
        k = np.fft.fftfreq(n, d=1.0 / n)
    mult = (1j * k) ** order
    if n % 2 == 0:
        nyq = np.isclose(np.abs(k), n / 2)
        if order % 2:
            mult[nyq] = 0.0
        else:
            mult[nyq] = (-1.0) ** (order // 2) * (n / 2) ** order
    return mult


def spectral_derivative(field, order_u, order_v, axes=(0, 1)):
    """Fourier derivative ``d^order_u/du d^order_v/dv`` of a periodic field.

    ``axes`` names the (u, v) grid axes of ``field``; any other axes are
    treated as components and differentiated independently.
    """
    if order_u < 0 or order_v < 0:
        raise ValueError("derivative orders must be non-negative")
    if order_u + order_v > MAX_ORDER:
        raise OrderTooHigh(f"total order {order_u + order_v} > {MAX_ORDER}")
    field = np.asarray(field, dtype=float)
    if order_u == 0 and order_v == 0:
        return field.copy()
    au, av = (ax % field.ndim for ax in axes)
    nu, nv = field.shape[au], field.shape[av]
    spec = np.fft.rfftn(field, axes=(au, av))
    shape_u = [1] * field.ndim
    shape_u[au] = nu
    shape_v = [1] * field.ndim
    shape_v[av] = nv // 2 + 1
    mult = _wavenumbers(nu, order_u).reshape(shape_u) * _wavenumbers(
        nv, order_v, real_half=True
    ).reshape(shape_v)
    return np.fft.irfftn(spec * mult, s=(nu, nv), axes=(au, av))


class GridCalculus:
    """Spectral calculus on an ``nu x nv`` periodic grid (grid axes last)."""

    def __init__(self, nu, nv):
        self.nu = nu
        self.nv = nv
        self.du = 2 * np.pi / nu
        self.dv = 2 * np.pi / nv

    def d(self, f, order_u, order_v):
        return spectral_derivative(f, order_u, order_v, axes=(-2, -1))

    def integrate(self, f):
        """Trapezoidal rule over the torus (spectrally accurate)."""
        return float(np.sum(f) * self.du * self.dv)

    @staticmethod
    def value(f):
        return np.asarray(f)


# --------------------------------------------------------------------------
# Truncated Taylor jets
# --------------------------------------------------------------------------


class JetAlgebra:
    """Index tables for bivariate polynomials of total degree <= ``degree``."""

    def __init__(self, degree):
        self.degree = degree
        self.monomials = [(i, d - i) for d in range(degree + 1) for i in range(d, -1, -1)]
        self.index = {m: k for k, m in enumerate(self.monomials)}
        self.size = len(self.monomials)
        self.total = np.array([i + j for i, j in self.monomials])

        p_idx, q_idx, k_idx = [], [], []
        for p, (i1, j1) in enumerate(self.monomials):
            for q, (i2, j2) in enumerate(self.monomials):
                if i1 + j1 + i2 + j2 <= degree:
                    p_idx.append(p)
                    q_idx.append(q)
                    k_idx.append(self.index[(i1 + i2, j1 + j2)])
        self.p_idx = np.array(p_idx)
        self.q_idx = np.array(q_idx)
        scatter = np.zeros((self.size, len(k_idx)))
        scatter[k_idx, np.arange(len(k_idx))] = 1.0
        self.scatter = scatter

        # d/du and d/dv as (source index, target index, factor)
        self.diff_maps = []
        for axis in (0, 1):
            src, dst, fac = [], [], []
            for k, (i, j) in enumerate(self.monomials):
                e = (i, j)[axis]
                if e == 0:
                    continue
                tgt = (i - 1, j) if axis == 0 else (i, j - 1)
                src.append(k)
                dst.append(self.index[tgt])
                fac.append(float(e))
            self.diff_maps.append((np.array(src), np.array(dst), np.array(fac)))


@lru_cache(maxsize=None)
def jet_algebra(degree):
    return JetAlgebra(degree)


class Jet:
    """Truncated Taylor polynomial in ``(u - u0, v - v0)`` with array coefficients.

    ``data`` has shape ``(K, *shape)`` where ``K`` is the number of monomials;
    arithmetic broadcasts over ``shape`` like numpy.
    """

    __array_priority__ = 1000

    def __init__(self, data, algebra):
        self.data = data
        self.alg = algebra

    # -- construction ------------------------------------------------------
    @classmethod
    def from_partials(cls, partials, degree=MAX_ORDER):
        """Build from a mapping ``(a, b) -> d^a_u d^b_v f`` at the centre."""
        alg = jet_algebra(degree)
        first = np.asarray(partials[(0, 0)], dtype=float)
        data = np.zeros((alg.size,) + first.shape)
        for k, (i, j) in enumerate(alg.monomials):
            data[k] = np.asarray(partials[(i, j)], dtype=float) / (factorial(i) * factorial(j))
        return cls(data, alg)

    def _lift(self, other):
        if isinstance(other, Jet):
            return other.data
        c = np.asarray(other, dtype=float)
        out = np.zeros((self.alg.size,) + np.broadcast_shapes(c.shape, self.shape))
        out[0] = c
        return out

    # -- structure -----------------------------------------------------------
    @property
    def shape(self):
        return self.data.shape[1:]

    @property
    def ndim(self):
        return self.data.ndim - 1

    def value(self):
        return self.data[0]

    def __getitem__(self, idx):
        if not isinstance(idx, tuple):
            idx = (idx,)
        return Jet(self.data[(slice(None),) + idx], self.alg)

    def sum(self, axis=0):
        axis = axis % self.ndim
        return Jet(self.data.sum(axis=axis + 1), self.alg)

    # -- arithmetic ----------------------------------------------------------
    @staticmethod
    def _align(a, b):
        # broadcast the value shapes while keeping the monomial axis leading
        while a.ndim < b.ndim:
            a = a[:, None]
        while b.ndim < a.ndim:
            b = b[:, None]
        return a, b

    def __add__(self, other):
        a, b = self._align(self.data, other.data if isinstance(other, Jet) else self._lift(other))
        return Jet(a + b, self.alg)

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.data, self.alg)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Jet):
            a, c = self._align(self.data, np.asarray(other, dtype=float)[None])
            return Jet(a * c, self.alg)
        a, b = self._align(self.data[self.alg.p_idx], other.data[self.alg.q_idx])
        prod = a * b
        out = np.tensordot(self.alg.scatter, prod, axes=(1, 0))
        return Jet(out, self.alg)

    __rmul__ = __mul__

    def _series(self, coeffs):
        # sum_n coeffs[n] * delta^n with delta = self/self0 - 1 (nilpotent)
        c0 = self.data[0]
        delta = Jet(self.data / c0[None], self.alg)
        delta.data[0] = 0.0
        result = Jet(np.zeros_like(self.data), self.alg)
        result.data[0] = coeffs[-1]
        for c in reversed(coeffs[:-1]):
            result = result * delta
            result.data[0] += c
        return result

    def reciprocal(self):
        n = self.alg.degree
        c0 = self.data[0]
        return self._series([(-1.0) ** k for k in range(n + 1)]) * (1.0 / c0)

    def sqrt(self):
        n = self.alg.degree
        coeffs = [_binom_half(k) for k in range(n + 1)]
        return self._series(coeffs) * np.sqrt(self.data[0])

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * other.reciprocal()
        a, c = self._align(self.data, np.asarray(other, dtype=float)[None])
        return Jet(a / c, self.alg)

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = Jet(self._lift(1.0), self.alg)
        for _ in range(n):
            out = out * self
        return out

    # -- calculus ----------------------------------------------------------
    def diff(self, order_u, order_v):
        out = self.data
        for axis, order in ((0, order_u), (1, order_v)):
            src, dst, fac = self.alg.diff_maps[axis]
            for _ in range(order):
                new = np.zeros_like(out)
                new[dst] = out[src] * fac.reshape((-1,) + (1,) * (out.ndim - 1))
                out = new
        return Jet(out, self.alg)


def _binom_half(k):
    # generalized binomial coefficient C(1/2, k)
    num = 1.0
    for i in range(k):
        num *= 0.5 - i
    return num / factorial(k)


class JetCalculus:
    """Exact calculus on Taylor jets centred at a batch of chart points."""

    def d(self, f, order_u, order_v):
        if order_u + order_v > MAX_ORDER:
            raise OrderTooHigh(f"total order {order_u + order_v} > {MAX_ORDER}")
        return f.diff(order_u, order_v)

    @staticmethod
    def value(f):
        return f.value() if isinstance(f, Jet) else np.asarray(f)


def sqrt(x):
    return x.sqrt() if isinstance(x, Jet) else np.sqrt(x)


def stack(items):
    """Stack fields along a new leading component axis."""
    jets = [x for x in items if isinstance(x, Jet)]
    if jets:
        ref = jets[0]
        data = [x.data if isinstance(x, Jet) else ref._lift(x) for x in items]
        shape = np.broadcast_shapes(*(d.shape for d in data))
        return Jet(np.stack([np.broadcast_to(d, shape) for d in data], axis=1), ref.alg)
    return np.stack(np.broadcast_arrays(*items), axis=0)
