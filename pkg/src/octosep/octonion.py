"""Octonion arithmetic over a fixed Cayley-Dickson convention.

An octonion is stored as 8 real components (c0..c7) over the basis
e0..e7, with e0 the multiplicative identity.  The product is defined by
Cayley-Dickson doubling: an octonion is an ordered pair of quaternions
(p, q) with

    (p, q) (r, s) = (p r - conj(s) q,  s p + q conj(r)),

quaternions are pairs of complex numbers under the same doubling, and
complex numbers are pairs of reals.  The induced basis satisfies, e.g.,
e1 e2 = e3, e1 e4 = e5, e2 e4 = e6, e3 e4 = e7.

All kernels in this module accept numpy arrays whose trailing axis has
length 8, and broadcast over any leading axes, so the same code path
serves scalar octonions and large Monte Carlo batches.
"""

from __future__ import annotations

import numbers

import numpy as np

__all__ = [
    "Octonion",
    "E",
    "MUL_INDEX",
    "MUL_SIGN",
    "omul",
    "oconj",
    "onorm2",
    "oreal",
    "oadd",
    "osub",
    "oscale",
]


def _cd_conj(x):
    # In any Cayley-Dickson algebra conj negates every non-leading component.
    return (x[0],) + tuple(-c for c in x[1:])


def _cd_add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def _cd_sub(x, y):
    return tuple(a - b for a, b in zip(x, y))


def _cd_mul(x, y):
    """Multiply two flat component tuples by recursive doubling."""
    n = len(x)
    if n == 1:
        return (x[0] * y[0],)
    h = n // 2
    p, q = x[:h], x[h:]
    r, s = y[:h], y[h:]
    left = _cd_sub(_cd_mul(p, r), _cd_mul(_cd_conj(s), q))
    right = _cd_add(_cd_mul(s, p), _cd_mul(q, _cd_conj(r)))
    return left + right


def _build_tables():
    index = np.zeros((8, 8), dtype=np.intp)
    sign = np.zeros((8, 8), dtype=np.float64)
    basis = [tuple(1 if i == j else 0 for j in range(8)) for i in range(8)]
    for i in range(8):
        for j in range(8):
            prod = _cd_mul(basis[i], basis[j])
            nz = [k for k, c in enumerate(prod) if c != 0]
            if len(nz) != 1 or prod[nz[0]] not in (-1, 1):
                raise AssertionError("basis product is not a signed basis element")
            index[i, j] = nz[0]
            sign[i, j] = prod[nz[0]]
    return index, sign


#: e_i e_j = MUL_SIGN[i, j] * e_{MUL_INDEX[i, j]}
MUL_INDEX, MUL_SIGN = _build_tables()


def _as_components(x):
    a = np.asarray(x, dtype=np.float64)
    if a.shape[-1] != 8:
        raise ValueError(f"expected trailing axis of length 8, got shape {a.shape}")
    return a


def omul(x, y):
    """Octonion product, broadcasting over leading axes.

    Bilinear in both arguments; satisfies norm2(x y) = norm2(x) norm2(y)
    up to floating roundoff.  Non-associative: use explicit parentheses.
    """
    xa = _as_components(x)
    ya = _as_components(y)
    out_shape = np.broadcast_shapes(xa.shape, ya.shape)
    out = np.zeros(out_shape, dtype=np.float64)
    for i in range(8):
        xi = xa[..., i]
        for j in range(8):
            out[..., MUL_INDEX[i, j]] += MUL_SIGN[i, j] * xi * ya[..., j]
    if isinstance(x, Octonion) and isinstance(y, Octonion):
        return Octonion(out)
    return out


def oconj(x):
    """Conjugate: negates c1..c7.  Anti-automorphism: conj(xy) = conj(y)conj(x)."""
    xa = _as_components(x)
    out = xa.copy()
    out[..., 1:] *= -1.0
    if isinstance(x, Octonion):
        return Octonion(out)
    return out


def onorm2(x):
    """Squared norm, sum of squared components."""
    xa = _as_components(x)
    return np.sum(xa * xa, axis=-1)


def oreal(x):
    """Real part (the e0 component)."""
    return _as_components(x)[..., 0]


def oadd(x, y):
    out = _as_components(x) + _as_components(y)
    if isinstance(x, Octonion) and isinstance(y, Octonion):
        return Octonion(out)
    return out


def osub(x, y):
    out = _as_components(x) - _as_components(y)
    if isinstance(x, Octonion) and isinstance(y, Octonion):
        return Octonion(out)
    return out


def oscale(x, c):
    """Multiply by a real scalar."""
    out = _as_components(x) * float(c)
    if isinstance(x, Octonion):
        return Octonion(out)
    return out


class Octonion:
    """A single octonion: thin immutable wrapper over 8 float64 components."""

    __slots__ = ("_c",)

    def __init__(self, components):
        c = np.asarray(components, dtype=np.float64)
        if c.shape != (8,):
            raise ValueError(f"Octonion needs exactly 8 components, got shape {c.shape}")
        c = c.copy()
        c.setflags(write=False)
        self._c = c

    @classmethod
    def from_real(cls, r):
        c = np.zeros(8)
        c[0] = r
        return cls(c)

    @classmethod
    def zero(cls):
        return cls(np.zeros(8))

    @classmethod
    def basis(cls, i):
        c = np.zeros(8)
        c[i] = 1.0
        return cls(c)

    @property
    def components(self):
        return self._c

    @property
    def real(self):
        return float(self._c[0])

    def conj(self):
        return oconj(self)

    def norm2(self):
        return float(onorm2(self))

    def norm(self):
        return float(np.sqrt(onorm2(self)))

    def is_real(self, tol=0.0):
        return bool(np.all(np.abs(self._c[1:]) <= tol))

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self._c
        return self._c.astype(dtype)

    def __add__(self, other):
        return Octonion(self._c + np.asarray(other, dtype=np.float64))

    def __sub__(self, other):
        return Octonion(self._c - np.asarray(other, dtype=np.float64))

    def __neg__(self):
        return Octonion(-self._c)

    def __mul__(self, other):
        if isinstance(other, numbers.Real):
            return Octonion(self._c * float(other))
        if isinstance(other, Octonion):
            return omul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, numbers.Real):
            return Octonion(self._c * float(other))
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, numbers.Real):
            return Octonion(self._c / float(other))
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, Octonion):
            return bool(np.array_equal(self._c, other._c))
        return NotImplemented

    def __hash__(self):
        return hash(self._c.tobytes())

    def isclose(self, other, rtol=1e-12, atol=1e-12):
        return bool(np.allclose(self._c, np.asarray(other, dtype=np.float64), rtol=rtol, atol=atol))

    def __repr__(self):
        terms = " + ".join(f"{c:g}·e{i}" for i, c in enumerate(self._c) if c != 0)
        return f"Octonion({terms or '0'})"


#: The canonical basis e0..e7 as Octonion objects.
E = tuple(Octonion.basis(i) for i in range(8))
