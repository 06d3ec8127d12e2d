"""Octonionic matrix algebra for 2x2, 3x3 and 4x4 matrices.

A matrix of octonions is stored as a float64 array of shape (n, n, 8)
(trailing axis = octonion components).  Every operation here also accepts
stacked input of shape (..., n, n, 8) and vectorizes over the leading
axes; the Monte Carlo engine relies on this.

The 4x4 "determinant" (laplace_det4) follows the Laplace template by
complementary 2x2 minors along the first two rows, with each minor taken
as the REAL PART of the symmetrized 2x2 determinant odet2.  On matrices
with all-real entries this is exactly the classical determinant.  On
octonionic Hermitian matrices it is a real-valued determinant surrogate:
the full symmetrized minors carry order-one imaginary parts that the
expansion discards (odet2_minor_rel_imag measures them), and the value
is NOT the classical determinant on complex- or quaternion-subalgebra
matrices.  laplace_expansion_octonion_sum exposes the alternative
full-octonion-product expansion, which IS the classical determinant on
the complex subalgebra but produces non-real sums (and different signs)
on generic octonionic Hermitian input.
"""

from __future__ import annotations

import numpy as np

from .octonion import MUL_INDEX, MUL_SIGN, Octonion, oconj, omul, onorm2

__all__ = [
    "OctoMatrix",
    "DimensionMismatch",
    "NotHermitian",
    "ImaginaryResidualExceeded",
    "mmult",
    "gram",
    "ctranspose",
    "partial_transpose",
    "odet2",
    "laplace_det4",
    "laplace_det4_report",
    "laplace_det4_all_row_pairs",
    "laplace_expansion_octonion_sum",
    "odet2_minor_rel_imag",
    "det3_hermitian",
    "eig2_hermitian",
    "is_hermitian",
    "hermitian_deviation",
]

#: laplace_det4 raises when the input's Hermitian deviation exceeds this.
RESIDUAL_RTOL = 1e-8

# Expansion along rows {0,1}: column pairs, complements, Laplace signs
# (-1)^(sum of 1-based row and column indices) = (-1)^(a+b+1) for 0-based cols.
_COL_PAIRS = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
_COL_COMPL = [(2, 3), (1, 3), (1, 2), (0, 3), (0, 2), (0, 1)]
_PAIR_SIGNS = np.array([(-1.0) ** (a + b + 1) for a, b in _COL_PAIRS])
_ROW_PAIRS = [(0, 1), (0, 2), (0, 3)]
_ROW_COMPL = [(2, 3), (1, 3), (1, 2)]


class DimensionMismatch(ValueError):
    """Matrix dimensions incompatible with the requested operation."""


class NotHermitian(ValueError):
    """Input matrix fails the Hermitian predicate."""


class ImaginaryResidualExceeded(ArithmeticError):
    """The realness assumption behind the Laplace expansion failed.

    laplace_det4 is only meaningful for Hermitian input; this is raised
    when the input deviates from Hermiticity beyond tolerance.  Carries
    optional provenance (seed, stream) when raised from the sampling
    pipeline.
    """

    def __init__(self, residual, real_part=None, provenance=None):
        self.residual = float(residual)
        self.real_part = real_part
        self.provenance = provenance
        msg = f"Hermitian/realness deviation {self.residual:.3e} exceeds tolerance"
        if real_part is not None:
            msg += f" (value {float(real_part):.3e})"
        if provenance is not None:
            msg += f"; sample provenance {provenance}"
        super().__init__(msg)


def _as_matrix(m, dim=None):
    a = np.asarray(m, dtype=np.float64)
    if a.ndim < 3 or a.shape[-1] != 8 or a.shape[-2] != a.shape[-3]:
        raise DimensionMismatch(f"expected shape (..., n, n, 8), got {a.shape}")
    if dim is not None and a.shape[-2] != dim:
        raise DimensionMismatch(f"expected {dim}x{dim} matrix, got {a.shape[-2]}x{a.shape[-2]}")
    return a


def mmult(a, b):
    """Matrix product with octonion entries: C[i,j] = sum_k A[i,k] B[k,j].

    Each summand is a single binary octonion product, so no association
    ambiguity arises.  Stacked inputs broadcast over leading axes.
    """
    aa = _as_matrix(a)
    bb = _as_matrix(b)
    if aa.shape[-2] != bb.shape[-3]:
        raise DimensionMismatch(f"inner dimensions differ: {aa.shape} vs {bb.shape}")
    batch = np.broadcast_shapes(aa.shape[:-3], bb.shape[:-3])
    n = aa.shape[-2]
    out = np.zeros(batch + (n, bb.shape[-2], 8), dtype=np.float64)
    # 64 real batched matmuls, one per component pair in the product table.
    for i in range(8):
        ai = aa[..., i]
        for j in range(8):
            out[..., MUL_INDEX[i, j]] += MUL_SIGN[i, j] * (ai @ bb[..., j])
    if isinstance(a, OctoMatrix) and isinstance(b, OctoMatrix):
        return OctoMatrix(out)
    return out


def gram(t):
    """W = T^dagger T for upper-triangular T, exploiting sparsity and symmetry.

    Equivalent to mmult(ctranspose(t), t) but roughly 3x cheaper; used by
    the Monte Carlo hot path.  Output is exactly Hermitian by mirroring.
    """
    tt = _as_matrix(t)
    n = tt.shape[-2]
    batch = tt.shape[:-3]
    out = np.zeros(batch + (n, n, 8), dtype=np.float64)
    for i in range(n):
        for j in range(i, n):
            acc = np.zeros(batch + (8,), dtype=np.float64)
            for k in range(i + 1):  # T[k,i] = 0 for k > i
                acc += omul(oconj(tt[..., k, i, :]), tt[..., k, j, :])
            out[..., i, j, :] = acc
            if j > i:
                out[..., j, i, 0] = acc[..., 0]
                out[..., j, i, 1:] = -acc[..., 1:]
    if isinstance(t, OctoMatrix):
        return OctoMatrix(out)
    return out


def ctranspose(a):
    """Conjugate transpose: out[i][j] = conj(a[j][i]).  Involution."""
    aa = _as_matrix(a)
    out = np.swapaxes(aa, -2, -3).copy()
    out[..., 1:] *= -1.0
    if isinstance(a, OctoMatrix):
        return OctoMatrix(out)
    return out


def hermitian_deviation(a):
    """Max-norm deviation from Hermiticity, relative to the entry scale."""
    aa = _as_matrix(a)
    dev = np.max(np.abs(aa - np.asarray(ctranspose(aa))), axis=(-1, -2, -3))
    scale = np.max(np.abs(aa), axis=(-1, -2, -3))
    return dev / (1.0 + scale)


def is_hermitian(a, rtol=1e-10):
    """Whether a equals its conjugate transpose, to relative tolerance."""
    return bool(np.all(hermitian_deviation(a) <= rtol))


def partial_transpose(a):
    """Transpose on the second tensor factor of a 4x4 two-qubit matrix.

    Rows and columns are read as index pairs (i,j), i,j in {1,2}, with
    row = 2(i-1) + j; the output entry at ((i,l),(k,j)) equals the input
    entry at ((i,j),(k,l)).  Equivalently: transpose each 2x2 block in
    place.  Involution; maps Hermitian matrices to Hermitian matrices.
    """
    aa = _as_matrix(a, dim=4)
    batch = aa.shape[:-3]
    v = aa.reshape(batch + (2, 2, 2, 2, 8))
    out = np.swapaxes(v, -4, -2).reshape(batch + (4, 4, 8)).copy()
    if isinstance(a, OctoMatrix):
        return OctoMatrix(out)
    return out


def odet2(m):
    """Symmetrized 2x2 determinant (p s + s p - q r - r q) / 2, an octonion.

    Reduces to ad - bc for real entries and to ad - |b|^2 for Hermitian
    [[a, b], [conj(b), d]].  For generic non-Hermitian input (such as the
    off-diagonal minors of a Hermitian 4x4 matrix) the value has a
    nonzero imaginary part.
    """
    mm = _as_matrix(m, dim=2)
    out = _odet2_entries(mm[..., 0, 0, :], mm[..., 0, 1, :], mm[..., 1, 0, :], mm[..., 1, 1, :])
    if isinstance(m, OctoMatrix):
        return Octonion(out)
    return out


def _odet2_entries(p, q, r, s):
    return 0.5 * (omul(p, s) + omul(s, p) - omul(q, r) - omul(r, q))


def _minors(m, rows, compl_rows):
    cols_a = [p[0] for p in _COL_PAIRS]
    cols_b = [p[1] for p in _COL_PAIRS]
    cca = [p[0] for p in _COL_COMPL]
    ccb = [p[1] for p in _COL_COMPL]
    r0, r1 = rows
    r2, r3 = compl_rows
    top = _odet2_entries(
        m[..., r0, cols_a, :], m[..., r0, cols_b, :],
        m[..., r1, cols_a, :], m[..., r1, cols_b, :],
    )
    bottom = _odet2_entries(
        m[..., r2, cca, :], m[..., r2, ccb, :],
        m[..., r3, cca, :], m[..., r3, ccb, :],
    )
    return top, bottom


def _rel_imag(o):
    mag = np.sqrt(np.sum(o * o, axis=-1))
    imag = np.sqrt(np.sum(o[..., 1:] ** 2, axis=-1))
    return imag / (1.0 + mag)


def odet2_minor_rel_imag(m):
    """Largest relative imaginary magnitude among the twelve odet2 minors
    of the rows-{1,2} Laplace expansion.  Diagnostic: order one on
    generic octonionic Hermitian matrices."""
    mm = _as_matrix(m, dim=4)
    top, bottom = _minors(mm, (0, 1), (2, 3))
    rel = np.maximum(np.max(_rel_imag(top), axis=-1), np.max(_rel_imag(bottom), axis=-1))
    if rel.ndim == 0:
        return float(rel)
    return rel


def laplace_det4(m):
    """4x4 determinant surrogate: Laplace expansion with real-projected minors.

    det = sum over the six column pairs S of sign(S) * Re(odet2(top_S)) *
    Re(odet2(bottom_Sc)), expanding along the first two rows.  Exactly the
    classical determinant for all-real entries; real-valued by
    construction for any input.

    Raises ImaginaryResidualExceeded when the input is not Hermitian to
    RESIDUAL_RTOL relative, since the expansion is only meaningful under
    the Hermitian/realness assumption.
    """
    value, dev, _ = laplace_det4_report(m)
    bad = dev > RESIDUAL_RTOL
    if np.any(bad):
        i = int(np.argmax(dev))
        raise ImaginaryResidualExceeded(np.ravel(dev)[i], np.ravel(value)[i])
    if value.ndim == 0:
        return float(value)
    return value


def laplace_det4_report(m):
    """Laplace determinant with diagnostics, no raising.

    Returns (value, hermitian_deviation, minor_rel_imag): the real-valued
    expansion, the input's relative deviation from Hermiticity (the
    guarded assumption), and the largest relative imaginary magnitude
    among the discarded minor imaginary parts.
    """
    mm = _as_matrix(m, dim=4)
    top, bottom = _minors(mm, (0, 1), (2, 3))
    value = np.sum(_PAIR_SIGNS * top[..., 0] * bottom[..., 0], axis=-1)
    dev = hermitian_deviation(mm)
    rel = np.maximum(np.max(_rel_imag(top), axis=-1), np.max(_rel_imag(bottom), axis=-1))
    return np.asarray(value), np.asarray(dev), np.asarray(rel)


def laplace_det4_all_row_pairs(m):
    """Diagnostic: the real-projected expansion along all three row-pair
    choices ((1,2),(1,3),(1,4) against their complements) and the spread
    max - min.  The spread is zero on real-entry matrices and quantifies
    the expansion's row-pair dependence on octonionic input."""
    mm = _as_matrix(m, dim=4)
    values = []
    for rows, compl in zip(_ROW_PAIRS, _ROW_COMPL):
        signs = np.array([
            (-1.0) ** (rows[0] + rows[1] + a + b)
            for a, b in _COL_PAIRS
        ])
        top, bottom = _minors(mm, rows, compl)
        values.append(np.sum(signs * top[..., 0] * bottom[..., 0], axis=-1))
    values = np.stack(values, axis=-1)
    spread = np.max(values, axis=-1) - np.min(values, axis=-1)
    return values, spread


def laplace_expansion_octonion_sum(m):
    """The expansion variant with full octonion minor products.

    Returns the octonion sum (shape (..., 8)) of sign(S) * omul(top_S,
    bottom_Sc).  On Hermitian matrices over the complex subalgebra
    span{e0,e1} its real part equals the classical complex determinant.
    On generic octonionic Hermitian input the sum has order-one imaginary
    parts and its real part differs from laplace_det4; exposed for
    diagnostics and tests.
    """
    mm = _as_matrix(m, dim=4)
    top, bottom = _minors(mm, (0, 1), (2, 3))
    prod = omul(top, bottom)  # order fixed: (top minor)(bottom minor)
    return np.sum(_PAIR_SIGNS[:, None] * prod, axis=-2)


def det3_hermitian(m, rtol=1e-10):
    """Determinant of a 3x3 Hermitian octonionic matrix.

    With real diagonal (a, b, c) and off-diagonals x = m[1][2],
    y = m[0][2], z = m[0][1]:

        a b c - a |x|^2 - b |y|^2 - c |z|^2 + 2 Re((conj(y) z) x)

    Raises NotHermitian when the Hermitian predicate fails.
    """
    mm = _as_matrix(m, dim=3)
    if not is_hermitian(mm, rtol=rtol):
        raise NotHermitian("det3_hermitian requires a Hermitian matrix")
    return _det3_hermitian_unchecked(mm)


def _det3_hermitian_unchecked(mm):
    a = mm[..., 0, 0, 0]
    b = mm[..., 1, 1, 0]
    c = mm[..., 2, 2, 0]
    x = mm[..., 1, 2, :]
    y = mm[..., 0, 2, :]
    z = mm[..., 0, 1, :]
    cross = omul(omul(oconj(y), z), x)[..., 0]
    det = a * b * c - a * onorm2(x) - b * onorm2(y) - c * onorm2(z) + 2.0 * cross
    if det.ndim == 0:
        return float(det)
    return det


def eig2_hermitian(m, rtol=1e-10):
    """Eigenvalues of a 2x2 Hermitian octonionic matrix, ascending.

    The two roots of lambda^2 - tr(m) lambda + Re(odet2(m)) = 0; both are
    real because the discriminant (a-d)^2 + 4|b|^2 is nonnegative.
    """
    mm = _as_matrix(m, dim=2)
    if not is_hermitian(mm, rtol=rtol):
        raise NotHermitian("eig2_hermitian requires a Hermitian matrix")
    a = mm[..., 0, 0, 0]
    d = mm[..., 1, 1, 0]
    b2 = onorm2(mm[..., 0, 1, :])
    half_tr = 0.5 * (a + d)
    disc = np.sqrt(0.25 * (a - d) ** 2 + b2)
    lo, hi = half_tr - disc, half_tr + disc
    if np.ndim(lo) == 0:
        return float(lo), float(hi)
    return lo, hi


class OctoMatrix:
    """Dense n x n matrix of octonions, n in {2, 3, 4}.

    A Hermitian 4x4 octonionic matrix has 4 + 6*8 = 52 real parameters
    (51 once the trace is fixed).
    """

    __slots__ = ("_m",)

    def __init__(self, entries):
        m = np.asarray(entries, dtype=np.float64)
        if m.ndim != 3 or m.shape[0] != m.shape[1] or m.shape[2] != 8:
            raise DimensionMismatch(f"expected shape (n, n, 8), got {m.shape}")
        if m.shape[0] not in (2, 3, 4):
            raise DimensionMismatch(f"supported dimensions are 2, 3, 4; got {m.shape[0]}")
        self._m = m.copy()
        self._m.setflags(write=False)

    @classmethod
    def zeros(cls, n):
        return cls(np.zeros((n, n, 8)))

    @classmethod
    def identity(cls, n):
        m = np.zeros((n, n, 8))
        for i in range(n):
            m[i, i, 0] = 1.0
        return cls(m)

    @classmethod
    def from_real(cls, real_matrix):
        r = np.asarray(real_matrix, dtype=np.float64)
        m = np.zeros(r.shape + (8,))
        m[..., 0] = r
        return cls(m)

    @classmethod
    def from_entries(cls, rows):
        """Build from a nested list of Octonion / 8-component sequences."""
        n = len(rows)
        m = np.zeros((n, n, 8))
        for i, row in enumerate(rows):
            if len(row) != n:
                raise DimensionMismatch("ragged rows")
            for j, entry in enumerate(row):
                m[i, j] = np.asarray(entry, dtype=np.float64)
        return cls(m)

    @property
    def dim(self):
        return self._m.shape[0]

    @property
    def entries(self):
        return self._m

    def entry(self, i, j):
        return Octonion(self._m[i, j])

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self._m
        return self._m.astype(dtype)

    def __add__(self, other):
        return OctoMatrix(self._m + np.asarray(other, dtype=np.float64))

    def __sub__(self, other):
        return OctoMatrix(self._m - np.asarray(other, dtype=np.float64))

    def __matmul__(self, other):
        return mmult(self, other)

    def scale(self, c):
        return OctoMatrix(self._m * float(c))

    def ctranspose(self):
        return ctranspose(self)

    def is_hermitian(self, rtol=1e-10):
        return is_hermitian(self._m, rtol=rtol)

    def isclose(self, other, rtol=1e-12, atol=1e-12):
        return bool(np.allclose(self._m, np.asarray(other, dtype=np.float64), rtol=rtol, atol=atol))

    def __repr__(self):
        return f"OctoMatrix(dim={self.dim})"
