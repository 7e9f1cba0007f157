"""Graded form algebra on frame coefficients, degrees 0 through 3.

A k-form is stored as the fully antisymmetric array of its values on frame
k-tuples (no wedge-basis dictionaries; dimensions stay <= 8 here, dense is
simpler and branch-free).  Conventions, frozen project-wide:

* (a ^ b)(X, Y) = a(X) b(Y) - a(Y) b(X), no 1/2 factor;
* degree (1,2) products by the shuffle rule
  (a ^ B)(X,Y,Z) = a(X)B(Y,Z) - a(Y)B(X,Z) + a(Z)B(X,Y).
"""

from dataclasses import dataclass

import numpy as np

from . import kernels as K
from .errors import DegreeError, ShapeError

MAX_DEGREE = 3


def _is_object(*arrays):
    return any(np.asarray(a).dtype == object for a in arrays)


def _wedge11(a, b):
    if _is_object(a, b):
        return np.outer(a, b) - np.outer(b, a)
    return K.wedge11(np.asarray(a, float), np.asarray(b, float))


def _wedge12(a, B):
    if _is_object(a, B):
        d = len(a)
        out = np.empty((d, d, d), dtype=object)
        for i in range(d):
            for j in range(d):
                for k in range(d):
                    out[i, j, k] = a[i] * B[j, k] - a[j] * B[i, k] + a[k] * B[i, j]
        return out
    return K.wedge12(np.asarray(a, float), np.asarray(B, float))


def wedge_coeffs(deg_a, a, deg_b, b):
    """Wedge on raw coefficient arrays; returns (degree, coeffs)."""
    if deg_a + deg_b > MAX_DEGREE:
        raise DegreeError(
            "wedge degree %d + %d exceeds %d" % (deg_a, deg_b, MAX_DEGREE)
        )
    if deg_a == 0:
        return deg_b, a * np.asarray(b) if np.ndim(b) else a * b
    if deg_b == 0:
        return deg_a, np.asarray(a) * b
    if deg_a == 1 and deg_b == 1:
        return 2, _wedge11(a, b)
    if deg_a == 1 and deg_b == 2:
        return 3, _wedge12(a, b)
    if deg_a == 2 and deg_b == 1:
        # even grading: B ^ a = a ^ B
        return 3, _wedge12(b, a)
    raise DegreeError("unsupported wedge degrees (%d, %d)" % (deg_a, deg_b))


@dataclass(frozen=True)
class FormCoeffs:
    """A k-form as its antisymmetric value array on frame directions."""

    degree: int
    dim: int
    coeffs: np.ndarray

    def __post_init__(self):
        if not 0 <= self.degree <= MAX_DEGREE:
            raise DegreeError("degree %d outside 0..%d" % (self.degree, MAX_DEGREE))
        expected = (self.dim,) * self.degree
        if np.shape(self.coeffs) != expected:
            raise ShapeError(
                "degree-%d form needs shape %r, got %r"
                % (self.degree, expected, np.shape(self.coeffs))
            )

    @staticmethod
    def zero(degree, dim):
        return FormCoeffs(degree, dim, np.zeros((dim,) * degree))

    def __add__(self, other):
        self._check_like(other)
        return FormCoeffs(self.degree, self.dim, self.coeffs + other.coeffs)

    def __sub__(self, other):
        self._check_like(other)
        return FormCoeffs(self.degree, self.dim, self.coeffs - other.coeffs)

    def __mul__(self, scalar):
        return FormCoeffs(self.degree, self.dim, self.coeffs * scalar)

    __rmul__ = __mul__

    def __neg__(self):
        return FormCoeffs(self.degree, self.dim, -self.coeffs)

    def _check_like(self, other):
        if self.degree != other.degree or self.dim != other.dim:
            raise ShapeError("form degree/dimension mismatch")

    def antisymmetry_residual(self):
        c = self.coeffs
        if self.degree < 2:
            return 0.0
        if self.degree == 2:
            return float(np.max(np.abs(c + c.T))) if c.size else 0.0
        r = np.max(np.abs(c + np.transpose(c, (1, 0, 2))))
        r = max(r, np.max(np.abs(c + np.transpose(c, (0, 2, 1)))))
        return float(r)

    def max_abs(self):
        return float(np.max(np.abs(self.coeffs))) if self.coeffs.size else 0.0


def wedge(a, b):
    """Wedge product of two forms; bilinear, graded-anticommutative."""
    if a.dim != b.dim:
        raise ShapeError("wedge of forms over different dimensions")
    deg, coeffs = wedge_coeffs(a.degree, a.coeffs, b.degree, b.coeffs)
    return FormCoeffs(deg, a.dim, coeffs)


@dataclass(frozen=True)
class MatrixForm:
    """Matrix with k-form entries, stored as one (r, c, dim^k) array."""

    degree: int
    dim: int
    entries: np.ndarray

    def __post_init__(self):
        shape = np.shape(self.entries)
        if len(shape) != 2 + self.degree or shape[2:] != (self.dim,) * self.degree:
            raise ShapeError("matrix-form entry array has wrong shape %r" % (shape,))

    @property
    def shape(self):
        return np.shape(self.entries)[:2]

    @staticmethod
    def zero(degree, dim, rows, cols):
        return MatrixForm(degree, dim, np.zeros((rows, cols) + (dim,) * degree))

    @staticmethod
    def scalar_identity(dim, size):
        return MatrixForm(0, dim, np.eye(size))

    def entry(self, i, j):
        return FormCoeffs(self.degree, self.dim, np.asarray(self.entries[i, j]))

    def __add__(self, other):
        self._check_like(other)
        return MatrixForm(self.degree, self.dim, self.entries + other.entries)

    def __sub__(self, other):
        self._check_like(other)
        return MatrixForm(self.degree, self.dim, self.entries - other.entries)

    def __mul__(self, scalar):
        return MatrixForm(self.degree, self.dim, self.entries * scalar)

    __rmul__ = __mul__

    def __neg__(self):
        return MatrixForm(self.degree, self.dim, -self.entries)

    def _check_like(self, other):
        if (
            self.degree != other.degree
            or self.dim != other.dim
            or self.shape != other.shape
        ):
            raise ShapeError("matrix-form mismatch")

    def transpose(self):
        axes = (1, 0) + tuple(range(2, 2 + self.degree))
        return MatrixForm(self.degree, self.dim, np.transpose(self.entries, axes))

    def trace(self):
        r, c = self.shape
        if r != c:
            raise ShapeError("trace of a non-square matrix form")
        acc = np.zeros((self.dim,) * self.degree)
        if _is_object(self.entries):
            acc = acc.astype(object)
        for i in range(r):
            acc = acc + self.entries[i, i]
        return FormCoeffs(self.degree, self.dim, np.asarray(acc))

    def skewness_residual(self):
        return float(np.max(np.abs(self.entries + self.transpose().entries)))

    def max_abs(self):
        return float(np.max(np.abs(self.entries))) if self.entries.size else 0.0


def matrix_form_product(M, N):
    """Entrywise sum_k M[i,k] ^ N[k,j]; degrees add."""
    if M.dim != N.dim:
        raise ShapeError("matrix forms over different dimensions")
    r, m = M.shape
    m2, c = N.shape
    if m != m2:
        raise ShapeError("inner dimensions %d and %d differ" % (m, m2))
    deg = M.degree + N.degree
    if deg > MAX_DEGREE:
        raise DegreeError("matrix-form product degree %d exceeds %d" % (deg, MAX_DEGREE))
    A, B = M.entries, N.entries
    if M.degree == 1 and N.degree == 1:
        if _is_object(A, B):
            d = M.dim
            out = np.empty((r, c, d, d), dtype=object)
            for i in range(r):
                for j in range(c):
                    acc = np.zeros((d, d), dtype=object)
                    for k in range(m):
                        acc = acc + (np.outer(A[i, k], B[k, j]) - np.outer(B[k, j], A[i, k]))
                    out[i, j] = acc
            return MatrixForm(2, M.dim, out)
        return MatrixForm(2, M.dim, K.matmul_forms_11(np.asarray(A, float), np.asarray(B, float)))
    if M.degree == 0:
        return MatrixForm(deg, M.dim, np.tensordot(A, B, axes=(1, 0)))
    if N.degree == 0:
        # sum_k A[i,k,...] B[k,j]: contract A axis 1 with B axis 0
        out = np.tensordot(A, B, axes=(1, 0))  # (r, dim..., c)
        out = np.moveaxis(out, -1, 1)
        return MatrixForm(deg, M.dim, out)
    # remaining case: degrees (1,2)/(2,1), only needed entrywise
    d = M.dim
    out = np.zeros((r, c) + (d,) * deg)
    if _is_object(A, B):
        out = out.astype(object)
    for i in range(r):
        for j in range(c):
            acc = None
            for k in range(m):
                _, w = wedge_coeffs(M.degree, A[i, k], N.degree, B[k, j])
                acc = w if acc is None else acc + w
            out[i, j] = acc
    return MatrixForm(deg, M.dim, out)
