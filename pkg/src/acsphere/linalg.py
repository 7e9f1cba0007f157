"""Small dense symmetric eigensolver, SPD square root, Pfaffian.

Everything here is pointwise float work on matrices of size <= 8.  The
eigensolver is a cyclic Jacobi iteration with a deterministic sign
convention, so downstream frame constructions are reproducible bit for bit
across runs.
"""

import numpy as np

from .errors import NotSPDError, ShapeError

_JACOBI_SWEEPS = 60


def jacobi_eigh(A, tol=1e-15):
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns (w, V) with eigenvalues ascending and V's columns the
    eigenvectors, each normalized so its largest-magnitude entry is
    positive.
    """
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ShapeError("jacobi_eigh needs a square matrix")
    if n and np.max(np.abs(A - A.T)) > 1e-12 * max(1.0, np.max(np.abs(A))):
        raise NotSPDError("matrix is not symmetric")
    M = 0.5 * (A + A.T)
    V = np.eye(n)
    scale = max(1.0, np.max(np.abs(M))) if n else 1.0
    for _ in range(_JACOBI_SWEEPS):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off = max(off, abs(M[p, q]))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = M[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = 0.5 * (M[q, q] - M[p, p]) / apq
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta == 0.0:
                    t = 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # apply rotation R(p,q) on both sides
                Mp = c * M[:, p] - s * M[:, q]
                Mq = s * M[:, p] + c * M[:, q]
                M[:, p], M[:, q] = Mp, Mq
                Mp = c * M[p, :] - s * M[q, :]
                Mq = s * M[p, :] + c * M[q, :]
                M[p, :], M[q, :] = Mp, Mq
                Vp = c * V[:, p] - s * V[:, q]
                Vq = s * V[:, p] + c * V[:, q]
                V[:, p], V[:, q] = Vp, Vq
    w = np.diag(M).copy()
    order = np.argsort(w, kind="stable")
    w = w[order]
    V = V[:, order]
    for j in range(n):
        k = int(np.argmax(np.abs(V[:, j])))
        if V[k, j] < 0.0:
            V[:, j] = -V[:, j]
    return w, V


def spd_sqrt(M, rel_tol=1e-12):
    """Unique symmetric positive-definite square root of an SPD matrix.

    Eigenvalues at or below 1e-14 (relative) are an error, not a clip: the
    root must stay invertible for conjugation downstream.
    """
    M = np.asarray(M, dtype=float)
    n = M.shape[0]
    if M.shape != (n, n):
        raise ShapeError("spd_sqrt needs a square matrix")
    scale = max(1.0, np.max(np.abs(M))) if n else 1.0
    if n and np.max(np.abs(M - M.T)) > 1e-12 * scale:
        raise NotSPDError("spd_sqrt: matrix is not symmetric")
    w, V = jacobi_eigh(M)
    if n and w[0] <= 1e-14 * scale:
        raise NotSPDError("spd_sqrt: eigenvalue %g is not safely positive" % w[0])
    P = (V * np.sqrt(w)) @ V.T
    P = 0.5 * (P + P.T)
    if np.max(np.abs(P @ P - M)) > rel_tol * scale * 10:
        raise NotSPDError("spd_sqrt failed to converge")
    return P


def pfaffian(A, tol=1e-12):
    """Pfaffian of an even-dimensional antisymmetric matrix.

    Laplace expansion along the first row; exact enough for the sizes used
    here (2n <= 8).  Pf([[0, a], [-a, 0]]) = a.
    """
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    if A.shape != (n, n) or n % 2:
        raise ShapeError("pfaffian needs an even-dimensional square matrix")
    if n and np.max(np.abs(A + A.T)) > tol * max(1.0, np.max(np.abs(A))):
        raise ShapeError("pfaffian of a non-antisymmetric matrix")
    return _pf(A)


def _pf(A):
    n = A.shape[0]
    if n == 0:
        return 1.0
    if n == 2:
        return A[0, 1]
    total = 0.0
    rest = list(range(1, n))
    for idx, j in enumerate(rest):
        sub = [k for k in rest if k != j]
        minor = A[np.ix_(sub, sub)]
        sign = -1.0 if idx % 2 else 1.0
        total += sign * A[0, j] * _pf(minor)
    return total
