"""Almost complex structures, the deformed Hermitian metric, the positive
square-root tensor, the lambda normal form, and adapted frames.

All structures are exposed as fields of chart-basis endomorphism matrices;
because both charts are conformal, an endomorphism has identical components
in the chart basis and in the round-orthonormal frame obtained by scaling
it, which this module uses throughout.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels as K
from . import octonion, sphere
from .errors import AcsError, FrameError, NotSPDError
from .fields import values
from .linalg import jacobi_eigh, spd_sqrt
from .sphere import Point

_SQ_TOL = 1e-8  # hard gate on |J^2 + I| before metric constructions
_LAMBDA_EPS = 1e-12  # below this a plane counts as metric-orthogonal


class AcsField:
    """Field of tangent-space endomorphisms with J^2 = -I."""

    def __init__(self, dim, name):
        self.dim = dim
        self.name = name

    def matrix(self, p):
        raise NotImplementedError

    def __call__(self, p):
        return self.matrix(p)

    def square_residual(self, p):
        Jm = values(self.matrix(p))
        return float(np.max(np.abs(Jm @ Jm + np.eye(self.dim))))

    def check_square(self, p, tol=_SQ_TOL):
        r = self.square_residual(p)
        if r > tol:
            raise AcsError(
                "%s: |J^2 + I| = %.3e exceeds %.1e at %r" % (self.name, r, tol, p)
            )


class CrossProductAcs(AcsField):
    """J_p(X) = p x X for a fixed cross-product table, in chart basis.

    With the embedding differential E and conformal factor s, the chart
    matrix is (1/s) E^t M_p E where M_p is 'cross with the embedded point'.
    """

    def __init__(self, struct_consts, name, sign=1.0):
        super().__init__(struct_consts.shape[0] - 1, name)
        self._f = struct_consts
        self._sign = sign

    def matrix(self, p):
        x = sphere.embed(p)
        E = sphere.embed_jacobian(p)
        M = octonion.cross_matrix(self._f, x)
        s = sphere.conformal_factor(p)
        return (self._sign / s) * np.dot(E.T, np.dot(M, E))


def standard_acs_s2():
    """The standard complex structure of the 2-sphere.

    Equals the constant rotation [[0, -1], [1, 0]] in north-chart
    coordinates; the south-chart expression is the transition transform of
    that (the opposite rotation), so the field is globally well defined.
    """
    return CrossProductAcs(octonion.CROSS_3D, "s2-standard", sign=-1.0)


def octonionic_acs_s6():
    """The cross-product almost complex structure of the 6-sphere."""
    return CrossProductAcs(octonion.CROSS_7D, "s6-octonionic", sign=1.0)


class ChartLocalAcs(AcsField):
    """Structure whose data lives on one chart; the other chart evaluates
    through the transition map and its differential."""

    base_chart = sphere.NORTH

    def _base_matrix(self, p):
        raise NotImplementedError

    def matrix(self, p):
        if p.chart == self.base_chart:
            return self._base_matrix(p)
        q = sphere.transition(p)
        D = sphere.transition_jacobian(q)  # base-chart tangents -> other chart
        Dinv = sphere.transition_jacobian(p)
        return np.dot(D, np.dot(self._base_matrix(q), Dinv))


class NormalFormBlockAcs(ChartLocalAcs):
    """Structure assembled from per-plane lambda fields and a frame field.

    In the supplied round-orthonormal frame the matrix is block diagonal
    with blocks [[l, -sqrt(1+l^2)], [sqrt(1+l^2), -l]], so J^2 = -I holds
    identically whatever the lambda fields do.
    """

    def __init__(self, lambda_fns, rotation_fn=None, name="deformed", base_chart=sphere.NORTH):
        super().__init__(2 * len(lambda_fns), name)
        self._lams = list(lambda_fns)
        self._rot = rotation_fn
        self.base_chart = base_chart

    def _base_matrix(self, p):
        u = p.u_array()
        d = self.dim
        dual = u.dtype == object
        B = np.zeros((d, d), dtype=object if dual else float)
        for i, lam_fn in enumerate(self._lams):
            lam = lam_fn(u)
            m = K.sqrt_s(1.0 + lam * lam)
            B[2 * i, 2 * i] = lam
            B[2 * i, 2 * i + 1] = -m
            B[2 * i + 1, 2 * i] = m
            B[2 * i + 1, 2 * i + 1] = -lam
        if self._rot is None:
            return B
        R = self._rot(p)
        return np.dot(R, np.dot(B, np.swapaxes(R, 0, 1)))


def deformed_acs(lambda_fns, rotation_fn=None, name="s2-deformed"):
    """Test structure with prescribed plane parameters lambda_i(p)."""
    return NormalFormBlockAcs(lambda_fns, rotation_fn, name=name)


class MatrixExprAcs(ChartLocalAcs):
    """Structure given entrywise by chart-coordinate functions on one chart."""

    def __init__(self, entry_fns, name="file-structure", base_chart=sphere.NORTH):
        super().__init__(len(entry_fns), name)
        self._fns = entry_fns
        self.base_chart = base_chart

    def _base_matrix(self, p):
        u = p.u_array()
        d = self.dim
        dual = u.dtype == object
        J = np.zeros((d, d), dtype=object if dual else float)
        for i in range(d):
            for j in range(d):
                J[i, j] = self._fns[i][j](u)
        return J


# -- Hermitian metric and the square-root tensor ---------------------------


class HermitianMetric:
    """The J-invariant metric (<X,Y> + <JX,JY>)/2 built on the round metric."""

    def __init__(self, acs):
        self.acs = acs
        self.dim = acs.dim

    def frame_matrix(self, p):
        """Components in the conformal round-orthonormal frame: (I + J^t J)/2."""
        Jm = self.acs.matrix(p)
        return 0.5 * (np.eye(self.dim) + np.dot(np.swapaxes(Jm, 0, 1), Jm))

    def matrix(self, p):
        """Chart-coordinate matrix (conformal factor times frame matrix)."""
        return sphere.conformal_factor(p) * self.frame_matrix(p)

    def inner(self, p, X, Y):
        return np.dot(X, np.dot(self.matrix(p), Y))

    def norm(self, p, X):
        return K.sqrt_s(self.inner(p, X, X))

    def area_ratio(self, p):
        """sqrt(det g_f / det g): deformed area per unit round area."""
        return float(np.sqrt(np.linalg.det(values(self.frame_matrix(p)))))

    def j_invariance_residual(self, p, n_vectors=8, seed=0):
        Jm = values(self.acs.matrix(p))
        G = values(self.matrix(p))
        rng = np.random.default_rng(seed)
        worst = 0.0
        for _ in range(n_vectors):
            X = rng.standard_normal(self.dim)
            Y = rng.standard_normal(self.dim)
            worst = max(
                worst, abs((Jm @ X) @ G @ (Jm @ Y) - X @ G @ Y)
            )
        return worst


def hermitian_metric(acs, p):
    """Chart-basis matrix of the deformed metric at p (with the J^2 gate)."""
    acs.check_square(p)
    return HermitianMetric(acs).matrix(p)


def p_tensor(acs, p):
    """Positive symmetric root of the deformed metric in the round frame.

    P^2 = (I + J^t J)/2; conjugation by P carries metric-compatible
    structures for the deformed metric to round-compatible ones.
    """
    acs.check_square(p)
    M = values(HermitianMetric(acs).frame_matrix(p))
    return spd_sqrt(M)


def conjugate_acs(P, J1, p=None):
    """P J1 P^{-1} for a matrix P and a structure J1 (field or matrix)."""
    J1m = J1 if isinstance(J1, np.ndarray) else values(J1.matrix(p))
    P = np.asarray(P, dtype=float)
    try:
        Pinv = np.linalg.inv(P)
    except np.linalg.LinAlgError as exc:
        raise NotSPDError("conjugation needs an invertible P") from exc
    return P @ J1m @ Pinv


# -- frames -----------------------------------------------------------------


@dataclass(frozen=True)
class FrameAtPoint:
    """Ordered tangent frame at a point, columns in chart coordinates."""

    point: Point
    vectors: np.ndarray  # (2n, 2n), column k = k-th frame vector
    metric: str  # "round" or "hermitian": which metric it is orthonormal for
    adapted: bool = False

    def gram_residual(self, metric_matrix):
        V = self.vectors
        gram = V.T @ np.asarray(metric_matrix, float) @ V
        return float(np.max(np.abs(gram - np.eye(V.shape[0]))))

    def adaptedness_residual(self, acs_matrix):
        V = self.vectors
        d = V.shape[0]
        worst = 0.0
        for i in range(d // 2):
            worst = max(
                worst,
                float(np.max(np.abs(np.asarray(acs_matrix) @ V[:, 2 * i] - V[:, 2 * i + 1]))),
                float(np.max(np.abs(np.asarray(acs_matrix) @ V[:, 2 * i + 1] + V[:, 2 * i]))),
            )
        return worst


# -- normal form ------------------------------------------------------------


@dataclass(frozen=True)
class NormalFormData:
    """Pointwise canonical data of a structure: plane parameters and frames."""

    lam: np.ndarray  # (n,) plane parameters, >= 0, descending
    frame: FrameAtPoint  # round-orthonormal frame putting J in block form
    mu: np.ndarray  # (2n,) stretch factors of the square-root tensor
    rotated_frame: FrameAtPoint  # the 45-degree-rotated frame diagonalizing P


def mu_from_lambda(lam):
    """Stretch factors per plane: the two roots of the block metric."""
    lam = np.asarray(lam, dtype=float)
    m = np.sqrt(1.0 + lam * lam)
    mu = np.empty(2 * lam.size)
    mu[0::2] = np.sqrt(1.0 + lam * lam + lam * m)
    mu[1::2] = np.sqrt(1.0 + lam * lam - lam * m)
    return mu


def assemble_from_normal_form(lam, ebar):
    """Matrix of the structure with given plane parameters in frame ebar."""
    d = ebar.shape[0]
    J = np.zeros((d, d))
    for i, l in enumerate(np.asarray(lam, float)):
        a = ebar[:, 2 * i]
        b = ebar[:, 2 * i + 1]
        m = np.sqrt(1.0 + l * l)
        J += l * (np.outer(a, a) - np.outer(b, b)) + m * (np.outer(b, a) - np.outer(a, b))
    return J


def _first_significant_sign(v):
    for x in v:
        if abs(x) > 1e-10:
            return 1.0 if x > 0 else -1.0
    return 1.0


def normal_form_matrix(J, cluster_tol=1e-12):
    """Canonical (lam, ebar, mu, etilde) of an admissible matrix J.

    Split J into skew part K and symmetric part S (they anticommute exactly
    when J^2 = -I).  Eigenplanes of -K^2 carry eigenvalues 1 + lam^2;
    inside each eigenspace S acts with eigenvalues +-lam, and K maps the
    +lam space onto the -lam space, which yields the paired basis directly.
    Eigenvalue clusters closer than ``cluster_tol`` are merged and get an
    arbitrary (but deterministic) plane choice.
    """
    J = np.asarray(J, dtype=float)
    d = J.shape[0]
    if d % 2:
        raise FrameError("odd-dimensional structure matrix")
    n = d // 2
    if np.max(np.abs(J @ J + np.eye(d))) > _SQ_TOL:
        raise AcsError("normal form of a matrix with J^2 != -I")
    Kskew = 0.5 * (J - J.T)
    S = 0.5 * (J + J.T)
    T = -(Kskew @ Kskew)
    w, V = jacobi_eigh(T)
    scale = max(1.0, w[-1])
    clusters = []
    start = 0
    for i in range(1, d + 1):
        if i == d or w[i] - w[i - 1] > cluster_tol * scale:
            clusters.append(list(range(start, i)))
            start = i
    planes = []
    for idx in clusters:
        if len(idx) % 2:
            raise AcsError("defective skew spectrum (odd eigenvalue cluster)")
        k = len(idx) // 2
        Vc = V[:, idx]
        ws, Q = jacobi_eigh(Vc.T @ S @ Vc)
        # the symmetric part acts as +-lam inside the cluster; below the
        # noise floor the plane split is genuinely arbitrary
        lam_s = float(np.max(np.abs(ws))) if len(ws) else 0.0
        if lam_s > 1e-10:
            if np.sum(ws > 0) != k:
                raise AcsError("defective symmetric part inside an eigenplane cluster")
            for col in range(k, 2 * k):
                a = Vc @ Q[:, col]
                b = Kskew @ a
                b /= np.linalg.norm(b)
                planes.append((float(ws[col]), a, b))
        else:
            basis = [Vc[:, j] for j in range(2 * k)]
            while basis:
                a = basis[0]
                a = a / np.linalg.norm(a)
                b = Kskew @ a
                b /= np.linalg.norm(b)
                rest = []
                for v in basis[1:]:
                    v = v - (v @ a) * a - (v @ b) * b
                    nrm = np.linalg.norm(v)
                    if nrm > 1e-8:
                        rest.append(v / nrm)
                # re-orthonormalize survivors deterministically
                ortho = []
                for v in rest:
                    for u2 in ortho:
                        v = v - (v @ u2) * u2
                    nrm = np.linalg.norm(v)
                    if nrm > 1e-8:
                        ortho.append(v / nrm)
                basis = ortho
                planes.append((0.0, a, b))
    if len(planes) != n:
        raise AcsError("plane extraction produced %d planes, expected %d" % (len(planes), n))
    # sign fix, then deterministic ordering
    fixed = []
    for lam, a, b in planes:
        sgn = _first_significant_sign(a)
        fixed.append((max(lam, 0.0), sgn * a, sgn * b))
    fixed.sort(key=lambda t: (-t[0], tuple(t[1])))
    lam = np.array([t[0] for t in fixed])
    ebar = np.column_stack([c for t in fixed for c in (t[1], t[2])])
    # 45-degree rotation pairing each plane's stretch factors with the
    # right axes: J etile_odd = (lam + sqrt(1+lam^2)) etile_even, so the
    # mu-rescaled frame comes out J-adapted
    h = np.sqrt(0.5)
    etilde = np.empty_like(ebar)
    for i in range(n):
        etilde[:, 2 * i] = h * (ebar[:, 2 * i] - ebar[:, 2 * i + 1])
        etilde[:, 2 * i + 1] = h * (ebar[:, 2 * i] + ebar[:, 2 * i + 1])
    return lam, ebar, mu_from_lambda(lam), etilde


def normal_form(acs, p):
    """Field-level normal form; frames are returned in chart coordinates."""
    acs.check_square(p)
    Jm = values(acs.matrix(p))
    lam, ebar, mu, etilde = normal_form_matrix(Jm)
    scale = sphere.conformal_frame_scale(Point(p.chart, p.u_values()))
    return NormalFormData(
        lam=lam,
        frame=FrameAtPoint(p, scale * ebar, metric="round"),
        mu=mu,
        rotated_frame=FrameAtPoint(p, scale * etilde, metric="round"),
    )


def adapted_frame(acs, p):
    """Pointwise adapted frame e_k = etilde_k / mu_k from the normal form.

    Orthonormal for the deformed metric and J-adapted: J e_{2i-1} = e_{2i}.
    """
    nf = normal_form(acs, p)
    vectors = nf.rotated_frame.vectors / nf.mu[np.newaxis, :]
    return FrameAtPoint(p, vectors, metric="hermitian", adapted=True)


class AdaptedFrameField:
    """Smooth J-adapted, deformed-metric-orthonormal frame field.

    Complex Gram-Schmidt against the deformed metric: pick the remaining
    chart direction with the largest residual, normalize, apply J, repeat.
    The pick uses primal values only, so it is locally constant and the
    field is exactly differentiable by dual evaluation wherever no tie
    occurs.
    """

    def __init__(self, acs):
        self.acs = acs
        self.metric = HermitianMetric(acs)
        self.dim = acs.dim

    def matrix(self, p):
        d = self.dim
        Jm = self.acs.matrix(p)
        Gf = self.metric.matrix(p)
        Gf_val = values(Gf)
        dual = np.asarray(Jm).dtype == object or np.asarray(Gf).dtype == object

        cols = []
        cols_val = []
        used = [False] * d
        for _ in range(d // 2):
            best, best_val = -1, -1.0
            for idx in range(d):
                if used[idx]:
                    continue
                rv = np.zeros(d)
                rv[idx] = 1.0
                for ev in cols_val:
                    rv = rv - (rv @ Gf_val @ ev) * ev
                nrm2 = rv @ Gf_val @ rv
                # strict relative margin: near-ties keep the lowest index
                if nrm2 > best_val * (1.0 + 1e-12):
                    best, best_val = idx, nrm2
            used[best] = True
            r = np.zeros(d, dtype=object if dual else float)
            r[best] = 1.0
            for ev in cols:
                r = r - np.dot(np.dot(r, Gf), ev) * ev
            e1 = r / K.sqrt_s(np.dot(r, np.dot(Gf, r)))
            e2 = np.dot(Jm, e1)
            cols.extend([e1, e2])
            v1 = values(e1) if dual else e1
            v2 = values(e2) if dual else e2
            cols_val.extend([v1, v2])
        out = np.empty((d, d), dtype=object if dual else float)
        for k, c in enumerate(cols):
            out[:, k] = c
        return out

    def at(self, p):
        return FrameAtPoint(p, values(self.matrix(p)), metric="hermitian", adapted=True)
