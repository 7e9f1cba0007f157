"""Riemannian connection and curvature of the deformed metric in a moving
J-adapted orthonormal frame, with the paper-layout quadrant blocks, the
complexified connection, the integrability defect, and the Nijenhuis tensor.

Frame ordering: the connection/curvature matrices are stored with the frame
reordered odd-then-even (e1, e3, ..., e2, e4, ...), which puts the blocks
A (odd-odd), B (odd-even), C (even-odd), D (even-even) in their quadrants.
Conventions, frozen project-wide and used by every test:

* row layout: nabla_X e_i = sum_j omega_ij(X) e_j;
* (d alpha)(X, Y) = X a(Y) - Y a(X) - a([X, Y]);
* curvature Omega = d omega - omega ^ omega;
* J acts on 1-forms by precomposition, (J alpha)(X) = alpha(J X), so the
  adapted coframe satisfies J omega^{2i-1} = -omega^{2i}.
"""

from dataclasses import dataclass

import numpy as np

from .acs import AdaptedFrameField, FrameAtPoint, HermitianMetric
from .errors import FrameError, ShapeError
from .fields import eps_parts, values
from .forms import FormCoeffs, MatrixForm, matrix_form_product

_GRAM_TOL = 1e-8  # frames drifting beyond this are a hard error, not repaired


def ordered_perm(dim):
    """Natural (e1, e2, ...) to odd-then-even position list."""
    return list(range(0, dim, 2)) + list(range(1, dim, 2))


def to_ordered(coeffs):
    """Permute every axis of a natural-index coefficient array."""
    perm = ordered_perm(coeffs.shape[0])
    return coeffs[np.ix_(*([perm] * coeffs.ndim))]


def to_natural(coeffs):
    perm = ordered_perm(coeffs.shape[0])
    inv = np.argsort(perm)
    return coeffs[np.ix_(*([inv] * coeffs.ndim))]


def j0_matrix(dim):
    """The adapted-frame matrix of J in odd-then-even ordering."""
    n = dim // 2
    J0 = np.zeros((dim, dim))
    J0[:n, n:] = -np.eye(n)
    J0[n:, :n] = np.eye(n)
    return J0


@dataclass(frozen=True)
class ConnectionMatrix:
    """omega_ij(e_k) = g_f(nabla_{e_k} e_i, e_j) in odd-then-even layout."""

    point: object
    frame: FrameAtPoint
    omega: MatrixForm  # degree-1 entries, ordered layout (matrix and directions)

    @property
    def dim(self):
        return self.omega.entries.shape[0]

    def skewness_residual(self):
        return self.omega.skewness_residual()

    def natural_coeffs(self):
        return to_natural(self.omega.entries)


@dataclass(frozen=True)
class CurvatureMatrix:
    point: object
    Omega: MatrixForm  # degree-2 entries, ordered layout

    def skewness_residual(self):
        return self.Omega.skewness_residual()


@dataclass(frozen=True)
class Blocks:
    """Quadrants of an ordered matrix form: [[A, B], [C, D]]."""

    A: MatrixForm
    B: MatrixForm
    C: MatrixForm
    D: MatrixForm

    def reassemble(self):
        top = np.concatenate([self.A.entries, self.B.entries], axis=1)
        bottom = np.concatenate([self.C.entries, self.D.entries], axis=1)
        return MatrixForm(self.A.degree, self.A.dim, np.concatenate([top, bottom], axis=0))


def blocks(source):
    """Slice a ConnectionMatrix (or ordered MatrixForm) into its quadrants."""
    mf = source.omega if isinstance(source, ConnectionMatrix) else source
    d = mf.entries.shape[0]
    if d % 2:
        raise ShapeError("quadrant blocks need an even-dimensional matrix")
    n = d // 2
    e = mf.entries
    return Blocks(
        A=MatrixForm(mf.degree, mf.dim, e[:n, :n]),
        B=MatrixForm(mf.degree, mf.dim, e[:n, n:]),
        C=MatrixForm(mf.degree, mf.dim, e[n:, :n]),
        D=MatrixForm(mf.degree, mf.dim, e[n:, n:]),
    )


@dataclass(frozen=True)
class ComplexConnection:
    """psi = (A+D)/2 + i(B-C)/2 and, when derivatives are supplied, the
    trace of its curvature Psi = d psi - psi ^ psi."""

    psi_re: MatrixForm
    psi_im: MatrixForm
    offdiag_re: MatrixForm  # (A-D)/2: vanishes with the integrability defect
    offdiag_im: MatrixForm  # -(B+C)/2
    Psi_trace_re: FormCoeffs = None
    Psi_trace_im: FormCoeffs = None

    def anti_hermitian_residual(self):
        r = self.psi_re.entries
        i = self.psi_im.entries
        out = float(np.max(np.abs(r + np.swapaxes(r, 0, 1))))
        return max(out, float(np.max(np.abs(i - np.swapaxes(i, 0, 1)))))


def complexified_connection(b, d_blocks=None):
    """Complexify quadrant blocks; optionally include the curvature trace."""
    psi_re = 0.5 * (b.A + b.D)
    psi_im = 0.5 * (b.B - b.C)
    off_re = 0.5 * (b.A - b.D)
    off_im = -0.5 * (b.B + b.C)
    tr_re = tr_im = None
    if d_blocks is not None:
        dpsi_re = 0.5 * (d_blocks.A + d_blocks.D)
        dpsi_im = 0.5 * (d_blocks.B - d_blocks.C)
        pp_re = matrix_form_product(psi_re, psi_re) - matrix_form_product(psi_im, psi_im)
        pp_im = matrix_form_product(psi_re, psi_im) + matrix_form_product(psi_im, psi_re)
        tr_re = dpsi_re.trace() - pp_re.trace()
        tr_im = dpsi_im.trace() - pp_im.trace()
    return ComplexConnection(psi_re, psi_im, off_re, off_im, tr_re, tr_im)


def j_act_on_form_entries(entries, n):
    """Entrywise (J alpha)(X) = alpha(J X) on ordered coefficient vectors.

    On an adapted ordered coframe this is multiplication of the coefficient
    axis by J0^t."""
    return np.concatenate([entries[..., n:], -entries[..., :n]], axis=-1)


def integrability_defect(b):
    """J(B+C) - (A-D): the zero matrix exactly when the structure is a
    complex structure at the point (pointwise criterion)."""
    BC = (b.B + b.C).entries
    AD = (b.A - b.D).entries
    n = BC.shape[0]
    return MatrixForm(1, b.A.dim, j_act_on_form_entries(BC, n) - AD)


# -- the connection field ----------------------------------------------------


class FrameConnection:
    """Connection coefficients of a metric in a moving orthonormal frame.

    Coefficients come from the orthonormal-frame Koszul formula
    2 g(nabla_{e_k} e_i, e_j) = c_{ki,j} - c_{ij,k} + c_{jk,i} with the
    structure functions c computed from exact dual-number brackets of the
    frame field.  Everything evaluates at dual points too, which is what
    produces d(omega) and third derivatives downstream.
    """

    def __init__(self, metric_fn, frame_fn, dim, gram_tol=_GRAM_TOL):
        self.metric_fn = metric_fn
        self.frame_fn = frame_fn
        self.dim = dim
        self.gram_tol = gram_tol

    @classmethod
    def for_structure(cls, acs):
        metric = HermitianMetric(acs)
        frame = AdaptedFrameField(acs)
        return cls(metric.matrix, frame.matrix, acs.dim)

    def _check_frame(self, p, E, G):
        Ev, Gv = values(E), values(G)
        gram = Ev.T @ Gv @ Ev
        resid = float(np.max(np.abs(gram - np.eye(self.dim))))
        if resid > self.gram_tol:
            raise FrameError(
                "frame drifted from orthonormality (residual %.3e) at %r" % (resid, p)
            )

    def coefficients(self, p):
        """(omega, c, E, G) in natural index order; omega[i,j,k] = omega_ij(e_k)."""
        E = self.frame_fn(p)
        G = self.metric_fn(p)
        self._check_frame(p, E, G)
        d = self.dim
        dE = []
        for a in range(d):
            q = p.displaced_dual(E[:, a])
            dE.append(eps_parts(self.frame_fn(q)))
        obj = any(np.asarray(m).dtype == object for m in dE) or np.asarray(E).dtype == object
        br = np.zeros((d, d, d), dtype=object if obj else float)
        for a in range(d):
            for b in range(a + 1, d):
                vec = dE[a][:, b] - dE[b][:, a]
                br[a, b] = vec
                br[b, a] = -vec
        # c[a,b,j] = g([e_a, e_b], e_j)
        GE = np.dot(G, E)
        c = np.einsum("abm,mj->abj", br, GE)
        omega = 0.5 * (c.transpose(2, 0, 1) - c + c.transpose(1, 2, 0))
        return omega, c, E, G

    def at(self, p):
        omega, _, E, _ = self.coefficients(p)
        frame = FrameAtPoint(p, values(E), metric="hermitian", adapted=True)
        mf = MatrixForm(1, self.dim, to_ordered(values(omega)))
        return ConnectionMatrix(p, frame, mf)

    def structure_equation_residual(self, p):
        """First structure equation d omega^i = sum_j omega^j ^ omega_ji,
        reduced pointwise to c_{ab,i} = omega_bi(e_a) - omega_ai(e_b)."""
        omega, c, _, _ = self.coefficients(p)
        omega, c = values(omega), values(c)
        worst = 0.0
        d = self.dim
        for a in range(d):
            for b in range(d):
                for i in range(d):
                    worst = max(worst, abs(c[a, b, i] - (omega[b, i, a] - omega[a, i, b])))
        return worst

    def domega_natural(self, p):
        """Entrywise exterior derivative of the coefficient 1-forms,
        natural index order: dom[i,j,a,b] = (d omega_ij)(e_a, e_b)."""
        omega0, c0, E, _ = self.coefficients(p)
        d = self.dim
        derivs = []
        for a in range(d):
            q = p.displaced_dual(E[:, a])
            om_a, _, _, _ = self.coefficients(q)
            derivs.append(eps_parts(om_a))
        obj = any(np.asarray(m).dtype == object for m in derivs) or np.asarray(omega0).dtype == object
        dom = np.zeros((d, d, d, d), dtype=object if obj else float)
        for a in range(d):
            for b in range(a + 1, d):
                term = derivs[a][:, :, b] - derivs[b][:, :, a]
                term = term - np.tensordot(omega0, c0[a, b, :], axes=(2, 0))
                dom[:, :, a, b] = term
                dom[:, :, b, a] = -term
        return dom

    def omega_ordered(self, p):
        omega, _, _, _ = self.coefficients(p)
        return MatrixForm(1, self.dim, to_ordered(omega))

    def curvature(self, p):
        """Omega = d omega - omega ^ omega (ordered layout)."""
        dom = to_ordered(self.domega_natural(p))
        om = self.omega_ordered(p)
        Om = MatrixForm(2, self.dim, dom) - matrix_form_product(om, om)
        return CurvatureMatrix(p, Om)

    def domega_ordered(self, p):
        return MatrixForm(2, self.dim, to_ordered(self.domega_natural(p)))


def connection_matrix(metric, frame_field, p):
    """ConnectionMatrix of a metric (HermitianMetric or chart-matrix callable)
    in a frame field (AdaptedFrameField or chart-columns callable)."""
    metric_fn = metric.matrix if hasattr(metric, "matrix") else metric
    frame_fn = frame_field.matrix if hasattr(frame_field, "matrix") else frame_field
    probe = values(frame_fn(p))
    return FrameConnection(metric_fn, frame_fn, probe.shape[0]).at(p)


def curvature_matrix(connection_field, p):
    return connection_field.curvature(p)


# -- Nijenhuis tensor --------------------------------------------------------


def nijenhuis(acs, p, X, Y):
    """N(X, Y) = [JX, JY] - J[JX, Y] - J[X, JY] - [X, Y] on constant
    chart extensions of X and Y; brackets via exact dual derivatives of J."""
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    Jm = values(acs.matrix(p))

    def dJ(v):
        q = p.displaced_dual(v)
        return eps_parts(acs.matrix(q))

    JX = Jm @ X
    JY = Jm @ Y
    return values(dJ(JX) @ Y - dJ(JY) @ X + Jm @ (dJ(Y) @ X) - Jm @ (dJ(X) @ Y))
