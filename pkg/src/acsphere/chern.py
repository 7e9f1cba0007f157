"""First-Chern-form representatives (two routes), the trace two-form
sigma = tr(Omega J0 + omega ^ omega J0), its structural identities,
nondegeneracy via the Pfaffian, and exterior derivatives of two-form fields.
"""

import math
from dataclasses import dataclass

import numpy as np

from .connection import (
    blocks,
    complexified_connection,
    integrability_defect,
    j0_matrix,
    j_act_on_form_entries,
    to_natural,
)
from .errors import ConventionError, ShapeError
from .fields import eps_parts, values
from .forms import FormCoeffs, MatrixForm, matrix_form_product
from .linalg import pfaffian
from .sphere import quadrature_s2

DEFECT_TOL = 1e-8  # pointwise integrability gate for the derived identities
ORTHOGONALITY_TOL = 1e-8
PFAFFIAN_FLOOR = 1e-9
IMAG_TOL = 1e-9


@dataclass(frozen=True)
class ScalarTwoForm:
    """A 2-form by its antisymmetric value matrix on the adapted frame
    (natural ordering e1, e2, ...)."""

    point: object
    coeffs: np.ndarray
    imag_residual: float = 0.0

    @property
    def dim(self):
        return self.coeffs.shape[0]

    def antisymmetry_residual(self):
        c = self.coeffs
        return float(np.max(np.abs(c + c.T)))

    def value(self, x_frame, y_frame):
        return float(np.asarray(x_frame) @ self.coeffs @ np.asarray(y_frame))

    def max_abs(self):
        return float(np.max(np.abs(self.coeffs)))


@dataclass(frozen=True)
class CheckOutcome:
    """Residual of a derived identity, or not-applicable when the identity's
    hypotheses fail at the point (that is a verdict, not an error)."""

    applicable: bool
    residual: float = None
    reason: str = ""


def _j0_form(dim):
    return MatrixForm(0, dim, j0_matrix(dim))


def _sigma_ordered(Omega_mf, omega_mf):
    d = Omega_mf.entries.shape[0]
    J0 = _j0_form(d)
    ww = matrix_form_product(omega_mf, omega_mf)
    return (
        matrix_form_product(Omega_mf, J0).trace()
        + matrix_form_product(ww, J0).trace()
    )


def sigma_form(Omega, omega):
    """tr(Omega J0) + tr(omega ^ omega J0) as a ScalarTwoForm."""
    if Omega.Omega.entries.shape[0] != omega.omega.entries.shape[0]:
        raise ShapeError("curvature and connection dimensions differ")
    if Omega.point.chart != omega.point.chart or not np.array_equal(
        Omega.point.u_values(), omega.point.u_values()
    ):
        raise ShapeError("curvature and connection evaluated at different points")
    sig = _sigma_ordered(Omega.Omega, omega.omega)
    return ScalarTwoForm(omega.point, to_natural(values(sig.coeffs)))


def chern_form(Omega, omega):
    """Curvature-route first-Chern representative: -1/(4 pi) sigma."""
    sig = sigma_form(Omega, omega)
    return ScalarTwoForm(sig.point, -sig.coeffs / (4.0 * math.pi))


def chern_form_psi(conn_field, p, imag_tol=IMAG_TOL):
    """Complexified-route representative (i/2 pi) sum_i Psi_i^i.

    The result is real by anti-Hermitian symmetry; a residual real trace
    above ``imag_tol`` signals a convention bug and raises.
    """
    om = conn_field.omega_ordered(p)
    dom = conn_field.domega_ordered(p)
    cc = complexified_connection(blocks(om), blocks(dom))
    re = values(cc.Psi_trace_re.coeffs)
    im = values(cc.Psi_trace_im.coeffs)
    # c1 = (i / 2pi) (re + i im): real part -im/2pi, spurious part re/2pi
    imag_residual = float(np.max(np.abs(re))) / (2.0 * math.pi)
    if imag_residual > imag_tol:
        raise ConventionError(
            "complexified route has imaginary residue %.3e" % imag_residual
        )
    coeffs = to_natural(-im / (2.0 * math.pi))
    return ScalarTwoForm(p, coeffs, imag_residual=imag_residual)


def trace_identity_check(omega_conn, b, defect_tol=DEFECT_TOL):
    """tr(omega ^ omega J0) = tr[(B+C) ^ J(B+C)^t], valid under pointwise
    integrability; returns the residual or a not-applicable outcome."""
    defect = integrability_defect(b).max_abs()
    if defect > defect_tol:
        return CheckOutcome(False, reason="integrability defect %.3e" % defect)
    d = omega_conn.omega.entries.shape[0]
    J0 = _j0_form(d)
    lhs = matrix_form_product(
        matrix_form_product(omega_conn.omega, omega_conn.omega), J0
    ).trace()
    BC = (b.B + b.C).entries
    JBC = j_act_on_form_entries(BC, d // 2)
    rhs = np.einsum("ija,ijb->ab", BC, JBC) - np.einsum("ijb,ija->ab", BC, JBC)
    resid = float(np.max(np.abs(values(lhs.coeffs) - rhs)))
    return CheckOutcome(True, resid)


def sigma_expansion_check(conn, Omega, acs, metric, p, X, defect_tol=DEFECT_TOL):
    """The expansion of sigma(X, JX) into connection-coefficient squares.

    Hypotheses: the structure is round-orthogonal and pointwise integrable.
    Returns |sigma(X, JX) - (-2|X|_f^2 - sum (B+C)(X)^2 - sum (A-D)(X)^2)|.
    """
    Jm = values(acs.matrix(p))
    d = Jm.shape[0]
    orth = float(np.max(np.abs(Jm.T @ Jm - np.eye(d))))
    if orth > ORTHOGONALITY_TOL:
        return CheckOutcome(False, reason="structure not round-orthogonal (%.3e)" % orth)
    b = blocks(conn)
    defect = integrability_defect(b).max_abs()
    if defect > defect_tol:
        return CheckOutcome(False, reason="integrability defect %.3e" % defect)

    sig = sigma_form(Omega, conn)
    F = conn.frame.vectors
    Gf = values(metric.matrix(p))
    X = np.asarray(X, dtype=float)
    x = F.T @ Gf @ X
    jx = F.T @ Gf @ (Jm @ X)
    lhs = x @ sig.coeffs @ jx

    om = to_natural(values(conn.omega.entries))
    n = d // 2
    sum1 = 2.0 * float(x @ x)
    sum2 = 0.0
    sum3 = 0.0
    for i in range(n):
        for j in range(n):
            bc = om[2 * i, 2 * j + 1] + om[2 * i + 1, 2 * j]
            ad = om[2 * i, 2 * j] - om[2 * i + 1, 2 * j + 1]
            sum2 += float(bc @ x) ** 2
            sum3 += float(ad @ x) ** 2
    rhs = -sum1 - sum2 - sum3
    return CheckOutcome(True, abs(lhs - rhs))


def nondegeneracy(two_form, floor=PFAFFIAN_FLOOR):
    """(Pfaffian, |Pfaffian| > floor) of the coefficient matrix."""
    pf = pfaffian(two_form.coeffs)
    return pf, abs(pf) > floor


# -- two-form fields and their exterior derivative ---------------------------


class SigmaChartField:
    """sigma (or c1) of a structure as a chart-coefficient field.

    Chart coefficients make the exterior derivative a plain antisymmetrized
    coordinate derivative (coordinate fields commute, so no bracket terms).
    Evaluations accept dual points; that is what supplies the third
    derivatives of the metric hidden in d(sigma).
    """

    def __init__(self, conn_field, metric, frame_field, scale=1.0, route="curvature"):
        self.conn_field = conn_field
        self.metric = metric
        self.frame_field = frame_field
        self.scale = scale
        self.route = route

    def frame_coeffs(self, p):
        if self.route == "psi":
            # sigma = -4 pi c1 and c1 = -Im(tr Psi)/(2 pi), so sigma = 2 Im(tr Psi)
            om = self.conn_field.omega_ordered(p)
            dom = self.conn_field.domega_ordered(p)
            cc = complexified_connection(blocks(om), blocks(dom))
            sig_ord = 2.0 * cc.Psi_trace_im.coeffs
        else:
            Om = self.conn_field.curvature(p)
            om = self.conn_field.omega_ordered(p)
            sig_ord = _sigma_ordered(Om.Omega, om).coeffs
        return to_natural(sig_ord) * self.scale

    def chart_coeffs(self, p):
        sig_nat = self.frame_coeffs(p)
        F = self.frame_field.matrix(p)
        Gf = self.metric.matrix(p)
        Ft = np.swapaxes(F, 0, 1)
        return np.dot(Gf, np.dot(F, np.dot(sig_nat, np.dot(Ft, Gf))))

    def __call__(self, p):
        return self.chart_coeffs(p)


def exterior_derivative_2form(chart_coeff_fn, p):
    """d of a two-form field given by chart coefficients, at p.

    Returns the degree-3 FormCoeffs in chart indices:
    (d s)[a,b,c] = d_a s[b,c] - d_b s[a,c] + d_c s[a,b].
    """
    d = p.dim
    derivs = []
    for a in range(d):
        v = np.zeros(d)
        v[a] = 1.0
        q = p.displaced_dual(v)
        derivs.append(values(eps_parts(chart_coeff_fn(q))))
    out = np.zeros((d, d, d))
    for a in range(d):
        for b in range(a + 1, d):
            for c in range(b + 1, d):
                val = derivs[a][b, c] - derivs[b][a, c] + derivs[c][a, b]
                out[a, b, c] = out[b, c, a] = out[c, a, b] = val
                out[b, a, c] = out[a, c, b] = out[c, b, a] = -val
    return FormCoeffs(3, d, out)


def three_form_frame_components(form3_chart, frame_vectors):
    """Values of a chart-index 3-form on frame triples."""
    F = np.asarray(frame_vectors, dtype=float)
    return np.einsum("ai,bj,ck,abc->ijk", F, F, F, form3_chart.coeffs)


def chern_number_s2(conn_field, metric, order=20):
    """Quadrature of the curvature-route representative over the 2-sphere.

    The density per unit round area is c1(e1, e2) times the deformed-to-round
    area ratio; the adapted frame carries the orientation.
    """

    def density(p):
        Om = conn_field.curvature(p)
        om = conn_field.omega_ordered(p)
        c1 = -to_natural(values(_sigma_ordered(Om.Omega, om).coeffs)) / (4.0 * math.pi)
        return c1[0, 1] * metric.area_ratio(p)

    return quadrature_s2(density, order)
