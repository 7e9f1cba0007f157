"""Numerical moving-frame calculus for almost complex structures on even
spheres: deformed Hermitian metrics, the positive square-root tensor and
lambda normal form, connection/curvature matrices in J-adapted frames, the
block integrability criterion, first-Chern-form representatives, and the
trace two-form with its nondegeneracy analysis."""

from . import kernels
from .acs import (
    AcsField,
    AdaptedFrameField,
    FrameAtPoint,
    HermitianMetric,
    NormalFormData,
    adapted_frame,
    conjugate_acs,
    deformed_acs,
    hermitian_metric,
    normal_form,
    normal_form_matrix,
    octonionic_acs_s6,
    p_tensor,
    standard_acs_s2,
)
from .chern import (
    ScalarTwoForm,
    chern_form,
    chern_form_psi,
    chern_number_s2,
    exterior_derivative_2form,
    nondegeneracy,
    sigma_expansion_check,
    sigma_form,
    trace_identity_check,
)
from .connection import (
    Blocks,
    ComplexConnection,
    ConnectionMatrix,
    CurvatureMatrix,
    FrameConnection,
    blocks,
    complexified_connection,
    connection_matrix,
    curvature_matrix,
    integrability_defect,
    nijenhuis,
)
from .fields import directional_derivative
from .forms import FormCoeffs, MatrixForm, matrix_form_product, wedge
from .linalg import jacobi_eigh, pfaffian, spd_sqrt
from .sphere import (
    Point,
    embed,
    quadrature_s2,
    round_metric_matrix,
    sample_points,
    transition,
)
from .zoo import Structure, get_structure, load_structure_file

__version__ = "0.1.0"
