"""Exception types shared across the library."""


class GeometryError(ValueError):
    """Base class for contract violations detected at runtime."""


class ChartDomainError(GeometryError):
    """Point outside a field's chart domain."""


class DegreeError(GeometryError):
    """Form degree out of the supported 0..3 range."""


class ShapeError(GeometryError):
    """Mismatched matrix-of-forms shapes or degrees."""


class NotSPDError(GeometryError):
    """Matrix expected to be symmetric positive definite is not."""


class FrameError(GeometryError):
    """Frame fails its orthonormality/adaptedness contract."""


class AcsError(GeometryError):
    """Almost complex structure violates J^2 = -I beyond tolerance."""


class ConventionError(GeometryError):
    """Internal consistency residue too large; indicates a sign/convention bug."""
