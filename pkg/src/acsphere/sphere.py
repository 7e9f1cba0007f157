"""Two-chart stereographic atlas on even spheres, round metric, quadrature.

Charts: ``north`` sends u=0 to the pole (0,...,0,-1) and misses
(0,...,0,+1); ``south`` mirrors the last embedding coordinate.  The chart
transition is the coordinate inversion u -> u/|u|^2, under which the
embedding is invariant.  The round metric is conformal in both charts,
g(u) = 4/(1+|u|^2)^2 * I.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels as K
from .errors import ChartDomainError
from .fields import values

NORTH = "north"
SOUTH = "south"
CHARTS = (NORTH, SOUTH)

# cross-chart consistency checks are run inside this band of |u|
OVERLAP_BAND = (0.25, 4.0)


@dataclass(frozen=True)
class Point:
    """A point of S^{2n}: chart name plus 2n stereographic coordinates.

    Coordinates may be dual scalars; all field evaluations then propagate
    exact directional derivatives.
    """

    chart: str
    u: tuple

    def __post_init__(self):
        if self.chart not in CHARTS:
            raise ChartDomainError("unknown chart %r" % (self.chart,))
        object.__setattr__(self, "u", tuple(self.u))

    @property
    def dim(self):
        return len(self.u)

    def u_array(self):
        if any(K.is_dual(x) for x in self.u):
            arr = np.empty(len(self.u), dtype=object)
            for i, x in enumerate(self.u):
                arr[i] = x
            return arr
        return np.array(self.u, dtype=float)

    def u_values(self):
        return np.array([K.value_of(x) for x in self.u])

    def displaced_dual(self, v):
        """Same point with a fresh dual layer pointing along v."""
        return Point(self.chart, tuple(K.Dual(ui, vi) for ui, vi in zip(self.u, v)))

    @staticmethod
    def north(u):
        return Point(NORTH, tuple(u))

    @staticmethod
    def south(u):
        return Point(SOUTH, tuple(u))


def _sq_norm(u):
    s = 0.0
    for x in u:
        s = s + x * x
    return s


def embed(p):
    """Embed a chart point on the unit sphere in R^{2n+1}."""
    u = p.u
    rho = _sq_norm(u)
    denom = 1.0 + rho
    head = [2.0 * x / denom for x in u]
    last = (rho - 1.0) / denom
    if p.chart == SOUTH:
        last = -last
    if any(K.is_dual(x) for x in head) or K.is_dual(last):
        out = np.empty(len(u) + 1, dtype=object)
        for i, x in enumerate(head):
            out[i] = x
        out[-1] = last
        return out
    return np.array(head + [last])


def embed_jacobian(p):
    """Differential of embed: (2n+1) x 2n matrix, closed form."""
    u = p.u
    m = len(u)
    rho = _sq_norm(u)
    denom = 1.0 + rho
    dual = any(K.is_dual(x) for x in u)
    Jc = np.empty((m + 1, m), dtype=object if dual else float)
    for i in range(m):
        for j in range(m):
            term = -4.0 * u[i] * u[j] / (denom * denom)
            if i == j:
                term = term + 2.0 / denom
            Jc[i, j] = term
    sign = -1.0 if p.chart == SOUTH else 1.0
    for j in range(m):
        Jc[m, j] = sign * 4.0 * u[j] / (denom * denom)
    return Jc


def point_from_ambient(x):
    """Chart representation of an ambient unit vector (|u| <= 1 chart)."""
    x = np.asarray(x, dtype=float)
    z = x[-1]
    if z <= 0.0:
        return Point(NORTH, tuple(x[:-1] / (1.0 - z)))
    return Point(SOUTH, tuple(x[:-1] / (1.0 + z)))


def transition(p):
    """The same point in the other chart: u -> u/|u|^2."""
    rho = _sq_norm(p.u)
    if K.value_of(rho) == 0.0:
        raise ChartDomainError("chart transition undefined at u = 0")
    other = SOUTH if p.chart == NORTH else NORTH
    return Point(other, tuple(x / rho for x in p.u))


def transition_jacobian(p):
    """Differential of the transition map at p (inversion differential)."""
    u = p.u
    m = len(u)
    rho = _sq_norm(u)
    dual = any(K.is_dual(x) for x in u)
    D = np.empty((m, m), dtype=object if dual else float)
    for i in range(m):
        for j in range(m):
            term = -2.0 * u[i] * u[j] / (rho * rho)
            if i == j:
                term = term + 1.0 / rho
            D[i, j] = term
    return D


def conformal_factor(p):
    """s(u) with g = s(u) I in chart coordinates."""
    denom = 1.0 + _sq_norm(p.u)
    return 4.0 / (denom * denom)


def round_metric_matrix(p):
    """Round-metric matrix in chart coordinates: 4/(1+|u|^2)^2 * I."""
    s = conformal_factor(p)
    m = p.dim
    dual = K.is_dual(s)
    G = np.empty((m, m), dtype=object if dual else float)
    for i in range(m):
        for j in range(m):
            G[i, j] = s if i == j else 0.0 * s
    return G


def conformal_frame_scale(p):
    """1/sqrt(s): the factor making chart basis vectors round-orthonormal."""
    return 1.0 / K.sqrt_s(conformal_factor(p))


def round_inner(p, X, Y):
    """Round inner product of two chart-coordinate tangent vectors."""
    acc = 0.0
    for x, y in zip(X, Y):
        acc = acc + x * y
    return conformal_factor(p) * acc


def round_norm(p, X):
    return K.sqrt_s(round_inner(p, X, X))


# -- sampling ------------------------------------------------------------


def sample_points(dim, count, seed, max_north_radius=None):
    """Deterministic uniform sphere sample, one chart point per draw.

    Points are uniform on S^dim via normalized Gaussians and land in the
    chart where |u| <= 1.  ``max_north_radius`` additionally rejects draws
    whose *north*-chart radius exceeds the bound; structures defined by
    polynomial data on the north chart use this to stay in a band where
    the data is numerically tame.
    """
    rng = np.random.default_rng(seed)
    pts = []
    while len(pts) < count:
        x = rng.standard_normal(dim + 1)
        nrm = np.linalg.norm(x)
        if nrm < 1e-6:
            continue
        x /= nrm
        p = point_from_ambient(x)
        if max_north_radius is not None:
            if p.chart == SOUTH:
                r = np.linalg.norm(p.u_values())
                if r == 0.0 or 1.0 / r > max_north_radius:
                    continue
            elif np.linalg.norm(p.u_values()) > max_north_radius:
                continue
        pts.append(p)
    return pts


def sample_tangents(dim, count, seed, scale=1.0):
    """Deterministic chart-coordinate direction vectors."""
    rng = np.random.default_rng(seed)
    return [scale * rng.standard_normal(dim) for _ in range(count)]


# -- quadrature on S^2 -----------------------------------------------------


def quadrature_s2(density, order):
    """Integrate a density against the round area form of S^2.

    Gauss-Legendre in cos(theta) x trapezoid in phi on the embedded polar
    parametrization; spectrally accurate for smooth integrands.  ``density``
    receives a Point and returns a float (value per unit round area).
    """
    if order < 1:
        raise ValueError("quadrature order must be positive")
    nodes, weights = np.polynomial.legendre.leggauss(order)
    nphi = 2 * order
    phis = np.arange(nphi) * (2.0 * np.pi / nphi)
    dphi = 2.0 * np.pi / nphi
    total = 0.0
    for t, w in zip(nodes, weights):
        sin_t = np.sqrt(max(0.0, 1.0 - t * t))
        row = 0.0
        for phi in phis:
            x = np.array([sin_t * np.cos(phi), sin_t * np.sin(phi), t])
            row += density(point_from_ambient(x))
        total += w * row * dphi
    return total
