"""Named test structures and the JSON structure-file loader.

Structure names accepted everywhere (CLI, tests):

* ``s2-standard``      -- the standard complex structure of S^2;
* ``s6-octonionic``    -- the cross-product structure of S^6;
* ``s2-deformed:<spec>`` -- a 2-sphere structure with plane parameter
  lambda(u) given by one polynomial expression in north-chart coordinates
  (see :mod:`acsphere.polys` for the grammar);
* ``file:<path>``      -- a JSON polynomial matrix field, schema below.

JSON schema: ``{"dimension": 2n, "chart": "north"|"south", "entries":
[[expr, ...], ...]}`` with a 2n x 2n matrix of polynomial expressions in
u1..u2n.  The loader validates J^2 = -I at seeded sample points.
"""

import json
from dataclasses import dataclass

import numpy as np

from . import acs as acs_mod
from . import sphere
from .acs import AcsField, AdaptedFrameField, HermitianMetric
from .connection import FrameConnection
from .errors import AcsError, GeometryError
from .polys import parse_polynomial

# polynomial data lives on the north chart; sampling for such structures
# stays inside this chart-radius band to keep the data numerically tame
NORTH_DATA_RADIUS = 4.0


@dataclass
class Structure:
    """An ACS with its derived metric, frame field, and connection field."""

    name: str
    acs: AcsField
    chart_local: bool = False  # data on one chart: restrict sampling band

    def __post_init__(self):
        self.dim = self.acs.dim
        self.metric = HermitianMetric(self.acs)
        self.frame_field = AdaptedFrameField(self.acs)
        self.connection = FrameConnection.for_structure(self.acs)

    def sample(self, count, seed):
        radius = NORTH_DATA_RADIUS if self.chart_local else None
        return sphere.sample_points(self.dim, count, seed, max_north_radius=radius)


def _from_json_dict(data, name):
    try:
        dim = int(data["dimension"])
        entries = data["entries"]
    except (KeyError, TypeError) as exc:
        raise GeometryError("structure file needs 'dimension' and 'entries'") from exc
    if dim % 2 or dim < 2:
        raise GeometryError("structure dimension must be even and positive")
    if len(entries) != dim or any(len(row) != dim for row in entries):
        raise GeometryError("'entries' must be a %dx%d matrix of expressions" % (dim, dim))
    chart = data.get("chart", sphere.NORTH)
    if chart not in sphere.CHARTS:
        raise GeometryError("unknown chart %r in structure file" % (chart,))
    fns = [[parse_polynomial(str(e), dim) for e in row] for row in entries]
    field = acs_mod.MatrixExprAcs(fns, name=name, base_chart=chart)
    for p in sphere.sample_points(dim, 20, seed=7, max_north_radius=NORTH_DATA_RADIUS):
        r = field.square_residual(p)
        if r > 1e-10:
            raise AcsError(
                "structure file %s: |J^2 + I| = %.3e at a sample point" % (name, r)
            )
    return field


def load_structure_file(path):
    with open(path, "r", encoding="utf8") as fh:
        data = json.load(fh)
    return _from_json_dict(data, name="file:%s" % path)


def get_structure(name):
    """Resolve a structure name to a Structure bundle."""
    if name == "s2-standard":
        return Structure(name, acs_mod.standard_acs_s2())
    if name == "s6-octonionic":
        return Structure(name, acs_mod.octonionic_acs_s6())
    if name.startswith("s2-deformed:"):
        spec = name.split(":", 1)[1]
        lam = parse_polynomial(spec, 2)
        field = acs_mod.deformed_acs([lam], name=name)
        return Structure(name, field, chart_local=True)
    if name.startswith("file:"):
        field = load_structure_file(name.split(":", 1)[1])
        return Structure(name, field, chart_local=True)
    raise GeometryError(
        "unknown structure %r (use s2-standard, s6-octonionic, "
        "s2-deformed:<expr>, or file:<path>)" % (name,)
    )
