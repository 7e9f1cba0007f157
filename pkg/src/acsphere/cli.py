"""Command-line surface.

``acsphere verify <suite> <structure> [--samples N] [--seed S] [--quad-order Q]``
    runs a named verification suite and streams one JSON report per line to
    stdout; exit status 0 iff every check passes, 1 on a failing or erroring
    check, 2 on usage errors.

``acsphere dump <quantity> <structure> [--grid G] [--seed S] [--out PATH]``
    writes plot-ready CSV (header: chart, u-coordinates, value columns).

Numeric fields are printed with 17 significant digits so doubles round-trip
losslessly; identical inputs produce byte-identical output.
"""

import argparse
import csv
import json
import math
import sys

import numpy as np

from . import chern, sphere, verify
from .acs import normal_form
from .connection import blocks, integrability_defect
from .errors import GeometryError
from .fields import values
from .linalg import pfaffian
from .polys import PolyParseError
from .zoo import get_structure

QUANTITIES = ("sigma-pfaffian", "defect-norm", "chern-density", "lambda-spectrum")


def _fmt_value(x):
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return "%.17g" % x
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return json.dumps(x)


def ndjson_line(rec):
    parts = ", ".join("%s: %s" % (json.dumps(k), _fmt_value(v)) for k, v in rec.items())
    return "{" + parts + "}"


def _structure_or_exit(parser, name):
    try:
        return get_structure(name)
    except (GeometryError, PolyParseError, OSError) as exc:
        parser.error(str(exc))


def cmd_verify(parser, args):
    st = _structure_or_exit(parser, args.structure)
    status = 0
    try:
        records = verify.run_suite(args.suite, st, args.samples, args.seed, args.quad_order)
        for rec in records:
            print(ndjson_line(rec))
            if not rec["pass"]:
                status = 1
    except ValueError as exc:
        parser.error(str(exc))
    except GeometryError as exc:
        print(
            ndjson_line(
                {
                    "check_id": "error",
                    "structure": st.name,
                    "pass": False,
                    "note": str(exc),
                }
            )
        )
        return 1
    return status


def _grid_points(st, grid, seed):
    if st.dim == 2:
        pts = []
        for i in range(grid):
            theta = math.pi * (i + 0.5) / grid
            for j in range(grid):
                phi = 2.0 * math.pi * j / grid
                x = np.array(
                    [math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta)]
                )
                pts.append(sphere.point_from_ambient(x))
        return pts
    return st.sample(grid * grid, seed)


def cmd_dump(parser, args):
    st = _structure_or_exit(parser, args.structure)
    if args.quantity == "chern-density" and st.dim != 2:
        parser.error("chern-density needs a 2-sphere structure")
    pts = _grid_points(st, args.grid, args.seed)
    n = st.dim // 2
    value_cols = {
        "sigma-pfaffian": ["pfaffian"],
        "defect-norm": ["defect"],
        "chern-density": ["density"],
        "lambda-spectrum": ["lambda%d" % (i + 1) for i in range(n)],
    }[args.quantity]
    header = ["chart"] + ["u%d" % (i + 1) for i in range(st.dim)] + value_cols

    out = sys.stdout if args.out == "-" else open(args.out, "w", newline="", encoding="utf8")
    try:
        writer = csv.writer(out)
        writer.writerow(header)
        for p in pts:
            row = [p.chart] + ["%.17g" % x for x in p.u_values()]
            if args.quantity == "sigma-pfaffian":
                conn = st.connection.at(p)
                Om = st.connection.curvature(p)
                sig = chern.sigma_form(Om, conn)
                row.append("%.17g" % pfaffian(sig.coeffs))
            elif args.quantity == "defect-norm":
                conn = st.connection.at(p)
                row.append("%.17g" % integrability_defect(blocks(conn)).max_abs())
            elif args.quantity == "chern-density":
                conn = st.connection.at(p)
                Om = st.connection.curvature(p)
                c1 = chern.chern_form(Om, conn)
                row.append("%.17g" % (c1.coeffs[0, 1] * st.metric.area_ratio(p)))
            else:
                nf = normal_form(st.acs, p)
                row.extend("%.17g" % v for v in nf.lam)
            writer.writerow(row)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="acsphere",
        description="verification suites for almost complex structures on even spheres",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pv = sub.add_parser("verify", help="run a verification suite, NDJSON reports on stdout")
    pv.add_argument("suite", choices=verify.SUITES)
    pv.add_argument("structure", help="s2-standard | s6-octonionic | s2-deformed:<expr> | file:<path>")
    pv.add_argument("--samples", type=int, default=100)
    pv.add_argument("--seed", type=int, default=0)
    pv.add_argument("--quad-order", type=int, default=20)

    pd = sub.add_parser("dump", help="write plot-ready CSV for a quantity")
    pd.add_argument("quantity", choices=QUANTITIES)
    pd.add_argument("structure")
    pd.add_argument("--grid", type=int, default=64)
    pd.add_argument("--seed", type=int, default=0)
    pd.add_argument("--out", default="-", help="output path (default: stdout)")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify":
        return cmd_verify(parser, args)
    return cmd_dump(parser, args)


if __name__ == "__main__":
    sys.exit(main())
