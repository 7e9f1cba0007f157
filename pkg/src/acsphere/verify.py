"""Named verification suites over structures, producing report records.

Each check yields one record with a statistic, a threshold, and a pass
flag; ``mode`` states how the two compare ("max_le": statistic must stay
below the threshold; "min_ge": existence-style floor; "report": diagnostic
only, always passes; "n/a": hypotheses of the identity fail, diagnostic).
The CLI serializes these records as NDJSON, one per line.
"""

import math

import numpy as np

from . import chern, sphere
from .acs import adapted_frame, conjugate_acs, normal_form, p_tensor
from .connection import blocks, integrability_defect, nijenhuis
from .fields import values
from .linalg import pfaffian

SUITES = (
    "metric",
    "ptensor",
    "normal-form",
    "curvature",
    "lemma1",
    "lemma2",
    "chern-number",
    "theorem3",
    "all",
)

# frozen floors for the cross-product structure of S^6, calibrated over the
# 200-point seeded sweep (observed minima: defect 1.42, Nijenhuis sup 3.87)
DEFECT_FLOOR_S6 = 1e-2
NIJENHUIS_FLOOR_S6 = 1e-2

TOL = {
    "metric-symmetry": 1e-12,
    "metric-spd": 0.0,
    "metric-j-invariance": 1e-10,
    "metric-sign-flip": 1e-12,
    "ptensor-square": 1e-10,
    "ptensor-isometry": 1e-9,
    "ptensor-conjugation-orthogonal": 1e-9,
    "ptensor-conjugation-acs": 1e-9,
    "normal-form-reconstruction": 1e-8,
    "normal-form-mu-invariant": 1e-10,
    "adapted-frame-gram": 1e-10,
    "adapted-frame-adaptedness": 1e-10,
    "connection-skewness": 1e-8,
    "structure-equation": 1e-7,
    "curvature-skewness": 1e-7,
    "blocks-structure": 1e-7,
    "constant-curvature-identity": 1e-6,
    "lemma1-defect-max": 1e-8,
    "lemma1-nijenhuis-max": 1e-6,
    "lemma2-route-equality": 1e-8,
    "psi-anti-hermitian": 1e-10,
    "chern-imag-residual": 1e-9,
    "chern-number": 1e-6,
    "trace-identity": 1e-9,
    "sigma-expansion": 1e-8,
    "sigma-negativity": 1e-8,
    "sigma-pfaffian-value": 1e-8,
    "sigma-closedness": 1e-7,
    "sigma-antisymmetry": 1e-12,
}


def _record(check_id, structure, n_points, seed, stat, threshold, mode="max_le", note=None):
    if mode == "max_le":
        ok = stat <= threshold
    elif mode == "min_ge":
        ok = stat >= threshold
    else:
        ok = True
    rec = {
        "check_id": check_id,
        "structure": structure.name,
        "n_points": n_points,
        "seed": seed,
        "mode": mode,
        "max_abs_error": float(stat),
        "threshold": float(threshold),
        "pass": bool(ok),
    }
    if note:
        rec["note"] = note
    return rec


def _rec(check_id, st, n, seed, stat, mode="max_le", note=None):
    return _record(check_id, st, n, seed, stat, TOL.get(check_id, 0.0), mode, note)


def _is_round_orthogonal(st, pts, tol=1e-10):
    worst = 0.0
    for p in pts[: min(len(pts), 10)]:
        Jm = values(st.acs.matrix(p))
        worst = max(worst, float(np.max(np.abs(Jm.T @ Jm - np.eye(st.dim)))))
    return worst <= tol


def suite_metric(st, samples, seed, quad_order):
    pts = st.sample(samples, seed)
    rng = np.random.default_rng(seed + 1)
    sym = spd = inv = flip = 0.0
    for p in pts:
        Gf = values(st.metric.matrix(p))
        sym = max(sym, float(np.max(np.abs(Gf - Gf.T))))
        w = np.linalg.eigvalsh(0.5 * (Gf + Gf.T))
        spd = max(spd, max(0.0, -float(w[0])))
        Jm = values(st.acs.matrix(p))
        X = rng.standard_normal(st.dim)
        Y = rng.standard_normal(st.dim)
        inv = max(inv, abs((Jm @ X) @ Gf @ (Jm @ Y) - X @ Gf @ Y))
        s = sphere.conformal_factor(p)
        Gf_neg = 0.5 * s * (np.eye(st.dim) + (-Jm).T @ (-Jm))
        flip = max(flip, float(np.max(np.abs(Gf_neg - Gf))))
    n = len(pts)
    yield _rec("metric-symmetry", st, n, seed, sym)
    yield _rec("metric-spd", st, n, seed, spd)
    yield _rec("metric-j-invariance", st, n, seed, inv)
    yield _rec("metric-sign-flip", st, n, seed, flip)


def suite_ptensor(st, samples, seed, quad_order):
    pts = st.sample(samples, seed)
    rng = np.random.default_rng(seed + 2)
    sq = iso = orth = acs2 = 0.0
    for p in pts:
        Jm = values(st.acs.matrix(p))
        P = p_tensor(st.acs, p)
        target = 0.5 * (np.eye(st.dim) + Jm.T @ Jm)
        sq = max(sq, float(np.max(np.abs(P @ P - target))))
        s = sphere.conformal_factor(p)
        G = s * np.eye(st.dim)
        Gf = s * target
        X = rng.standard_normal(st.dim)
        Y = rng.standard_normal(st.dim)
        iso = max(iso, abs((P @ X) @ G @ (P @ Y) - X @ Gf @ Y))
        Q = conjugate_acs(P, Jm)
        orth = max(orth, abs((Q @ X) @ G @ (Q @ Y) - X @ G @ Y))
        acs2 = max(acs2, float(np.max(np.abs(Q @ Q + np.eye(st.dim)))))
    n = len(pts)
    yield _rec("ptensor-square", st, n, seed, sq)
    yield _rec("ptensor-isometry", st, n, seed, iso)
    yield _rec("ptensor-conjugation-orthogonal", st, n, seed, orth)
    yield _rec("ptensor-conjugation-acs", st, n, seed, acs2)


def suite_normal_form(st, samples, seed, quad_order):
    from .acs import assemble_from_normal_form

    pts = st.sample(samples, seed)
    rec_err = mu_err = gram = adapt = 0.0
    for p in pts:
        nf = normal_form(st.acs, p)
        s = sphere.conformal_factor(p)
        comps = nf.frame.vectors * math.sqrt(s)
        Jm = values(st.acs.matrix(p))
        rec_err = max(
            rec_err, float(np.max(np.abs(assemble_from_normal_form(nf.lam, comps) - Jm)))
        )
        mu_sq = nf.mu[0::2] ** 2 * nf.mu[1::2] ** 2
        mu_err = max(mu_err, float(np.max(np.abs(mu_sq - (1.0 + nf.lam**2)))))
        fr = adapted_frame(st.acs, p)
        gram = max(gram, fr.gram_residual(values(st.metric.matrix(p))))
        adapt = max(adapt, fr.adaptedness_residual(Jm))
    n = len(pts)
    yield _rec("normal-form-reconstruction", st, n, seed, rec_err)
    yield _rec("normal-form-mu-invariant", st, n, seed, mu_err)
    yield _rec("adapted-frame-gram", st, n, seed, gram)
    yield _rec("adapted-frame-adaptedness", st, n, seed, adapt)


def suite_curvature(st, samples, seed, quad_order):
    pts = st.sample(samples, seed)
    skew = struct = 0.0
    om_skew = blk = 0.0
    curv_id = 0.0
    round_orth = _is_round_orthogonal(st, pts)
    for p in pts:
        conn = st.connection.at(p)
        om_skew = max(om_skew, conn.skewness_residual())
        struct = max(struct, st.connection.structure_equation_residual(p))
        b = blocks(conn)
        blk = max(
            blk,
            float(np.max(np.abs(b.C.entries + np.swapaxes(b.B.entries, 0, 1)))),
            float(np.max(np.abs(b.A.entries + np.swapaxes(b.A.entries, 0, 1)))),
            float(np.max(np.abs(b.D.entries + np.swapaxes(b.D.entries, 0, 1)))),
        )
        reasm = b.reassemble()
        blk = max(blk, float(np.max(np.abs(reasm.entries - conn.omega.entries))))
        Om = st.connection.curvature(p)
        skew = max(skew, Om.skewness_residual())
        if round_orth:
            E = Om.Omega.entries
            d = st.dim
            eye = np.eye(d)
            expect = -(
                np.einsum("ka,lb->klab", eye, eye) - np.einsum("kb,la->klab", eye, eye)
            )
            curv_id = max(curv_id, float(np.max(np.abs(E - expect))))
    n = len(pts)
    yield _rec("connection-skewness", st, n, seed, om_skew)
    yield _rec("structure-equation", st, n, seed, struct)
    yield _rec("blocks-structure", st, n, seed, blk)
    yield _rec("curvature-skewness", st, n, seed, skew)
    if round_orth:
        yield _rec("constant-curvature-identity", st, n, seed, curv_id)
    else:
        yield _rec(
            "constant-curvature-identity",
            st,
            n,
            seed,
            0.0,
            mode="n/a",
            note="structure is not round-orthogonal; the round metric identity does not apply",
        )


def nijenhuis_sup(st, p):
    """Sup of the round norm of N over round-orthonormal frame pairs."""
    scale = sphere.conformal_frame_scale(p)
    s = sphere.conformal_factor(p)
    worst = 0.0
    d = st.dim
    for a in range(d):
        X = np.zeros(d)
        X[a] = scale
        for b in range(a + 1, d):
            Y = np.zeros(d)
            Y[b] = scale
            N = nijenhuis(st.acs, p, X, Y)
            worst = max(worst, math.sqrt(s * float(N @ N)))
    return worst


def suite_lemma1(st, samples, seed, quad_order):
    pts = st.sample(samples, seed)
    defects = []
    nsups = []
    for p in pts:
        conn = st.connection.at(p)
        defects.append(integrability_defect(blocks(conn)).max_abs())
        nsups.append(nijenhuis_sup(st, p))
    n = len(pts)
    if st.dim == 2:
        yield _rec("lemma1-defect-max", st, n, seed, max(defects))
        yield _rec("lemma1-nijenhuis-max", st, n, seed, max(nsups))
    elif st.name == "s6-octonionic":
        yield _record(
            "lemma1-defect-floor", st, n, seed, min(defects), DEFECT_FLOOR_S6, "min_ge"
        )
        yield _record(
            "lemma1-nijenhuis-floor",
            st,
            n,
            seed,
            min(nsups),
            NIJENHUIS_FLOOR_S6,
            "min_ge",
        )
    else:
        # concordance: the block criterion and the Nijenhuis tensor vanish together
        both_zero = max(defects) <= 1e-8 and max(nsups) <= 1e-6
        both_nonzero = min(defects) > 1e-8 and min(nsups) > 1e-6
        stat = 0.0 if (both_zero or both_nonzero) else 1.0
        yield _record(
            "lemma1-concordance",
            st,
            n,
            seed,
            stat,
            0.5,
            "max_le",
            note="defect range [%.3e, %.3e], nijenhuis range [%.3e, %.3e]"
            % (min(defects), max(defects), min(nsups), max(nsups)),
        )


def suite_lemma2(st, samples, seed, quad_order):
    pts = st.sample(samples, seed)
    route = anti = imag = 0.0
    from .connection import complexified_connection

    for p in pts:
        conn = st.connection.at(p)
        Om = st.connection.curvature(p)
        c1 = chern.chern_form(Om, conn)
        c1p = chern.chern_form_psi(st.connection, p)
        route = max(route, float(np.max(np.abs(c1.coeffs - c1p.coeffs))))
        imag = max(imag, c1p.imag_residual)
        cc = complexified_connection(blocks(conn))
        anti = max(anti, cc.anti_hermitian_residual())
    n = len(pts)
    yield _rec("lemma2-route-equality", st, n, seed, route)
    yield _rec("psi-anti-hermitian", st, n, seed, anti)
    yield _rec("chern-imag-residual", st, n, seed, imag)


def suite_chern_number(st, samples, seed, quad_order):
    if st.dim != 2:
        raise ValueError("the quadrature check runs on the 2-sphere only")
    val = chern.chern_number_s2(st.connection, st.metric, order=quad_order)
    if st.chart_local:
        yield _record(
            "chern-number",
            st,
            quad_order,
            seed,
            val,
            0.0,
            "report",
            note="structure is chart-local (singular at one pole); the integral "
            "is reported but not compared to the closed-sphere value",
        )
        return
    rec = _rec("chern-number", st, quad_order, seed, abs(val - 2.0))
    rec["value"] = float(val)
    yield rec


def suite_theorem3(st, samples, seed, quad_order):
    pts = st.sample(samples, seed)
    rng = np.random.default_rng(seed + 3)
    n = len(pts)
    round_orth = _is_round_orthogonal(st, pts)

    trace_worst = -1.0
    trace_na = None
    expans_worst = -1.0
    neg_worst = -1.0
    pf_vals = []
    antisym = 0.0
    for p in pts:
        conn = st.connection.at(p)
        b = blocks(conn)
        out = chern.trace_identity_check(conn, b)
        if out.applicable:
            trace_worst = max(trace_worst, out.residual)
        else:
            trace_na = out.reason
        Om = st.connection.curvature(p)
        sig = chern.sigma_form(Om, conn)
        antisym = max(antisym, sig.antisymmetry_residual())
        pf_vals.append(pfaffian(sig.coeffs))
        X = rng.standard_normal(st.dim)
        res = chern.sigma_expansion_check(conn, Om, st.acs, st.metric, p, X)
        if res.applicable:
            expans_worst = max(expans_worst, res.residual)
            Jm = values(st.acs.matrix(p))
            Gf = values(st.metric.matrix(p))
            F = conn.frame.vectors
            x = F.T @ Gf @ X
            jx = F.T @ Gf @ (Jm @ X)
            neg_worst = max(neg_worst, abs(x @ sig.coeffs @ jx + 2.0 * (X @ Gf @ X)))

    yield _rec("sigma-antisymmetry", st, n, seed, antisym)
    if trace_worst >= 0.0:
        yield _rec("trace-identity", st, n, seed, trace_worst)
    else:
        yield _rec("trace-identity", st, n, seed, 0.0, mode="n/a", note=trace_na)
    if expans_worst >= 0.0:
        yield _rec("sigma-expansion", st, n, seed, expans_worst)
        yield _rec("sigma-negativity", st, n, seed, neg_worst)
    else:
        note = "hypotheses (round-orthogonal, integrable) fail for this structure"
        yield _rec("sigma-expansion", st, n, seed, 0.0, mode="n/a", note=note)
    if st.name == "s2-standard":
        pf_err = max(abs(v - (-2.0)) for v in pf_vals)
        yield _rec("sigma-pfaffian-value", st, n, seed, pf_err)
    else:
        yield _record(
            "sigma-pfaffian",
            st,
            n,
            seed,
            min(abs(v) for v in pf_vals),
            0.0,
            "report",
            note="Pfaffian range [%.6e, %.6e]" % (min(pf_vals), max(pf_vals)),
        )

    # closedness of the trace form (exactness makes this hold for every
    # structure; in dimension two it is vacuous)
    ds_pts = pts[: min(len(pts), 8)]
    field = chern.SigmaChartField(st.connection, st.metric, st.frame_field)
    ds_worst = 0.0
    for p in ds_pts:
        d3 = chern.exterior_derivative_2form(field, p)
        F = st.frame_field.at(p).vectors
        ds_worst = max(
            ds_worst, float(np.max(np.abs(chern.three_form_frame_components(d3, F))))
        )
    yield _rec("sigma-closedness", st, len(ds_pts), seed, ds_worst)

    if not round_orth or st.name == "s6-octonionic":
        sig_mags = [abs(v) for v in pf_vals]
        yield _record(
            "theorem3-narrative",
            st,
            n,
            seed,
            0.0,
            0.0,
            "report",
            note="the trace two-form is closed (d-residual %.2e); its Pfaffian "
            "magnitude ranges over [%.2e, %.2e], so nondegeneracy fails and no "
            "symplectic contradiction arises for this structure"
            % (ds_worst, min(sig_mags), max(sig_mags)),
        )
    else:
        yield _record(
            "theorem3-narrative",
            st,
            n,
            seed,
            0.0,
            0.0,
            "report",
            note="the trace two-form is closed, nondegenerate (|Pf| = 2), and "
            "negative on (X, JX); a sphere of dimension > 2 admitting such a "
            "form would be symplectic, which its second cohomology forbids",
        )


_SUITE_FUNCS = {
    "metric": suite_metric,
    "ptensor": suite_ptensor,
    "normal-form": suite_normal_form,
    "curvature": suite_curvature,
    "lemma1": suite_lemma1,
    "lemma2": suite_lemma2,
    "chern-number": suite_chern_number,
    "theorem3": suite_theorem3,
}


def run_suite(suite, st, samples, seed, quad_order):
    """Yield report records for one suite (or all applicable ones)."""
    if suite == "all":
        for name in ("metric", "ptensor", "normal-form", "curvature", "lemma1", "lemma2"):
            yield from _SUITE_FUNCS[name](st, samples, seed, quad_order)
        if st.dim == 2:
            yield from suite_chern_number(st, samples, seed, quad_order)
        yield from suite_theorem3(st, samples, seed, quad_order)
        return
    if suite not in _SUITE_FUNCS:
        raise ValueError("unknown suite %r" % (suite,))
    yield from _SUITE_FUNCS[suite](st, samples, seed, quad_order)
