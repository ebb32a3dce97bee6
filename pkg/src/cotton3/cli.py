"""Command line interface.

Subcommands operate on a geometry description file (JSON) holding one of

    {"kenmotsu": {"lambda": L, "b": B, "c": C}}
    {"nonunimodular": {"alpha": A, "beta": B}}
    {"brackets": [{"i": 1, "j": 2, "coeffs": [x, y, z]}, ...]}

with 1-indexed frame labels in the bracket form, plus an optional
"metric" entry (3x3 nested list, symmetric positive definite).  Output is
a human-readable report by default or, with --format machine, a single
deterministic JSON document carrying all computed values and the tool
version.  The default tolerance is 1e-8, overridable by the COTTON3_TOL
environment variable and then by --tolerance.

Exit codes: 0 on success, 1 on input or structure errors, 2 when
verify-paper finds a reference value that does not reproduce.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from .almost_kenmotsu import (
    adapted_connection_table,
    check_h_parallel,
    detect_structure,
    structure_residuals,
    xi_eigenvector_analysis,
)
from .connection_curvature import (
    PRODUCT_H2XR,
    classify_geometry,
    curvature,
    levi_civita,
    ricci_parallel_check,
    ricci_spectrum,
)
from .cotton import cotton2_closed_form, cotton_pack
from .cotton_flow import export_trajectory, flow_run
from .errors import AssertionFailure, Cotton3Error, DegenerateMetric, NoStructure
from .frame_algebra import (
    MetricLieAlgebra3,
    from_kenmotsu_params,
    from_nonunimodular,
    validate,
)
from .soliton import (
    INFEASIBLE,
    STEADY,
    TRIVIAL_ONLY,
    SolitonProblem,
    lie_derivative_metric,
    reproduce_theorems,
    solve as solve_soliton,
    soliton_existence_survey,
)
from . import __version__

FRAME_LABELS = ("xi", "e", "phi_e")


class CLIError(Exception):
    """Input that cannot be turned into a valid geometry."""


def _require_number(obj, field, context):
    if field not in obj:
        raise CLIError(f"{context}: missing field '{field}'")
    val = obj[field]
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        raise CLIError(f"{context}: field '{field}' must be a number, got {val!r}")
    return float(val)


def _optional_number(obj, field, context, default=0.0):
    if field not in obj:
        return default
    return _require_number(obj, field, context)


def _parse_metric(data, context):
    if "metric" not in data:
        return None
    raw = data["metric"]
    try:
        arr = np.array(raw, dtype=float)
    except (TypeError, ValueError):
        raise CLIError(f"{context}: 'metric' must be a 3x3 array of numbers")
    if arr.shape != (3, 3):
        raise CLIError(f"{context}: 'metric' must be 3x3, got shape {arr.shape}")
    return arr


def _parse_brackets(items, context):
    if not isinstance(items, list) or not items:
        raise CLIError(f"{context}: 'brackets' must be a non-empty list")
    c = np.zeros((3, 3, 3))
    seen = set()
    for pos, entry in enumerate(items):
        where = f"{context}: brackets[{pos}]"
        if not isinstance(entry, dict):
            raise CLIError(f"{where}: expected an object")
        i = entry.get("i")
        j = entry.get("j")
        for name, val in (("i", i), ("j", j)):
            if isinstance(val, bool) or not isinstance(val, int):
                raise CLIError(f"{where}: field '{name}' must be an integer frame index")
            if not 1 <= val <= 3:
                raise CLIError(f"{where}: field '{name}' must be 1, 2, or 3, got {val}")
        if i == j:
            raise CLIError(f"{where}: i and j must differ")
        key = (min(i, j), max(i, j))
        if key in seen:
            raise CLIError(f"{where}: duplicate bracket for pair ({key[0]},{key[1]})")
        seen.add(key)
        coeffs = entry.get("coeffs")
        if (
            not isinstance(coeffs, list)
            or len(coeffs) != 3
            or any(isinstance(x, bool) or not isinstance(x, (int, float)) for x in coeffs)
        ):
            raise CLIError(f"{where}: 'coeffs' must be a list of three numbers")
        c[i - 1, j - 1] = coeffs
        c[j - 1, i - 1] = [-x for x in coeffs]
    return c


def load_geometry(path: str) -> MetricLieAlgebra3:
    """Read, parse, and validate a geometry description file."""
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise CLIError(f"cannot read {path}: {exc.strerror or exc}")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CLIError(
            f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        )
    if not isinstance(data, dict):
        raise CLIError(f"{path}: top level must be an object")
    forms = [k for k in ("kenmotsu", "nonunimodular", "brackets") if k in data]
    if len(forms) != 1:
        raise CLIError(
            f"{path}: need exactly one of 'kenmotsu', 'nonunimodular', "
            f"'brackets' (found {forms or 'none'})"
        )
    form = forms[0]
    extra = set(data) - {form, "metric"}
    if extra:
        raise CLIError(f"{path}: unknown fields {sorted(extra)}")
    context = f"{path}: {form}"
    if form == "kenmotsu":
        params = data[form]
        if not isinstance(params, dict):
            raise CLIError(f"{context}: expected an object")
        lam = _require_number(params, "lambda", context)
        b = _optional_number(params, "b", context)
        cc = _optional_number(params, "c", context)
        L = from_kenmotsu_params(lam, b, cc)
    elif form == "nonunimodular":
        params = data[form]
        if not isinstance(params, dict):
            raise CLIError(f"{context}: expected an object")
        alpha = _require_number(params, "alpha", context)
        beta = _require_number(params, "beta", context)
        L = from_nonunimodular(alpha, beta)
    else:
        c = _parse_brackets(data[form], path)
        L = MetricLieAlgebra3(c)
    metric = _parse_metric(data, path)
    if metric is not None:
        L = L.with_metric(metric)
    report = validate(L)
    if not report.is_valid:
        worst = max(report.violations, key=lambda v: v.magnitude)
        raise CLIError(
            f"{path}: invalid geometry: {worst.kind} violation of size "
            f"{worst.magnitude:.3e} at indices {worst.indices}"
        )
    return L


def _tolerance(args) -> float:
    if args.tolerance is not None:
        return args.tolerance
    raw = os.environ.get("COTTON3_TOL")
    if raw is not None:
        try:
            return float(raw)
        except ValueError:
            raise CLIError(f"COTTON3_TOL is not a number: {raw!r}")
    return 1e-8


def _emit(payload: dict, args, human) -> None:
    if args.format == "machine":
        payload = dict(payload, version=__version__)
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        human(payload)


def _num(x) -> float:
    # + 0.0 folds negative zero into plain zero for stable output
    return float(x) + 0.0


def _mat(M) -> list:
    return [[_num(x) for x in row] for row in np.asarray(M)]


def _print_matrix(M, indent="  "):
    width = max(len(f"{x: .10g}") for row in M for x in row)
    for row in M:
        print(indent + "[" + "  ".join(f"{x: .10g}".rjust(width) for x in row) + "]")


def cmd_curvature(args) -> int:
    L = load_geometry(args.geometry)
    tol = _tolerance(args)
    conn = levi_civita(L)
    pack = curvature(L, conn)
    par = ricci_parallel_check(L, conn, pack, tol=tol)
    cls = classify_geometry(pack, par.is_parallel)
    payload = {
        "scalar_curvature": pack.scalar,
        "ricci": _mat(pack.ricci.components),
        "ricci_eigenvalues": [float(x) for x in ricci_spectrum(pack)],
        "ricci_parallel": par.is_parallel,
        "ricci_parallel_residual": par.max_component,
        "geometry_class": {"kind": cls.kind, "curvature": cls.curvature},
        "connection": [_mat(conn.gamma[i]) for i in range(3)],
    }

    def human(p):
        print(f"scalar curvature: {p['scalar_curvature']: .10g}")
        print("ricci tensor (frame components):")
        _print_matrix(p["ricci"])
        eigs = ", ".join(f"{x: .10g}" for x in p["ricci_eigenvalues"])
        print(f"ricci eigenvalues: {eigs}")
        print(f"ricci parallel: {'yes' if p['ricci_parallel'] else 'no'}"
              f" (residual {p['ricci_parallel_residual']:.3e})")
        kind = p["geometry_class"]["kind"]
        curv = p["geometry_class"]["curvature"]
        if curv is None:
            print(f"geometry class: {kind}")
        else:
            print(f"geometry class: {kind} (curvature {curv: .10g})")
        for i, block in enumerate(p["connection"], start=1):
            print(f"connection along e{i} (row j: nabla_e{i} e_j in frame components):")
            _print_matrix(block)

    _emit(payload, args, human)
    return 0


def cmd_structure(args) -> int:
    L = load_geometry(args.geometry)
    tol = _tolerance(args)
    conn = levi_civita(L)
    pack = curvature(L, conn)
    ak = detect_structure(L, conn, pack, tol=tol)
    residuals = structure_residuals(L, conn, pack, ak)
    hpar = check_h_parallel(L, conn, ak, tol=tol)
    eig = None
    if not ak.kenmotsu:
        rep = xi_eigenvector_analysis(ak, tol=tol)
        eig = {
            "is_eigenvector": rep.is_eigenvector,
            "s_xi_e": rep.s_xi_e,
            "s_xi_phi_e": rep.s_xi_phi_e,
            "forced": rep.forced,
            "reduced_bracket_residual": rep.reduced_bracket_residual,
        }
    payload = {
        "xi": [_num(x) for x in ak.xi.components],
        "e": [_num(x) for x in ak.adapted_frame[1].components],
        "phi_e": [_num(x) for x in ak.adapted_frame[2].components],
        "lambda": _num(ak.lam),
        "b": _num(ak.b),
        "c": _num(ak.c),
        "f": _num(ak.f),
        "kenmotsu": ak.kenmotsu,
        "h": _mat(ak.h_op),
        "max_residual": max(residuals.values()),
        "h_parallel": {"holds": hpar.holds, "residual": hpar.residual},
        "xi_ricci_eigenvector": eig,
    }

    def human(p):
        for label in ("xi", "e", "phi_e"):
            comps = ", ".join(f"{x: .10g}" for x in p[label])
            print(f"{label}: ({comps})")
        print(f"lambda: {p['lambda']: .10g}   b: {p['b']: .10g}   c: {p['c']: .10g}")
        print(f"kenmotsu (h = 0): {'yes' if p['kenmotsu'] else 'no'}")
        print(f"structure residual: {p['max_residual']:.3e}")
        print(f"h parallel along xi: {'yes' if p['h_parallel']['holds'] else 'no'}"
              f" (residual {p['h_parallel']['residual']:.3e})")
        if p["xi_ricci_eigenvector"] is not None:
            e = p["xi_ricci_eigenvector"]
            tag = "yes" if e["is_eigenvector"] else "no"
            print(f"xi is a ricci eigenvector: {tag}"
                  f" (S(xi,e)={e['s_xi_e']: .10g}, S(xi,phi_e)={e['s_xi_phi_e']: .10g})")

    _emit(payload, args, human)
    return 0


def cmd_cotton(args) -> int:
    L = load_geometry(args.geometry)
    tol = _tolerance(args)
    conn = levi_civita(L)
    pack = curvature(L, conn)
    cp = cotton_pack(L, conn, pack)
    adapted = None
    if float(np.max(np.abs(L.metric - np.eye(3)))) <= 1e-9:
        try:
            ak = detect_structure(L, conn, pack, tol=tol)
        except NoStructure:
            ak = None
        if ak is not None:
            closed = cotton2_closed_form(ak)
            E = np.column_stack([v.components for v in ak.adapted_frame])
            oracle_adapted = E.T @ cp.cotton2.components @ E
            adapted = {
                "closed_form": _mat(closed.components),
                "max_gap": float(np.max(np.abs(closed.components - oracle_adapted))),
            }
    payload = {
        "cotton2": _mat(cp.cotton2.components),
        "cotton2_norm": cp.norm2,
        "cotton2_trace": float(
            np.trace(np.linalg.solve(L.metric, cp.cotton2.components))
        ),
        "cotton3": [_mat(cp.cotton3.components[i]) for i in range(3)],
        "conformally_flat": cp.norm2 <= tol,
        "adapted_frame_values": adapted,
    }

    def human(p):
        print("cotton tensor, (0,2) form (frame components):")
        _print_matrix(p["cotton2"])
        print(f"norm: {p['cotton2_norm']: .10g}")
        print(f"conformally flat: {'yes' if p['conformally_flat'] else 'no'}")
        if p["adapted_frame_values"] is not None:
            print("adapted-frame values (xi, e, phi_e), from the constants:")
            _print_matrix(p["adapted_frame_values"]["closed_form"])
            print(f"gap against the derivative route: "
                  f"{p['adapted_frame_values']['max_gap']:.3e}")

    _emit(payload, args, human)
    return 0


def _solution_payload(sol) -> dict:
    return {
        "classification": sol.classification,
        "feasible": sol.feasible,
        "v": [float(x) for x in sol.v.components],
        "coefficients": [float(x) for x in sol.coefficients],
        "sigma": sol.sigma,
        "residual": sol.residual,
        "family_dim": sol.family_dim,
        "family_basis": [[float(x) for x in row] for row in sol.family_basis],
        "rank": sol.rank,
    }


def _print_solution(name, p):
    print(f"{name}: {p['classification']}")
    comps = ", ".join(f"{x: .10g}" for x in p["v"])
    print(f"  potential V = ({comps})   sigma = {p['sigma']: .10g}")
    print(f"  residual {p['residual']:.6g}   solution family dimension {p['family_dim']}")


def cmd_soliton(args) -> int:
    L = load_geometry(args.geometry)
    tol = _tolerance(args)
    conn = levi_civita(L)
    pack = curvature(L, conn)
    if args.ansatz == "general":
        # The general ansatz spans the whole frame, so it needs no
        # adapted structure and applies to any valid algebra.
        problem = SolitonProblem.build(L, conn=conn, pack=pack)
        payload = {"general": _solution_payload(solve_soliton(problem, tol=tol))}
    else:
        ak = detect_structure(L, conn, pack, tol=max(tol, 1e-8))
        survey = soliton_existence_survey(ak, tol=tol)
        if args.ansatz == "all":
            payload = {k: _solution_payload(v) for k, v in survey.items()}
        else:
            payload = {args.ansatz: _solution_payload(survey[args.ansatz])}

    def human(p):
        for name in sorted(p):
            _print_solution(name, p[name])

    _emit(payload, args, human)
    return 0


def cmd_flow(args) -> int:
    L = load_geometry(args.geometry)
    try:
        result = flow_run(
            L,
            dt=args.dt,
            steps=args.steps,
            stride=args.stride,
            normalize=args.normalize,
            fixed_point_tol=args.fixed_point_tol,
        )
    except DegenerateMetric as exc:
        if args.output and exc.trajectory:
            export_trajectory(exc.trajectory, args.output)
            print(
                f"wrote {len(exc.trajectory)} states to {args.output} before failure",
                file=sys.stderr,
            )
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.output:
        export_trajectory(result, args.output)
        final = result.final
        payload = {
            "output": args.output,
            "states": len(result.trajectory),
            "final_time": final.time,
            "final_cotton_norm": final.cotton_norm,
            "final_metric": _mat(final.metric),
            "fixed_point": result.fixed_point,
        }

        def human(p):
            print(f"wrote {p['states']} states to {p['output']}")
            print(f"final time: {p['final_time']: .10g}")
            print(f"final cotton norm: {p['final_cotton_norm']: .10g}")
            print("final metric:")
            _print_matrix(p["final_metric"])
            if p["fixed_point"]:
                print("ended at a fixed point")

        _emit(payload, args, human)
    else:
        out = sys.stdout
        out.write("time,g11,g12,g13,g22,g23,g33,cotton_norm\n")
        for st in result.trajectory:
            m = st.metric
            vals = (st.time, m[0, 0], m[0, 1], m[0, 2], m[1, 1], m[1, 2],
                    m[2, 2], st.cotton_norm)
            out.write(",".join(repr(float(v)) for v in vals) + "\n")
    return 0


def _verify_checks(tol: float) -> list:
    checks = []

    def add(name, ok, detail=""):
        checks.append({"name": name, "ok": bool(ok), "detail": detail})

    def close(x, y, t=None):
        return abs(x - y) <= (t if t is not None else tol)

    # adapted connection table of the lambda=2 diagonal family
    L2 = from_kenmotsu_params(2.0, 0.0, 0.0)
    conn2 = levi_civita(L2)
    pack2 = curvature(L2, conn2)
    gap = float(np.max(np.abs(conn2.gamma - adapted_connection_table(2.0, 0.0, 0.0))))
    add("connection table, lambda=2", gap <= tol, f"max gap {gap:.3e}")

    # jacobi operator along the reeb direction, lambda=2
    jac = curvature(L2, conn2, reeb=np.array([1.0, 0.0, 0.0])).jacobi_operator
    expect = np.array([[0.0, 0.0, 0.0], [0.0, -5.0, 4.0], [0.0, 4.0, -5.0]])
    gap = float(np.max(np.abs(jac - expect)))
    add("jacobi operator, lambda=2", gap <= tol, f"max gap {gap:.3e}")

    # ricci values of the lambda=1, b=c=3 family
    L133 = from_kenmotsu_params(1.0, 3.0, 3.0)
    p133 = curvature(L133, levi_civita(L133))
    S = p133.ricci.components
    ok = (
        close(S[0, 0], -4.0)
        and close(S[0, 1], -6.0)
        and close(S[0, 2], -6.0)
        and close(S[1, 1], -20.0)
        and close(S[2, 2], -20.0)
        and close(S[1, 2], 2.0)
        and close(p133.scalar, -44.0)
    )
    add("ricci values, lambda=1 b=c=3", ok,
        f"scalar {p133.scalar:.6g}, S(xi,e) {S[0, 1]:.6g}")

    # scalar curvature of the lambda=2 family
    ok = close(pack2.scalar, -14.0) and close(pack2.ricci.components[0, 0], -10.0)
    add("scalar curvature, lambda=2", ok, f"scalar {pack2.scalar:.6g}")

    # cotton closed form against the derivative route on a small family grid
    worst = 0.0
    for lam, b, c in ((1.0, 0.0, 0.0), (2.0, 0.0, 0.0), (0.5, 0.0, 0.0),
                      (3.0, 0.0, 0.0), (1.0, 3.0, 3.0), (1.0, -2.0, -2.0)):
        Lg = from_kenmotsu_params(lam, b, c)
        cg = levi_civita(Lg)
        pg = curvature(Lg, cg)
        akg = detect_structure(Lg, cg, pg)
        closed = cotton2_closed_form(akg).components
        E = np.column_stack([v.components for v in akg.adapted_frame])
        oracle = E.T @ cotton_pack(Lg, cg, pg).cotton2.components @ E
        worst = max(worst, float(np.max(np.abs(closed - oracle))))
    add("cotton closed form vs derivative route", worst <= 100 * tol,
        f"max gap {worst:.3e}")

    # cotton components of the lambda=2 family
    c2 = cotton_pack(L2, conn2, pack2).cotton2.components
    ok = (
        close(c2[1, 1], 12.0)
        and close(c2[2, 2], -12.0)
        and float(np.max(np.abs(c2 - np.diag(np.diag(c2))))) <= tol
        and close(c2[0, 0], 0.0)
    )
    add("cotton components, lambda=2", ok, f"C(e,e) {c2[1, 1]:.6g}")

    # the lambda=1, b=c=3 family is conformally flat
    norm = cotton_pack(L133).norm2
    add("cotton vanishes, lambda=1 b=c=3", norm <= tol, f"norm {norm:.3e}")

    # conformal flatness happens exactly at lambda=1 in the diagonal family
    ok = True
    detail = []
    for lam in (0.5, 1.0, 2.0, 3.0):
        Lg = from_kenmotsu_params(lam, 0.0, 0.0)
        norm = cotton_pack(Lg).norm2
        expect = math.sqrt(2.0) * abs(2.0 * lam**3 - 2.0 * lam)
        ok = ok and close(norm, expect, 100 * tol)
        detail.append(f"lambda={lam:g}: {norm:.6g}")
    add("cotton norm across the diagonal family", ok, "; ".join(detail))

    # reeb-collinear soliton: infeasible at lambda=2 with residual 12*sqrt(2)
    ak2 = detect_structure(L2, conn2, pack2)
    survey2 = soliton_existence_survey(ak2, tol=tol)
    sol = survey2["collinear"]
    ok = sol.classification == INFEASIBLE and close(
        sol.residual, 12.0 * math.sqrt(2.0), 100 * tol
    )
    add("reeb-collinear soliton, lambda=2", ok,
        f"{sol.classification}, residual {sol.residual:.6g}")

    # at lambda=1 the collinear problem admits only the trivial solution
    L1 = from_kenmotsu_params(1.0, 0.0, 0.0)
    conn1 = levi_civita(L1)
    pack1 = curvature(L1, conn1)
    ak1 = detect_structure(L1, conn1, pack1)
    survey1 = soliton_existence_survey(ak1, tol=tol)
    sol = survey1["collinear"]
    add("reeb-collinear soliton, lambda=1", sol.classification == TRIVIAL_ONLY,
        sol.classification)

    # at lambda=1 the orthogonal problem has a steady one-parameter family
    sol = survey1["orthogonal"]
    fam_ok = sol.family_dim == 1 and abs(sol.family_basis[0][-1]) <= tol
    if fam_ok:
        d = sol.family_basis[0][:2]
        fam_ok = abs(abs(d[0]) - abs(d[1])) <= tol and np.sign(d[0]) == np.sign(d[1])
    ok = sol.classification == STEADY and fam_ok
    witness = lie_derivative_metric(
        L1, conn1, ak1.adapted_frame[1].components + ak1.adapted_frame[2].components
    ).components
    ok = ok and float(np.max(np.abs(witness))) <= tol
    add("orthogonal soliton, lambda=1", ok,
        f"{sol.classification}, family dim {sol.family_dim}")

    # at lambda=2 the orthogonal problem is infeasible
    sol = survey2["orthogonal"]
    add("orthogonal soliton, lambda=2", sol.classification == INFEASIBLE,
        sol.classification)

    # lambda=1 geometry is the product of the hyperbolic plane and a line
    par1 = ricci_parallel_check(L1, conn1, pack1)
    cls1 = classify_geometry(pack1, par1.is_parallel)
    eigs = sorted(ricci_spectrum(pack1))
    ok = (
        cls1.kind == PRODUCT_H2XR
        and close(cls1.curvature or 0.0, -4.0, 1e-6)
        and close(eigs[0], -4.0, 1e-6)
        and close(eigs[1], -4.0, 1e-6)
        and close(eigs[2], 0.0, 1e-6)
    )
    add("geometry class, lambda=1", ok,
        f"{cls1.kind}, eigenvalues {[round(float(x), 6) for x in eigs]}")

    # detection on the rank-two solvable family, alpha=2 beta=0.5
    Lnu = from_nonunimodular(2.0, 0.5)
    cnu = levi_civita(Lnu)
    pnu = curvature(Lnu, cnu)
    aknu = detect_structure(Lnu, cnu, pnu)
    ok = (
        close(aknu.lam, math.sqrt(1.25), 100 * tol)
        and abs(aknu.b) <= 100 * tol
        and abs(aknu.c) <= 100 * tol
        and close(aknu.xi.components[0], -1.0, 100 * tol)
    )
    add("detection on the solvable family, alpha=2 beta=1/2", ok,
        f"lambda {aknu.lam:.6g}, reeb ({aknu.xi.components[0]:.3g}, ...)")

    # alpha=1 beta=0 is hyperbolic space: h = 0 and S = -2 g
    Lh = from_nonunimodular(1.0, 0.0)
    ch = levi_civita(Lh)
    ph = curvature(Lh, ch)
    akh = detect_structure(Lh, ch, ph)
    ok = (
        akh.kenmotsu
        and float(np.max(np.abs(akh.h_op))) <= tol
        and float(np.max(np.abs(ph.ricci.components + 2.0 * Lh.metric))) <= tol
    )
    add("hyperbolic detection, alpha=1 beta=0", ok,
        f"kenmotsu {akh.kenmotsu}, |S + 2g| {float(np.max(np.abs(ph.ricci.components + 2.0 * Lh.metric))):.3e}")

    # reeb field is a ricci eigenvector exactly when b = c = 0
    rep = xi_eigenvector_analysis(ak2, tol=tol)
    ok = (
        rep.is_eigenvector
        and rep.forced is not None
        and (rep.reduced_bracket_residual or 0.0) <= tol
    )
    add("reeb ricci-eigenvector analysis, lambda=2", ok,
        f"eigenvector {rep.is_eigenvector}")
    rep133 = xi_eigenvector_analysis(detect_structure(L133, levi_civita(L133),
                                                      curvature(L133, levi_civita(L133))))
    add("reeb not an eigenvector when b=c=3", not rep133.is_eigenvector,
        f"S(xi,e) {rep133.s_xi_e:.6g}")

    # conformally flat metrics are flow fixed points
    res = flow_run(L1, dt=1e-3, steps=50)
    drift = float(np.max(np.abs(res.final.metric - np.eye(3))))
    add("flow fixed point, lambda=1", drift <= tol, f"drift {drift:.3e}")

    return checks


def _parse_grid(raw: str) -> list:
    try:
        grid = [float(s) for s in raw.split(",") if s.strip()]
    except ValueError:
        raise CLIError(f"--grid must be comma-separated numbers, got {raw!r}")
    if not grid:
        raise CLIError("--grid must contain at least one value")
    if any(lam <= 0 for lam in grid):
        raise CLIError("--grid values must be positive")
    return grid


def cmd_verify(args) -> int:
    tol = _tolerance(args)
    grid = _parse_grid(args.grid)
    checks = _verify_checks(tol)
    try:
        report = reproduce_theorems(grid, tol=tol)
    except AssertionFailure as exc:
        report = exc.report
    for ch in report.checks:
        checks.append({
            "name": f"{ch.name}, lambda={ch.lam:g}",
            "ok": ch.passed,
            "detail": f"{ch.detail}; residual {ch.residual:.3e}",
        })
    all_ok = all(c["ok"] for c in checks)
    if args.format == "machine":
        doc = {
            "checks": checks,
            "all_ok": all_ok,
            "grid": grid,
            "version": __version__,
        }
        print(json.dumps(doc, sort_keys=True, indent=2))
    else:
        for c in checks:
            tag = "ok  " if c["ok"] else "FAIL"
            detail = f"  ({c['detail']})" if c["detail"] else ""
            print(f"{tag}  {c['name']}{detail}")
        n_ok = sum(1 for c in checks if c["ok"])
        print(f"{n_ok}/{len(checks)} reference checks passed")
    return 0 if all_ok else 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cotton3",
        description="Curvature, Cotton tensors, solitons, and Cotton flow "
                    "on homogeneous 3-geometries.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, geometry=True):
        if geometry:
            p.add_argument("geometry", help="path to a geometry description (JSON)")
        p.add_argument("--format", choices=("human", "machine"), default="human",
                       help="output format (default: human)")
        p.add_argument("--tolerance", type=float, default=None,
                       help="numerical tolerance (default: COTTON3_TOL or 1e-8)")

    p = sub.add_parser("curvature", help="connection, Ricci data, geometry class")
    common(p)
    p.set_defaults(func=cmd_curvature)

    p = sub.add_parser("structure", help="detect the almost Kenmotsu 3-h structure")
    common(p)
    p.set_defaults(func=cmd_structure)

    p = sub.add_parser("cotton", help="Cotton tensors and conformal flatness")
    common(p)
    p.set_defaults(func=cmd_cotton)

    p = sub.add_parser("soliton", help="solve the Cotton soliton equation")
    common(p)
    p.add_argument("--ansatz",
                   choices=("all", "collinear", "orthogonal", "general"),
                   default="all",
                   help="potential ansatz space (default: all of them)")
    p.set_defaults(func=cmd_soliton)

    p = sub.add_parser("flow", help="integrate the Cotton flow of the metric")
    common(p)
    p.add_argument("--dt", type=float, required=True, help="step size")
    p.add_argument("--steps", type=int, required=True, help="number of steps")
    p.add_argument("--stride", type=int, default=1,
                   help="record every N-th step (default: 1)")
    p.add_argument("--normalize", action="store_true",
                   help="rescale after each step to preserve the volume")
    p.add_argument("--fixed-point-tol", type=float, default=None,
                   help="report a fixed point when the final Cotton norm "
                        "is at or below this")
    p.add_argument("--output", default=None, help="write the trajectory CSV here")
    p.set_defaults(func=cmd_flow)

    p = sub.add_parser("verify-paper",
                       help="recompute the published reference values")
    common(p, geometry=False)
    p.add_argument("--grid", default="0.5,1,2",
                   help="comma-separated lam values for the soliton existence "
                        "checks (default: 0.5,1,2)")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CLIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Cotton3Error as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
