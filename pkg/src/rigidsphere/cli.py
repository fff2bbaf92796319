"""
Command-line front end.

    rigidsphere classify --c22 0 --c23-re 2 --c33 -4
    rigidsphere expand --source stanton --b-re 0 --r 1 --theta 1
    rigidsphere sample --c22 0 --c23-re -2.8284271247461903 --c33 -4 --n-radial 3
    rigidsphere verify --suite all --cap 8 --seed 42
    rigidsphere normalize --c22 1 --cap 12

Reports go to stdout as JSON (CSV for ``sample``), diagnostics to stderr.
Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import time

import numpy as np

from .curvature import (
    circular_g,
    circular_residual,
    curvature_residual,
    log_laplacian,
    reduced_residual,
    verify_tube,
)
from .maps import (
    VectorFieldParams,
    norm_residuals,
    normalization_ode_solve,
    stanton_map,
    stanton_normalization_data,
    system_residual,
    twist_field,
    twisted_map,
)
from .parameters import (
    NormalFormCoeffs,
    StantonParams,
    TwistParams,
    coeffs_to_twist,
    default_root_index,
    stanton_reachable,
    stanton_to_coeffs,
    stanton_to_twist,
    twist_from_phi,
    twist_to_coeffs,
)
from .series import MultiSeries, SeriesError
from .surfaces import (
    NewtonError,
    SurfaceShapeError,
    circular_surface,
    expand_surface,
    extract_coeffs,
    solve_v,
)

CAP_RANGE = (4, 16)
TUBES = ("parabola", "exponential", "cos", "cosh")


class UsageError(Exception):
    pass


# ----------------------------------------------------------------------
# output helpers
def _num(x):
    """Round-trip exact floats; complex numbers become ``{"re", "im"}``."""
    if isinstance(x, (complex, np.complexfloating)):
        return {"re": _num(x.real), "im": _num(x.imag)}
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if not math.isfinite(x):
            return str(x)
        return float(f"{x:.17g}")
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, dict):
        return {k: _num(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_num(v) for v in x]
    return x


def _emit(obj, out=None):
    text = json.dumps(_num(obj), indent=2)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _log(msg):
    print(msg, file=sys.stderr)


# ----------------------------------------------------------------------
# parameter parsing
def _default_cap() -> int:
    env = os.environ.get("RIGID_SPHERE_CAP")
    if env is None:
        return 10
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"RIGID_SPHERE_CAP must be an integer, got {env!r}")


def _check_cap(cap: int) -> int:
    lo, hi = CAP_RANGE
    if not lo <= cap <= hi:
        raise UsageError(f"cap must lie in [{lo}, {hi}], got {cap}")
    return cap


def _cx(values: dict, key: str) -> complex:
    """Complex value from ``key`` or the pair ``key_re``/``key_im``."""
    if key in values and values[key] is not None:
        v = values[key]
        if isinstance(v, dict):
            return complex(v.get("re", 0.0), v.get("im", 0.0))
        return complex(v)
    return complex(values.get(f"{key}_re") or 0.0, values.get(f"{key}_im") or 0.0)


def _load_values(args) -> dict:
    values = {k: v for k, v in vars(args).items() if v is not None}
    if getattr(args, "params_file", None):
        try:
            with open(args.params_file) as fh:
                loaded = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read params file: {exc}")
        if not isinstance(loaded, dict):
            raise UsageError("params file must hold a flat JSON object")
        # file values fill in what the flags leave unset
        for k, v in loaded.items():
            values.setdefault(k, v)
    return values


def _real(values: dict, key: str, default=0.0) -> float:
    v = values.get(key, default)
    try:
        return float(v)
    except (TypeError, ValueError):
        raise UsageError(f"{key} must be a real number, got {v!r}")


def resolve_params(args):
    """``(source, NormalFormCoeffs, list of TwistParams, StantonParams or None)``."""
    values = _load_values(args)
    source = values.get("source", "coeffs")
    stanton = None
    if source == "coeffs":
        n = NormalFormCoeffs(_real(values, "c22"), _cx(values, "c23"), _real(values, "c33"))
        twists = coeffs_to_twist(n)
    elif source == "twist":
        tau, rho, a = _real(values, "tau"), _real(values, "rho"), _cx(values, "a")
        if "phi" in values:
            twists = [twist_from_phi(tau, a, rho, _real(values, "phi"))]
            n = twist_to_coeffs(twists[0])
        else:
            n = twist_to_coeffs(TwistParams(tau, a, rho, 0.0, tau, -rho))
            twists = coeffs_to_twist(n)
    elif source == "stanton":
        stanton = StantonParams(_cx(values, "b"), _real(values, "r"), _real(values, "theta"))
        try:
            stanton.require_nonzero_c()
        except ValueError as exc:
            raise UsageError(str(exc))
        n = stanton_to_coeffs(stanton)
        twists = [stanton_to_twist(stanton)]
    else:
        raise UsageError(f"unknown parameter source {source!r}")
    for x in (n.c22, n.c23, n.c33):
        if not np.isfinite(x):
            raise UsageError("parameters must be finite")
    return source, n, twists, stanton


def _pick_root(args, twists):
    if not twists:
        raise UsageError("no real root for these parameters")
    k = args.root_index if args.root_index is not None else default_root_index(twists)
    if not 0 <= k < len(twists):
        raise UsageError(f"root index {k} out of range (have {len(twists)} roots)")
    return k, twists[k]


# ----------------------------------------------------------------------
# commands
def cmd_classify(args) -> int:
    source, n, twists, _ = resolve_params(args)
    ok, witness = stanton_reachable(n)
    k_default = default_root_index(twists)
    report = {
        "coeffs": n.to_dict(),
        "roots": [t.to_dict() for t in twists],
        "cubic_defects": [t.cubic_defect() for t in twists],
        "default_root_index": k_default,
        "selected_root_index": args.root_index if args.root_index is not None else k_default,
        "heisenberg": n.isclose(NormalFormCoeffs(0.0, 0.0, 0.0), 0.0),
        "stanton_reachable": ok,
        "stanton_witness": witness.to_dict() if witness is not None else None,
    }
    if args.root_index is not None and not 0 <= args.root_index < len(twists):
        raise UsageError(f"root index {args.root_index} out of range (have {len(twists)} roots)")
    _emit(report, args.output)
    return 0


def cmd_expand(args) -> int:
    cap = _check_cap(args.cap)
    source, n, twists, _ = resolve_params(args)
    k, t = _pick_root(args, twists)
    S = expand_surface(t, cap)
    try:
        found = extract_coeffs(S).to_dict() if cap >= 6 else None
    except SurfaceShapeError as exc:
        _log(f"warning: {exc}")
        found = None
    _emit({
        "source": source,
        "root_index": k,
        "twist": t.to_dict(),
        "coeffs": found,
        "series": S.V.to_json_obj(tol=args.drop_below),
    }, args.output)
    return 0


def cmd_sample(args) -> int:
    source, n, twists, _ = resolve_params(args)
    k, t = _pick_root(args, twists)
    if args.radius <= 0 or args.n_radial < 1 or args.n_angular < 1:
        raise UsageError("radius, --n-radial and --n-angular must be positive")
    radii = np.linspace(0.0, args.radius, args.n_radial)
    angles = 2.0 * np.pi * np.arange(args.n_angular) / args.n_angular
    failures = 0
    fh = open(args.output, "w", newline="") if args.output else sys.stdout
    try:
        writer = csv.writer(fh)
        writer.writerow(["re_z", "im_z", "v", "status"])
        for rad in radii:
            for ang in angles:
                z = complex(rad * math.cos(ang), rad * math.sin(ang))
                try:
                    v = solve_v(t, z, radius=args.radius, tol=args.tol)
                    status = "ok"
                except (NewtonError, ValueError, ZeroDivisionError, OverflowError):
                    v, status = float("nan"), "failed"
                    failures += 1
                writer.writerow([f"{z.real:.17g}", f"{z.imag:.17g}", f"{v:.17g}", status])
    finally:
        if fh is not sys.stdout:
            fh.close()
    if failures:
        _log(f"{failures} grid points did not converge")
        return 1
    return 0


def _random_coeffs(rng, box=5.0, complex_c23=True) -> NormalFormCoeffs:
    c22, c23r, c23i, c33 = rng.uniform(-box, box, 4)
    return NormalFormCoeffs(c22, complex(c23r, c23i if complex_c23 else 0.0), c33)


def _random_stanton(rng, box=2.0) -> StantonParams:
    while True:
        b = complex(*rng.uniform(-box, box, 2))
        r, th = rng.uniform(-box, box, 2)
        if abs(b) <= box and abs(complex(r, th)) > 1e-3:
            return StantonParams(b, r, th)


def _scaled_ok(series, tol, refs=()) -> bool:
    """Degree-d part below ``tol * 2**d``, relative to the size of ``refs`` up to degree d + 1."""
    scale = np.ones(series.cap + 1)
    for ref in refs:
        norms = np.asarray(ref.homogeneous_norms(), dtype=float)
        running = np.maximum.accumulate(norms)
        for d in range(series.cap + 1):
            scale[d] = max(scale[d], running[min(d + 1, len(running) - 1)])
    return all(r <= tol * 2.0 ** d * scale[d] for d, r in enumerate(series.homogeneous_norms()))


def suite_curvature(args, rng) -> dict:
    tol = args.tol or 1e-8
    if args.series_file:
        with open(args.series_file) as fh:
            s = MultiSeries.from_json(fh.read())
        kind = args.series_kind
        if kind == "h":
            rep = curvature_residual(log_laplacian(s), tol)
        elif kind == "f":
            rep = curvature_residual(s, tol)
        else:
            rep = reduced_residual(s, tol)
        return {"passed": rep.spherical, "reports": [rep.to_dict()]}
    cases = []
    for _ in range(args.samples):
        n = _random_coeffs(rng)
        for k, t in enumerate(coeffs_to_twist(n)):
            rep = curvature_residual(log_laplacian(expand_surface(t, args.cap).V), tol)
            cases.append({"coeffs": n.to_dict(), "root_index": k,
                          "max_abs_residual_coefficient": rep.max_abs_residual_coefficient,
                          "verdict": rep.verdict})
    return {"passed": all(c["verdict"] == "spherical_to_order" for c in cases), "cases": cases}


def suite_map(args, rng) -> dict:
    tol = args.tol or 1e-9
    cases = []
    for _ in range(args.samples):
        s = _random_stanton(rng)
        m = stanton_map(s, args.cap)
        rz, rw = system_residual(m, VectorFieldParams(b=s.b, c=s.c))
        cases.append({"kind": "stanton", "params": s.to_dict(),
                      "residual_Z": rz.max_abs(), "residual_W": rw.max_abs(),
                      "passed": _scaled_ok(rz, tol, (m.Z, m.W)) and _scaled_ok(rw, tol, (m.Z, m.W))})
        n = _random_coeffs(rng)
        for k, t in enumerate(coeffs_to_twist(n)):
            m = twisted_map(t, args.cap)
            rz, rw = system_residual(m, twist_field(t))
            case = {"kind": "twisted", "coeffs": n.to_dict(), "root_index": k,
                    "residual_Z": rz.max_abs(), "residual_W": rw.max_abs(),
                    "passed": _scaled_ok(rz, tol, (m.Z, m.W)) and _scaled_ok(rw, tol, (m.Z, m.W))}
            if args.perturb_phi:
                tp = twist_from_phi(t.tau, t.a, t.rho, t.phi + args.perturb_phi)
                pz, pw = system_residual(twisted_map(tp, args.cap), twist_field(tp))
                defect = tp.cubic_defect()
                off = max(pz.max_abs(), pw.max_abs())
                case["perturbed"] = {"delta": args.perturb_phi, "cubic_defect": defect,
                                     "max_residual": off,
                                     "residual_over_defect": off / abs(defect) if defect else None}
            cases.append(case)
    passed = all(c["passed"] for c in cases)
    return {"passed": passed, "tol": tol, "cases": cases}


def suite_normalization(args, rng) -> dict:
    tol = args.tol or 1e-9
    cases = []
    for _ in range(args.samples):
        n = _random_coeffs(rng, box=2.0)
        d = normalization_ode_solve(n, args.cap)
        res = norm_residuals(d, n)
        cases.append({"kind": "normal_form", "coeffs": n.to_dict(), "residuals": [r.max_abs() for r in res],
                      "passed": all(_scaled_ok(r, tol, (d.h, d.p)) for r in res)})
        s = _random_stanton(rng, box=1.0)
        d = stanton_normalization_data(s, args.cap)
        res = norm_residuals(d, stanton_to_coeffs(s))
        cases.append({"kind": "stanton", "params": s.to_dict(), "residuals": [r.max_abs() for r in res],
                      "passed": all(_scaled_ok(r, tol, (d.h, d.p)) for r in res)})
    return {"passed": all(c["passed"] for c in cases), "tol": tol, "cases": cases}


def suite_tubes(args, rng) -> dict:
    tol = args.tol or 1e-10
    reports = {kind: verify_tube(kind, args.cap, tol) for kind in TUBES}
    return {"passed": all(r.spherical for r in reports.values()),
            "tubes": {k: r.to_dict() for k, r in reports.items()}}


def suite_circular(args, rng) -> dict:
    tol = args.tol or 1e-10
    cases = []
    for _ in range(args.samples):
        alpha, beta = rng.uniform(0.1, 2.0), rng.uniform(-0.5, 0.5)
        for family in ("sin", "sinh"):
            g = circular_g(circular_surface(alpha * alpha, beta, family, args.cap))
            rep = circular_residual(g, tol)
            cases.append({"family": family, "alpha": alpha, "beta": beta,
                          "c1": g.coeff(t=1).real, "c2": g.coeff(t=2).real,
                          "max_abs_residual_coefficient": rep.max_abs_residual_coefficient,
                          "verdict": rep.verdict})
    return {"passed": all(c["verdict"] == "spherical_to_order" for c in cases), "cases": cases}


SUITES = {
    "curvature": suite_curvature,
    "map": suite_map,
    "normalization": suite_normalization,
    "tubes": suite_tubes,
    "circular": suite_circular,
}


def cmd_verify(args) -> int:
    _check_cap(args.cap)
    if args.tol is not None and args.tol <= 0:
        raise UsageError("tolerance must be positive")
    names = list(SUITES) if args.suite == "all" else [args.suite]
    rng = np.random.default_rng(args.seed)
    report = {"seed": args.seed, "cap": args.cap, "suites": {}}
    for name in names:
        t0 = time.perf_counter()
        result = SUITES[name](args, rng)
        _log(f"{name}: {'pass' if result['passed'] else 'FAIL'} ({time.perf_counter() - t0:.2f} s)")
        report["suites"][name] = result
    report["passed"] = all(r["passed"] for r in report["suites"].values())
    _emit(report, args.output)
    return 0 if report["passed"] else 1


def cmd_normalize(args) -> int:
    cap = _check_cap(args.cap)
    source, n, _, stanton = resolve_params(args)
    if source == "stanton" and args.stanton_data:
        d = stanton_normalization_data(stanton, cap)
    else:
        d = normalization_ode_solve(n, cap)
    res = [r.max_abs() for r in norm_residuals(d, n)]
    _emit({
        "coeffs": n.to_dict(),
        "residuals": res,
        "alpha": d.alpha.to_json_obj(),
        "p": d.p.to_json_obj(),
        "h": d.h.to_json_obj(),
        "q": d.q.to_json_obj(),
    }, args.output)
    return 0


# ----------------------------------------------------------------------
def _add_param_flags(p):
    g = p.add_argument_group("parameters")
    g.add_argument("--source", choices=["coeffs", "twist", "stanton"], help="parameter source (default coeffs)")
    g.add_argument("--params-file", help="flat JSON object with parameter values")
    for name in ("c22", "c33", "tau", "rho", "phi", "r", "theta"):
        g.add_argument(f"--{name}", type=float)
    for name in ("c23", "a", "b"):
        g.add_argument(f"--{name}-re", dest=f"{name}_re", type=float)
        g.add_argument(f"--{name}-im", dest=f"{name}_im", type=float)
    p.add_argument("--root-index", type=int, help="which real root phi to use (default: smallest |phi|)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rigidsphere", description="Rigid spherical hypersurfaces in C^2")
    sub = parser.add_subparsers(dest="command", required=True)
    cap = _default_cap()

    p = sub.add_parser("classify", help="twist roots and Stanton reachability")
    _add_param_flags(p)
    p.add_argument("--output")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("expand", help="series of the surface v = V(z, zbar)")
    _add_param_flags(p)
    p.add_argument("--cap", type=int, default=cap)
    p.add_argument("--drop-below", type=float, default=0.0, help="omit coefficients below this size")
    p.add_argument("--output")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("sample", help="CSV of surface heights on a polar grid")
    _add_param_flags(p)
    p.add_argument("--radius", type=float, default=0.2)
    p.add_argument("--n-radial", type=int, default=5)
    p.add_argument("--n-angular", type=int, default=8)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--output")
    p.set_defaults(func=cmd_sample)

    for name, suite in (("verify", None), ("verify-map", "map"), ("verify-curvature", "curvature")):
        p = sub.add_parser(name, help="run residual checks" if suite is None else f"alias for verify --suite {suite}")
        if suite is None:
            p.add_argument("--suite", choices=[*SUITES, "all"], default="all")
        else:
            p.set_defaults(suite=suite)
        p.add_argument("--cap", type=int, default=min(cap, 10))
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--samples", type=int, default=3)
        p.add_argument("--tol", type=float)
        p.add_argument("--perturb-phi", type=float, default=0.0)
        p.add_argument("--series-file", help="curvature suite: check this series instead of random samples")
        p.add_argument("--series-kind", choices=["h", "f", "ftilde"], default="h")
        p.add_argument("--output")
        p.set_defaults(func=cmd_verify)

    p = sub.add_parser("normalize", help="solve the normalization ODEs")
    _add_param_flags(p)
    p.add_argument("--cap", type=int, default=cap)
    p.add_argument("--stanton-data", action="store_true",
                   help="with --source stanton, emit the closed-form Stanton data instead")
    p.add_argument("--output")
    p.set_defaults(func=cmd_normalize)
    return parser


def main(argv=None) -> int:
    try:
        parser = build_parser()
    except UsageError as exc:
        _log(f"error: {exc}")
        return 2
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return args.func(args)
    except UsageError as exc:
        _log(f"error: {exc}")
        return 2
    except (SeriesError, ValueError, OSError) as exc:
        _log(f"error: {exc}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
