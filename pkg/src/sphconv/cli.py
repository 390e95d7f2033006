"""Command-line front end.

    sphconv eval    --builtin f2 --z 0.5 --quantity h
    sphconv curve   --builtin f1 --quantity curvratio --out f1.csv
    sphconv scan    --builtin f3
    sphconv verify  --builtin f1 --json
    sphconv figures --outdir figs

Exit codes: 0 success, 1 scan found h < 0 or a verification check failed,
2 bad input (parse error, unknown builtin, argument out of range),
3 evaluation error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import sys

import numpy as np

from . import quad, sphgeo, verify
from .errors import DomainError, EvaluationError, ExprSyntaxError, SphconvError, UnknownBuiltin
from .expr import Claim, MapDefinition, builtin, parse_complex

log = logging.getLogger("sphconv")

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_EVAL, EXIT_IO = 0, 1, 2, 3, 4
CURVE_QUANTITIES = ("lenratio", "arearatio", "curvratio", "hyplenratio", "logmean")
CLAIM_NAMES = {"convex": Claim.SPHERICALLY_CONVEX, "normalized": Claim.CENTRALLY_NORMALIZED,
               "isometry": Claim.SPHERICAL_ISOMETRY}


class _InputError(Exception):
    pass


def fmt(x) -> str:
    """15 significant digits; NaN and infinities spelled as in CSV readers."""
    x = float(x)
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return f"{x:.15g}"


def fmt_complex(z: complex) -> str:
    z = complex(z)
    sign = "-" if z.imag < 0 or (z.imag == 0 and math.copysign(1, z.imag) < 0) else "+"
    return f"{fmt(z.real)}{sign}{fmt(abs(z.imag))}i"


def _add_map_args(p):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--fn", help="expression in z, e.g. 'z^2*exp(z)'")
    g.add_argument("--builtin", help="catalog map, e.g. f1, scale(0.5), rot(0.3,1)")
    p.add_argument("--claims", default="",
                   help="with --fn: comma list of convex,normalized,isometry")


def _add_quad_args(p):
    p.add_argument("--nodes", type=int, default=None,
                   help="angular nodes (power of two >= 16; default $SPHCONV_NODES or 256)")
    p.add_argument("--radial", type=int, default=48, help="Gauss-Legendre radial nodes")


def _load_map(args) -> MapDefinition:
    if args.builtin is not None:
        if args.claims:
            raise _InputError("--claims only applies to --fn")
        return builtin(args.builtin)
    claims = set()
    for word in filter(None, (w.strip() for w in args.claims.split(","))):
        if word not in CLAIM_NAMES:
            raise _InputError(f"unknown claim {word!r}; choose from {sorted(CLAIM_NAMES)}")
        claims.add(CLAIM_NAMES[word])
    return MapDefinition.from_source(args.fn, claims=claims)


def _config(args) -> quad.QuadratureConfig:
    try:
        if args.nodes is None:
            return quad.QuadratureConfig.from_env(args.radial)
        return quad.QuadratureConfig(args.nodes, args.radial)
    except ValueError as exc:
        raise _InputError(str(exc)) from exc


# -- eval ----------------------------------------------------------------------

def cmd_eval(args, out) -> int:
    m = _load_map(args)
    z = parse_complex(args.z)
    if abs(z) >= 1:
        raise _InputError(f"z must lie in the unit disk, got |z|={abs(z):.15g}")
    if args.quantity == "fsharp":
        value = sphgeo.spherical_derivative(m, z)
    elif args.quantity == "h":
        value = sphgeo.h(m, z)
    else:
        value = sphgeo.curvature_image_circle(m, z)
    print(fmt(value), file=out)
    return EXIT_OK


# -- curve ---------------------------------------------------------------------

def write_profile_csv(profile: quad.RadialProfile, stream) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(["r", profile.quantity.value])
    for s in profile.samples:
        w.writerow([fmt(s.r), "NaN", s.reason] if s.is_gap else [fmt(s.r), fmt(s.value)])


def monotonicity_summary(profile) -> str:
    try:
        return verify.classify_monotone(profile).describe()
    except SphconvError as exc:
        return f"unclassified: {exc}"


def cmd_curve(args, out) -> int:
    m = _load_map(args)
    config = _config(args)
    if not 0 < args.rmin < args.rmax < 1:
        raise _InputError("need 0 < rmin < rmax < 1")
    if args.steps < 2:
        raise _InputError("need steps >= 2")
    profile = quad.radial_profile(m, args.quantity, args.rmin, args.rmax, args.steps, config)
    summary = monotonicity_summary(profile)
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            write_profile_csv(profile, fh)
        print(f"{m.name} {profile.quantity.value}: {summary}", file=out)
    else:
        write_profile_csv(profile, out)
        print(f"{m.name} {profile.quantity.value}: {summary}", file=sys.stderr)
    if profile.gaps:
        print(f"{len(profile.gaps)} of {len(profile.samples)} samples failed", file=sys.stderr)
    return EXIT_OK


# -- scan ----------------------------------------------------------------------

def cmd_scan(args, out) -> int:
    m = _load_map(args)
    if args.rmax <= 0 or args.rmax >= 1 or args.radii < 1 or args.angles < 1:
        raise _InputError("need 0 < rmax < 1 and positive radii, angles")
    rep = verify.convexity_scan(m, args.rmax, args.radii, args.angles, args.tol)
    verdict = "h >= 0 on grid" if rep.is_nonnegative else "h < 0 on grid: not spherically convex"
    print(f"map: {m.name}", file=out)
    print(f"grid: r_max={fmt(rep.r_max)} radii={rep.radii} angles={rep.angles}", file=out)
    print(f"min_h: {fmt(rep.min_h)}", file=out)
    print(f"argmin: {fmt_complex(rep.argmin)} (|z|={fmt(abs(rep.argmin))})", file=out)
    if rep.skipped:
        print(f"skipped: {rep.skipped} grid points where h is undefined", file=out)
    print(f"verdict: {verdict}", file=out)
    return EXIT_OK if rep.is_nonnegative else EXIT_FAIL


# -- verify --------------------------------------------------------------------

def _table(results) -> str:
    rows = []
    for r in results:
        if r.witness is not None:
            value = "witness=" + ",".join(fmt(x) for x in r.witness)
        elif r.residual is not None:
            value = f"residual={fmt(r.residual)}"
        else:
            value = ""
        extra = r.detail if r.reason is None else f"{r.reason}; {r.detail}".rstrip("; ")
        rows.append((r.name, r.status.value, value, extra))
    w0 = max(len(r[0]) for r in rows)
    w2 = max(len(r[2]) for r in rows)
    return "\n".join(f"{a:<{w0}}  {b:<7}  {c:<{w2}}  {d}".rstrip() for a, b, c, d in rows)


def cmd_verify(args, out) -> int:
    m = _load_map(args)
    config = _config(args)
    results = verify.verify_all(m, config, args.seed)
    failed = any(r.status is verify.Status.FAIL for r in results)
    if args.json:
        doc = {"map": m.name, "seed": args.seed, "angular_nodes": config.angular_nodes,
               "radial_nodes": config.radial_nodes,
               "results": [r.to_dict() for r in results]}
        print(json.dumps(doc, indent=2, default=str), file=out)
    else:
        print(f"map: {m.name}  nodes={config.angular_nodes} radial={config.radial_nodes} "
              f"seed={args.seed}", file=out)
        print(_table(results), file=out)
    return EXIT_FAIL if failed else EXIT_OK


# -- figures -------------------------------------------------------------------

FIG_GRID = (0.05, 0.95, 50)
SURFACE_RADII = 19     # r = 0.05, 0.10, ..., 0.95
SURFACE_ANGLES = 64
CIRCLE_ANGLES = 256


def _profiles_csv(m, quantities, config) -> str:
    profiles = [quad.radial_profile(m, q, *FIG_GRID, config) for q in quantities]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["r"] + [p.quantity.value for p in profiles])
    for i, r in enumerate(profiles[0].rs):
        w.writerow([fmt(r)] + [fmt(p.samples[i].value) for p in profiles])
    return buf.getvalue()


def _surface_csv(m) -> str:
    rs = 0.05 * np.arange(1, SURFACE_RADII + 1)
    ts = 2 * np.pi * np.arange(SURFACE_ANGLES) / SURFACE_ANGLES
    zs = rs[:, None] * np.exp(1j * ts)[None, :]
    hs, _ = sphgeo.pointwise(m, zs, "h")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["r", "t", "h"])
    for i, r in enumerate(rs):
        for k, t in enumerate(ts):
            w.writerow([fmt(r), fmt(t), fmt(hs[i, k])])
    return buf.getvalue()


def _circle_csv(m, r) -> str:
    ts = 2 * np.pi * np.arange(CIRCLE_ANGLES) / CIRCLE_ANGLES
    hs, _ = sphgeo.pointwise(m, r * np.exp(1j * ts), "h")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "h"])
    for t, v in zip(ts, hs):
        w.writerow([fmt(t), fmt(v)])
    return buf.getvalue()


def figure_tables(config: quad.QuadratureConfig) -> dict:
    """File name -> CSV text for every figure."""
    f1, f2, f3 = builtin("f1"), builtin("f2"), builtin("f3")
    q = quad.Quantity
    return {
        "fig1_f1_len_area.csv": _profiles_csv(f1, (q.LEN_RATIO, q.AREA_RATIO), config),
        "fig2_f1_curv.csv": _profiles_csv(f1, (q.CURV_RATIO,), config),
        "fig3_f2_h_surface.csv": _surface_csv(f2),
        "fig4_f2_ratios.csv": _profiles_csv(f2, (q.LEN_RATIO, q.AREA_RATIO, q.CURV_RATIO),
                                            config),
        "fig5_f3_h_surface.csv": _surface_csv(f3),
        "fig6_f3_h_r08.csv": _circle_csv(f3, 0.8),
        "fig7_f3_len_area.csv": _profiles_csv(f3, (q.LEN_RATIO, q.AREA_RATIO), config),
        "fig8_f3_curv.csv": _profiles_csv(f3, (q.CURV_RATIO,), config),
    }


def cmd_figures(args, out) -> int:
    config = _config(args)
    tables = figure_tables(config)
    try:
        os.makedirs(args.outdir, exist_ok=True)
        for name, text in sorted(tables.items()):
            with open(os.path.join(args.outdir, name), "w", newline="",
                      encoding="utf-8") as fh:
                fh.write(text)
    except OSError as exc:
        print(f"error: cannot write figures: {exc}", file=sys.stderr)
        return EXIT_IO
    for name in sorted(tables):
        print(os.path.join(args.outdir, name), file=out)
    return EXIT_OK


# -- entry point -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sphconv", description="Spherical geometry of meromorphic maps of the unit disk.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log to standard error")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate f#, h or image-circle curvature at a point")
    _add_map_args(p)
    p.add_argument("--z", required=True, help="point in the disk, e.g. 0.3+0.2i")
    p.add_argument("--quantity", choices=("fsharp", "h", "kappa"), default="fsharp")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("curve", help="radial profile of a ratio as CSV")
    _add_map_args(p)
    p.add_argument("--quantity", choices=CURVE_QUANTITIES, required=True)
    p.add_argument("--rmin", type=float, default=0.05)
    p.add_argument("--rmax", type=float, default=0.95)
    p.add_argument("--steps", type=int, default=50)
    _add_quad_args(p)
    p.add_argument("--out", help="CSV path (default: standard output)")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("scan", help="minimum of h over a polar grid")
    _add_map_args(p)
    p.add_argument("--rmax", type=float, default=0.95)
    p.add_argument("--radii", type=int, default=100)
    p.add_argument("--angles", type=int, default=256)
    p.add_argument("--tol", type=float, default=verify.INEQUALITY_TOL)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", help="run every applicable check")
    _add_map_args(p)
    _add_quad_args(p)
    p.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--json", action="store_true")
    mode.add_argument("--table", action="store_true", help="aligned text (default)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("figures", help="write the figure data CSVs")
    p.add_argument("--outdir", default="figures")
    _add_quad_args(p)
    p.set_defaults(func=cmd_figures)
    return parser


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args, out)
    except (ExprSyntaxError, UnknownBuiltin, DomainError, _InputError) as exc:
        msg = exc.args[0] if isinstance(exc, UnknownBuiltin) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_INPUT
    except (EvaluationError, SphconvError, ArithmeticError) as exc:
        print(f"evaluation error: {exc}", file=sys.stderr)
        return EXIT_EVAL


if __name__ == "__main__":
    sys.exit(main())
