"""Command-line front end: ``simpvol {gen,check,bounds,certify,hyp}``."""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from . import bounds as bd
from . import generators as gen
from . import hypervol as hv
from .homology import homology
from .links import is_manifold
from .pseudomanifold import (
    PseudomanifoldError,
    boundary,
    boundary_profile,
    connected_components,
    euler_characteristic,
    from_json,
    orientability,
)
from .surfaces import analyze_surface, surface_simplicial_volume


class InputError(Exception):
    """Unreadable or invalid triangulation file (exit code 1)."""


class UsageError(Exception):
    """Arguments accepted by the parser but rejected by the library (exit code 2)."""


def _fmt(x) -> str:
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float):
        return f"{x:.6g}"
    return str(x)


def _fraction(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


def _finite(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError("must be finite")
    return value


def _angles(text: str) -> tuple[float, float, float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected three comma-separated angles")
    return tuple(_finite(p) for p in parts)


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return from_json(text)
    except PseudomanifoldError as exc:
        raise InputError(f"{path}: {exc}") from None


def _emit(out, data: dict, as_json: bool, lines=None) -> None:
    if as_json:
        out.write(json.dumps(data, indent=2) + "\n")
    else:
        for line in lines if lines is not None else [f"{k}: {_fmt(v)}" for k, v in data.items()]:
            out.write(line + "\n")


# --------------------------------------------------------------------------


def cmd_gen(args, out) -> int:
    if args.kind == "cone":
        P = gen.cone_over_simplex_boundary(args.dim if args.dim is not None else 3)
    elif args.kind == "solid-torus":
        P = gen.solid_torus()
    elif args.kind == "handlebody":
        P = gen.handlebody(args.genus if args.genus is not None else 1)
    else:
        P = gen.product_surface_interval(args.genus if args.genus is not None else 1)
    text = P.to_json(indent=2) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return 0


def check_report(P) -> dict:
    report = {
        "dimension": P.dimension,
        "simplices": P.simplices,
        "gluings": len(P.gluings),
        "valid": True,
        "connected_components": len(connected_components(P)),
        "orientable": orientability(P).orientable,
        "euler": euler_characteristic(P),
        "profile": list(boundary_profile(P).counts),
        "boundary_faces": len(P.boundary_faces()),
    }
    try:
        report["homology"] = [str(homology(P, d)) for d in range(P.dimension + 1)]
    except PseudomanifoldError:
        report["homology"] = None
    if P.dimension == 3:
        report["manifold"] = is_manifold(P)
    if P.dimension == 3 and P.boundary_faces():
        s = analyze_surface(boundary(P))
        report["boundary"] = s.as_dict()["components"]
        report["boundary_norm"] = bd.jsonable(surface_simplicial_volume(s))
    return report


def cmd_check(args, out) -> int:
    P = _load(args.file)
    r = check_report(P)
    lines = [
        f"dimension {r['dimension']}, {r['simplices']} simplices, {r['gluings']} gluings",
        "valid",
        f"components: {r['connected_components']}",
        f"orientable: {_fmt(r['orientable'])}",
        f"euler characteristic: {r['euler']}",
        f"profile t_i: {' '.join(map(str, r['profile']))}",
    ]
    if r["homology"] is not None:
        lines.append("homology: " + ", ".join(f"H{d} = {h}" for d, h in enumerate(r["homology"])))
    if "manifold" in r:
        lines.append(f"manifold: {_fmt(r['manifold'])}")
    if "boundary" in r:
        parts = [
            f"genus {c['genus']} ({'orientable' if c['orientable'] else 'nonorientable'}, {c['triangles']} triangles)"
            for c in r["boundary"]
        ]
        lines.append(f"boundary: {len(parts)} components: " + "; ".join(parts))
        lines.append(f"boundary norm: {r['boundary_norm']}")
    else:
        lines.append("boundary: empty")
    _emit(out, r, args.json, lines)
    return 0


def cmd_bounds(args, out) -> int:
    if args.file:
        P = _load(args.file)
        if P.dimension != 3:
            raise UsageError("bounds from a file need a 3-dimensional triangulation")
        bnorm = surface_simplicial_volume(analyze_surface(boundary(P))) if P.boundary_faces() else Fraction(0)
        n = 3
    else:
        if args.dim is None or args.boundary_norm is None:
            raise UsageError("give a FILE or both --dim and --boundary-norm")
        n, bnorm = args.dim, args.boundary_norm
    m = bd.ManifoldDescriptor(
        n,
        bnorm,
        aspherical=args.aspherical,
        boundary_irreducible=args.boundary_irreducible,
        hyperbolic_geodesic_boundary=args.hyperbolic,
        vol=args.vol,
    )
    best = bd.best_lower_bound(m)
    data = {
        "dimension": n,
        "boundary_norm": bd.jsonable(bnorm),
        "value": bd.jsonable(best.value),
        "source": best.source,
        "candidates": [r.as_dict() for r in bd.applicable_bounds(m)],
    }
    lines = [f"lower bound: {_fmt(best.value)} (source {best.source})"]
    lines += [f"  {r.source}: {_fmt(r.value)}" for r in bd.applicable_bounds(m)]
    _emit(out, data, args.json, lines)
    return 0


def cmd_certify(args, out) -> int:
    P = _load(args.file)
    if P.dimension != 3:
        raise UsageError("certify needs a 3-dimensional triangulation")
    try:
        cert = bd.counting_certificate(P, args.degree, args.boundary_norm, args.components)
    except PseudomanifoldError as exc:
        raise UsageError(str(exc)) from None
    adm = bd.admissibility_check(P)
    data = cert.as_dict()
    data["admissible"] = adm.passed
    data["admissibility_witnesses"] = list(adm.witnesses)
    lines = [
        f"profile t_i: {' '.join(map(str, cert.profile))}",
        f"nice edges: {cert.e_nice}, bad edges: {cert.e_bad}",
        f"dual graph euler characteristic: {cert.dual_euler}, genus {cert.handlebody_genus}",
        f"admissible: {_fmt(adm.passed)}",
    ]
    lines += [f"  {'pass' if q.passed else 'FAIL'}  {q.name}: {q.lhs} vs {q.rhs}" for q in cert.inequalities]
    _emit(out, data, args.json, lines)
    return 0


def cmd_hyp(args, out) -> int:
    if args.what == "table":
        rows = hv.small_manifold_table(args.max_genus)
        data = {"rows": [r.as_dict() for r in rows]}
        head = f"{'g':>3} {'bnorm':>6} {'min_vol':>10} {'jungreis':>10} {'thm_c':>6} {'thm_f':>10} {'best':>10} {'source':>9} cmp1  cmp2"
        lines = [head] + [
            f"{r.g:>3} {r.boundary_norm:>6} {_fmt(r.min_vol):>10} {_fmt(r.jungreis):>10} {r.thm_c:>6} "
            f"{_fmt(r.thm_f):>10} {_fmt(r.best):>10} {r.best_source:>9} {_fmt(r.cmp1):<5} {_fmt(r.cmp2)}"
            for r in rows
        ]
        _emit(out, data, args.json, lines)
    elif args.what == "lob":
        _emit(out, {"theta": args.theta, "value": hv.lobachevsky(args.theta)}, args.json)
    elif args.what == "tet":
        a, b, c = args.angles
        _emit(out, {"angles": [a, b, c], "volume": hv.ideal_tetrahedron_volume(a, b, c)}, args.json)
    elif args.what == "truncated":
        _emit(out, {"genus": args.genus, "volume": hv.regular_truncated_volume(args.genus)}, args.json)
    else:
        vol, b = args.vol, float(args.boundary_norm)
        data = {"jungreis": hv.jungreis_bound(vol), "thm_f": hv.thm_f_bound(vol, b)}
        _emit(out, data, args.json)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="simpvol", description="Triangulations and simplicial-volume bounds.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a generated triangulation")
    g.add_argument("kind", choices=["cone", "solid-torus", "handlebody", "product"])
    g.add_argument("--dim", type=int)
    g.add_argument("--genus", type=int)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("check", help="validate and summarize a triangulation file")
    c.add_argument("file")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_check)

    b = sub.add_parser("bounds", help="best lower bound for the simplicial volume")
    b.add_argument("file", nargs="?")
    b.add_argument("--dim", type=int)
    b.add_argument("--boundary-norm", type=_fraction)
    b.add_argument("--aspherical", action="store_true")
    b.add_argument("--boundary-irreducible", action="store_true")
    b.add_argument("--hyperbolic", action="store_true")
    b.add_argument("--vol", type=_finite)
    b.add_argument("--json", action="store_true")
    b.set_defaults(func=cmd_bounds)

    ce = sub.add_parser("certify", help="evaluate the counting inequalities on a triangulation")
    ce.add_argument("file")
    ce.add_argument("--degree", type=int, default=1)
    ce.add_argument("--boundary-norm", type=_fraction, required=True)
    ce.add_argument("--components", type=int, required=True)
    ce.add_argument("--json", action="store_true")
    ce.set_defaults(func=cmd_certify)

    h = sub.add_parser("hyp", help="hyperbolic volumes and bounds")
    hs = h.add_subparsers(dest="what", required=True)
    t = hs.add_parser("table")
    t.add_argument("--max-genus", type=int, required=True)
    lo = hs.add_parser("lob")
    lo.add_argument("--theta", type=_finite, required=True)
    te = hs.add_parser("tet")
    te.add_argument("--angles", type=_angles, required=True)
    tr = hs.add_parser("truncated")
    tr.add_argument("--genus", type=int, required=True)
    bo = hs.add_parser("bound")
    bo.add_argument("--vol", type=_finite, required=True)
    bo.add_argument("--boundary-norm", type=_fraction, required=True)
    for sp in (t, lo, te, tr, bo):
        sp.add_argument("--json", action="store_true")
    h.set_defaults(func=cmd_hyp)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except InputError as exc:
        err.write(f"error: {exc}\n")
        return 1
    except (UsageError, PseudomanifoldError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
