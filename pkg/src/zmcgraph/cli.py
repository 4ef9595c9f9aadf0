"""Command-line front end.

Subcommands:

* ``construct``: build a series by case tag and parameter, write coefficient JSON.
* ``classify``: causal classification of a series or catalog surface on a grid.
* ``bounds``: convergence certificate, width profile and non-convexity witness.
* ``verify``: the verification suites (recursion equivalence, coefficient
  growth estimates, surface corpus).
* ``mesh``: triangulated export with causal vertex colors (PLY or OBJ).

Exit codes: 0 success, 1 verification failure, 2 argument violation,
3 certificate violation, 4 I/O failure.  ``ZMC_THREADS`` caps row-parallel
grid evaluation.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np

from . import bounds as bounds_mod
from . import catalog, mesh as mesh_mod
from .lorentz import Causal, classify, first_form
from .poly import RationalPoly
from .series import (
    GraphSeries,
    SeedCondition,
    SeriesCase,
    af_bf_exact,
    beta8_sign_note,
    psi_jet,
    series_from_expansion,
    series_from_json,
    series_from_recursion,
    series_to_json,
)

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_ARGS = 2
EXIT_CERT = 3
EXIT_IO = 4



# ---------------------------------------------------------------------------
# small helpers
# ---------------------------------------------------------------------------


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r} ({e})")


def _grid(text: str) -> tuple[np.ndarray, np.ndarray]:
    try:
        xpart, ypart = text.split(",")
        x0, x1, nx = xpart.split(":")
        y0, y1, ny = ypart.split(":")
        xs = np.linspace(float(x0), float(x1), int(nx))
        ys = np.linspace(float(y0), float(y1), int(ny))
    except ValueError as e:
        raise argparse.ArgumentTypeError(
            f"grid must look like X0:X1:NX,Y0:Y1:NY (got {text!r}: {e})"
        )
    if len(xs) < 2 or len(ys) < 2:
        raise argparse.ArgumentTypeError("grid needs at least 2 points per axis")
    return xs, ys


def _n_threads() -> int:
    try:
        return max(1, int(os.environ.get("ZMC_THREADS", "1")))
    except ValueError:
        return 1


def _map_rows(fn, items):
    n = _n_threads()
    if n == 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _poly_str(p: RationalPoly) -> str:
    if p.is_zero:
        return "0"
    terms = []
    for d, c in enumerate(p.coeffs):
        if c == 0:
            continue
        if d == 0:
            terms.append(str(c))
        elif d == 1:
            terms.append(f"{c}*y")
        else:
            terms.append(f"{c}*y^{d}")
    return " + ".join(terms)


def _load_series(path: str) -> GraphSeries:
    with open(path) as fh:
        return series_from_json(json.load(fh))


def _write_json(payload, path: str | None) -> None:
    text = json.dumps(payload, indent=2)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# ---------------------------------------------------------------------------
# construct
# ---------------------------------------------------------------------------


def cmd_construct(args) -> int:
    case = SeriesCase(args.case)
    try:
        seed = SeedCondition(case, args.c)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ARGS
    if case is SeriesCase.MIXED_I:
        s = series_from_expansion(seed, args.order)
    else:
        s = series_from_recursion(seed, args.order)
    _write_json(series_to_json(s), args.out)
    print(f"case {case.value}, c = {seed.c}, order {s.order}", file=sys.stderr)
    for k in sorted(s.betas):
        print(f"  beta_{k} = {_poly_str(s.betas[k])}", file=sys.stderr)
    if s.order >= 8 and case is not SeriesCase.MIXED_I:
        note = beta8_sign_note(s)
        print(f"  note: {note['detail']}", file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------------------
# classify
# ---------------------------------------------------------------------------


def _series_verdict_grid(
    s: GraphSeries, xs, ys, tol: float, exact: bool
) -> list[list[Causal]]:
    if exact:

        def row(x):
            xf = Fraction(float(x))
            out = []
            for y in ys:
                _, b = af_bf_exact(s, xf, Fraction(float(y)))
                out.append(
                    Causal.SPACELIKE
                    if b > 0
                    else (Causal.TIMELIKE if b < 0 else Causal.NULL)
                )
            return out

    else:

        def row(x):
            out = []
            for y in ys:
                jet = psi_jet(s, float(x), float(y))
                b = 1.0 - jet.px * jet.px - jet.py * jet.py
                out.append(classify(b, tol).kind)
            return out

    return _map_rows(row, xs)


def _surface_verdict_grid(e: catalog.SurfaceEntry, xs, ys, tol: float):
    def row(u):
        out = []
        for v in ys:
            _, b = first_form(e.jet(float(u), float(v)))
            out.append(classify(b, tol).kind)
        return out

    return _map_rows(row, xs)


def _summary_verdict(counts: dict[str, int], min_points: int = 5) -> str:
    ns, nt = counts["spacelike"], counts["timelike"]
    if ns >= min_points and nt >= min_points:
        return "mixed type"
    if ns >= min_points:
        return "maximal type"
    if nt >= min_points:
        return "time-like"
    return "light-like"


def _resolve_surface(args):
    """Returns (kind, payload): ('series', GraphSeries) or ('catalog', entry)."""
    if args.coeffs:
        return "series", _load_series(args.coeffs)
    name = args.surface
    if name.startswith("catalog:"):
        name = name.split(":", 1)[1]
    return "catalog", catalog.entry(name)


def cmd_classify(args) -> int:
    kind, obj = _resolve_surface(args)
    if args.grid is not None:
        xs, ys = args.grid
    elif kind == "series":
        half = 0.999 * bounds_mod.u_halfwidth(obj.seed.c, 0.0)
        xs = np.linspace(-half, half, 21)
        ys = np.linspace(-0.999, 0.999, 21)
    else:
        (u0, u1), (v0, v1) = obj.domain
        xs, ys = np.linspace(u0, u1, 21), np.linspace(v0, v1, 21)

    if args.certified:
        if kind != "series":
            print("error: --certified applies to coefficient series", file=sys.stderr)
            return EXIT_ARGS
        xmax, ymax = float(np.max(np.abs(xs))), float(np.max(np.abs(ys)))
        if not bounds_mod.u_membership(obj.seed.c, xmax, ymax):
            print(
                f"error: grid corner ({xmax:g}, {ymax:g}) lies outside the "
                "certified domain",
                file=sys.stderr,
            )
            return EXIT_CERT

    exact = args.exact if args.exact is not None else (kind == "series")
    if kind == "series":
        grid = _series_verdict_grid(obj, xs, ys, args.tol, exact)
        label = f"series case {obj.seed.case.value} (c = {obj.seed.c})"
    else:
        grid = _surface_verdict_grid(obj, xs, ys, args.tol)
        label = f"catalog:{obj.name}"

    counts = {"spacelike": 0, "timelike": 0, "null": 0}
    for r in grid:
        for kindv in r:
            counts[kindv.value] += 1
    verdict = _summary_verdict(counts)
    total = sum(counts.values())
    print(f"{label}: {total} points")
    for key in ("spacelike", "timelike", "null"):
        bar = "#" * int(round(40 * counts[key] / total)) if total else ""
        print(f"  {key:10s} {counts[key]:6d} {bar}")
    print(f"  verdict: {verdict}")
    report = {
        "surface": label,
        "exact": exact,
        "tol": args.tol,
        "grid": {
            "x": [float(xs[0]), float(xs[-1]), len(xs)],
            "y": [float(ys[0]), float(ys[-1]), len(ys)],
        },
        "counts": counts,
        "verdict": verdict,
        # one string per x row, one character per y sample
        "legend": {"s": "spacelike", "t": "timelike", "n": "null"},
        "verdict_rows": [
            "".join(k.value[0] for k in row) for row in grid
        ],
        "columns": [
            {
                "x": float(x),
                "spacelike": sum(k is Causal.SPACELIKE for k in row),
                "timelike": sum(k is Causal.TIMELIKE for k in row),
                "null": sum(k is Causal.NULL for k in row),
            }
            for x, row in zip(xs, grid)
        ],
    }
    if args.out:
        _write_json(report, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# bounds
# ---------------------------------------------------------------------------


def cmd_bounds(args) -> int:
    try:
        cert = bounds_mod.certificate(args.c, args.delta)
        witness = bounds_mod.convexity_witness(args.c)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ARGS
    widths = {y: bounds_mod.u_halfwidth(args.c, y) for y in (0.0, 1.0, 2.0, 4.0)}
    print(f"tau = {cert.tau}, M = {cert.M:.4f}, C_delta = {cert.C_delta:.4f}")
    print(f"rectangle: |x| < {1.0 / cert.C_delta:.6e}, |y| < {cert.delta}")
    for y, w in widths.items():
        print(f"  half-width at y = {y:g}: {w:.6e}")
    mid = witness.midpoint
    print(
        f"non-convexity witness: midpoint ({mid[0]:.6e}, {mid[1]:g}) of two "
        f"member points is {'in' if witness.midpoint_in_u else 'NOT in'} the domain"
    )
    payload = {
        "certificate": cert.to_json(),
        "halfwidths": {str(k): v for k, v in widths.items()},
        "witness": witness.to_json(),
    }
    _write_json(payload, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _suite_recursion() -> list[dict]:
    rows = []
    table = {
        4: lambda c: RationalPoly([0, 4 * c]),
        5: lambda c: RationalPoly(),
        6: lambda c: RationalPoly([0, 0, 0, -8 * c * c]),
        7: lambda c: RationalPoly(),
    }
    for c in (Fraction(1), Fraction(-1), Fraction(3, 2)):
        case = SeriesCase.TIMELIKE_III if c > 0 else SeriesCase.SPACELIKE_II
        seed = SeedCondition(case, c)
        s1 = series_from_recursion(seed, 16)
        s2 = series_from_expansion(seed, 16)
        rows.append(
            {
                "suite": "recursion",
                "name": f"paths-identical c={c}",
                "pass": s1.betas == s2.betas,
            }
        )
        rows.append(
            {
                "suite": "recursion",
                "name": f"low-order-table c={c}",
                "pass": all(s1.betas[k] == mk(c) for k, mk in table.items()),
            }
        )
        if c == 1:
            note = beta8_sign_note(s1)
            note["suite"] = "recursion"
            rows.append(note)
    return rows


def _suite_growth() -> list[dict]:
    rows = []
    for c in (Fraction(1), Fraction(-1)):
        case = SeriesCase.TIMELIKE_III if c > 0 else SeriesCase.SPACELIKE_II
        s = series_from_recursion(SeedCondition(case, c), 16)
        for delta in (1.0, 2.0):
            for check in bounds_mod.verify_growth_estimates(s, delta, 101):
                row = check.to_json()
                row["suite"] = "growth"
                row["name"] = f"c={c} delta={delta:g} l={check.l} {check.inequality}"
                rows.append(row)
    return rows


def _suite_corpus() -> list[dict]:
    rows = []
    for r in catalog.corpus_verify():
        row = r.to_json()
        row["suite"] = "corpus"
        rows.append(row)
    return rows


def cmd_verify(args) -> int:
    suites = {
        "recursion": _suite_recursion,
        "growth": _suite_growth,
        "corpus": _suite_corpus,
    }
    selected = list(suites) if args.suite == "all" else [args.suite]
    rows: list[dict] = []
    for name in selected:
        rows.extend(suites[name]())
    failures = 0
    for row in rows:
        if row.get("kind") == "info":
            status = "INFO"
        elif row.get("pass"):
            status = "pass"
        else:
            status = "FAIL"
            failures += 1
        label = row.get("name", row.get("suite"))
        print(f"[{status}] {row.get('suite')}: {label}")
    print(f"{len(rows)} rows, {failures} failures")
    if args.out:
        _write_json(rows, args.out)
    return EXIT_OK if failures == 0 else EXIT_VERIFY_FAIL


# ---------------------------------------------------------------------------
# mesh
# ---------------------------------------------------------------------------


def cmd_mesh(args) -> int:
    kind, obj = _resolve_surface(args)
    if args.grid is not None:
        xs, ys = args.grid
    elif kind == "series":
        half = 0.999 * bounds_mod.u_halfwidth(obj.seed.c, 0.0)
        xs = np.linspace(-half, half, 33)
        ys = np.linspace(-0.999, 0.999, 33)
    else:
        (u0, u1), (v0, v1) = obj.domain
        xs, ys = np.linspace(u0, u1, 33), np.linspace(v0, v1, 33)

    if kind == "series":

        def evaluate(x, y):
            jet = psi_jet(obj, float(x), float(y))
            b = 1.0 - jet.px * jet.px - jet.py * jet.py
            return (float(x), float(y), jet.value), classify(b, args.tol).kind

    else:

        def evaluate(u, v):
            j = obj.jet(float(u), float(v))
            _, b = first_form(j)
            return tuple(j.f), classify(b, args.tol).kind

    m = mesh_mod.build_grid_mesh(evaluate, xs, ys, row_mapper=_map_rows)
    try:
        if args.format == "obj":
            mesh_mod.write_obj(m, args.out)
        else:
            mesh_mod.write_ply(m, args.out, binary=args.ply_binary)
    except OSError as e:
        print(f"error writing {args.out!r}: {e}", file=sys.stderr)
        return EXIT_IO
    print(
        f"wrote {args.out}: {len(m.vertices)} vertices, {len(m.faces)} faces",
        file=sys.stderr,
    )
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zmc",
        description="Zero-mean-curvature graphs with an entire null line: "
        "construction, classification, certificates, meshes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a series and write coefficient JSON")
    p.add_argument("--case", required=True, choices=["i", "ii", "iii"])
    p.add_argument("--c", required=True, type=_rational)
    p.add_argument("--order", type=int, default=16)
    p.add_argument("--out", default=None, help="output JSON path (default stdout)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("classify", help="causal classification on a grid")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--coeffs", help="coefficient JSON from construct")
    src.add_argument("--surface", help="catalog:NAME")
    p.add_argument("--grid", type=_grid, default=None, help="X0:X1:NX,Y0:Y1:NY")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--certified", action="store_true")
    p.add_argument(
        "--exact",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="exact rational sign evaluation (default: on for series)",
    )
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("bounds", help="convergence certificate and domain profile")
    p.add_argument("--c", required=True, type=_rational)
    p.add_argument("--delta", type=float, default=1.0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument(
        "--suite", choices=["recursion", "growth", "corpus", "all"], default="all"
    )
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("mesh", help="export a triangulated mesh")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--coeffs")
    src.add_argument("--surface")
    p.add_argument("--grid", type=_grid, default=None)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--format", choices=["ply", "obj"], default="ply")
    p.add_argument("--ply-binary", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_mesh)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ARGS
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
