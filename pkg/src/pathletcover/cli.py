"""Command-line entry point: ``pathletcover cluster|simplify|inspect-fsd|oracle``.

Exit status 0 on success, 1 on bad input, 2 when the greedy cover stalls.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .clustering import StallError, cluster, validate_clustering
from .curve_core import EPS_GEOM, EPS_PARAM, DomainError, Tolerance, frechet_decide
from .io_formats import SCHEMA_VERSION, InputError, clustering_json, read_trajectory, simplification_json, write_json
from .oracles import oracle_min_simplification
from .postprocess import interior_disjoint_clustering
from .reachability import build_reach_graph, build_rect_domain
from .simplification import build_simplification, verify_simplification
from .svg import clustering_svg, fsd_svg, simplification_svg
from .universe import build_universe

EXIT_OK, EXIT_INPUT, EXIT_STALL = 0, 1, 2


def _out_dir(path: str) -> str:
    os.makedirs(path, exist_ok=True)
    return path


def _write_text(path: str, text: str) -> None:
    with open(path, "w") as fh:
        fh.write(text)


def cmd_cluster(args) -> int:
    T = read_trajectory(args.input)
    out = _out_dir(args.out)
    status, uncovered = "ok", None
    try:
        result = cluster(T, args.ell, args.delta, args.eps_geom, args.eps_param)
    except StallError as err:
        result, status, uncovered = err.partial, "stall", err.uncovered
    if args.interior_disjoint:
        result.pathlets = interior_disjoint_clustering(result.pathlets)
        result.params["interior_disjoint"] = True
    write_json(os.path.join(out, "clustering.json"), clustering_json(result, status, uncovered))
    if args.svg:
        _write_text(os.path.join(out, "clustering.svg"), clustering_svg(T, result.pathlets))
    if status == "stall":
        print(f"stalled: {len(uncovered)} universe intervals left uncovered", file=sys.stderr)
        return EXIT_STALL
    if args.check:
        rep = validate_clustering(T, result, args.ell, 4.0 * args.delta, Tolerance.for_points(T, args.eps_geom,
                                                                                                args.eps_param))
        print("validation:", "pass" if rep.ok else f"FAIL {rep}")
    print(f"{len(result.pathlets)} pathlets, universe size {result.stats['universe_size']}")
    return EXIT_OK


def cmd_simplify(args) -> int:
    T = read_trajectory(args.input)
    out = _out_dir(args.out)
    tol = Tolerance.for_points(T, args.eps_geom, args.eps_param)
    simp = build_simplification(T, args.delta, tol)
    doc = {"schema": f"pathletcover.simplification/{SCHEMA_VERSION}",
           "params": {"n": len(T), "delta": args.delta, "eps_geom": args.eps_geom, "eps_param": args.eps_param},
           **simplification_json(simp),
           "verified": bool(verify_simplification(T, simp, args.delta, tol))}
    write_json(os.path.join(out, "simplification.json"), doc)
    if args.svg:
        _write_text(os.path.join(out, "simplification.svg"), simplification_svg(T, simp.vertices))
    print(f"{len(simp)} vertices")
    return EXIT_OK


def _column_range(text: str, m: int):
    try:
        a, b = (int(v) for v in text.split(":"))
    except ValueError:
        raise InputError(f"column range must look like i:j, got {text!r}") from None
    if not (1 <= a < b <= m):
        raise InputError(f"column range {a}:{b} outside 1:{m}")
    return a, b


def cmd_inspect_fsd(args) -> int:
    T = read_trajectory(args.input)
    out = _out_dir(args.out)
    tol = Tolerance.for_points(T, args.eps_geom, args.eps_param)
    if len(T) < 2:
        raise InputError("free-space inspection needs at least two vertices")
    simp = build_simplification(T, args.delta, tol)
    S = simp.vertices
    a, b = _column_range(args.column_range, len(S))
    radius = 4.0 * args.delta
    W = S[a - 1 : b]
    domain = build_rect_domain(W, T, radius, tol)
    _, points = build_universe(S, T, radius, tol, keep_points=True)
    local = [(p.x - a + 1, p.y, p.kind) for p in points if a <= p.x <= b]
    paths = []
    if args.ell:
        try:
            result = cluster(T, args.ell, args.delta, args.eps_geom, args.eps_param)
            chosen = result.pathlets
        except StallError as err:
            chosen = err.partial.pathlets
        for p in chosen:
            if not (a <= p.start <= p.end <= b):
                continue
            for y0, y1 in p.intervals:
                ends = [(p.start - a + 1, y0), (p.end - a + 1, y1)]
                g = build_reach_graph(domain, ends)
                route = g.path(g.z_vertex[0], g.z_vertex[1])
                if route:
                    paths.append(route)
    _write_text(os.path.join(out, "fsd.svg"), fsd_svg(domain, [(x, y) for x, y, _ in local], paths))
    if args.json:
        graph = build_reach_graph(domain, [(x, y) for x, y, _ in local])
        doc = {"schema": f"pathletcover.fsd/{SCHEMA_VERSION}", "columns": [a, b], "delta_prime": radius,
               "critical_points": [{"x": x, "y": y, "role": k} for x, y, k in local],
               "graph": graph.to_json()}
        write_json(os.path.join(out, "fsd.json"), doc)
    print(f"{len(local)} critical points in columns {a}:{b}")
    return EXIT_OK


def cmd_oracle(args) -> int:
    T = read_trajectory(args.input)
    if args.what == "min-simplification":
        doc = {"min_vertices": oracle_min_simplification(T, args.delta)}
    else:
        if not args.other:
            raise InputError("frechet needs --other")
        Q = read_trajectory(args.other)
        doc = {"within": bool(frechet_decide(T, Q, args.delta))}
    print(json.dumps(doc))
    return EXIT_OK


def _common(p, delta=True):
    p.add_argument("--input", required=True, help="trajectory CSV, one vertex per row")
    if delta:
        p.add_argument("--delta", type=float, required=True)
    p.add_argument("--eps-geom", type=float, default=EPS_GEOM)
    p.add_argument("--eps-param", type=float, default=EPS_PARAM)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pathletcover", description="Subtrajectory clustering by greedy pathlet cover.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cluster", help="cluster a trajectory into pathlets")
    _common(p)
    p.add_argument("--ell", type=int, required=True, help="max vertices per reference curve (>= 2)")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--svg", action="store_true")
    p.add_argument("--interior-disjoint", action="store_true", help="split pathlets so their intervals do not overlap")
    p.add_argument("--check", action="store_true", help="validate the result before exiting")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("simplify", help="greedy simplification only")
    _common(p)
    p.add_argument("--out", required=True)
    p.add_argument("--svg", action="store_true")
    p.set_defaults(func=cmd_simplify)

    p = sub.add_parser("inspect-fsd", help="draw the free-space diagram of a piece of the simplification")
    _common(p)
    p.add_argument("--column-range", required=True, help="i:j, vertices of the simplification (1-based)")
    p.add_argument("--out", required=True)
    p.add_argument("--json", action="store_true", help="also dump critical points and the reachability graph")
    p.add_argument("--ell", type=int, default=0, help="cluster first and overlay matchings inside the range")
    p.set_defaults(func=cmd_inspect_fsd)

    p = sub.add_parser("oracle", help="slow reference answers for fixtures")
    p.add_argument("what", choices=["min-simplification", "frechet"])
    _common(p)
    p.add_argument("--other", help="second curve for frechet")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, DomainError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
