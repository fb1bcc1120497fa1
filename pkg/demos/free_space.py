"""Free-space diagram of a short reference against a trajectory that passes it twice.

Prints the critical points on the reference's vertical lines, asks the
reachability graph which of them can reach which, and writes the diagram
as SVG with one matching drawn in.

    python demos/free_space.py [--svg fsd.svg]
"""

import argparse

import numpy as np

from pathletcover.curve_core import Tolerance
from pathletcover.reachability import annotate_min_start, build_reach_graph, build_rect_domain
from pathletcover.svg import fsd_svg
from pathletcover.universe import critical_points_on_line


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--svg")
    args = ap.parse_args()

    W = np.array([[0.0, 0.0], [4.0, 0.0]])
    # out along W, a detour away, then back along W in the same direction
    T = np.array([[0, 0.2], [4, -0.1], [4, 3], [0, 3], [0, 0.1], [4, 0.2]])
    r = 0.5
    tol = Tolerance.for_points(np.vstack([W, T]))
    dom = build_rect_domain(W, T, r, tol)

    Z = []
    for x in (1.0, 2.0):
        pts = critical_points_on_line(W, T, x, r, tol)
        print(f"line x={x}: free y-ranges end at {[round(p.y, 3) for p in pts]}")
        Z += [(p.x, p.y) for p in pts]

    g = build_reach_graph(dom, Z)
    m = g.reachability_matrix()
    starts = [z for z in Z if z[0] == 1.0]
    ends = [z for z in Z if z[0] == 2.0]
    ann = annotate_min_start(g, starts)
    for z in ends:
        y0 = ann.at(*z)
        print(f"end y={z[1]:.3f}: lowest reaching start {y0:.3f}" if np.isfinite(y0) else f"end y={z[1]:.3f}: unreachable")
    print(f"{int(m.sum())} reachable ordered pairs among {len(Z)} points; graph has {len(g)} vertices")

    if args.svg:
        a, b = starts[0], ends[1]
        path = g.path(g.lookup(*a), g.lookup(*b))
        with open(args.svg, "w") as fh:
            fh.write(fsd_svg(dom, Z, [path] if path else []))
        print(f"wrote {args.svg}")


if __name__ == "__main__":
    main()
