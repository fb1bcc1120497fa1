"""Recover repeated loops from a noisy trajectory.

A walker traces three different closed loops through the origin, each one
several times and in shuffled order, with small jitter on every vertex.
Clustering with a radius above the jitter should find about one pathlet per
loop, and every traversal of a loop should land in that loop's pathlet.

    python demos/planted_loops.py [--svg out.svg]
"""

import argparse
import math

import numpy as np

from pathletcover import cluster, validate_clustering
from pathletcover.clustering import size_bound
from pathletcover.svg import clustering_svg


def loops(k, ell, reps, jitter, rng):
    shapes = []
    for p in range(k):
        ang = 2 * math.pi * p / k
        pts = []
        for q in range(1, ell - 1):
            t = ang + (q / (ell - 1) - 0.5) * (2 * math.pi / k) * 0.8
            rad = 10.0 * (1 + 0.3 * (q % 2))
            pts.append((rad * math.cos(t), rad * math.sin(t)))
        shapes.append(pts)
    order = [p for p in range(k) for _ in range(reps)]
    rng.shuffle(order)
    T = [(0.0, 0.0)]
    for p in order:
        T += shapes[p] + [(0.0, 0.0)]
    T = np.array(T)
    return T + rng.uniform(-jitter, jitter, T.shape), order


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--svg")
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    k, ell, delta = 3, 4, 0.5
    T, order = loops(k, ell, 4, delta / 6, rng)
    print(f"trajectory: {len(T)} vertices, {len(order)} loop traversals of {k} shapes")

    C = cluster(T, ell, delta)
    rep = validate_clustering(T, C, ell, 4 * delta)
    print(f"pathlets: {len(C)} (guarantee {size_bound(k, len(T)):.0f}), valid: {rep.ok}")
    print(f"simplification keeps {len(C.simplification)} of {len(T)} vertices; universe has {len(C.universe)} intervals")

    for n, p in enumerate(C.pathlets):
        spans = ", ".join(f"[{a:.2f}, {b:.2f}]" for a, b in p.intervals)
        print(f"  #{n} {p.kind:7s} {len(p.reference)} vertices, {len(p.intervals)} intervals: {spans}")

    # which pathlet holds each full traversal
    step = ell - 1
    for t, shape in enumerate(order):
        a, b = 1 + step * t, 1 + step * (t + 1)
        owners = [n for n, p in enumerate(C.pathlets) if any(lo <= a + 0.5 and b - 0.5 <= hi for lo, hi in p.intervals)]
        print(f"  traversal {t:2d} of shape {shape}: pathlets {owners}")

    if args.svg:
        with open(args.svg, "w") as fh:
            fh.write(clustering_svg(T, C.pathlets))
        print(f"wrote {args.svg}")


if __name__ == "__main__":
    main()
