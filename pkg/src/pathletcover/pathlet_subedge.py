"""Pathlets whose reference is a piece of a single edge of S, in either direction.

Candidate pieces run between critical x-coordinates ``x_i`` and ``x_{i + 2^j}``
only. Any other piece between critical coordinates splits into two such pieces,
one of which keeps at least half of its coverage.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import partial

import numpy as np

from .curve_core import Tolerance, reverse, subcurve
from .parallel import ordered_map
from .pathlet import Pathlet, annotated_intervals, best_by_scan, empty_pathlet
from .reachability import annotate_min_start, build_reach_graph, build_rect_domain
from .universe import critical_xs_for_column, line_components


@dataclass
class SubedgeCriticalSet:
    segment: np.ndarray  # the oriented edge, two vertices, parameters [1, 2]
    xs: np.ndarray  # ascending critical x-coordinates on [1, 2]
    points: list  # points[i]: ascending critical y's on line xs[i]
    reversed: bool = False
    edge: int = 0  # index of the edge in S, 0 when unknown

    @property
    def m(self) -> int:
        return len(self.xs)

    def s_param(self, x: float) -> float:
        """Parameter on S of local coordinate ``x``."""
        return self.edge + 2.0 - x if self.reversed else self.edge - 1.0 + x


def _dedup(xs, eps):
    out = []
    for x in sorted(xs):
        if not out or x - out[-1] > eps:
            out.append(x)
    return np.array(out)


def subedge_critical_set(e, T, delta_prime: float, tol: Tolerance | None = None, reversed: bool = False,
                         edge: int = 0) -> SubedgeCriticalSet:
    e = np.asarray(e, float)
    T = np.asarray(T, float)
    if len(e) != 2:
        raise ValueError("a subedge reference lives on a two-vertex segment")
    tol = tol or Tolerance.for_points(np.vstack([e, T]))
    seg = reverse(e) if reversed else e
    xs = _dedup(critical_xs_for_column(seg, T, 1, delta_prime, tol), tol.param)
    pts = [[] for _ in xs]
    if len(xs) and len(T) >= 2:
        rows, lo, hi = line_components(seg, T, xs, delta_prime, tol.geom)
        for r, a, b in zip(rows.tolist(), lo.tolist(), hi.tolist()):
            pts[r].append(a)
            if b != a:
                pts[r].append(b)
    return SubedgeCriticalSet(seg, xs, pts, reversed, edge)


def _order_key(critical: SubedgeCriticalSet, i: int, j: int):
    return (critical.edge, int(critical.reversed), i, j)


def subedge_candidates_at(T, critical: SubedgeCriticalSet, i: int, delta_prime: float, tol: Tolerance,
                          domain=None, graph=None):
    """One candidate per ``j``: reference from ``x_i`` to ``x_{i + 2^j}``.

    ``graph`` may be a reachability graph over a superset of the needed
    critical points, shared between start lines.
    """
    m = critical.m
    ends = []
    step = 1
    while i + step <= m:
        ends.append(i + step)
        step *= 2
    if not ends:
        return []
    xs = critical.xs
    x0 = float(xs[i - 1])
    starts = [(x0, y) for y in critical.points[i - 1]]
    ann = None
    if starts:
        if graph is None:
            domain = domain or build_rect_domain(critical.segment, T, delta_prime, tol)
            Z = list(starts)
            for k in ends:
                Z += [(float(xs[k - 1]), y) for y in critical.points[k - 1]]
            graph = build_reach_graph(domain, Z)
        ann = annotate_min_start(graph, starts)
    out = []
    for j, k in enumerate(ends):
        x1 = float(xs[k - 1])
        ivs = annotated_intervals(ann, x1, critical.points[k - 1]) if ann is not None else []
        ref = subcurve(critical.segment, x0, x1)
        if len(ref) == 1:
            ref = np.vstack([ref, ref])
        out.append(Pathlet("subedge", ref, critical.s_param(x0), critical.s_param(x1), ivs, 0,
                           _order_key(critical, i, j)))
    return out


def best_subedge_pathlet_at(e, T, critical: SubedgeCriticalSet, i: int, index, delta_prime: float,
                            tol: Tolerance | None = None):
    T = np.asarray(T, float)
    tol = tol or Tolerance.for_points(np.vstack([critical.segment, T]))
    best = best_by_scan(subedge_candidates_at(T, critical, i, delta_prime, tol), index)
    return best if best is not None else empty_pathlet("subedge", T.shape[1])


def _edge_candidates(S, T, delta_prime, tol, task):
    e, rev = task
    crit = subedge_critical_set(S[e - 1 : e + 1], T, delta_prime, tol, reversed=rev, edge=e)
    if crit.m < 2 or len(T) < 2:
        return []
    domain = build_rect_domain(crit.segment, T, delta_prime, tol)
    Z = [(float(x), y) for x, ys in zip(crit.xs, crit.points) for y in ys]
    graph = build_reach_graph(domain, Z) if Z else None
    out = []
    for i in range(1, crit.m):
        out += subedge_candidates_at(T, crit, i, delta_prime, tol, domain, graph)
    return out


def subedge_candidates(S, T, delta_prime: float, tol: Tolerance | None = None):
    """Candidates over all edges and both orientations; independent of coverage."""
    S = np.asarray(S, float)
    T = np.asarray(T, float)
    tol = tol or Tolerance.for_points(np.vstack([S, T]))
    tasks = [(e, rev) for e in range(1, len(S)) for rev in (False, True)]
    job = partial(_edge_candidates, S, T, delta_prime, tol)
    return [c for group in ordered_map(job, tasks) for c in group]


def best_subedge_pathlet(S, T, delta_prime: float, index, tol: Tolerance | None = None, candidates=None):
    if candidates is None:
        candidates = subedge_candidates(S, T, delta_prime, tol)
    best = best_by_scan(candidates, index)
    return best if best is not None else empty_pathlet("subedge", np.shape(S)[1])
