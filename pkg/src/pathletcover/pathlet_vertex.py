"""Optimal pathlets whose reference runs between two vertices of S."""

from __future__ import annotations

from functools import partial

import numpy as np

from .curve_core import Tolerance
from .parallel import ordered_map
from .pathlet import Pathlet, annotated_intervals, best_by_scan, empty_pathlet
from .reachability import annotate_min_start, build_reach_graph, build_rect_domain
from .universe import CriticalPoint, line_components


def _tol(S, T, tol):
    return tol or Tolerance.for_points(np.vstack([S, T]))


def integer_line_points(S, T, delta_prime: float, tol: Tolerance):
    """Ends of the free components on every line ``x = k``, as ascending y lists."""
    m = len(S)
    rows, lo, hi = line_components(S, T, np.arange(1.0, m + 1.0), delta_prime, tol.geom)
    pts = [[] for _ in range(m)]
    for r, a, b in zip(rows.tolist(), lo.tolist(), hi.tolist()):
        pts[r].append(a)
        if b != a:
            pts[r].append(b)
    return pts


def _last_column(m: int, i: int, ell: int) -> int:
    # a reference may use at most ell vertices
    return min(i + ell - 1, m)


def vertex_critical_points(S, T, i: int, ell: int, delta_prime: float, tol: Tolerance | None = None, lines=None):
    S = np.asarray(S, float)
    T = np.asarray(T, float)
    tol = _tol(S, T, tol)
    lines = lines if lines is not None else integer_line_points(S, T, delta_prime, tol)
    last = _last_column(len(S), i, ell)
    return [CriticalPoint(float(k), y, "vertex_line") for k in range(i, last + 1) for y in lines[k - 1]]


def vertex_candidates_at(S, T, i: int, ell: int, delta_prime: float, tol: Tolerance | None = None, lines=None):
    """One candidate per ``j``: reference ``S[i, i + j]`` with every interval
    that starts at the lowest reachable start and ends at a critical point."""
    S = np.asarray(S, float)
    T = np.asarray(T, float)
    tol = _tol(S, T, tol)
    lines = lines if lines is not None else integer_line_points(S, T, delta_prime, tol)
    last = _last_column(len(S), i, ell)
    if last <= i or len(T) < 2:
        return []
    out = []
    starts = [(1.0, y) for y in lines[i - 1]]
    if starts:
        domain = build_rect_domain(S[i - 1 : last], T, delta_prime, tol)
        Z = [(float(k - i + 1), y) for k in range(i, last + 1) for y in lines[k - 1]]
        ann = annotate_min_start(build_reach_graph(domain, Z), starts)
    for j in range(1, last - i + 1):
        ivs = annotated_intervals(ann, float(j + 1), lines[i + j - 1]) if starts else []
        out.append(Pathlet("vertex", S[i - 1 : i + j].copy(), float(i), float(i + j), ivs, 0, (i, j)))
    return out


def vertex_candidates(S, T, ell: int, delta_prime: float, tol: Tolerance | None = None):
    """Candidates for every start vertex; independent of the coverage state."""
    S = np.asarray(S, float)
    T = np.asarray(T, float)
    tol = _tol(S, T, tol)
    lines = integer_line_points(S, T, delta_prime, tol)
    job = partial(vertex_candidates_at, S, T, ell=ell, delta_prime=delta_prime, tol=tol, lines=lines)
    return [c for group in ordered_map(job, range(1, len(S))) for c in group]


def best_vertex_pathlet_at(S, T, i: int, ell: int, delta_prime: float, index, tol: Tolerance | None = None):
    best = best_by_scan(vertex_candidates_at(S, T, i, ell, delta_prime, tol), index)
    return best if best is not None else empty_pathlet("vertex", np.shape(S)[1])


def best_vertex_pathlet(S, T, ell: int, delta_prime: float, index, tol: Tolerance | None = None, candidates=None):
    if candidates is None:
        candidates = vertex_candidates(S, T, ell, delta_prime, tol)
    best = best_by_scan(candidates, index)
    return best if best is not None else empty_pathlet("vertex", np.shape(S)[1])
