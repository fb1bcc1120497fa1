"""Slow, independent reference computations used to check the main modules.

Nothing here imports the simplification, universe, coverage, reachability
or pathlet code. Only the curve primitives are shared.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .curve_core import (
    EPS_GEOM,
    bbox_diameter,
    evaluate_many,
    free_interval_on_edge,
    frechet_decide,
    reverse,
    subcurve,
)


@dataclass
class GridFreeSpace:
    xs: np.ndarray
    ys: np.ndarray
    free: np.ndarray  # shape (len(ys), len(xs))
    h: float


def _lattice(lo: float, hi: float, h: float, extra=()) -> np.ndarray:
    pts = set(np.arange(lo, hi, h).tolist())
    pts.update(float(k) for k in range(int(np.ceil(lo)), int(np.floor(hi)) + 1))
    pts.update(e for e in extra if lo <= e <= hi)
    pts.add(hi)
    pts.add(lo)
    return np.array(sorted(pts))


def grid_free_space(P, Q, delta, x_range, y_range, h, extra_x=(), extra_y=(), eps=None) -> GridFreeSpace:
    P = np.asarray(P, float)
    Q = np.asarray(Q, float)
    if eps is None:
        # twice the usual slack: marked points sit exactly on free-space boundaries
        eps = 2.0 * EPS_GEOM * max(bbox_diameter(np.vstack([P, Q])), 1.0)
    xs = _lattice(x_range[0], x_range[1], h, extra_x)
    ys = _lattice(y_range[0], y_range[1], h, extra_y)
    px = evaluate_many(P, xs)
    qy = evaluate_many(Q, ys)
    dist = np.linalg.norm(qy[:, None, :] - px[None, :, :], axis=2)
    return GridFreeSpace(xs, ys, dist <= delta + eps, h)


def _sweep(free: np.ndarray) -> np.ndarray:
    """Monotone (right/up/diagonal) reachability from the lower-left lattice point."""
    rows, cols = free.shape
    reach = np.zeros_like(free)
    idx = np.arange(cols)
    prev = None
    for r in range(rows):
        f = free[r]
        if prev is None:
            seed = np.zeros(cols, bool)
            seed[0] = f[0]
        else:
            seed = prev.copy()
            seed[1:] |= prev[:-1]
            seed &= f
        blocks = np.cumsum(~f)
        last = np.maximum.accumulate(np.where(seed, idx, -1))
        ok = f & (last >= 0)
        ok &= blocks[np.maximum(last, 0)] == blocks
        reach[r] = ok
        prev = ok
    return reach


def oracle_bimonotone_reachable(P, Q, delta, frm, to, h) -> bool:
    (x0, y0), (x1, y1) = frm, to
    if x1 < x0 or y1 < y0:
        return False
    g = grid_free_space(P, Q, delta, (x0, x1), (y0, y1), h, (x0, x1), (y0, y1))
    return bool(_sweep(g.free)[-1, -1])


def oracle_reachable_refined(P, Q, delta, frm, to, h0=0.25, max_levels=7) -> bool:
    """Refine ``h`` by halving until two consecutive answers agree."""
    h = h0
    prev = oracle_bimonotone_reachable(P, Q, delta, frm, to, h)
    for _ in range(max_levels):
        h /= 2
        cur = oracle_bimonotone_reachable(P, Q, delta, frm, to, h)
        if cur == prev:
            return cur
        prev = cur
    return prev


def oracle_reachability_matrix(P, Q, delta, points, h0=0.1, max_levels=6, stable_levels=2):
    """Z x Z reachability by grid sweeps, refined until the matrix is unchanged
    over ``stable_levels`` consecutive halvings of the step."""
    pts = [tuple(map(float, p)) for p in points]
    P = np.asarray(P, float)
    Q = np.asarray(Q, float)
    ex = [p[0] for p in pts]
    ey = [p[1] for p in pts]
    h = h0
    prev = None
    same = 0
    for _ in range(max_levels + 1):
        g = grid_free_space(P, Q, delta, (1.0, len(P)), (1.0, len(Q)), h, ex, ey)
        xi = {x: k for k, x in enumerate(g.xs.tolist())}
        yi = {y: k for k, y in enumerate(g.ys.tolist())}
        mat = np.zeros((len(pts), len(pts)), bool)
        for a, (xa, ya) in enumerate(pts):
            c0, r0 = xi[xa], yi[ya]
            reach = _sweep(g.free[r0:, c0:])
            for b, (xb, yb) in enumerate(pts):
                if xb >= xa and yb >= ya:
                    mat[a, b] = reach[yi[yb] - r0, xi[xb] - c0]
        same = same + 1 if prev is not None and np.array_equal(prev, mat) else 0
        if same >= stable_levels:
            return mat
        prev = mat
        h /= 2
    return prev


def oracle_frechet(P, Q, delta, h0=0.25) -> bool:
    P = np.asarray(P, float)
    Q = np.asarray(Q, float)
    return oracle_reachable_refined(P, Q, delta, (1.0, 1.0), (float(len(P)), float(len(Q))), h0)


def oracle_min_simplification(T, delta) -> int:
    """Fewest vertices of a simplification using only vertices of ``T`` whose
    every edge is within Frechet ``delta`` of the subcurve it skips."""
    T = np.asarray(T, float)
    n = len(T)
    best = [np.inf] * n
    best[0] = 1
    for j in range(1, n):
        for i in range(j):
            if best[i] + 1 < best[j] and frechet_decide(T[[i, j]], T[i : j + 1], delta):
                best[j] = best[i] + 1
    return int(best[-1])


# --- pathlet oracle -------------------------------------------------------


def _line_components(point, T, r, eps):
    """Free components of ``{point} x [1, n]`` as a list of (lo, hi)."""
    n = len(T)
    if n == 1:
        return [(1.0, 1.0)] if np.linalg.norm(T[0] - point) <= r + eps else []
    comps = []
    for j in range(n - 1):
        f = free_interval_on_edge(T[j], T[j + 1], point, r, eps)
        if f is None:
            continue
        lo, hi = j + 1 + f[0], j + 1 + f[1]
        if comps and comps[-1][1] >= lo:
            comps[-1] = (comps[-1][0], max(comps[-1][1], hi))
        else:
            comps.append((lo, hi))
    return comps


def maximal_intervals(P, T, r, eps=None):
    """Union of all ``[y, y']`` with ``d_F(P, T[y, y']) <= r``, as disjoint intervals.

    Any matching can be stretched down to the bottom of its start component
    and up to the top of its end component, so only those pairs are tried.
    """
    P = np.asarray(P, float)
    T = np.asarray(T, float)
    if eps is None:
        eps = EPS_GEOM * max(bbox_diameter(np.vstack([P, T])), 1.0)
    starts = [c[0] for c in _line_components(P[0], T, r, eps)]
    ends = [c[1] for c in _line_components(P[-1], T, r, eps)]
    found = []
    # component ends lie exactly on the (r + eps)-circle, so decide with one more eps
    for y in starts:
        for y2 in ends:
            if y2 >= y and frechet_decide(P, subcurve(T, y, y2), r + eps, eps):
                found.append((y, y2))
    return _union(found)


def _union(intervals):
    out = []
    for lo, hi in sorted(intervals):
        if out and lo <= out[-1][1]:
            out[-1] = (out[-1][0], max(out[-1][1], hi))
        else:
            out.append((lo, hi))
    return out


def count_uncovered_contained(boundaries, covered, intervals, eps_param=1e-7) -> int:
    """Linear scan: universe intervals inside the union of ``intervals`` and not yet covered."""
    merged = []
    for lo, hi in sorted(intervals):
        if merged and lo <= merged[-1][1] + eps_param:
            merged[-1] = (merged[-1][0], max(merged[-1][1], hi))
        else:
            merged.append((lo, hi))
    b = np.asarray(boundaries, float)
    u, v = b[:-1], b[1:]
    inside = np.zeros(len(u), bool)
    for lo, hi in merged:
        inside |= (lo <= u + eps_param) & (v <= hi + eps_param)
    return int(np.count_nonzero(inside & ~np.asarray(covered, bool)))


@dataclass
class OraclePathlet:
    score: int
    kind: str = "none"
    reference: np.ndarray | None = None
    intervals: list = field(default_factory=list)
    descriptor: tuple = ()


def oracle_best_pathlet(S, T, ell, delta_prime, boundaries, covered, candidate_grid=(), kinds=("vertex", "subedge"),
                        critical_xs=None, eps=None) -> OraclePathlet:
    """Exhaustive best pathlet over vertex subcurves of ``S`` with at most
    ``ell`` vertices and over subedges ``e[x, x']`` drawn from
    ``candidate_grid`` (plus ``critical_xs[edge]`` when given), both
    orientations."""
    S = np.asarray(S, float)
    T = np.asarray(T, float)
    if eps is None:
        eps = EPS_GEOM * max(bbox_diameter(np.vstack([S, T])), 1.0)
    best = OraclePathlet(0)

    def consider(kind, ref, desc):
        nonlocal best
        ivs = maximal_intervals(ref, T, delta_prime, eps)
        sc = count_uncovered_contained(boundaries, covered, ivs)
        if sc > best.score:
            best = OraclePathlet(sc, kind, ref, ivs, desc)

    m = len(S)
    if "vertex" in kinds:
        for i in range(1, m):
            for j in range(1, ell):
                if i + j > m:
                    break
                consider("vertex", S[i - 1 : i + j], (i, i + j))
    if "subedge" in kinds:
        for e in range(1, m):
            seg = S[e - 1 : e + 1]
            xs = set(float(x) for x in candidate_grid)
            if critical_xs is not None:
                xs.update(float(x) for x in critical_xs.get(e, ()))
            xs = sorted(xs)
            for rev in (False, True):
                base = reverse(seg) if rev else seg
                for a_i, a in enumerate(xs):
                    for b in xs[a_i + 1 :]:
                        consider("subedge", subcurve(base, a, b), (e, rev, a, b))
    return best
