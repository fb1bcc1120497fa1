"""Directed graphs that encode monotone reachability in a free-space diagram.

The diagram of ``W`` against ``T`` is reduced to its grid skeleton: on every
vertical grid line ``x = k`` and horizontal grid line ``y = j`` the free set
is one closed interval per cell edge. Inside a cell the free set is convex, so
any two free points of one closed cell see each other. Reachability between
marked points therefore only depends on the skeleton.

The graph is built by divide and conquer over grid-line cuts. Every marked
point of a subdomain is projected onto the cut (a Steiner point) when the
projecting segment is free, and the points on the cut are chained along it.
The lowest point of a cut edge reachable from a source is either the lower end
of some vertical free interval or the source's own height, so projecting the
interval endpoints along with the marked points is enough to keep every
monotone connection.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass, field

import numpy as np

from .curve_core import DomainError, Tolerance, as_curve, evaluate, free_interval_on_edge, free_intervals_grid


@dataclass(frozen=True)
class Obstacle:
    vertical: bool
    line: int  # the grid coordinate the segment lies on
    lo: float
    hi: float


@dataclass
class RectDomain:
    W: np.ndarray
    T: np.ndarray
    delta_prime: float
    tol: Tolerance
    vlo: np.ndarray  # (|W|, n-1): free y-range on x = k over row j, absolute, NaN if empty
    vhi: np.ndarray
    hlo: np.ndarray  # (n, |W|-1): free x-range on y = j over column k, absolute
    hhi: np.ndarray
    _free_cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def width(self) -> int:
        return len(self.W)

    @property
    def height(self) -> int:
        return len(self.T)

    def _on_vertical(self, k: int, y: float) -> bool:
        rows = self.vlo.shape[1]
        e = self.tol.param
        j = min(int(math.floor(y)), rows)
        for r in (j, j - 1):
            if 1 <= r <= rows:
                lo, hi = self.vlo[k - 1, r - 1], self.vhi[k - 1, r - 1]
                if lo == lo and lo - e <= y <= hi + e:
                    return True
        return False

    def _on_horizontal(self, j: int, x: float) -> bool:
        cols = self.hlo.shape[1]
        e = self.tol.param
        k = min(int(math.floor(x)), cols)
        for c in (k, k - 1):
            if 1 <= c <= cols:
                lo, hi = self.hlo[j - 1, c - 1], self.hhi[j - 1, c - 1]
                if lo == lo and lo - e <= x <= hi + e:
                    return True
        return False

    def point_free(self, x: float, y: float) -> bool:
        key = (x, y)
        hit = self._free_cache.get(key)
        if hit is None:
            hit = self._free_cache[key] = self._point_free(x, y)
        return hit

    def _point_free(self, x: float, y: float) -> bool:
        if not (1.0 <= x <= self.width and 1.0 <= y <= self.height):
            return False
        if x == int(x):
            return self._on_vertical(int(x), y)
        if y == int(y):
            return self._on_horizontal(int(y), x)
        # off the grid: free range of the row's edge against W(x), with the same
        # slack, or a direct distance test with one more eps for tangencies
        j = int(math.floor(y))
        w = evaluate(self.W, x)
        f = free_interval_on_edge(self.T[j - 1], self.T[j], w, self.delta_prime, self.tol.geom)
        e = self.tol.param
        if f is not None and j + f[0] - e <= y <= j + f[1] + e:
            return True
        d = w - evaluate(self.T, y)
        return math.sqrt(float(d @ d)) <= self.delta_prime + 2.0 * self.tol.geom

    def segment_free(self, p, q) -> bool:
        """Free test for segment ``pq``: it is cut by the grid into pieces that
        each lie in one closed cell, and each piece is free iff its ends are."""
        (x0, y0), (x1, y1) = p, q
        pts = [(x0, y0), (x1, y1)]
        dx, dy = x1 - x0, y1 - y0
        if dx != 0.0:
            for k in range(math.floor(min(x0, x1)) + 1, math.ceil(max(x0, x1))):
                t = (k - x0) / dx
                pts.append((float(k), y0 if dy == 0.0 else y0 + t * dy))
        if dy != 0.0:
            for j in range(math.floor(min(y0, y1)) + 1, math.ceil(max(y0, y1))):
                t = (j - y0) / dy
                pts.append((x0 if dx == 0.0 else x0 + t * dx, float(j)))
        return all(self.point_free(x, y) for x, y in pts)

    def obstacles(self):
        """Non-free sub-segments of every interior grid edge."""
        out = []
        for arr_lo, arr_hi, vertical in ((self.vlo, self.vhi, True), (self.hlo, self.hhi, False)):
            lines, cells = arr_lo.shape
            for a in range(lines):
                for b in range(cells):
                    lo, hi = arr_lo[a, b], arr_hi[a, b]
                    base = float(b + 1)
                    if lo != lo:
                        out.append(Obstacle(vertical, a + 1, base, base + 1.0))
                        continue
                    if lo > base:
                        out.append(Obstacle(vertical, a + 1, base, float(lo)))
                    if hi < base + 1.0:
                        out.append(Obstacle(vertical, a + 1, float(hi), base + 1.0))
        return out

    def interval_endpoints(self, x_range, y_range):
        """Ends of all nonempty skeleton intervals inside the closed box."""
        xa, xb = x_range
        ya, yb = y_range
        out = set()
        for k in range(math.ceil(xa), math.floor(xb) + 1):
            for y in np.concatenate([self.vlo[k - 1], self.vhi[k - 1]]).tolist():
                if y == y and ya <= y <= yb:
                    out.add((float(k), y))
        for j in range(math.ceil(ya), math.floor(yb) + 1):
            for x in np.concatenate([self.hlo[j - 1], self.hhi[j - 1]]).tolist():
                if x == x and xa <= x <= xb:
                    out.add((x, float(j)))
        return out


def build_rect_domain(W, T, delta_prime: float, tol: Tolerance | None = None) -> RectDomain:
    W = as_curve(W)
    T = as_curve(T)
    if len(W) < 2 or len(T) < 2:
        raise DomainError("free-space domain needs two curves with at least two vertices")
    tol = tol or Tolerance.for_points(np.vstack([W, T]))
    vlo, vhi = free_intervals_grid(T, W, delta_prime, tol.geom)
    hlo, hhi = free_intervals_grid(W, T, delta_prime, tol.geom)
    rows = np.arange(1, len(T))[None, :]
    cols = np.arange(1, len(W))[None, :]
    return RectDomain(W, T, float(delta_prime), tol, vlo + rows, vhi + rows, hlo + cols, hhi + cols)


@dataclass
class ReachGraph:
    xs: list = field(default_factory=list)
    ys: list = field(default_factory=list)
    succ: list = field(default_factory=list)
    pred: list = field(default_factory=list)
    z_vertex: list = field(default_factory=list)  # vertex id of each Z point, input order
    _ids: dict = field(default_factory=dict)
    _order: list | None = None

    def vertex(self, x: float, y: float) -> int:
        key = (x, y)
        v = self._ids.get(key)
        if v is None:
            v = len(self.xs)
            self._ids[key] = v
            self._order = None
            self.xs.append(x)
            self.ys.append(y)
            self.succ.append(set())
            self.pred.append(set())
        return v

    def arc(self, u: int, v: int) -> None:
        if u == v:
            return
        if not (self.xs[u] <= self.xs[v] and self.ys[u] <= self.ys[v]):
            raise ValueError("arc must go right and up")
        self.succ[u].add(v)
        self.pred[v].add(u)

    def __len__(self) -> int:
        return len(self.xs)

    @property
    def arc_count(self) -> int:
        return sum(len(s) for s in self.succ)

    def arcs(self):
        return [(u, v) for u in range(len(self)) for v in sorted(self.succ[u])]

    def order(self):
        """``yx``-lexicographic order; every arc goes forward in it."""
        if self._order is None:
            self._order = sorted(range(len(self)), key=lambda v: (self.ys[v], self.xs[v]))
        return self._order

    def lookup(self, x: float, y: float):
        return self._ids.get((float(x), float(y)))

    def reachable_from(self, v: int) -> set:
        seen = {v}
        stack = [v]
        while stack:
            u = stack.pop()
            for w in self.succ[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    def path(self, u: int, v: int):
        """Vertex coordinates of some directed path from ``u`` to ``v``, or ``None``."""
        parent = {u: None}
        stack = [u]
        while stack and v not in parent:
            a = stack.pop()
            for b in self.succ[a]:
                if b not in parent:
                    parent[b] = a
                    stack.append(b)
        if v not in parent:
            return None
        out = []
        while v is not None:
            out.append((self.xs[v], self.ys[v]))
            v = parent[v]
        return out[::-1]

    def reachability_matrix(self) -> np.ndarray:
        k = len(self.z_vertex)
        mat = np.zeros((k, k), bool)
        cache = {}
        for a, v in enumerate(self.z_vertex):
            if v not in cache:
                cache[v] = self.reachable_from(v)
            r = cache[v]
            for b, w in enumerate(self.z_vertex):
                mat[a, b] = w in r
        return mat

    def to_json(self) -> dict:
        return {
            "vertices": [[x, y] for x, y in zip(self.xs, self.ys)],
            "arcs": [list(a) for a in self.arcs()],
            "z": list(self.z_vertex),
        }


def _originals(domain: RectDomain, Z, graph: ReachGraph):
    zs = [(float(x), float(y)) for x, y in Z]
    for x, y in zs:
        if not domain.point_free(x, y):
            raise DomainError(f"marked point ({x}, {y}) is not free")
    if not zs:
        return [], None
    xa, xb = min(p[0] for p in zs), max(p[0] for p in zs)
    ya, yb = min(p[1] for p in zs), max(p[1] for p in zs)
    ends = domain.interval_endpoints((xa, xb), (ya, yb))
    # an interval end within eps of a marked point on the same line is that point
    eps = domain.tol.param
    by_x, by_y = {}, {}
    for x, y in zs:
        by_x.setdefault(x, []).append(y)
        by_y.setdefault(y, []).append(x)
    kept = []
    for x, y in sorted(ends):
        if any(abs(y - y2) <= eps for y2 in by_x.get(x, ())) or any(abs(x - x2) <= eps for x2 in by_y.get(y, ())):
            continue
        kept.append((x, y))
    graph.z_vertex = [graph.vertex(x, y) for x, y in zs]
    ids = sorted(set(graph.z_vertex) | {graph.vertex(x, y) for x, y in kept})
    box = (math.floor(xa), math.ceil(xb), math.floor(ya), math.ceil(yb))
    return ids, box


def _connect_all(domain: RectDomain, graph: ReachGraph, pts) -> None:
    xs, ys = graph.xs, graph.ys
    for u in pts:
        for v in pts:
            if u != v and xs[u] <= xs[v] and ys[u] <= ys[v]:
                if domain.segment_free((xs[u], ys[u]), (xs[v], ys[v])):
                    graph.arc(u, v)


def _split(domain: RectDomain, graph: ReachGraph, pts, box) -> None:
    stack = [(pts, box)]
    xs, ys = graph.xs, graph.ys
    while stack:
        pts, (x0, x1, y0, y1) = stack.pop()
        if len(pts) < 2:
            continue
        cols, rows = x1 - x0, y1 - y0
        if cols >= 2 and cols >= rows:
            vertical = True
        elif rows >= 2:
            vertical = False
        else:
            _connect_all(domain, graph, pts)
            continue
        coord = xs if vertical else ys
        lo, hi = (x0, x1) if vertical else (y0, y1)
        c = int(round(statistics.median(coord[p] for p in pts)))
        c = min(max(c, lo + 1), hi - 1)
        cf = float(c)
        chain = set()
        for p in pts:
            if coord[p] == cf:
                chain.add(p)
                continue
            s = (cf, ys[p]) if vertical else (xs[p], cf)
            if domain.segment_free((xs[p], ys[p]), s):
                sid = graph.vertex(*s)
                if coord[p] < cf:
                    graph.arc(p, sid)
                else:
                    graph.arc(sid, p)
                chain.add(sid)
        along = ys if vertical else xs
        chain = sorted(chain, key=lambda v: along[v])
        for u, v in zip(chain, chain[1:]):
            if domain.segment_free((xs[u], ys[u]), (xs[v], ys[v])):
                graph.arc(u, v)
        left = [p for p in pts if coord[p] <= cf]
        right = [p for p in pts if coord[p] >= cf]
        if vertical:
            stack.append((left, (x0, c, y0, y1)))
            stack.append((right, (c, x1, y0, y1)))
        else:
            stack.append((left, (x0, x1, y0, c)))
            stack.append((right, (x0, x1, c, y1)))


def build_reach_graph(domain: RectDomain, Z) -> ReachGraph:
    """Reachability graph on ``Z`` by recursive grid-line cuts."""
    graph = ReachGraph()
    ids, box = _originals(domain, Z, graph)
    if ids:
        _split(domain, graph, ids, box)
    return graph


def reach_graph_naive(domain: RectDomain, Z, vertices=None) -> ReachGraph:
    """Quadratic reference graph.

    Vertices are the marked points, the skeleton interval ends and any extra
    ``vertices`` (by default the Steiner points of the divide-and-conquer
    graph). Two vertices are joined when they are ordered, the segment between
    them is free, and they share a grid line, a cut line or a closed cell.
    """
    graph = ReachGraph()
    ids, _ = _originals(domain, Z, graph)
    if vertices is None:
        ref = build_reach_graph(domain, Z)
        vertices = list(zip(ref.xs, ref.ys))
    for x, y in vertices:
        graph.vertex(float(x), float(y))
    xs, ys = graph.xs, graph.ys

    def cells(c):
        f = math.floor(c)
        return (f - 1, f) if c == f else (f, f)

    for u in range(len(graph)):
        for v in range(len(graph)):
            if u == v or not (xs[u] <= xs[v] and ys[u] <= ys[v]):
                continue
            aligned = xs[u] == xs[v] or ys[u] == ys[v]
            if not aligned:
                (a0, a1), (b0, b1) = cells(xs[u]), cells(xs[v])
                (c0, c1), (d0, d1) = cells(ys[u]), cells(ys[v])
                if max(a0, b0) > min(a1, b1) or max(c0, d0) > min(c1, d1):
                    continue
            if domain.segment_free((xs[u], ys[u]), (xs[v], ys[v])):
                graph.arc(u, v)
    return graph


@dataclass
class Annotation:
    values: np.ndarray  # per vertex: least start height reaching it, or inf
    graph: ReachGraph

    def at(self, x: float, y: float) -> float:
        v = self.graph.lookup(x, y)
        return math.inf if v is None else float(self.values[v])


def annotate_min_start(graph: ReachGraph, starts) -> Annotation:
    """Least ``y`` over the start points that reach each vertex.

    A start that is also reachable from a lower start keeps the lower value.
    """
    vals = np.full(len(graph), np.inf)
    start_ids = set()
    for x, y in starts:
        v = graph.lookup(x, y)
        if v is None:
            raise DomainError(f"start ({x}, {y}) is not a vertex of the graph")
        start_ids.add(v)
    for v in graph.order():
        best = min((vals[u] for u in graph.pred[v]), default=np.inf)
        if v in start_ids:
            best = min(best, graph.ys[v])
        vals[v] = best
    return Annotation(vals, graph)
