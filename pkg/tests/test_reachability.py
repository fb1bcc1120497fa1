import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pathletcover.curve_core import DomainError, free_interval_on_edge
from pathletcover.oracles import oracle_reachability_matrix
from pathletcover.reachability import (
    ReachGraph,
    annotate_min_start,
    build_reach_graph,
    build_rect_domain,
    reach_graph_naive,
)
from pathletcover.universe import line_components


def _random_instance(rng, max_w=4, max_n=8, max_z=20):
    w, n = int(rng.integers(2, max_w + 1)), int(rng.integers(2, max_n + 1))
    W, T = rng.uniform(0, 3, (w, 2)), rng.uniform(0, 3, (n, 2))
    r = float(rng.uniform(0.4, 1.5))
    dom = build_rect_domain(W, T, r)
    xs = sorted(set([float(k) for k in range(1, w + 1)] + rng.uniform(1, w, 2).tolist()))
    rows, lo, hi = line_components(W, T, xs, r, dom.tol.geom)
    Z = []
    for row, a, b in zip(rows.tolist(), lo.tolist(), hi.tolist()):
        Z += [(xs[row], a), (xs[row], b), (xs[row], 0.5 * (a + b))]
    Z = list(dict.fromkeys(Z))
    if len(Z) > max_z:
        Z = [Z[k] for k in sorted(rng.choice(len(Z), max_z, replace=False))]
    return W, T, r, dom, Z


class TestRectDomain:
    def test_fully_free(self):
        W = np.array([[0, 0], [1, 0], [1, 1.0]])
        T = np.array([[0, 0.1], [0.5, 0.5], [1, 1.0]])
        assert build_rect_domain(W, T, 10.0).obstacles() == []

    def test_fully_blocked(self):
        W = np.array([[0, 0], [1, 0], [1, 1.0]])
        T = np.array([[50, 50], [51, 50], [51, 52], [53, 53.0]])
        obs = build_rect_domain(W, T, 1.0).obstacles()
        assert len(obs) == 3 * 3 + 4 * 2
        assert all(o.hi - o.lo == 1.0 for o in obs)

    def test_single_cell_band(self):
        W = np.array([[0, 0], [2, 0.0]])
        T = np.array([[-1, 0.5], [3, 0.5]])
        dom = build_rect_domain(W, T, 1.0)
        assert any(o.vertical for o in dom.obstacles())
        for k, center in ((1, W[0]), (2, W[1])):
            f = free_interval_on_edge(T[0], T[1], center, 1.0, dom.tol.geom)
            blocked = sorted((o.lo, o.hi) for o in dom.obstacles() if o.vertical and o.line == k)
            if f is None:
                expect = [(1.0, 2.0)]
            else:
                expect = [iv for iv in ((1.0, 1 + f[0]), (1 + f[1], 2.0)) if iv[1] > iv[0]]
            assert blocked == pytest.approx(expect)

    def test_needs_two_vertices(self):
        with pytest.raises(DomainError):
            build_rect_domain(np.array([[0, 0.0]]), np.array([[0, 0], [1, 1.0]]), 1.0)


class TestReachGraph:
    def test_free_square(self):
        W = np.array([[0, 0], [1, 0.0]])
        T = np.array([[0, 0], [0.5, 0], [1, 0.0]])
        g = build_reach_graph(build_rect_domain(W, T, 5.0), [(1.0, 1.0), (2.0, 3.0)])
        assert g.reachability_matrix().tolist() == [[True, True], [False, True]]
        path = g.path(g.z_vertex[0], g.z_vertex[1])
        assert path[0] == (1.0, 1.0) and path[-1] == (2.0, 3.0)
        assert all(a[0] <= b[0] and a[1] <= b[1] for a, b in zip(path, path[1:]))

    def test_separating_column(self):
        # the middle vertex of W is far from everything: line x = 2 is blocked
        W = np.array([[0, 0], [0, 50], [0, 0.1]])
        T = np.array([[0, 0], [0, 0.2], [0, 0.1]])
        dom = build_rect_domain(W, T, 1.0)
        Z = [(1.0, 1.0), (1.0, 2.0), (3.0, 2.0), (3.0, 3.0)]
        m = build_reach_graph(dom, Z).reachability_matrix()
        assert not m[:2, 2:].any()

    def test_staircase_matches_grid_oracle(self):
        W = np.array([[0, 0], [1, 0], [2, 0], [3, 0.0]])
        T = W.copy()
        r = 0.6
        dom = build_rect_domain(W, T, r)
        xs = [1.0, 1.5, 2.5]
        rows, lo, hi = line_components(W, T, xs, r, dom.tol.geom)
        Z = [(xs[k], y) for k, a, b in zip(rows.tolist(), lo.tolist(), hi.tolist()) for y in (a, b)]
        assert len(Z) == 6
        m = build_reach_graph(dom, Z).reachability_matrix()
        assert np.array_equal(m, oracle_reachability_matrix(W, T, r, Z))
        assert np.array_equal(m, reach_graph_naive(dom, Z).reachability_matrix())

    def test_marked_point_in_obstacle(self):
        W = np.array([[0, 0], [1, 0.0]])
        T = np.array([[0, 0], [5, 0.0]])
        with pytest.raises(DomainError):
            build_reach_graph(build_rect_domain(W, T, 0.5), [(1.0, 2.0)])

    def test_arc_direction_enforced(self):
        g = ReachGraph()
        a, b = g.vertex(1.0, 2.0), g.vertex(2.0, 1.0)
        with pytest.raises(ValueError):
            g.arc(a, b)

    def test_json_dump(self):
        W = np.array([[0, 0], [1, 0.0]])
        T = np.array([[0, 0], [1, 0.0]])
        doc = build_reach_graph(build_rect_domain(W, T, 0.3), [(1.0, 1.0), (2.0, 2.0)]).to_json()
        assert set(doc) == {"vertices", "arcs", "z"} and len(doc["z"]) == 2

    def test_random_agrees_with_oracle_and_naive(self):
        rng = np.random.default_rng(21)
        done = 0
        while done < 25:
            W, T, r, dom, Z = _random_instance(rng)
            if not Z:
                continue
            g = build_reach_graph(dom, Z)
            m = g.reachability_matrix()
            assert np.array_equal(m, reach_graph_naive(dom, Z).reachability_matrix())
            assert np.array_equal(m, oracle_reachability_matrix(W, T, r, Z))
            done += 1

    @given(st.integers(0, 100_000))
    def test_dag_and_monotone_arcs(self, seed):
        _, _, _, dom, Z = _random_instance(np.random.default_rng(seed))
        g = build_reach_graph(dom, Z)
        pos = {v: k for k, v in enumerate(g.order())}
        for u, v in g.arcs():
            assert g.xs[u] <= g.xs[v] and g.ys[u] <= g.ys[v]
            assert pos[u] < pos[v]


class TestAnnotation:
    def _free_domain(self):
        W = np.array([[0, 0], [1, 0], [2, 0.0]])
        T = np.array([[0, 0], [1, 0], [2, 0.0]])
        return build_rect_domain(W, T, 10.0)

    def test_single_start_free(self):
        dom = self._free_domain()
        Z = [(1.0, 1.5), (2.0, 1.0), (2.0, 2.0), (3.0, 3.0), (1.0, 3.0)]
        g = build_reach_graph(dom, Z)
        ann = annotate_min_start(g, [(1.0, 1.5)])
        for v in range(len(g)):
            up_right = g.xs[v] >= 1.0 and g.ys[v] >= 1.5
            assert ann.values[v] == (1.5 if up_right else math.inf)

    def test_no_starts(self):
        dom = self._free_domain()
        g = build_reach_graph(dom, [(1.0, 1.0), (3.0, 3.0)])
        assert np.all(np.isinf(annotate_min_start(g, []).values))

    def test_start_must_be_vertex(self):
        dom = self._free_domain()
        g = build_reach_graph(dom, [(1.0, 1.0), (3.0, 3.0)])
        with pytest.raises(DomainError):
            annotate_min_start(g, [(1.0, 1.25)])

    def test_blocked_lower_start(self):
        # T climbs out of the disk around W and comes back: the lower start is trapped
        W = np.array([[0, 0], [2, 0.0]])
        T = np.array([[0, 0], [0, 3], [0, 0], [2, 0.0]])
        dom = build_rect_domain(W, T, 1.0)
        starts = [(1.0, 1.0), (1.0, 4 / 3), (1.0, 8 / 3), (1.0, 3.5)]
        ends = [(2.0, 3.5), (2.0, 4.0)]
        g = build_reach_graph(dom, starts + ends)
        ann = annotate_min_start(g, starts)
        assert ann.at(2.0, 4.0) == pytest.approx(8 / 3)
        reach = oracle_reachability_matrix(W, T, 1.0, starts + ends)
        oracle_min = min(s[1] for k, s in enumerate(starts) if reach[k, len(starts) + 1])
        assert ann.at(2.0, 4.0) == pytest.approx(oracle_min)

    @given(st.integers(0, 100_000))
    def test_matches_per_source_traversal(self, seed):
        rng = np.random.default_rng(seed)
        _, _, _, dom, Z = _random_instance(rng)
        if not Z:
            return
        g = build_reach_graph(dom, Z)
        x0 = min(p[0] for p in Z)
        starts = [p for p in Z if p[0] == x0]
        ann = annotate_min_start(g, starts)
        want = np.full(len(g), math.inf)
        for s in starts:
            v = g.lookup(*s)
            for u in g.reachable_from(v):
                want[u] = min(want[u], s[1])
        assert np.array_equal(ann.values, want)
