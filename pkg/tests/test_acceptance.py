"""Acceptance suite: one test per criterion, each tagged with ``criterion(n, text)``.

The terminal summary prints a PASS/FAIL line per criterion (see conftest).
"""

import math
import os
import subprocess
import sys
import time
import tracemalloc
from pathlib import Path

import numpy as np
import pytest

from gen import petals, turning_walk
from pathletcover.clustering import StallError, cluster, size_bound, validate_clustering
from pathletcover.coverage_index import CoverageIndex, merge_intervals, residual_coverage
from pathletcover.curve_core import Tolerance, frechet_decide, subcurve
from pathletcover.oracles import (
    count_uncovered_contained,
    oracle_best_pathlet,
    oracle_min_simplification,
    oracle_reachability_matrix,
)
from pathletcover.pathlet_subedge import best_subedge_pathlet
from pathletcover.pathlet_vertex import best_vertex_pathlet
from pathletcover.postprocess import interior_disjoint, reduce_ply, split_intervals
from pathletcover.reachability import build_reach_graph, build_rect_domain, reach_graph_naive
from pathletcover.simplification import build_simplification, verify_simplification
from pathletcover.universe import Universe, build_universe, critical_xs_for_column, line_components

SRC = str(Path(__file__).resolve().parents[1] / "src")
FIXTURES = Path(__file__).resolve().parent / "fixtures"


def _walk(rng, n, d):
    return np.cumsum(rng.normal(0, 1, (n, d)), axis=0)


def _pathlet_setup(rng, n_lo, n_hi, d_lo, d_hi):
    """A random small instance with about half of its universe already covered."""
    n = int(rng.integers(n_lo, n_hi + 1))
    T = _walk(rng, n, 2)
    delta = float(rng.uniform(d_lo, d_hi))
    tol = Tolerance.for_points(T)
    S = build_simplification(T, delta, tol).vertices
    U, _ = build_universe(S, T, 4 * delta, tol)
    idx = CoverageIndex(U)
    if rng.random() < 0.5 and len(U) > 1:
        ivs = U.intervals()
        idx.commit([ivs[k] for k in rng.choice(len(ivs), len(ivs) // 2, replace=False)])
    return T, S, U, idx, tol, delta


@pytest.mark.criterion(1, "clustering validity on 200 random trajectories")
def test_clustering_validity():
    rng = np.random.default_rng(1001)
    t0 = time.perf_counter()
    failures = []
    for it in range(200):
        n, d, ell = int(rng.integers(3, 61)), int(rng.choice([2, 3])), int(rng.integers(2, 7))
        delta = float(10 ** rng.uniform(-2, 1))
        T = _walk(rng, n, d)
        try:
            C = cluster(T, ell, delta)
        except StallError as err:
            failures.append((it, "stall", len(err.uncovered)))
            continue
        rep = validate_clustering(T, C, ell, 4 * delta, Tolerance.for_points(T))
        if not rep.ok:
            failures.append((it, rep))
    elapsed = time.perf_counter() - t0
    print(f"200 instances in {elapsed:.1f}s, {len(failures)} failures")
    assert failures == []
    assert elapsed < 300


@pytest.mark.criterion(2, "size bound on planted instances")
def test_planted_size_bound():
    rng = np.random.default_rng(2002)
    delta = 0.5
    for k in (1, 2, 3):
        for ell in (3, 4, 5):
            for reps in (3, 5):
                T = petals(k, ell, reps, delta, rng)
                C = cluster(T, ell, delta)
                assert validate_clustering(T, C, ell, 4 * delta).ok
                n = len(T)
                print(f"k={k} ell={ell} reps={reps} n={n} size={len(C)} bound={size_bound(k, n):.1f}")
                assert len(C) <= math.floor(size_bound(k, n))
                assert len(C) <= 5 * k


@pytest.mark.criterion(3, "simplification edge bound and near-minimal size")
def test_simplification_quality():
    rng = np.random.default_rng(3003)
    t0 = time.perf_counter()
    worst = -math.inf
    for _ in range(150):
        n = int(rng.integers(2, 25))
        T = _walk(rng, n, int(rng.choice([2, 3])))
        delta = float(10 ** rng.uniform(-1.5, 0.5))
        tol = Tolerance.for_points(T)
        simp = build_simplification(T, delta, tol)
        assert verify_simplification(T, simp, delta, tol)
        for k in range(1, len(simp)):
            seg, (a, b) = simp.edge(k)
            assert frechet_decide(seg, subcurve(T, a, b), 2 * delta + tol.geom, tol.geom)
        gap = len(simp) - oracle_min_simplification(T, delta)
        worst = max(worst, gap)
        assert gap <= 2
    print(f"largest |S| - OPT = {worst}")
    assert time.perf_counter() - t0 < 120


def _reach_instance(rng):
    w, n = int(rng.integers(2, 5)), int(rng.integers(2, 9))
    W, T = rng.uniform(0, 3, (w, 2)), rng.uniform(0, 3, (n, 2))
    r = float(rng.uniform(0.4, 1.5))
    dom = build_rect_domain(W, T, r)
    xs = sorted(set([float(k) for k in range(1, w + 1)] + rng.uniform(1, w, 2).tolist()))
    rows, lo, hi = line_components(W, T, xs, r, dom.tol.geom)
    Z = []
    for row, a, b in zip(rows.tolist(), lo.tolist(), hi.tolist()):
        Z += [(xs[row], a), (xs[row], b), (xs[row], 0.5 * (a + b))]
    Z = list(dict.fromkeys(Z))
    if len(Z) > 20:
        Z = [Z[k] for k in sorted(rng.choice(len(Z), 20, replace=False))]
    return W, T, r, dom, Z


@pytest.mark.criterion(4, "reachability graph equals grid oracle and naive graph")
def test_reachability_equivalence():
    rng = np.random.default_rng(4004)
    done = oracle_bad = naive_bad = 0
    while done < 300:
        W, T, r, dom, Z = _reach_instance(rng)
        if not Z:
            continue
        m = build_reach_graph(dom, Z).reachability_matrix()
        naive_bad += not np.array_equal(m, reach_graph_naive(dom, Z).reachability_matrix())
        oracle_bad += not np.array_equal(m, oracle_reachability_matrix(W, T, r, Z))
        done += 1
    print(f"{done} instances: {oracle_bad} oracle mismatches, {naive_bad} naive mismatches")
    assert oracle_bad == 0 and naive_bad == 0


@pytest.mark.criterion(5, "vertex pathlet search is optimal")
def test_vertex_pathlet_optimal():
    rng = np.random.default_rng(5005)
    for _ in range(120):
        T, S, U, idx, tol, delta = _pathlet_setup(rng, 3, 10, 0.1, 1.0)
        ell = int(rng.integers(2, 4))
        p = best_vertex_pathlet(S, T, ell, 4 * delta, idx, tol)
        o = oracle_best_pathlet(S, T, ell, 4 * delta, U.boundaries.tolist(), idx.covered_flags.tolist(),
                                kinds=("vertex",))
        assert p.score == o.score


@pytest.mark.criterion(6, "subedge pathlet covers at least 1/8 of the grid optimum")
def test_subedge_eighth():
    rng = np.random.default_rng(6006)
    grid = np.linspace(1.0, 2.0, 8)  # 8 x 8 = 64 (x, x') pairs per orientation
    nonzero = 0
    for _ in range(100):
        T, S, U, idx, tol, delta = _pathlet_setup(rng, 3, 8, 0.05, 0.8)
        dp = 4 * delta
        p = best_subedge_pathlet(S, T, dp, idx, tol)
        B, C = U.boundaries.tolist(), idx.covered_flags.tolist()
        on_grid = oracle_best_pathlet(S, T, 2, dp, B, C, candidate_grid=grid, kinds=("subedge",))
        crit = {}
        for e in range(1, len(S)):
            xs = [x - e + 1 for x in critical_xs_for_column(S, T, e, dp, tol)]
            crit[e] = set(xs) | {3 - x for x in xs}  # reversed orientation mirrors x
        on_critical = oracle_best_pathlet(S, T, 2, dp, B, C, kinds=("subedge",), critical_xs=crit)
        assert 8 * p.score >= on_grid.score
        assert 4 * on_critical.score >= on_grid.score
        assert 2 * p.score >= on_critical.score
        nonzero += on_grid.score > 0
    assert nonzero > 50


@pytest.mark.criterion(7, "coverage index equals linear scan")
def test_coverage_index_exact():
    rng = np.random.default_rng(7007)
    queries = 0
    for size in (1, 10, 100, 1000, 10_000, 10_000):
        b = np.unique(np.concatenate([[1.0, 1000.0], rng.uniform(1, 1000, size - 1)]))
        while len(b) < size + 1:
            b = np.unique(np.concatenate([b, rng.uniform(1, 1000, size + 1 - len(b))]))
        U = Universe(b)
        idx = CoverageIndex(U)
        for _ in range(10_000 // 6 + 1):
            if rng.random() < 0.2:
                lo = float(rng.uniform(1, 1000))
                idx.commit([(lo, min(lo + float(rng.exponential(20)), 1000.0))])
            q = []
            for _ in range(int(rng.integers(0, 5))):
                lo = float(rng.choice(b)) if rng.random() < 0.5 else float(rng.uniform(1, 1000))
                q.append((lo, min(lo + float(rng.exponential(50)), 1000.0)))
            assert residual_coverage(idx, q) == count_uncovered_contained(b, idx.covered_flags, q)
            queries += 1
    assert queries >= 10_000


def _brute_ply(ivs):
    pts = {v for iv in ivs for v in iv}
    return max((sum(1 for a, b in ivs if a <= x <= b) for x in pts), default=0)


@pytest.mark.criterion(8, "ply reduction and interior-disjoint split")
def test_ply_reduction():
    rng = np.random.default_rng(8008)
    for _ in range(1000):
        k = int(rng.integers(0, 30))
        lo = rng.integers(0, 60, k) / 2
        ivs = [(float(a), float(a + w)) for a, w in zip(lo, rng.integers(0, 20, k) / 2)]
        out = reduce_ply(ivs)
        assert _brute_ply(out) <= 2
        assert merge_intervals(out, 0.0) == merge_intervals(ivs, 0.0)
        first, second = split_intervals(ivs)
        assert interior_disjoint(first) and interior_disjoint(second)
        assert all(b[0] >= a[1] or a[0] >= b[1] for part in (first, second)
                   for n, a in enumerate(part) for b in part[n + 1:])


def _run_cluster(n):
    T = turning_walk(n)
    t0 = time.perf_counter()
    C = cluster(T, 4, 0.3)
    return time.perf_counter() - t0, C


def _peak_memory(n):
    tracemalloc.start()
    try:
        cluster(turning_walk(n), 4, 0.3)
        return tracemalloc.get_traced_memory()[1]
    finally:
        tracemalloc.stop()


@pytest.mark.criterion(9, "scaling of time and memory with n")
def test_scaling(monkeypatch):
    monkeypatch.setenv("PATHLET_THREADS", "1")
    _run_cluster(50)  # warm caches and imports
    times, mems = {}, {}
    for n in (100, 200, 400):
        times[n], C = _run_cluster(n)
        mems[n] = _peak_memory(n)
        print(f"n={n}: {times[n]:.2f}s, peak {mems[n] / 1e6:.1f} MB, |U|={len(C.universe)}, size={len(C)}")
    for a, b in ((100, 200), (200, 400)):
        assert times[b] / times[a] <= 10, (a, b, times)
        assert mems[b] / mems[a] <= 8.5, (a, b, mems)
    assert times[400] < 1800


def _cli_json(fixture, threads, out):
    env = dict(os.environ, PATHLET_THREADS=str(threads), PYTHONPATH=SRC + os.pathsep + os.environ.get("PYTHONPATH", ""))
    subprocess.run([sys.executable, "-m", "pathletcover.cli", "cluster", "--input", str(fixture), "--ell", "4",
                    "--delta", "0.3", "--out", str(out)], env=env, check=True, capture_output=True)
    return (out / "clustering.json").read_bytes()


@pytest.mark.criterion(10, "byte-identical JSON across runs and thread counts")
def test_determinism(tmp_path):
    fixtures = sorted(FIXTURES.glob("*.csv"))
    assert len(fixtures) >= 4
    for fx in fixtures:
        outputs = set()
        for threads in (1, 8):
            for run in range(3):
                outputs.add(_cli_json(fx, threads, tmp_path / f"{fx.stem}-{threads}-{run}"))
        assert len(outputs) == 1, fx.name
