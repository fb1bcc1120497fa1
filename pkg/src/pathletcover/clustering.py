"""Greedy set cover over the interval universe, one pathlet per round."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .coverage_index import CoverageIndex, merge_intervals
from .curve_core import EPS_GEOM, EPS_PARAM, DomainError, Tolerance, as_curve, frechet_decide, subcurve
from .pathlet import LazyGreedy, Pathlet
from .pathlet_subedge import subedge_candidates
from .pathlet_vertex import vertex_candidates
from .simplification import Simplification, build_simplification
from .universe import Universe, build_universe


class StallError(RuntimeError):
    """No candidate covers any remaining universe interval."""

    def __init__(self, uncovered, partial):
        super().__init__(f"greedy cover stalled with {len(uncovered)} uncovered universe intervals")
        self.uncovered = uncovered
        self.partial = partial


@dataclass
class Clustering:
    pathlets: list
    simplification: Simplification
    universe: Universe
    params: dict
    stats: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.pathlets)


def size_bound(k: int, n: int) -> float:
    """Guaranteed size limit for an instance whose optimum uses ``k`` pathlets."""
    return 51.0 * k * math.log(6 * n) + 1.0


def _check_params(ell, delta):
    if int(ell) != ell or ell < 2:
        raise DomainError(f"ell must be an integer >= 2, got {ell}")
    if not (math.isfinite(delta) and delta >= 0):
        raise DomainError(f"delta must be finite and >= 0, got {delta}")


def cluster(T, ell: int, delta: float, eps_geom: float = EPS_GEOM, eps_param: float = EPS_PARAM) -> Clustering:
    T = as_curve(T)
    _check_params(ell, delta)
    ell = int(ell)
    n = len(T)
    tol = Tolerance.for_points(T, eps_geom, eps_param)
    delta_prime = 4.0 * delta
    params = {"n": n, "d": int(T.shape[1]), "ell": ell, "delta": float(delta), "delta_prime": delta_prime,
              "eps_geom": eps_geom, "eps_param": eps_param}
    if n == 1:
        simp = Simplification(np.array([1.0]), T.copy())
        only = Pathlet("vertex", T.copy(), 1.0, 1.0, [(1.0, 1.0)], 1, (1, 0))
        stats = {"iterations": 1, "universe_size": 1, "covered_per_iteration": [1], "residual_per_iteration": [0]}
        return Clustering([only], simp, Universe(np.array([1.0, 1.0])), params, stats)

    simp = build_simplification(T, delta, tol)
    S = simp.vertices
    universe, _ = build_universe(S, T, delta_prime, tol)
    index = CoverageIndex(universe, tol.param)

    def searches(radius):
        return (LazyGreedy(vertex_candidates(S, T, ell, radius, tol), index),
                LazyGreedy(subedge_candidates(S, T, radius, tol), index))

    by_vertex, by_subedge = searches(delta_prime)
    inflated = False
    chosen, covered, residual = [], [], []
    while not index.exhausted:
        pv, ps = by_vertex.best(), by_subedge.best()
        if pv is None and ps is None:
            if inflated:
                partial = Clustering(chosen, simp, universe, params, _stats(chosen, covered, residual, universe))
                raise StallError(index.uncovered_intervals(), partial)
            inflated = True
            by_vertex, by_subedge = searches(delta_prime + 10.0 * tol.geom)
            continue
        pick = pv if ps is None or (pv is not None and pv.score >= ps.score) else ps
        added = index.commit(pick.intervals)
        chosen.append(pick)
        covered.append(added)
        residual.append(index.size - index.covered_count)
    params["radius_inflated"] = inflated
    return Clustering(chosen, simp, universe, params, _stats(chosen, covered, residual, universe))


def _stats(chosen, covered, residual, universe):
    return {"iterations": len(chosen), "universe_size": len(universe), "covered_per_iteration": list(covered),
            "residual_per_iteration": list(residual)}


@dataclass
class ValidationReport:
    frechet_failures: list = field(default_factory=list)  # (pathlet index, interval)
    complexity_failures: list = field(default_factory=list)  # pathlet indices
    coverage_gaps: list = field(default_factory=list)  # uncovered (lo, hi) pieces of [1, n]

    @property
    def ok(self) -> bool:
        return not (self.frechet_failures or self.complexity_failures or self.coverage_gaps)


def validate_clustering(T, clustering, ell: int, delta_prime: float, tol: Tolerance | None = None) -> ValidationReport:
    """Check every matching, every reference size and the cover of ``[1, n]``."""
    T = as_curve(T)
    tol = tol or Tolerance.for_points(T)
    n = len(T)
    pathlets = clustering.pathlets if isinstance(clustering, Clustering) else list(clustering)
    rep = ValidationReport()
    every = []
    for k, p in enumerate(pathlets):
        if len(p.reference) > ell:
            rep.complexity_failures.append(k)
        for a, b in p.intervals:
            every.append((a, b))
            ok = 1.0 <= a <= b <= n and frechet_decide(p.reference, subcurve(T, a, b), delta_prime + tol.geom, tol.geom)
            if not ok:
                rep.frechet_failures.append((k, (a, b)))
    merged = merge_intervals(every, tol.param)
    cursor = 1.0
    for lo, hi in merged:
        if lo > cursor + tol.param:
            rep.coverage_gaps.append((cursor, lo))
        cursor = max(cursor, hi)
    if cursor < n - tol.param or not merged:
        rep.coverage_gaps.append((cursor, float(n)))
    return rep
