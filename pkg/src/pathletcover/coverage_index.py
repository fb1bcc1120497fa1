"""Residual-coverage queries over the universe with O(log n) work per query interval."""

from __future__ import annotations

from bisect import bisect_left, bisect_right

import numpy as np

from .curve_core import EPS_PARAM
from .universe import Universe


def merge_intervals(intervals, eps: float = EPS_PARAM):
    """Union of closed intervals; touching ones (within ``eps``) are joined."""
    out = []
    for lo, hi in sorted((float(a), float(b)) for a, b in intervals):
        if out and lo <= out[-1][1] + eps:
            if hi > out[-1][1]:
                out[-1] = (out[-1][0], hi)
        else:
            out.append((lo, hi))
    return out


def count_contained(endpoints, query, eps: float = EPS_PARAM) -> int:
    """Number of stored intervals inside ``query``.

    ``endpoints`` is the sorted endpoint sequence ``lo_1, hi_1, lo_2, hi_2, ...``
    of interior-disjoint intervals. Endpoints falling in the query are counted
    and the at most two intervals straddling a query end are discounted.
    """
    a, b = query
    ra = bisect_left(endpoints, a - eps)
    rb = bisect_right(endpoints, b + eps)
    if rb <= ra:
        return 0
    straddle = (ra & 1) + (rb & 1)
    return (rb - ra - straddle) // 2


class _Fenwick:
    def __init__(self, n: int):
        self.n = n
        self.tree = [0] * (n + 1)

    def add(self, i: int, v: int = 1) -> None:
        i += 1
        while i <= self.n:
            self.tree[i] += v
            i += i & -i

    def prefix(self, i: int) -> int:
        """Sum over positions ``< i``."""
        s = 0
        while i > 0:
            s += self.tree[i]
            i -= i & -i
        return s


class CoverageIndex:
    """Universe endpoints plus the covered subset, as rank structures.

    Covered universe intervals are tracked by index in a Fenwick tree, which
    answers the same rank queries as a sorted multiset of their endpoints.
    """

    def __init__(self, universe: Universe, eps: float = EPS_PARAM):
        self.universe = universe
        self.eps = eps
        b = universe.boundaries.tolist()
        self.lows = b[:-1]
        self.highs = b[1:]
        self.universe_endpoints = [v for pair in zip(self.lows, self.highs) for v in pair]
        self.size = len(self.lows)
        self.covered_flags = np.zeros(self.size, dtype=bool)
        self._covered = _Fenwick(self.size)
        self.covered_count = 0

    def _index_range(self, lo: float, hi: float):
        t0 = bisect_left(self.lows, lo - self.eps)
        t1 = bisect_right(self.highs, hi + self.eps) - 1
        return t0, t1

    def covered_inside(self, query) -> int:
        t0, t1 = self._index_range(*query)
        if t1 < t0:
            return 0
        return self._covered.prefix(t1 + 1) - self._covered.prefix(t0)

    def residual_interval(self, query) -> int:
        return count_contained(self.universe_endpoints, query, self.eps) - self.covered_inside(query)

    def residual(self, intervals) -> int:
        return sum(self.residual_interval(q) for q in merge_intervals(intervals, self.eps))

    def commit(self, intervals) -> int:
        added = 0
        for q in merge_intervals(intervals, self.eps):
            t0, t1 = self._index_range(*q)
            if t1 < t0:
                continue
            fresh = np.nonzero(~self.covered_flags[t0 : t1 + 1])[0] + t0
            for t in fresh.tolist():
                self._covered.add(t)
            self.covered_flags[fresh] = True
            added += len(fresh)
        self.covered_count += added
        return added

    @property
    def exhausted(self) -> bool:
        return self.covered_count >= self.size

    def uncovered_intervals(self):
        idx = np.nonzero(~self.covered_flags)[0].tolist()
        return [(self.lows[t], self.highs[t]) for t in idx]


def residual_coverage(index: CoverageIndex, pathlet_intervals) -> int:
    return index.residual(pathlet_intervals)


def commit(index: CoverageIndex, pathlet_intervals) -> None:
    index.commit(pathlet_intervals)
