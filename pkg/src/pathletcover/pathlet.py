"""The pathlet record shared by both candidate families, and greedy selection over them."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field, replace

import numpy as np


@dataclass
class Pathlet:
    kind: str  # "vertex" or "subedge"
    reference: np.ndarray
    start: float  # parameter on S where the reference begins
    end: float  # where it ends; end < start for a reversed subedge
    intervals: list = field(default_factory=list)
    score: int = 0
    key: tuple = ()  # tie-break order within the family, smaller wins

    def with_score(self, score: int) -> "Pathlet":
        return replace(self, score=int(score))


def empty_pathlet(kind: str, dim: int = 2) -> Pathlet:
    return Pathlet(kind, np.empty((0, dim)), math.nan, math.nan, [], 0, ())


def annotated_intervals(annotation, end_x: float, end_ys):
    """``[y, y']`` for each end point ``(end_x, y')`` reached from some start."""
    found = []
    for y2 in end_ys:
        y = annotation.at(end_x, y2)
        if math.isfinite(y):
            found.append((y, y2))
    # drop intervals nested inside another one; they cover nothing extra
    out = []
    for y, y2 in sorted(found, key=lambda iv: (iv[0], -iv[1])):
        if out and y2 <= out[-1][1]:
            continue
        out.append((y, y2))
    return out


def best_by_scan(candidates, index):
    """Highest residual score over ``candidates``; ties go to the smallest key."""
    best = None
    for c in candidates:
        s = index.residual(c.intervals)
        if best is None or s > best.score or (s == best.score and c.key < best.key):
            best = c.with_score(s)
    return best


class LazyGreedy:
    """Best candidate under a growing coverage, re-scoring lazily.

    Residual scores never increase as coverage grows, so a stored score is an
    upper bound. A popped candidate whose fresh score still beats the best
    stored bound (ties broken by key) is the exact maximum.
    """

    def __init__(self, candidates, index):
        self.index = index
        self.candidates = list(candidates)
        self.heap = []
        for n, c in enumerate(self.candidates):
            s = index.residual(c.intervals)
            if s > 0:
                self.heap.append((-s, c.key, n))
        heapq.heapify(self.heap)

    def best(self):
        heap = self.heap
        while heap:
            neg, key, n = heap[0]
            s = self.index.residual(self.candidates[n].intervals)
            if s == -neg:
                return self.candidates[n].with_score(s)
            if s > 0:
                heapq.heapreplace(heap, (-s, key, n))
            else:
                heapq.heappop(heap)
        return None
