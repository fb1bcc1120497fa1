"""Polygonal curves, free-space intervals and the continuous Frechet decision.

Curves are ``(n, d)`` float arrays with vertex ``k`` at parameter ``k``
(1-based), so a curve with ``n`` vertices lives on ``[1, n]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

EPS_GEOM = 1e-9
EPS_PARAM = 1e-7


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class Tolerance:
    """Absolute geometric slack plus parameter-space slack."""

    geom: float = EPS_GEOM
    param: float = EPS_PARAM

    @classmethod
    def for_points(cls, pts, eps_geom: float = EPS_GEOM, eps_param: float = EPS_PARAM):
        return cls(eps_geom * max(bbox_diameter(pts), 1.0), eps_param)


def as_curve(points) -> np.ndarray:
    arr = np.asarray(points, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2 or arr.shape[0] < 1:
        raise DomainError("a curve needs at least one vertex")
    if not np.all(np.isfinite(arr)):
        raise DomainError("non-finite coordinate in curve")
    return arr


def bbox_diameter(pts) -> float:
    arr = np.asarray(pts, dtype=float)
    if arr.size == 0:
        return 0.0
    return float(np.linalg.norm(arr.max(axis=0) - arr.min(axis=0)))


def evaluate(curve: np.ndarray, t: float) -> np.ndarray:
    n = len(curve)
    if not (1.0 <= t <= n):
        raise DomainError(f"parameter {t} outside [1, {n}]")
    k = min(int(math.floor(t)), n - 1) if n > 1 else 1
    if n == 1:
        return curve[0].copy()
    s = t - k
    if s == 0.0:
        return curve[k - 1].copy()
    return curve[k - 1] + s * (curve[k] - curve[k - 1])


eval = evaluate  # noqa: A001


def evaluate_many(curve: np.ndarray, ts) -> np.ndarray:
    ts = np.asarray(ts, dtype=float)
    n = len(curve)
    if n == 1:
        return np.repeat(curve[:1], len(ts), axis=0)
    k = np.clip(np.floor(ts).astype(int), 1, n - 1)
    s = (ts - k)[:, None]
    out = curve[k - 1] + s * (curve[k] - curve[k - 1])
    # land exactly on vertices, as evaluate does
    return np.where(s == 1.0, curve[k], out)


def subcurve(curve: np.ndarray, a: float, b: float) -> np.ndarray:
    """Vertices of ``curve[a, b]`` (a new curve on ``[1, m]``)."""
    n = len(curve)
    if not (1.0 <= a <= b <= n):
        raise DomainError(f"bad subcurve range [{a}, {b}] on [1, {n}]")
    pts = [evaluate(curve, a)]
    for k in range(int(math.floor(a)) + 1, int(math.ceil(b))):
        pts.append(curve[k - 1])
    if b > a:
        pts.append(evaluate(curve, b))
    return np.array(pts)


def reverse(curve: np.ndarray) -> np.ndarray:
    return curve[::-1].copy()


def free_interval_on_edge(p0, p1, center, radius: float, eps: float = 0.0):
    """Closed parameter sub-interval of segment ``p0p1`` (parameter in
    ``[0, 1]``) within ``radius + eps`` of ``center``, or ``None``."""
    p0 = np.asarray(p0, dtype=float)
    p1 = np.asarray(p1, dtype=float)
    c = np.asarray(center, dtype=float)
    r = radius + eps
    d = p1 - p0
    w = p0 - c
    a = float(d @ d)
    # endpoint tests decide the corners, so both edges meeting there agree
    ww = float(w @ w)
    start_in = math.sqrt(ww) <= r
    if a == 0.0:
        return (0.0, 1.0) if start_in else None
    ew = p1 - c
    end_in = math.sqrt(float(ew @ ew)) <= r
    b = float(d @ w)
    # distance to the supporting line from the foot point, not b^2 - a(|w|^2 - r^2),
    # which cancels catastrophically near tangency
    foot = w - (b / a) * d
    p = math.sqrt(float(foot @ foot))
    disc = a * (r - p) * (r + p)
    if disc < 0.0:
        if not (start_in or end_in):
            return None
        disc = 0.0
    sq = math.sqrt(disc)
    r1 = (-b - sq) / a
    r2 = (-b + sq) / a
    if not (start_in or end_in) and (r1 > 1.0 or r2 < 0.0):
        return None
    lo = 0.0 if start_in else min(max(r1, 0.0), 1.0)
    hi = 1.0 if end_in else min(max(r2, 0.0), 1.0)
    if lo > hi:
        if start_in:
            hi = lo
        else:
            lo = hi
    return (lo, hi)


def free_intervals_batch(starts: np.ndarray, ends: np.ndarray, center, radius: float, eps: float = 0.0,
                         centers: np.ndarray | None = None):
    """Vectorised ``free_interval_on_edge``: row ``k`` pairs segment
    ``starts[k]ends[k]`` with ``center`` (or ``centers[k]``). Returns
    ``(lo, hi)`` arrays with NaN for empty intervals."""
    c = np.asarray(center if centers is None else centers, dtype=float)
    r = radius + eps
    d = ends - starts
    w = starts - c
    a = np.einsum("ij,ij->i", d, d)
    b = np.einsum("ij,ij->i", d, w)
    ww = np.einsum("ij,ij->i", w, w)
    start_in = np.sqrt(ww) <= r
    ew = ends - c
    end_in = np.sqrt(np.einsum("ij,ij->i", ew, ew)) <= r
    return _quadratic_interval(a, b, _line_distance(w, d, a, b), r, start_in, end_in)


def free_intervals_grid(T: np.ndarray, pts: np.ndarray, radius: float, eps: float = 0.0):
    """Free parameter ranges of every edge of ``T`` against every point of
    ``pts``; arrays of shape ``(len(pts), len(T) - 1)``, NaN when empty."""
    A = T[:-1][None, :, :]
    C = pts[:, None, :]
    r = radius + eps
    d = (T[1:] - T[:-1])[None, :, :]
    w = A - C
    ew = T[1:][None, :, :] - C
    a = np.broadcast_to(np.einsum("...k,...k->...", d, d), w.shape[:2])
    b = np.einsum("...k,...k->...", d, w)
    ww = np.einsum("...k,...k->...", w, w)
    start_in = np.sqrt(ww) <= r
    end_in = np.sqrt(np.einsum("...k,...k->...", ew, ew)) <= r
    return _quadratic_interval(a, b, _line_distance(w, d, a, b), r, start_in, end_in)


def _line_distance(w, d, a, b):
    t = np.where(a > 0.0, b / np.where(a > 0.0, a, 1.0), 0.0)
    foot = w - t[..., None] * d
    return np.sqrt(np.einsum("...k,...k->...", foot, foot))


def _quadratic_interval(a, b, p, r, start_in, end_in):
    disc = a * (r - p) * (r + p)
    some_in = start_in | end_in
    disc = np.where((disc < 0.0) & some_in, 0.0, disc)
    safe_a = np.where(a > 0.0, a, 1.0)
    sq = np.sqrt(np.maximum(disc, 0.0))
    r1 = (-b - sq) / safe_a
    r2 = (-b + sq) / safe_a
    ok = some_in | ((disc >= 0.0) & (r1 <= 1.0) & (r2 >= 0.0))
    lo = np.where(start_in, 0.0, np.clip(r1, 0.0, 1.0))
    hi = np.where(end_in, 1.0, np.clip(r2, 0.0, 1.0))
    bad = lo > hi
    hi = np.where(bad & start_in, lo, hi)
    lo = np.where(bad & ~start_in, hi, lo)
    zero = a == 0.0
    lo = np.where(zero, 0.0, lo)
    hi = np.where(zero, 1.0, hi)
    ok = np.where(zero, start_in, ok)
    return np.where(ok, lo, np.nan), np.where(ok, hi, np.nan)


def frechet_decide(P, Q, delta: float, eps: float | None = None) -> bool:
    """True iff the continuous Frechet distance of ``P`` and ``Q`` is at most
    ``delta`` (plus slack ``eps``), by reachable-interval propagation."""
    P = np.asarray(P, dtype=float)
    Q = np.asarray(Q, dtype=float)
    if eps is None:
        eps = EPS_GEOM * max(bbox_diameter(np.vstack([P, Q])), 1.0)
    r = delta + eps
    p, q = len(P), len(Q)
    if np.linalg.norm(P[0] - Q[0]) > r or np.linalg.norm(P[-1] - Q[-1]) > r:
        return False
    if p == 1:
        return bool(np.all(np.linalg.norm(Q - P[0], axis=1) <= r))
    if q == 1:
        return bool(np.all(np.linalg.norm(P - Q[0], axis=1) <= r))

    # left[i][j]: free y-range on x = i over Q edge j; bottom[i][j]: free x-range on y = j over P edge i
    def vert(i, j):
        return free_interval_on_edge(Q[j], Q[j + 1], P[i], delta, eps)

    def horiz(i, j):
        return free_interval_on_edge(P[i], P[i + 1], Q[j], delta, eps)

    # reachable intervals on the bottom edges of the current row of cells
    bottom = [None] * (p - 1)
    reach = True
    for i in range(p - 1):
        f = horiz(i, 0)
        if reach and f is not None and f[0] == 0.0:
            bottom[i] = f
            reach = f[1] == 1.0
        else:
            reach = False
            bottom[i] = None
    left_reach = True
    for j in range(q - 1):
        f = vert(0, j)
        if left_reach and f is not None and f[0] == 0.0:
            left = f
            left_reach = f[1] == 1.0
        else:
            left = None
            left_reach = False
        new_bottom = [None] * (p - 1)
        for i in range(p - 1):
            b = bottom[i]
            right_free = vert(i + 1, j)
            top_free = horiz(i, j + 1)
            if right_free is None:
                right = None
            elif b is not None:
                right = right_free
            elif left is not None:
                lo = max(right_free[0], left[0])
                right = (lo, right_free[1]) if lo <= right_free[1] else None
            else:
                right = None
            if top_free is None:
                top = None
            elif left is not None:
                top = top_free
            elif b is not None:
                lo = max(top_free[0], b[0])
                top = (lo, top_free[1]) if lo <= top_free[1] else None
            else:
                top = None
            new_bottom[i] = top
            left = right
        bottom = new_bottom
        last_right = left
    return bool(
        (bottom[p - 2] is not None and bottom[p - 2][1] == 1.0)
        or (last_right is not None and last_right[1] == 1.0)
    )
