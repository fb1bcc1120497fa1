"""Greedy curve-restricted simplification whose edges stay within 2*delta.

Each edge of the simplification starts where the previous one ended and is
pushed as far along ``T`` as an ordered-stabbing test allows. The stabbing
test works in a 2-plane through the current start point and the candidate
edge of ``T``: every intermediate vertex contributes a disk, the shortcut
segment must hit each disk, and the largest admissible end point on the edge
is the minimum over the per-disk limits. The result is confirmed with an
exact Frechet decision before it is accepted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .curve_core import Tolerance, as_curve, evaluate, frechet_decide, subcurve


@dataclass
class Simplification:
    breakpoints: np.ndarray  # parameters on T, a_0 = 1 < ... < a_r = n
    vertices: np.ndarray  # vertex k is T(breakpoints[k])

    def __len__(self) -> int:
        return len(self.breakpoints)

    def edge(self, k: int):
        """Edge ``k`` (1-based) and the parameter range of T it stands for."""
        return self.vertices[k - 1 : k + 1], (float(self.breakpoints[k - 1]), float(self.breakpoints[k]))


def _plane_basis(p, A, B):
    d = len(p)
    u = B - A
    nu = np.linalg.norm(u)
    if nu > 0.0:
        e1 = u / nu
        cand = p - A
    else:
        cand = p - A
        nc = np.linalg.norm(cand)
        if nc > 0.0:
            e1 = cand / nc
        else:
            e1 = np.eye(d)[0]
        cand = np.zeros(d)
    w = cand - (cand @ e1) * e1
    nw = np.linalg.norm(w)
    if nw <= 1e-12 * max(1.0, np.linalg.norm(cand)):
        # collinear: any plane through the line works, use the least parallel axis
        axis = np.eye(d)[int(np.argmin(np.abs(e1)))]
        w = axis - (axis @ e1) * e1
        nw = np.linalg.norm(w)
    return e1, w / nw


def _hits_disk(q, c, r) -> bool:
    qq = q @ q
    t = 0.0 if qq == 0.0 else min(max((c @ q) / qq, 0.0), 1.0)
    return float(np.linalg.norm(t * q - c)) <= r


def _last_in_wedge(A, D, s_lo, c, r):
    """Largest ``s`` in ``[s_lo, 1]`` such that the segment from the origin to
    ``A + s D`` meets the disk ``(c, r)``, or ``None``."""
    if _hits_disk(A + D, c, r):
        return 1.0
    cands = [s_lo]
    a = D @ D
    if a > 0.0:
        w = A - c
        b = D @ w
        disc = b * b - a * (w @ w - r * r)
        if disc >= 0.0:
            sq = math.sqrt(disc)
            cands += [(-b - sq) / a, (-b + sq) / a]
    nc = float(np.linalg.norm(c))
    if nc > r:
        alpha = math.asin(r / nc)
        base = c / nc
        for sgn in (1.0, -1.0):
            ca, sa = math.cos(alpha), sgn * math.sin(alpha)
            u = np.array([ca * base[0] - sa * base[1], sa * base[0] + ca * base[1]])
            den = u[0] * D[1] - u[1] * D[0]
            if den != 0.0:
                cands.append(-(u[0] * A[1] - u[1] * A[0]) / den)
    # candidates sit exactly on the wedge boundary; absorb rounding there
    r_test = r * (1.0 + 1e-12) + 1e-15
    for s in sorted({s for s in cands if s_lo <= s <= 1.0}, reverse=True):
        if _hits_disk(A + s * D, c, r_test):
            return s
    return None


def _member(T, a, b, delta, tol: Tolerance) -> bool:
    seg = np.vstack([evaluate(T, a), evaluate(T, b)])
    return frechet_decide(seg, subcurve(T, a, b), 2.0 * delta, tol.geom)


def max_b_on_edge(T, a: float, i: int, delta: float, tol: Tolerance | None = None):
    """Largest ``b`` in ``[max(i, a), i + 1]`` whose shortcut ``T(a)T(b)`` is
    within Frechet ``2*delta`` of ``T[a, b]``, or ``None``."""
    T = np.asarray(T, float)
    tol = tol or Tolerance.for_points(T)
    n = len(T)
    if not (1 <= i <= n - 1) or a > i + 1:
        return None
    lo = max(float(i), a)
    s_lo = lo - i
    p = evaluate(T, a)
    A3, B3 = T[i - 1], T[i]
    e1, e2 = _plane_basis(p, A3, B3)
    A = np.array([(A3 - p) @ e1, (A3 - p) @ e2])
    B = np.array([(B3 - p) @ e1, (B3 - p) @ e2])
    D = B - A
    R = 2.0 * delta + tol.geom
    s = 1.0
    for j in range(int(math.ceil(a)), i + 1):
        v = T[j - 1] - p
        c = np.array([v @ e1, v @ e2])
        off = float(np.linalg.norm(v - c[0] * e1 - c[1] * e2))
        if off > R:
            return None
        r = math.sqrt(max(R * R - off * off, 0.0))
        if float(np.linalg.norm(c)) <= r:
            continue
        sj = _last_in_wedge(A, D, s_lo, c, r)
        if sj is None:
            return None
        s = min(s, sj)
    b = i + s if s < 1.0 else float(i + 1)
    if b < lo:
        b = lo
    if _member(T, a, b, delta, tol):
        return b
    # the wedge bound was not confirmed: fall back to the largest confirmed
    # value below it, never reporting an unconfirmed one
    if not _member(T, a, lo, delta, tol):
        return None
    good, bad = lo, b
    while bad - good > tol.param:
        mid = 0.5 * (good + bad)
        if _member(T, a, mid, delta, tol):
            good = mid
        else:
            bad = mid
    return good


def next_breakpoint(T, a: float, delta: float, tol: Tolerance | None = None) -> float:
    """Maximum of some connected component of the admissible end points from ``a``."""
    T = np.asarray(T, float)
    tol = tol or Tolerance.for_points(T)
    n = len(T)
    if a >= n:
        return float(n)
    i0 = min(int(math.floor(a)), n - 1)
    # a sub-segment of a single edge is its own shortcut, so vertex i0 + 1 qualifies
    if i0 + 1 >= n:
        return float(n)

    def probe(e):
        return max_b_on_edge(T, a, e, delta, tol)

    last_full = i0
    step = 1
    hi = n - 1
    while True:
        e = min(i0 + step, n - 1)
        r = probe(e)
        if r is None:
            hi = e - 1
            break
        if r < e + 1:
            return float(r)
        last_full = e
        if e + 1 >= n:
            return float(n)
        step *= 2
    lo = last_full + 1
    while lo <= hi:
        mid = (lo + hi) // 2
        r = probe(mid)
        if r is None:
            hi = mid - 1
        elif r < mid + 1:
            return float(r)
        else:
            lo = mid + 1
    return float(lo)


def build_simplification(T, delta: float, tol: Tolerance | None = None) -> Simplification:
    T = as_curve(T)
    tol = tol or Tolerance.for_points(T)
    n = len(T)
    bps = [1.0]
    while bps[-1] < n:
        bps.append(next_breakpoint(T, bps[-1], delta, tol))
    bps = np.array(bps)
    verts = np.array([evaluate(T, b) for b in bps])
    return Simplification(bps, verts)


def verify_simplification(T, S: Simplification, delta: float, tol: Tolerance | None = None,
                          check_maximal: bool = True) -> bool:
    """Edge bound plus greedy maximality of every interior breakpoint."""
    T = np.asarray(T, float)
    tol = tol or Tolerance.for_points(T)
    n = len(T)
    bps = np.asarray(S.breakpoints, float)
    if len(bps) == 0 or bps[0] != 1.0 or bps[-1] != n or np.any(np.diff(bps) <= 0):
        return n == 1 and len(bps) == 1
    for k in range(1, len(bps)):
        a, b = float(bps[k - 1]), float(bps[k])
        seg = np.vstack([S.vertices[k - 1], S.vertices[k]])
        if not np.allclose(seg, [evaluate(T, a), evaluate(T, b)], atol=tol.geom, rtol=0):
            return False
        if not frechet_decide(seg, subcurve(T, a, b), 2.0 * delta, tol.geom):
            return False
        if check_maximal and b < n:
            b2 = min(b + 10.0 * tol.param, float(n))
            if _member(T, a, b2, delta, tol):
                return False
    return True
