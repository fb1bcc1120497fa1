"""Critical points of the free space of (S, T) and the interval universe they induce."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curve_core import EPS_PARAM, Tolerance, evaluate_many, free_intervals_batch, free_intervals_grid

ROLES = ("interior_left", "interior_right", "bottom_left", "bottom_right", "top_left", "top_right")


@dataclass(frozen=True)
class CriticalPoint:
    x: float
    y: float
    kind: str = "line"


@dataclass
class Universe:
    boundaries: np.ndarray  # strictly increasing, first 1, last n

    @property
    def lows(self) -> np.ndarray:
        return self.boundaries[:-1]

    @property
    def highs(self) -> np.ndarray:
        return self.boundaries[1:]

    def __len__(self) -> int:
        return max(len(self.boundaries) - 1, 0)

    def intervals(self):
        return list(zip(self.lows.tolist(), self.highs.tolist()))


def _seg_vs_centers(p0, p1, centers, r, eps):
    """Free parameter range of one segment against many disk centers."""
    k = len(centers)
    return free_intervals_batch(np.repeat(p0[None, :], k, 0), np.repeat(p1[None, :], k, 0), None, r, eps,
                                centers=centers)


def cell_extremes(a0, a1, T, r, eps):
    """For segment ``a0a1`` of S against every edge of T, the six extreme
    x-offsets in ``[0, 1]`` (NaN where absent), shape ``(n - 1, 6)``.

    Extremes come from the exact radius. A set that only exists thanks to the
    slack is a tangency; its slack extent is about ``sqrt(r * eps)`` wide, so it
    is reported as the single midpoint instead.
    """
    exact = _cell_extremes_at(a0, a1, T, r, 0.0)
    slack = _cell_extremes_at(a0, a1, T, r, eps)
    out = exact.copy()
    for k in (0, 2, 4):
        touch = np.isnan(exact[:, k]) & ~np.isnan(slack[:, k])
        mid = 0.5 * (slack[:, k] + slack[:, k + 1])
        out[:, k] = np.where(touch, mid, out[:, k])
        out[:, k + 1] = np.where(touch, mid, out[:, k + 1])
    return out


def _cell_extremes_at(a0, a1, T, r, eps):
    n = len(T)
    bot_lo, bot_hi = _seg_vs_centers(a0, a1, T[:-1], r, eps)
    top_lo, top_hi = _seg_vs_centers(a0, a1, T[1:], r, eps)
    # the tube around each edge of T, without its end caps
    U = a1 - a0
    V = T[1:] - T[:-1]
    W = a0[None, :] - T[:-1]
    vv = np.einsum("ij,ij->i", V, V)
    safe = np.where(vv > 0, vv, 1.0)
    pw = np.einsum("ij,ij->i", W, V) / safe
    pu = (V @ U) / safe
    P0 = W - pw[:, None] * V
    P1 = U[None, :] - pu[:, None] * V
    qa = np.einsum("ij,ij->i", P1, P1)
    qb = np.einsum("ij,ij->i", P0, P1)
    qc = np.einsum("ij,ij->i", P0, P0) - (r + eps) ** 2
    disc = qb * qb - qa * qc
    with np.errstate(divide="ignore", invalid="ignore"):
        sq = np.sqrt(np.maximum(disc, 0.0))
        safe_a = np.where(qa > 0, qa, 1.0)
        c_lo = np.where(qa > 0, (-qb - sq) / safe_a, np.where(qc <= 0, -np.inf, np.inf))
        c_hi = np.where(qa > 0, (-qb + sq) / safe_a, np.where(qc <= 0, np.inf, -np.inf))
        c_lo = np.where((qa > 0) & (disc < 0), np.inf, c_lo)
        c_hi = np.where((qa > 0) & (disc < 0), -np.inf, c_hi)
        # projection parameter t(s) = pw + s*pu must lie in [0, 1]
        inv = 1.0 / np.where(pu != 0, pu, 1.0)
        at0, at1 = -pw * inv, (1.0 - pw) * inv
        inside = (pw >= 0) & (pw <= 1)
        t_lo = np.where(pu > 0, at0, np.where(pu < 0, at1, np.where(inside, -np.inf, np.inf)))
        t_hi = np.where(pu > 0, at1, np.where(pu < 0, at0, np.where(inside, np.inf, -np.inf)))
    cyl_lo = np.maximum.reduce([c_lo, t_lo, np.zeros(n - 1)])
    cyl_hi = np.minimum.reduce([c_hi, t_hi, np.ones(n - 1)])
    cyl_ok = (cyl_lo <= cyl_hi) & (vv > 0)
    cyl_lo = np.where(cyl_ok, cyl_lo, np.nan)
    cyl_hi = np.where(cyl_ok, cyl_hi, np.nan)
    int_lo = np.fmin(np.fmin(bot_lo, top_lo), cyl_lo)
    int_hi = np.fmax(np.fmax(bot_hi, top_hi), cyl_hi)
    return np.stack([int_lo, int_hi, bot_lo, bot_hi, top_lo, top_hi], axis=1)


def critical_xs_for_column(S, T, i: int, delta_prime: float, tol: Tolerance | None = None, with_roles=False):
    """Absolute x-coordinates of the per-cell extreme points in column ``i``."""
    S = np.asarray(S, float)
    T = np.asarray(T, float)
    tol = tol or Tolerance.for_points(np.vstack([S, T]))
    if len(T) < 2:
        return {} if with_roles else set()
    ext = cell_extremes(S[i - 1], S[i], T, delta_prime, tol.geom)
    out = {}
    for role_k, role in enumerate(ROLES):
        col = ext[:, role_k]
        for s in col[~np.isnan(col)].tolist():
            out.setdefault(i + s, role)
    return out if with_roles else set(out)


def line_components(S, T, xs, delta_prime: float, eps: float):
    """Free vertical components on the lines ``x`` for each ``x`` in ``xs``.

    Returns ``(row, lo, hi)`` arrays: component ``k`` lies on line ``xs[row[k]]``
    and spans ``[lo[k], hi[k]]``, ordered by row and then by y.
    """
    xs = np.asarray(xs, float)
    T = np.asarray(T, float)
    n = len(T)
    pts = evaluate_many(np.asarray(S, float), xs)
    m = len(xs)
    if n == 1:
        ok = np.linalg.norm(pts - T[0], axis=1) <= delta_prime + eps
        rows = np.nonzero(ok)[0]
        return rows, np.ones(len(rows)), np.ones(len(rows))
    lo, hi = free_intervals_grid(T, pts, delta_prime, eps)  # shape (m, n-1)
    ne = ~np.isnan(lo)
    join_next = np.zeros((m, n - 1), bool)
    join_next[:, :-1] = ne[:, :-1] & ne[:, 1:] & (hi[:, :-1] == 1.0) & (lo[:, 1:] == 0.0)
    join_prev = np.zeros((m, n - 1), bool)
    join_prev[:, 1:] = join_next[:, :-1]
    starts = ne & ~join_prev
    ends = ne & ~join_next
    sr, sc = np.nonzero(starts)
    er, ec = np.nonzero(ends)
    return sr, sc + 1 + lo[sr, sc], ec + 1 + hi[er, ec]


def critical_points_on_line(S, T, x: float, delta_prime: float, tol: Tolerance | None = None, kind="line"):
    S = np.asarray(S, float)
    T = np.asarray(T, float)
    tol = tol or Tolerance.for_points(np.vstack([S, T]))
    _, lo, hi = line_components(S, T, [x], delta_prime, tol.geom)
    out = []
    for a, b in zip(lo.tolist(), hi.tolist()):
        out.append(CriticalPoint(x, a, kind))
        if b != a:
            out.append(CriticalPoint(x, b, kind))
    return out


def merge_boundaries(values, n: float, eps_param: float = EPS_PARAM) -> np.ndarray:
    vals = np.unique(np.concatenate([np.asarray(values, float), [1.0, float(n)]]))
    vals = vals[(vals >= 1.0) & (vals <= n)]
    keep = [1.0]
    for v in vals.tolist():
        if v - keep[-1] > eps_param:
            keep.append(v)
    if keep[-1] != n:
        if len(keep) > 1 and n - keep[-1] <= eps_param:
            keep[-1] = float(n)
        else:
            keep.append(float(n))
    return np.array(keep)


def build_universe(S, T, delta_prime: float, tol: Tolerance | None = None, keep_points=False):
    """Universe over ``[1, n]`` from all critical y-coordinates, column by column."""
    S = np.asarray(S, float)
    T = np.asarray(T, float)
    tol = tol or Tolerance.for_points(np.vstack([S, T]))
    n = len(T)
    ys = []
    points = [] if keep_points else None
    for i in range(1, len(S)):
        roles = critical_xs_for_column(S, T, i, delta_prime, tol, with_roles=True)
        if not roles:
            continue
        xs = np.array(sorted(roles))
        rows, lo, hi = line_components(S, T, xs, delta_prime, tol.geom)
        ys.append(lo)
        ys.append(hi)
        if keep_points:
            for rw, a, b in zip(rows.tolist(), lo.tolist(), hi.tolist()):
                x = float(xs[rw])
                points.append(CriticalPoint(x, a, roles[x]))
                if b != a:
                    points.append(CriticalPoint(x, b, roles[x]))
    allys = np.concatenate(ys) if ys else np.empty(0)
    return Universe(merge_boundaries(allys, n, tol.param)), points
