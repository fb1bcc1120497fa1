"""Plain SVG drawings of trajectories, clusterings and free-space diagrams."""

from __future__ import annotations

import numpy as np

from .curve_core import subcurve

PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2", "#7f7f7f",
           "#bcbd22"]


def _f(x: float) -> str:
    return format(float(x), ".6g")


class _Canvas:
    def __init__(self, lo, hi, size=800.0, margin=20.0, flip_y=True):
        self.lo = np.asarray(lo, float)
        span = np.maximum(np.asarray(hi, float) - self.lo, 1e-12)
        self.scale = (size - 2 * margin) / float(span.max())
        self.margin = margin
        self.w = span[0] * self.scale + 2 * margin
        self.h = span[1] * self.scale + 2 * margin
        self.flip_y = flip_y
        self.parts = []

    def xy(self, p):
        x = (p[0] - self.lo[0]) * self.scale + self.margin
        y = (p[1] - self.lo[1]) * self.scale + self.margin
        return x, (self.h - y if self.flip_y else y)

    def polyline(self, pts, color, width=1.5, opacity=1.0):
        coords = " ".join(f"{_f(x)},{_f(y)}" for x, y in (self.xy(p) for p in pts))
        self.parts.append(f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="{width}" '
                          f'stroke-opacity="{opacity}"/>')

    def circle(self, p, r, color):
        x, y = self.xy(p)
        self.parts.append(f'<circle cx="{_f(x)}" cy="{_f(y)}" r="{r}" fill="{color}"/>')

    def rect(self, p0, p1, color):
        (x0, y0), (x1, y1) = self.xy(p0), self.xy(p1)
        self.parts.append(f'<rect x="{_f(min(x0, x1))}" y="{_f(min(y0, y1))}" width="{_f(abs(x1 - x0))}" '
                          f'height="{_f(abs(y1 - y0))}" fill="{color}"/>')

    def render(self) -> str:
        head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{_f(self.w)}" height="{_f(self.h)}" '
                f'viewBox="0 0 {_f(self.w)} {_f(self.h)}">')
        return "\n".join([head, '<rect width="100%" height="100%" fill="white"/>', *self.parts, "</svg>"]) + "\n"


def _xy_bounds(*curves):
    pts = np.vstack([np.asarray(c, float)[:, :2] for c in curves if len(c)])
    return pts.min(axis=0), pts.max(axis=0)


def simplification_svg(T, S) -> str:
    """``T`` in grey with ``S`` on top; only the first two coordinates are drawn."""
    T = np.asarray(T, float)
    S = np.asarray(S, float)
    c = _Canvas(*_xy_bounds(T, S))
    c.polyline(T[:, :2], "#999999", 1.0)
    c.polyline(S[:, :2], "#d62728", 2.0)
    for p in S[:, :2]:
        c.circle(p, 3, "#d62728")
    return c.render()


def clustering_svg(T, pathlets) -> str:
    """Each pathlet's reference in its own color over the trajectory."""
    T = np.asarray(T, float)
    refs = [np.asarray(p.reference, float) for p in pathlets if len(p.reference)]
    c = _Canvas(*_xy_bounds(T, *refs))
    c.polyline(T[:, :2], "#cccccc", 1.0)
    for k, p in enumerate(pathlets):
        color = PALETTE[k % len(PALETTE)]
        for a, b in p.intervals:
            if b > a:
                c.polyline(subcurve(T, a, b)[:, :2], color, 1.0, 0.35)
        if len(p.reference):
            c.polyline(np.asarray(p.reference)[:, :2], color, 3.0)
    return c.render()


def fsd_svg(domain, critical_points=(), paths=(), samples: int = 24) -> str:
    """Free space of ``domain`` (white) on grey, obstacle segments in red,
    critical points as dots and matchings as colored monotone polylines."""
    W, T = domain.W, domain.T
    c = _Canvas((1.0, 1.0), (float(len(W)), float(len(T))), flip_y=True)
    c.rect((1.0, 1.0), (float(len(W)), float(len(T))), "#bbbbbb")
    r = domain.delta_prime + domain.tol.geom
    for k in range(1, len(W)):
        xs = np.linspace(k, k + 1, samples + 1)
        mid_x = 0.5 * (xs[:-1] + xs[1:])
        wx = W[k - 1] + (mid_x - k)[:, None] * (W[k] - W[k - 1])
        for j in range(1, len(T)):
            ys = np.linspace(j, j + 1, samples + 1)
            mid_y = 0.5 * (ys[:-1] + ys[1:])
            ty = T[j - 1] + (mid_y - j)[:, None] * (T[j] - T[j - 1])
            free = np.linalg.norm(ty[:, None, :] - wx[None, :, :], axis=2) <= r
            for row in range(samples):
                cols = np.flatnonzero(free[row])
                if not len(cols):
                    continue
                # runs of consecutive free samples become one rectangle
                breaks = np.flatnonzero(np.diff(cols) > 1)
                starts = np.r_[cols[0], cols[breaks + 1]]
                ends = np.r_[cols[breaks], cols[-1]]
                for a, b in zip(starts, ends):
                    c.rect((xs[a], ys[row]), (xs[b + 1], ys[row + 1]), "white")
    for k in range(1, len(W) + 1):
        c.polyline([(k, 1.0), (k, float(len(T)))], "#444444", 0.5)
    for j in range(1, len(T) + 1):
        c.polyline([(1.0, j), (float(len(W)), j)], "#444444", 0.5)
    for ob in domain.obstacles():
        seg = [(ob.line, ob.lo), (ob.line, ob.hi)] if ob.vertical else [(ob.lo, ob.line), (ob.hi, ob.line)]
        c.polyline(seg, "#d62728", 2.0)
    for k, path in enumerate(paths):
        c.polyline(path, PALETTE[k % len(PALETTE)], 2.5)
    for p in critical_points:
        c.circle((p[0], p[1]), 2.5, "#1f77b4")
    return c.render()
