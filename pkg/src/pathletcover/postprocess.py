"""Turning pathlets into interior-disjoint ones."""

from __future__ import annotations

from dataclasses import replace


def _drop_contained(intervals):
    out = []
    for lo, hi in sorted(((float(a), float(b)) for a, b in intervals), key=lambda iv: (iv[0], -iv[1])):
        if out and hi <= out[-1][1]:
            continue
        out.append((lo, hi))
    return out


def reduce_ply(intervals):
    """Subset with the same union in which no point lies in three intervals.

    Once containments are gone, an interval whose neighbours on both sides
    meet each other is redundant and is dropped.
    """
    out = []
    for iv in _drop_contained(intervals):
        while len(out) >= 2 and out[-2][1] >= iv[0]:
            out.pop()
        out.append(iv)
    return out


def ply(intervals) -> int:
    """Largest number of closed intervals sharing a point."""
    events = sorted([(a, 0) for a, _ in intervals] + [(b, 1) for _, b in intervals])
    best = cur = 0
    for _, kind in events:
        cur += 1 if kind == 0 else -1
        best = max(best, cur)
    return best


def interior_disjoint(intervals) -> bool:
    ivs = sorted(intervals)
    return all(b[0] >= a[1] for a, b in zip(ivs, ivs[1:]))


def split_intervals(intervals):
    first, second = [], []
    for iv in reduce_ply(intervals):
        if not first or iv[0] >= first[-1][1]:
            first.append(iv)
        else:
            second.append(iv)
    return first, second


def split_interior_disjoint(p):
    """Two pathlets with ``p``'s reference whose own intervals do not overlap."""
    first, second = split_intervals(p.intervals)
    return replace(p, intervals=first), replace(p, intervals=second)


def interior_disjoint_clustering(pathlets):
    out = []
    for p in pathlets:
        for part in split_interior_disjoint(p):
            if part.intervals:
                out.append(part)
    return out
