"""Order-preserving map over worker processes, capped by ``PATHLET_THREADS``."""

from __future__ import annotations

import multiprocessing
import os
from concurrent.futures import ProcessPoolExecutor


def worker_count() -> int:
    raw = os.environ.get("PATHLET_THREADS", "")
    try:
        n = int(raw)
    except ValueError:
        n = os.cpu_count() or 1
    return max(1, n)


def ordered_map(fn, items, min_items: int = 32):
    """``list(map(fn, items))``, fanned out when allowed and worth it.

    Results come back in input order, so output never depends on scheduling.
    """
    items = list(items)
    workers = min(worker_count(), len(items))
    if workers <= 1 or len(items) < min_items:
        return [fn(x) for x in items]
    ctx = multiprocessing.get_context("fork")
    chunk = max(1, len(items) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
        return list(pool.map(fn, items, chunksize=chunk))
