"""Optional thread fan-out, capped by the FREENOISE_THREADS variable."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

__all__ = ["thread_count", "ordered_map"]


def thread_count() -> int:
    raw = os.environ.get("FREENOISE_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def ordered_map(fn, items):
    """Map preserving input order; parallel only when threads are allowed.

    Results are combined in input order regardless of completion order,
    so reductions over the output are deterministic.
    """
    items = list(items)
    n = thread_count()
    if n <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=min(n, len(items))) as pool:
        return list(pool.map(fn, items))
