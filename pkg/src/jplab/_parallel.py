"""Ordered parallel map over independent pure tasks."""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor


def worker_count(explicit: int | None = None) -> int:
    """Explicit value, else ``JPL_WORKERS``, else 1."""
    if explicit is not None:
        return max(1, int(explicit))
    env = os.environ.get("JPL_WORKERS", "").strip()
    return max(1, int(env)) if env else 1


def parallel_map(func, items, workers: int = 1) -> list:
    """``[func(x) for x in items]``, fanned out over processes when ``workers > 1``.

    Results come back in input order, so output is independent of scheduling.
    """
    items = list(items)
    if workers <= 1 or len(items) < 2:
        return [func(x) for x in items]
    chunk = max(1, len(items) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items, chunksize=chunk))


def parallel_iter(func, items, workers: int = 1):
    """Like :func:`parallel_map` but yields each result, in input order, as soon as it is ready."""
    items = list(items)
    if workers <= 1 or len(items) < 2:
        for x in items:
            yield func(x)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(func, items)
