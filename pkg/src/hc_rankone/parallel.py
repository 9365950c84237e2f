"""Deterministic chunked parallelism for grid sweeps.

Worker count is capped by the HC_RANKONE_THREADS environment variable.
Chunk boundaries depend only on the input length, never on the worker
count, so results (including floating-point rounding) are identical for
any thread setting.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

_CHUNK = 256


def worker_count() -> int:
    env = os.environ.get("HC_RANKONE_THREADS")
    cpus = os.cpu_count() or 1
    if env is None:
        return min(4, cpus)
    try:
        n = int(env)
    except ValueError:
        raise ValueError(f"HC_RANKONE_THREADS must be an integer, got {env!r}")
    return max(1, min(n, cpus))


def chunked_map(fn, n_items: int, chunk: int = _CHUNK):
    """Apply fn(lo, hi) over fixed slices of range(n_items); ordered results."""
    bounds = [(lo, min(lo + chunk, n_items)) for lo in range(0, n_items, chunk)]
    workers = worker_count()
    if workers <= 1 or len(bounds) <= 1:
        return [fn(lo, hi) for lo, hi in bounds]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda b: fn(*b), bounds))
