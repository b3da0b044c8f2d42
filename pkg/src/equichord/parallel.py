"""Optional thread-pool mapping with deterministic result ordering.

The EQUICHORD_THREADS environment variable caps worker count: unset or "1"
runs serially, "0" uses the CPU count, any other positive integer is taken
literally.  Results are always collected in input order, so the numeric
output of every caller is independent of the scheduling.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def thread_count() -> int:
    raw = os.environ.get("EQUICHORD_THREADS", "1").strip()
    try:
        n = int(raw)
    except ValueError:
        return 1
    if n == 0:
        return os.cpu_count() or 1
    return max(1, n)


def ordered_map(fn: Callable[[T], R], items: Sequence[T]) -> List[R]:
    """Map ``fn`` over ``items``, preserving order; threads per thread_count()."""
    workers = thread_count()
    if workers <= 1 or len(items) < 2:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
