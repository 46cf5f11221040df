"""Worker-count policy and an order-preserving parallel map."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def worker_count() -> int:
    """``PROGLAB_THREADS`` if set to a positive integer, else the CPU count."""
    raw = os.environ.get("PROGLAB_THREADS", "").strip()
    if raw:
        try:
            n = int(raw)
        except ValueError:
            n = 0
        if n > 0:
            return n
    return os.cpu_count() or 1


def ordered_map(fn: Callable[[T], R], items: Iterable[T], min_items: int = 64) -> list[R]:
    items = list(items)
    workers = min(worker_count(), len(items))
    if workers <= 1 or len(items) < min_items:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
