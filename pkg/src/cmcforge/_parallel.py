"""Range-partitioned evaluation honoring the CMC_FORGE_THREADS cap."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence, TypeVar

from .errors import InvalidParameterError

T = TypeVar("T")
R = TypeVar("R")

ENV_THREADS = "CMC_FORGE_THREADS"


def worker_count() -> int:
    raw = os.environ.get(ENV_THREADS, "").strip()
    if not raw:
        return max(1, os.cpu_count() or 1)
    try:
        n = int(raw)
    except ValueError:
        raise InvalidParameterError(f"{ENV_THREADS} must be an integer, got {raw!r}") from None
    if n < 1:
        raise InvalidParameterError(f"{ENV_THREADS} must be >= 1, got {n}")
    return n


def map_ranges(fn: Callable[[Sequence[T]], list[R]], items: Sequence[T]) -> list[R]:
    """Apply ``fn`` to contiguous slices of ``items`` and concatenate in order."""
    workers = min(worker_count(), len(items))
    if workers <= 1:
        return fn(items)
    bounds = [len(items) * k // workers for k in range(workers + 1)]
    slices = [items[bounds[k] : bounds[k + 1]] for k in range(workers)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(fn, slices))
    return [r for part in parts for r in part]
