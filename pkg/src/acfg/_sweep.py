"""Chunked, range-splittable sweeps over partitions and subsets."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from typing import Callable, Iterator

import numpy as np

from .game import FriendGraph, bell, iter_rgs, rgs_array, split_range
from .valuation import Model, key_matrix

CHUNK = 16384
_ARRAY_LIMIT = 5_000_000


@lru_cache(maxsize=4)
def _cached_rgs(n: int) -> np.ndarray:
    a = rgs_array(n)
    a.setflags(write=False)
    return a


def label_chunks(n: int, start: int, stop: int, size: int = CHUNK) -> Iterator[tuple[int, np.ndarray]]:
    """Yield ``(offset, labels)`` blocks of restricted-growth rows in ``[start, stop)``."""
    if bell(n) <= _ARRAY_LIMIT:
        arr = _cached_rgs(n)
        for lo in range(start, stop, size):
            yield lo, arr[lo : min(lo + size, stop)]
        return
    it = iter_rgs(n, start, stop)
    lo = start
    while lo < stop:
        hi = min(lo + size, stop)
        block = np.array([next(it) for _ in range(hi - lo)], dtype=np.int8)
        yield lo, block
        lo = hi


@lru_cache(maxsize=8)
def partition_keys(g: FriendGraph, model: Model) -> np.ndarray:
    """Preference keys of every partition of ``g``'s players, in enumeration order."""
    parts = [key_matrix(g, labels, model) for _, labels in label_chunks(g.n, 0, bell(g.n))]
    out = np.concatenate(parts)
    out.setflags(write=False)
    return out


def subset_chunks(n: int, start: int, stop: int, size: int = CHUNK) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Yield ``(masks, membership)`` for subset masks in ``[start, stop)``."""
    shifts = np.arange(n, dtype=np.int64)
    for lo in range(start, stop, size):
        masks = np.arange(lo, min(lo + size, stop), dtype=np.int64)
        yield masks, ((masks[:, None] >> shifts) & 1).astype(bool)


def first_hit(task: Callable, args: tuple, total: int, workers: int = 1, start: int = 0):
    """Run ``task(*args, lo, hi)`` over a split of ``[start, total)``.

    ``task`` returns ``None`` or a result whose first element is the index
    where it stopped. The hit with the smallest index wins, so the outcome
    does not depend on the number of workers.
    """
    if workers <= 1:
        return task(*args, start, total)
    ranges = [(start + lo, start + hi) for lo, hi in split_range(total - start, workers * 4)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(task, *args, lo, hi) for lo, hi in ranges]
        hits = [f.result() for f in futures]
    hits = [h for h in hits if h is not None]
    return min(hits, key=lambda h: h[0]) if hits else None
