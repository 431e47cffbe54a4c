"""Small shared helpers: worker-bounded mapping and combinatorics."""

from __future__ import annotations

import os
from typing import Callable, Iterable, Sequence, TypeVar

T = TypeVar("T")
U = TypeVar("U")


def worker_count() -> int:
    """Worker bound from HILBEQ_THREADS (0 or unset = auto = serial)."""
    raw = os.environ.get("HILBEQ_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    return max(n, 0)


def parallel_map(fn: Callable[[T], U], items: Iterable[T]) -> list[U]:
    """Map over independent items, bounded by HILBEQ_THREADS.

    All mapped functions in this package are pure, so thread order never
    affects results; with 0/1 workers this is a plain serial map.
    """
    items = list(items)
    n = worker_count()
    if n <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def distinct_permutations(items: Sequence) -> list[tuple]:
    """All distinct permutations of a multiset, in lexicographic order."""
    pool = sorted(items)
    out: list[tuple] = []
    n = len(pool)
    if n == 0:
        return [()]
    cur = list(pool)
    while True:
        out.append(tuple(cur))
        # next lexicographic permutation
        i = n - 2
        while i >= 0 and cur[i] >= cur[i + 1]:
            i -= 1
        if i < 0:
            return out
        j = n - 1
        while cur[j] <= cur[i]:
            j -= 1
        cur[i], cur[j] = cur[j], cur[i]
        cur[i + 1 :] = reversed(cur[i + 1 :])
