"""Isomorph-free exhaustive generation of all graphs of a given order.

Order ``n`` representatives come from the order ``n - 1`` ones: each parent is
extended by a new vertex joined to every subset of its vertices, each child is
canonicalized to a packed key (upper-triangle bits in graph6 column order),
and keys are deduplicated with ``numpy.unique``.  Because the packed key has
the same bit order as graph6, sorting keys sorts signatures, so the output
stream is in lexicographic signature order.

Memory: order 9 holds ~275k keys; order 10 ~12M keys (~100 MB as uint64),
merged chunk by chunk so intermediate duplicates never pile up.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterator

import numpy as np

from .canon import kernel
from .errors import OrderError
from .graph import Graph

MAX_ENUM_ORDER = 10
_CHUNK = 1 << 22


def unpack_key(n: int, key: int) -> Graph:
    rows = [0] * n
    k = n * (n - 1) // 2 - 1
    for j in range(1, n):
        for i in range(j):
            if key >> k & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k -= 1
    return Graph._trusted(n, rows)


def key_to_graph6(n: int, key: int) -> str:
    nbits = n * (n - 1) // 2
    pad = (-nbits) % 6
    key <<= pad
    groups = (nbits + pad) // 6
    chars = [chr(63 + n)]
    for g in range(groups - 1, -1, -1):
        chars.append(chr(63 + (key >> (6 * g) & 63)))
    return "".join(chars)


def _augment_batch(n: int, keys: np.ndarray) -> np.ndarray:
    parts = [kernel.augment(n - 1, unpack_key(n - 1, int(k)).rows) for k in keys]
    if not parts:
        return np.empty(0, dtype=np.uint64)
    return np.unique(np.concatenate(parts))


def _merge(acc: np.ndarray | None, part: np.ndarray) -> np.ndarray:
    if acc is None:
        return part
    return np.union1d(acc, part)


_cache: dict[int, np.ndarray] = {}


def _keys(n: int, workers: int = 1) -> np.ndarray:
    if n in _cache:
        return _cache[n]
    if n == 1:
        keys = np.zeros(1, dtype=np.uint64)
    else:
        parents = _keys(n - 1, workers)
        acc = None
        if workers > 1 and n > 7:
            chunks = np.array_split(parents, workers * 4)
            with ProcessPoolExecutor(max_workers=workers) as pool:
                for part in pool.map(_augment_batch, [n] * len(chunks), chunks):
                    acc = _merge(acc, part)
        else:
            step = max(1, _CHUNK >> (n - 1))
            for start in range(0, len(parents), step):
                acc = _merge(acc, _augment_batch(n, parents[start:start + step]))
        keys = acc
    _cache[n] = keys
    return keys


def canonical_keys(n: int, workers: int = 1) -> np.ndarray:
    """Sorted packed canonical keys of all graphs of order ``n``.

    Results are memoised per process; the output does not depend on
    ``workers``.
    """
    check_order(n)
    return _keys(n, workers)


def check_order(n: int) -> None:
    if not 1 <= n <= MAX_ENUM_ORDER:
        raise OrderError(f"enumeration supports orders 1..{MAX_ENUM_ORDER}, got {n}")


def enumerate_all(
    n: int,
    predicate: Callable[[Graph], bool] | None = None,
    workers: int = 1,
) -> Iterator[Graph]:
    """Yield one canonical representative per isomorphism class of order ``n``.

    Output is in lexicographic signature order.  ``predicate`` filters the
    stream after generation (e.g. connected graphs only).
    """
    for key in canonical_keys(n, workers).tolist():
        g = unpack_key(n, key)
        if predicate is None or predicate(g):
            yield g


def enumerate_signatures(n: int, predicate: Callable[[Graph], bool] | None = None, workers: int = 1) -> Iterator[str]:
    if predicate is None:
        for key in canonical_keys(n, workers).tolist():
            yield key_to_graph6(n, key)
    else:
        for key in canonical_keys(n, workers).tolist():
            if predicate(unpack_key(n, key)):
                yield key_to_graph6(n, key)


def count(n: int, predicate: Callable[[Graph], bool] | None = None) -> int:
    if predicate is None:
        return len(canonical_keys(n))
    return sum(1 for _ in enumerate_all(n, predicate))


def default_workers() -> int:
    return len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else (os.cpu_count() or 1)
