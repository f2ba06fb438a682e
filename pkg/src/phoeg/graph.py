"""Dense undirected simple graphs stored as adjacency bit rows.

A :class:`Graph` holds ``n`` and a tuple of ``n`` integers; bit ``j`` of
``rows[i]`` is set iff ``{i, j}`` is an edge.  Instances are immutable and
hashable, so they can be used as dictionary keys and shared between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import OrderError

MAX_ORDER = 62


@dataclass(frozen=True, slots=True)
class Graph:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_ORDER:
            raise OrderError(f"graph order must be in 1..{MAX_ORDER}, got {self.n}")
        if len(self.rows) != self.n:
            raise ValueError(f"expected {self.n} adjacency rows, got {len(self.rows)}")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.rows):
            if row & ~full or row >> i & 1:
                raise ValueError(f"row {i} has a loop or an out-of-range neighbour")
            r = row
            while r:
                low = r & -r
                j = low.bit_length() - 1
                if not self.rows[j] >> i & 1:
                    raise ValueError(f"adjacency is not symmetric at ({i}, {j})")
                r ^= low

    # construction helpers

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for a, b in edges:
            if a == b:
                raise ValueError(f"loop at vertex {a}")
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"edge ({a}, {b}) out of range for order {n}")
            rows[a] |= 1 << b
            rows[b] |= 1 << a
        return cls(n, tuple(rows))

    @classmethod
    def _trusted(cls, n: int, rows: Sequence[int]) -> Graph:
        """Build without the symmetry scan; callers guarantee validity."""
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "rows", tuple(rows))
        return g

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> Graph:
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << i) for i in range(n)))

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def cycle(cls, n: int) -> Graph:
        if n < 3:
            raise ValueError("a cycle needs at least 3 vertices")
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def star(cls, leaves: int) -> Graph:
        return cls.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])

    @classmethod
    def complete_bipartite(cls, p: int, q: int) -> Graph:
        return cls.from_edges(p + q, [(i, p + j) for i in range(p) for j in range(q)])

    # queries

    def has_edge(self, a: int, b: int) -> bool:
        return bool(self.rows[a] >> b & 1)

    def neighbors(self, v: int) -> list[int]:
        return _bits(self.rows[v])

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    @property
    def num_edges(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges ``(a, b)`` with ``a < b`` in lexicographic order."""
        for a, row in enumerate(self.rows):
            for b in _bits(row >> (a + 1) << (a + 1)):
                yield a, b

    def non_edges(self) -> Iterator[tuple[int, int]]:
        for a in range(self.n):
            for b in range(a + 1, self.n):
                if not self.rows[a] >> b & 1:
                    yield a, b

    # derived graphs

    def permute(self, perm: Sequence[int]) -> Graph:
        """Relabel vertex ``v`` as ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("perm is not a permutation of the vertex set")
        rows = [0] * self.n
        for v, row in enumerate(self.rows):
            img = 0
            for u in _bits(row):
                img |= 1 << perm[u]
            rows[perm[v]] = img
        return Graph._trusted(self.n, rows)

    def induced(self, vertices: Sequence[int]) -> Graph:
        """Induced subgraph on ``vertices``, relabelled ``0..k-1`` in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        rows = []
        for v in vertices:
            r = 0
            for u in _bits(self.rows[v]):
                i = index.get(u)
                if i is not None:
                    r |= 1 << i
            rows.append(r)
        return Graph._trusted(len(vertices), rows)

    def delete_vertex(self, v: int) -> Graph:
        return self.induced([u for u in range(self.n) if u != v])

    def edit(self, remove: Iterable[tuple[int, int]] = (), add: Iterable[tuple[int, int]] = ()) -> Graph:
        rows = list(self.rows)
        for a, b in remove:
            rows[a] &= ~(1 << b)
            rows[b] &= ~(1 << a)
        for a, b in add:
            if a == b:
                raise ValueError(f"loop at vertex {a}")
            rows[a] |= 1 << b
            rows[b] |= 1 << a
        return Graph._trusted(self.n, rows)

    def complement(self) -> Graph:
        full = (1 << self.n) - 1
        return Graph._trusted(self.n, [full ^ r ^ (1 << i) for i, r in enumerate(self.rows)])

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges())})"


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    return _bits(mask)
