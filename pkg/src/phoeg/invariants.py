"""Exact integer graph invariants and the name registry used by stores and the CLI.

Every value is an ``int`` (booleans are stored as 0/1).  Invariants that are
infinite on some graphs (eccentricity-based ones on disconnected graphs,
girth on forests) raise :class:`UndefinedInvariantError` instead of returning
a sentinel.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .errors import UndefinedInvariantError, UnknownInvariantError
from .graph import Graph, bits

UNREACHABLE = None


def _bfs_layers(g: Graph, v: int) -> list[int]:
    """Frontier masks of a BFS from ``v``; layer ``k`` holds vertices at distance ``k``."""
    seen = 1 << v
    frontier = seen
    layers = [frontier]
    rows = g.rows
    while True:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= rows[low.bit_length() - 1]
            f ^= low
        nxt &= ~seen
        if not nxt:
            return layers
        seen |= nxt
        layers.append(nxt)
        frontier = nxt


def distances(g: Graph) -> list[list[int | None]]:
    """Hop-distance matrix; unreachable pairs hold ``None``."""
    out = []
    for v in range(g.n):
        row: list[int | None] = [UNREACHABLE] * g.n
        for d, layer in enumerate(_bfs_layers(g, v)):
            for u in bits(layer):
                row[u] = d
        out.append(row)
    return out


def is_connected(g: Graph) -> bool:
    reached = 0
    for layer in _bfs_layers(g, 0):
        reached |= layer
    return reached == (1 << g.n) - 1


def components(g: Graph) -> list[int]:
    """Vertex masks of the connected components, ordered by smallest vertex."""
    left = (1 << g.n) - 1
    comps = []
    while left:
        v = (left & -left).bit_length() - 1
        comp = 0
        for layer in _bfs_layers(g, v):
            comp |= layer
        comps.append(comp)
        left &= ~comp
    return comps


def eccentricities(g: Graph) -> list[int]:
    full = (1 << g.n) - 1
    out = []
    for v in range(g.n):
        layers = _bfs_layers(g, v)
        reached = 0
        for layer in layers:
            reached |= layer
        if reached != full:
            raise UndefinedInvariantError("eccentricity is undefined on a disconnected graph")
        out.append(len(layers) - 1)
    return out


def eccentricity(g: Graph, v: int) -> int:
    layers = _bfs_layers(g, v)
    reached = 0
    for layer in layers:
        reached |= layer
    if reached != (1 << g.n) - 1:
        raise UndefinedInvariantError("eccentricity is undefined on a disconnected graph")
    return len(layers) - 1


def eci(g: Graph) -> int:
    """Eccentric connectivity index: sum over vertices of eccentricity times degree."""
    return sum(e * d for e, d in zip(eccentricities(g), g.degrees()))


def diameter(g: Graph) -> int:
    return max(eccentricities(g))


def radius(g: Graph) -> int:
    return min(eccentricities(g))


def num_vertices(g: Graph) -> int:
    return g.n


def num_edges(g: Graph) -> int:
    return g.num_edges


def degree_sequence(g: Graph) -> tuple[int, ...]:
    """Degrees in non-increasing order."""
    return tuple(sorted(g.degrees(), reverse=True))


def min_degree(g: Graph) -> int:
    return min(g.degrees())


def max_degree(g: Graph) -> int:
    return max(g.degrees())


def is_tree(g: Graph) -> bool:
    return g.num_edges == g.n - 1 and is_connected(g)


def clique_number(g: Graph) -> int:
    """Size of a largest clique (pivoting Bron-Kerbosch with a size bound)."""
    rows = g.rows
    best = 0

    def expand(size: int, cand: int, excl: int) -> None:
        nonlocal best
        if not cand:
            if not excl and size > best:
                best = size
            return
        if size + cand.bit_count() <= best:
            return
        # pivot maximizing |cand & N(u)| keeps the branching small
        pivot_nb = max((rows[u] for u in bits(cand | excl)), key=lambda r: (r & cand).bit_count())
        branch = cand & ~pivot_nb
        while branch:
            low = branch & -branch
            v = low.bit_length() - 1
            expand(size + 1, cand & rows[v], excl & rows[v])
            cand &= ~low
            excl |= low
            branch ^= low
            if size + cand.bit_count() <= best:
                return

    expand(0, (1 << g.n) - 1, 0)
    return best


def independence_number(g: Graph) -> int:
    return clique_number(g.complement())


def _greedy_colors(g: Graph) -> int:
    """DSATUR colouring size: an upper bound on the chromatic number."""
    n = g.n
    color = [-1] * n
    used = 0
    for _ in range(n):
        best_v, best_key = -1, None
        for v in range(n):
            if color[v] >= 0:
                continue
            sat = len({color[u] for u in bits(g.rows[v]) if color[u] >= 0})
            key = (sat, g.degree(v))
            if best_key is None or key > best_key:
                best_v, best_key = v, key
        taken = {color[u] for u in bits(g.rows[best_v])}
        c = 0
        while c in taken:
            c += 1
        color[best_v] = c
        used = max(used, c + 1)
    return used


def _colorable(g: Graph, k: int) -> bool:
    n = g.n
    color = [-1] * n
    order = sorted(range(n), key=lambda v: -g.degree(v))

    def place(i: int) -> bool:
        if i == n:
            return True
        v = order[i]
        taken = {color[u] for u in bits(g.rows[v])}
        top = max(color) + 1  # symmetry break: at most one fresh colour
        for c in range(min(k, top + 1)):
            if c not in taken:
                color[v] = c
                if place(i + 1):
                    return True
                color[v] = -1
        return False

    return place(0)


def chromatic_number(g: Graph) -> int:
    lower = max(clique_number(g), 1)
    upper = _greedy_colors(g)
    for k in range(lower, upper):
        if _colorable(g, k):
            return k
    return upper


def girth(g: Graph) -> int:
    """Length of a shortest cycle; undefined (error) on forests."""
    best = None
    rows = g.rows
    for s in range(g.n):
        dist = {s: 0}
        parent = {s: -1}
        queue = [s]
        for v in queue:
            for u in bits(rows[v]):
                if u not in dist:
                    dist[u] = dist[v] + 1
                    parent[u] = v
                    queue.append(u)
                elif parent[v] != u:
                    length = dist[u] + dist[v] + 1
                    if best is None or length < best:
                        best = length
    if best is None:
        raise UndefinedInvariantError("girth is undefined on an acyclic graph")
    return best


def matching_number(g: Graph) -> int:
    """Maximum matching size by exhaustive recursion over the lowest unmatched vertex."""
    rows = g.rows

    @lru_cache(maxsize=None)
    def best(mask: int) -> int:
        if not mask:
            return 0
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        out = best(rest)
        nb = rows[v] & rest
        while nb:
            ub = nb & -nb
            out = max(out, 1 + best(rest ^ ub))
            nb ^= ub
        return out

    return best((1 << g.n) - 1)


@dataclass(frozen=True)
class Invariant:
    name: str
    func: Callable[[Graph], int]
    needs_connected: bool = False
    description: str = ""

    def __call__(self, g: Graph) -> int:
        return int(self.func(g))


REGISTRY: dict[str, Invariant] = {
    inv.name: inv
    for inv in [
        Invariant("num_vertices", num_vertices, description="order n"),
        Invariant("num_edges", num_edges, description="size m"),
        Invariant("eci", eci, True, "eccentric connectivity index"),
        Invariant("diameter", diameter, True, "largest eccentricity"),
        Invariant("radius", radius, True, "smallest eccentricity"),
        Invariant("is_connected", is_connected, description="1 if connected"),
        Invariant("is_tree", is_tree, description="1 if a tree"),
        Invariant("clique_number", clique_number, description="largest clique"),
        Invariant("chromatic_number", chromatic_number, description="fewest colours of a proper colouring"),
        Invariant("independence_number", independence_number, description="largest independent set"),
        Invariant("girth", girth, description="shortest cycle; undefined on forests"),
        Invariant("min_degree", min_degree, description="smallest degree"),
        Invariant("max_degree", max_degree, description="largest degree"),
        Invariant("matching_number", matching_number, description="largest matching"),
    ]
}


def get(name: str) -> Invariant:
    try:
        return REGISTRY[name]
    except KeyError:
        raise UnknownInvariantError(f"unknown invariant {name!r}; known: {', '.join(sorted(REGISTRY))}") from None


def compute(name: str, g: Graph) -> int:
    return get(name)(g)
