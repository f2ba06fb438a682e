"""Substructure matching and minimal obstruction sets of hereditary graph classes."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

from .canon import signature
from .enumerate import enumerate_all
from .errors import ClosureError, UnknownClassError
from .graph import Graph, bits
from .graph6 import decode
from .invariants import components, is_connected, is_tree

RELATIONS = ("subgraph", "induced")
_RELATION_ALIASES = {"induced-subgraph": "induced", "induced_subgraph": "induced"}


def relation_name(relation: str) -> str:
    rel = _RELATION_ALIASES.get(relation, relation)
    if rel not in RELATIONS:
        raise ValueError(f"relation must be one of {', '.join(RELATIONS)}, got {relation!r}")
    return rel


def _match_order(pattern: Graph) -> list[int]:
    """Pattern vertices ordered so each one (after the first of a component) has a matched neighbour."""
    left = set(range(pattern.n))
    order: list[int] = []
    placed = 0
    while left:
        frontier = [v for v in left if pattern.rows[v] & placed]
        pool = frontier or list(left)
        v = max(pool, key=lambda u: ((pattern.rows[u] & placed).bit_count(), pattern.degree(u), -u))
        order.append(v)
        placed |= 1 << v
        left.discard(v)
    return order


def embeddings(host: Graph, pattern: Graph, relation: str = "subgraph") -> Iterator[list[int]]:
    """Yield maps ``pattern vertex -> host vertex`` that embed ``pattern`` in ``host``.

    Backtracking with VF2-style feasibility: adjacency to already mapped
    vertices must be preserved (and non-adjacency too for induced
    embeddings), the host degree must cover the pattern degree, and the
    unmatched neighbourhood of the candidate must be at least as large as the
    pattern vertex's unmatched neighbourhood.
    """
    rel = relation_name(relation)
    induced = rel == "induced"
    if pattern.n > host.n:
        return
    order = _match_order(pattern)
    pdeg = pattern.degrees()
    hdeg = host.degrees()
    mapping = [-1] * pattern.n
    host_full = (1 << host.n) - 1

    def extend(i: int, used: int, pmask: int) -> Iterator[list[int]]:
        if i == pattern.n:
            yield list(mapping)
            return
        p = order[i]
        prow = pattern.rows[p]
        must = host_full & ~used
        for u in bits(prow & pmask):
            must &= host.rows[mapping[u]]
        if induced:
            for u in bits(pmask & ~prow):
                must &= ~host.rows[mapping[u]]
        p_unmatched = (prow & ~pmask & ~(1 << p)).bit_count()
        for c in bits(must):
            if hdeg[c] < pdeg[p]:
                continue
            if (host.rows[c] & ~used).bit_count() < p_unmatched:
                continue
            mapping[p] = c
            yield from extend(i + 1, used | (1 << c), pmask | (1 << p))
            mapping[p] = -1

    yield from extend(0, 0, 0)


def has_substructure(host: Graph, pattern: Graph, relation: str = "subgraph") -> bool:
    if pattern.n > host.n or pattern.num_edges > host.num_edges:
        return False
    return next(embeddings(host, pattern, relation), None) is not None


# built-in classes


def is_forest(g: Graph) -> bool:
    return g.num_edges == g.n - len(components(g))


def is_bipartite(g: Graph) -> bool:
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = [s]
        for v in queue:
            for u in bits(g.rows[v]):
                if color[u] < 0:
                    color[u] = 1 - color[v]
                    queue.append(u)
                elif color[u] == color[v]:
                    return False
    return True


def is_triangle_free(g: Graph) -> bool:
    return all(not (g.rows[a] & g.rows[b]) for a, b in g.edges())


def is_chordal(g: Graph) -> bool:
    """Maximum cardinality search, then check the reverse order is a perfect elimination order."""
    n = g.n
    weight = [0] * n
    numbered = 0
    order = []
    for _ in range(n):
        v = max((u for u in range(n) if not numbered >> u & 1), key=lambda u: (weight[u], -u))
        order.append(v)
        numbered |= 1 << v
        for u in bits(g.rows[v] & ~numbered):
            weight[u] += 1
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        earlier = [u for u in bits(g.rows[v]) if pos[u] < pos[v]]
        if len(earlier) < 2:
            continue
        parent = max(earlier, key=pos.__getitem__)
        rest = 0
        for u in earlier:
            if u != parent:
                rest |= 1 << u
        if rest & ~g.rows[parent]:
            return False
    return True


def is_cograph(g: Graph) -> bool:
    """P4-free: every induced subgraph on 2+ vertices is disconnected or has a disconnected complement."""
    if g.n == 1:
        return True
    comps = components(g)
    if len(comps) == 1:
        h = g.complement()
        comps = components(h)
        if len(comps) == 1:
            return False
        return all(is_cograph(h.induced(bits(c))) for c in comps)
    return all(is_cograph(g.induced(bits(c))) for c in comps)


def is_split(g: Graph) -> bool:
    """Degree-sequence test: vertices split into a clique and an independent set."""
    d = sorted(g.degrees(), reverse=True)
    m = 0
    for i, di in enumerate(d, start=1):
        if di >= i - 1:
            m = i
    return sum(d[:m]) == m * (m - 1) + sum(d[m:])


def is_claw_free(g: Graph) -> bool:
    for v in range(g.n):
        nb = bits(g.rows[v])
        for i, a in enumerate(nb):
            for j in range(i + 1, len(nb)):
                b = nb[j]
                if g.rows[a] >> b & 1:
                    continue
                for c in nb[j + 1:]:
                    if not g.rows[a] >> c & 1 and not g.rows[b] >> c & 1:
                        return False
    return True


def is_c4_free(g: Graph) -> bool:
    """No 4-cycle as a (not necessarily induced) subgraph."""
    for a in range(g.n):
        for b in range(a + 1, g.n):
            if (g.rows[a] & g.rows[b]).bit_count() >= 2:
                return False
    return True


_CLASSES: dict[str, Callable[[Graph], bool]] = {
    "connected": is_connected,
    "tree": is_tree,
    "forest": is_forest,
    "bipartite": is_bipartite,
    "triangle-free": is_triangle_free,
    "chordal": is_chordal,
    "cograph": is_cograph,
    "split": is_split,
    "claw-free": is_claw_free,
    "C4-free": is_c4_free,
}


def builtin_classes() -> dict[str, Callable[[Graph], bool]]:
    return dict(_CLASSES)


def get_class(name: str) -> Callable[[Graph], bool]:
    try:
        return _CLASSES[name]
    except KeyError:
        raise UnknownClassError(f"unknown class {name!r}; known: {', '.join(_CLASSES)}") from None


def one_step_deletions(g: Graph, relation: str) -> list[Graph]:
    """Graphs one vertex deletion (and, for ``subgraph``, one edge deletion) below ``g``."""
    out = [g.delete_vertex(v) for v in range(g.n)] if g.n > 1 else []
    if relation_name(relation) == "subgraph":
        out.extend(g.edit(remove=[e]) for e in g.edges())
    return out


@dataclass(frozen=True)
class ObstructionSet:
    relation: str
    class_name: str
    bound: int
    obstructions: tuple[str, ...]

    def graphs(self) -> list[Graph]:
        return [decode(s) for s in self.obstructions]


def minimal_obstructions(
    predicate: Callable[[Graph], bool] | str,
    relation: str,
    max_n: int,
    class_name: str | None = None,
) -> ObstructionSet:
    """Minimal graphs of order <= ``max_n`` outside the class.

    Raises :class:`ClosureError` when a member of the class has a one-step
    substructure outside it, since then no obstruction set can describe it.
    """
    rel = relation_name(relation)
    if isinstance(predicate, str):
        class_name = class_name or predicate
        predicate = get_class(predicate)
    class_name = class_name or getattr(predicate, "__name__", "custom")
    member: dict[str, bool] = {}

    def inside(h: Graph) -> bool:
        sig = signature(h)
        val = member.get(sig)
        if val is None:
            val = member[sig] = bool(predicate(h))
        return val

    found = []
    for n in range(1, max_n + 1):
        for g in enumerate_all(n):
            sig = signature(g)
            if inside(g):
                for h in one_step_deletions(g, rel):
                    if not inside(h):
                        raise ClosureError(
                            f"class {class_name!r} is not closed under {rel} substructures: "
                            f"{sig} is in the class but its substructure {signature(h)} is not",
                            member=sig,
                            substructure=signature(h),
                        )
            elif all(inside(h) for h in one_step_deletions(g, rel)):
                found.append((n, sig))
    found.sort()
    return ObstructionSet(rel, class_name, max_n, tuple(s for _, s in found))


__all__ = [
    "ObstructionSet",
    "RELATIONS",
    "builtin_classes",
    "embeddings",
    "get_class",
    "has_substructure",
    "minimal_obstructions",
    "one_step_deletions",
]
