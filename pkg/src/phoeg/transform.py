"""The eight local edge-edit transformations.

Each transformation is described by its parameter roles, a precondition
check, and the edge edit it performs.  ``applications`` lists every valid
parameter tuple exactly once, using one canonical tuple per group of
tuples that describe the same edit:

* ``remove_edge (a, b)``, ``add_edge (a, b)``: ``a < b``.
* ``rotation (a, b, c)``, ``slide (a, b, c)``: roles are asymmetric, every tuple counts.
* ``move_edge (a, b, c, d)``: ``a < b`` and ``c < d``.
* ``detour (a, b, c)``, ``shortcut (a, b, c)``: ``a < b`` (``c`` is the middle vertex).
* ``two_opt (a, b, c, d)``: the lexicographically least of
  ``(a,b,c,d), (b,a,d,c), (c,d,a,b), (d,c,b,a)``, which all perform the same edit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

from .errors import ParameterError
from .graph import Graph, bits

Edit = tuple[list[tuple[int, int]], list[tuple[int, int]]]


@dataclass(frozen=True)
class Transformation:
    tid: int
    name: str
    roles: tuple[str, ...]
    m_delta: int
    check: Callable[[Graph, tuple[int, ...]], None]
    edit: Callable[[tuple[int, ...]], Edit]
    applications: Callable[[Graph], Iterator[tuple[int, ...]]]

    @property
    def arity(self) -> int:
        return len(self.roles)


def _fail(name: str, cond: str) -> None:
    raise ParameterError(f"{name}: precondition {cond} does not hold")


def _distinct(name: str, g: Graph, params: tuple[int, ...]) -> None:
    for v in params:
        if not 0 <= v < g.n:
            raise ParameterError(f"{name}: vertex {v} out of range for order {g.n}")


def _require(name: str, ok: bool, cond: str) -> None:
    if not ok:
        _fail(name, cond)


# remove_edge


def _check_remove(g, p):
    _distinct("remove_edge", g, p)
    a, b = p
    _require("remove_edge", a != b and g.has_edge(a, b), "ab in E")


def _apps_remove(g):
    yield from g.edges()


# add_edge


def _check_add(g, p):
    _distinct("add_edge", g, p)
    a, b = p
    _require("add_edge", a != b, "a != b")
    _require("add_edge", not g.has_edge(a, b), "ab not in E")


def _apps_add(g):
    yield from g.non_edges()


# rotation: remove ab, add ac


def _check_rotation(g, p):
    _distinct("rotation", g, p)
    a, b, c = p
    _require("rotation", a != b and a != c and b != c, "a, b, c distinct")
    _require("rotation", g.has_edge(a, b), "ab in E")
    _require("rotation", not g.has_edge(a, c), "ac not in E")


def _apps_rotation(g):
    for a in range(g.n):
        non = ((1 << g.n) - 1) & ~g.rows[a] & ~(1 << a)
        for b in bits(g.rows[a]):
            for c in bits(non):
                yield a, b, c


# move_edge: remove ab, add cd


def _check_move(g, p):
    _distinct("move_edge", g, p)
    a, b, c, d = p
    _require("move_edge", a != b and c != d, "a != b and c != d")
    _require("move_edge", g.has_edge(a, b), "ab in E")
    _require("move_edge", not g.has_edge(c, d), "cd not in E")
    _require("move_edge", {a, b} != {c, d}, "{a,b} != {c,d}")


def _apps_move(g):
    non = list(g.non_edges())
    for a, b in g.edges():
        for c, d in non:
            yield a, b, c, d


# detour: remove ab, add ac and cb


def _check_detour(g, p):
    _distinct("detour", g, p)
    a, b, c = p
    _require("detour", a != b and c != a and c != b, "a, b, c distinct")
    _require("detour", g.has_edge(a, b), "ab in E")
    _require("detour", not g.has_edge(c, a), "ca not in E")
    _require("detour", not g.has_edge(c, b), "cb not in E")


def _apps_detour(g):
    full = (1 << g.n) - 1
    for a, b in g.edges():
        for c in bits(full & ~g.rows[a] & ~g.rows[b] & ~(1 << a) & ~(1 << b)):
            yield a, b, c


# shortcut: remove ac and cb, add ab


def _check_shortcut(g, p):
    _distinct("shortcut", g, p)
    a, b, c = p
    _require("shortcut", a != b and c != a and c != b, "a, b, c distinct")
    _require("shortcut", g.has_edge(a, c), "ac in E")
    _require("shortcut", g.has_edge(c, b), "cb in E")
    _require("shortcut", not g.has_edge(a, b), "ab not in E")


def _apps_shortcut(g):
    for a, b in g.non_edges():
        for c in bits(g.rows[a] & g.rows[b]):
            yield a, b, c


# two_opt: remove ab and cd, add ac and bd


def _check_two_opt(g, p):
    _distinct("two_opt", g, p)
    a, b, c, d = p
    _require("two_opt", len({a, b, c, d}) == 4, "a, b, c, d distinct")
    _require("two_opt", g.has_edge(a, b), "ab in E")
    _require("two_opt", g.has_edge(c, d), "cd in E")
    _require("two_opt", not g.has_edge(a, c), "ac not in E")
    _require("two_opt", not g.has_edge(b, d), "bd not in E")


def two_opt_canonical(p: tuple[int, int, int, int]) -> tuple[int, int, int, int]:
    a, b, c, d = p
    return min((a, b, c, d), (b, a, d, c), (c, d, a, b), (d, c, b, a))


def _apps_two_opt(g):
    for a in range(g.n):
        for b in bits(g.rows[a]):
            for c in bits(((1 << g.n) - 1) & ~g.rows[a] & ~(1 << a) & ~(1 << b)):
                for d in bits(g.rows[c] & ~g.rows[b] & ~(1 << a) & ~(1 << b)):
                    p = (a, b, c, d)
                    if two_opt_canonical(p) == p:
                        yield p


# slide: remove ab, add ac, where bc in E


def _check_slide(g, p):
    _distinct("slide", g, p)
    a, b, c = p
    _require("slide", a != b and a != c and b != c, "a, b, c distinct")
    _require("slide", g.has_edge(a, b), "ab in E")
    _require("slide", g.has_edge(b, c), "bc in E")
    _require("slide", not g.has_edge(a, c), "ac not in E")


def _apps_slide(g):
    for a in range(g.n):
        for b in bits(g.rows[a]):
            for c in bits(g.rows[b] & ~g.rows[a] & ~(1 << a)):
                yield a, b, c


TRANSFORMATIONS: tuple[Transformation, ...] = (
    Transformation(0, "remove_edge", ("a", "b"), -1, _check_remove,
                   lambda p: ([(p[0], p[1])], []), _apps_remove),
    Transformation(1, "add_edge", ("a", "b"), +1, _check_add,
                   lambda p: ([], [(p[0], p[1])]), _apps_add),
    Transformation(2, "rotation", ("a", "b", "c"), 0, _check_rotation,
                   lambda p: ([(p[0], p[1])], [(p[0], p[2])]), _apps_rotation),
    Transformation(3, "move_edge", ("a", "b", "c", "d"), 0, _check_move,
                   lambda p: ([(p[0], p[1])], [(p[2], p[3])]), _apps_move),
    Transformation(4, "detour", ("a", "b", "c"), +1, _check_detour,
                   lambda p: ([(p[0], p[1])], [(p[0], p[2]), (p[2], p[1])]), _apps_detour),
    Transformation(5, "shortcut", ("a", "b", "c"), -1, _check_shortcut,
                   lambda p: ([(p[0], p[2]), (p[2], p[1])], [(p[0], p[1])]), _apps_shortcut),
    Transformation(6, "two_opt", ("a", "b", "c", "d"), 0, _check_two_opt,
                   lambda p: ([(p[0], p[1]), (p[2], p[3])], [(p[0], p[2]), (p[1], p[3])]), _apps_two_opt),
    Transformation(7, "slide", ("a", "b", "c"), 0, _check_slide,
                   lambda p: ([(p[0], p[1])], [(p[0], p[2])]), _apps_slide),
)

BY_NAME: dict[str, Transformation] = {t.name: t for t in TRANSFORMATIONS}
NAMES: tuple[str, ...] = tuple(t.name for t in TRANSFORMATIONS)


def get(tid: int | str) -> Transformation:
    if isinstance(tid, int):
        if 0 <= tid < len(TRANSFORMATIONS):
            return TRANSFORMATIONS[tid]
    elif tid in BY_NAME:
        return BY_NAME[tid]
    raise ParameterError(f"unknown transformation {tid!r}; known: {', '.join(NAMES)}")


def parse_subset(spec: str | None) -> list[Transformation]:
    """``"all"``/``None`` or a comma-separated list of names, in registry order."""
    if spec is None or spec == "all":
        return list(TRANSFORMATIONS)
    names = [s.strip() for s in spec.split(",") if s.strip()]
    chosen = {get(name).tid for name in names}
    return [t for t in TRANSFORMATIONS if t.tid in chosen]


def apply(g: Graph, tid: int | str, params: tuple[int, ...]) -> Graph:
    """Apply one transformation; raises :class:`ParameterError` on a failed precondition."""
    t = get(tid)
    params = tuple(params)
    if len(params) != t.arity:
        raise ParameterError(f"{t.name} takes {t.arity} parameters ({', '.join(t.roles)}), got {len(params)}")
    t.check(g, params)
    remove, add = t.edit(params)
    return g.edit(remove, add)


def apply_unchecked(g: Graph, t: Transformation, params: tuple[int, ...]) -> Graph:
    remove, add = t.edit(params)
    return g.edit(remove, add)


def enumerate_applications(g: Graph, tid: int | str) -> Iterator[tuple[tuple[int, ...], Graph]]:
    """Every valid canonical parameter tuple with the graph it produces."""
    t = get(tid)
    for params in t.applications(g):
        yield params, apply_unchecked(g, t, params)


def inverse(tid: int | str, params: tuple[int, ...]) -> tuple[str, tuple[int, ...]]:
    """A transformation call undoing ``(tid, params)`` up to isomorphism (in fact exactly)."""
    t = get(tid)
    p = tuple(params)
    if t.name == "remove_edge":
        return "add_edge", p
    if t.name == "add_edge":
        return "remove_edge", p
    if t.name == "rotation":
        return "rotation", (p[0], p[2], p[1])
    if t.name == "move_edge":
        return "move_edge", (p[2], p[3], p[0], p[1])
    if t.name == "detour":
        return "shortcut", p
    if t.name == "shortcut":
        return "detour", p
    if t.name == "two_opt":
        return "two_opt", (p[0], p[2], p[1], p[3])
    # slide(a, b, c) removes ab and adds ac; bc stays, so rotating back is slide(a, c, b)
    return "slide", (p[0], p[2], p[1])
