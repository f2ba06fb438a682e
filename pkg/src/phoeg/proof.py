"""Proof-by-transformation analysis on a filtered metagraph.

A proof is valid when the filtered metagraph (arcs that strictly improve the
studied invariant while preserving the constrained ones) is acyclic and all
of its sinks are extremal graphs.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from . import invariants
from . import transform as tr
from .errors import MissingColumnError
from .graph6 import decode
from .metagraph import Metagraph


@dataclass
class FilteredView:
    """Arcs of a metagraph kept by an invariant filter, as adjacency over signature ids."""

    mg: Metagraph
    invariant: str
    direction: str
    preserve: tuple[str, ...]
    arcs: np.ndarray
    out: list[list[tuple[int, int]]] = field(repr=False)

    @property
    def signatures(self) -> list[str]:
        return self.mg.signatures

    def kept(self) -> int:
        return int(len(self.arcs))


def invariant_values(mg: Metagraph, names: Iterable[str], store=None) -> dict[str, np.ndarray]:
    """Per-signature-id values, read from ``store`` columns when present, else computed."""
    out = {}
    graphs = None
    for name in dict.fromkeys(names):
        inv = invariants.get(name)
        col = None
        if store is not None and store.has(name, mg.cls):
            col = store.values(name, mg.cls)
            missing = [s for s in mg.signatures if s not in col]
            if missing:
                raise MissingColumnError(f"column {name!r} ({mg.cls}) lacks {len(missing)} metagraph vertices, e.g. {missing[0]}")
            out[name] = np.array([col[s] for s in mg.signatures], dtype=np.int64)
            continue
        if graphs is None:
            graphs = [decode(s) for s in mg.signatures]
        out[name] = np.array([inv(g) for g in graphs], dtype=np.int64)
    return out


def filtered_metagraph(
    mg: Metagraph,
    invariant: str,
    direction: str = "increase",
    preserve: Iterable[str] = (),
    values: Mapping[str, np.ndarray] | None = None,
    store=None,
) -> FilteredView:
    """Keep arcs (G, H) with a strictly better ``invariant`` at H and equal ``preserve`` values."""
    if direction not in ("increase", "decrease"):
        raise ValueError(f"direction must be 'increase' or 'decrease', got {direction!r}")
    preserve = tuple(preserve)
    needed = (invariant,) + preserve
    if values is None:
        values = invariant_values(mg, needed, store)
    else:
        for name in needed:
            if name not in values:
                raise MissingColumnError(f"no values supplied for invariant {name!r}")
    arcs = mg.arcs
    src = arcs["src"].astype(np.int64)
    dst = arcs["dst"].astype(np.int64)
    v = values[invariant]
    keep = v[dst] > v[src] if direction == "increase" else v[dst] < v[src]
    for name in preserve:
        p = values[name]
        keep &= p[dst] == p[src]
    kept = arcs[keep]
    out: list[list[tuple[int, int]]] = [[] for _ in mg.signatures]
    for s, t, d in zip(kept["src"].tolist(), kept["tid"].tolist(), kept["dst"].tolist()):
        out[s].append((t, d))
    return FilteredView(mg, invariant, direction, preserve, kept, out)


@dataclass
class ProofReport:
    acyclic: bool
    cycle_witness: list[str] | None
    sinks: list[str]
    counterexamples: list[str]
    distance: dict[str, int | None]
    usage: dict[str, int]
    available: dict[str, int]
    cover: list[str]

    def to_json(self) -> dict:
        return {
            "acyclic": self.acyclic,
            "cycle_witness": self.cycle_witness,
            "sinks": self.sinks,
            "counterexamples": self.counterexamples,
            "distance_to_extremal": self.distance,
            "unreachable": sorted(s for s, d in self.distance.items() if d is None),
            "first_step_usage": self.usage,
            "available_arcs": self.available,
            "greedy_transformation_cover": self.cover,
        }

    def text(self) -> str:
        lines = [
            f"acyclic: {'yes' if self.acyclic else 'no'}",
            f"sinks: {len(self.sinks)}",
            f"counterexamples (non-extremal sinks): {len(self.counterexamples)}",
        ]
        lines += [f"  {s}" for s in self.counterexamples]
        finite = [d for d in self.distance.values() if d is not None]
        if finite:
            lines.append(f"longest shortest improving path: {max(finite)}")
        lines.append(f"graphs with no improving path to an extremal graph: {sum(d is None for d in self.distance.values())}")
        lines.append("first-step transformation usage: " + ", ".join(f"{k}={v}" for k, v in self.usage.items()))
        lines.append("greedy transformation cover: " + (", ".join(self.cover) or "(none)"))
        return "\n".join(lines) + "\n"


def _find_cycle(n: int, succ: list[set[int]]) -> list[int] | None:
    color = [0] * n
    parent = [-1] * n
    for root in range(n):
        if color[root]:
            continue
        stack = [(root, iter(succ[root]))]
        color[root] = 1
        while stack:
            v, it = stack[-1]
            for w in it:
                if color[w] == 0:
                    color[w] = 1
                    parent[w] = v
                    stack.append((w, iter(succ[w])))
                    break
                if color[w] == 1:
                    cyc = [w]
                    x = v
                    while x != w:
                        cyc.append(x)
                        x = parent[x]
                    return cyc[::-1]
            else:
                color[v] = 2
                stack.pop()
    return None


def proof_report(view: FilteredView, extremal: Iterable[str]) -> ProofReport:
    sigs = view.signatures
    n = len(sigs)
    ext = {view.mg.id_of(s) for s in extremal}
    succ = [set(d for _, d in arcs if d != s) for s, arcs in enumerate(view.out)]
    cycle = _find_cycle(n, succ)
    sinks = [i for i in range(n) if not succ[i]]

    pred: list[list[int]] = [[] for _ in range(n)]
    for s in range(n):
        for d in succ[s]:
            pred[d].append(s)
    dist: list[int | None] = [None] * n
    queue = deque(sorted(ext))
    for e in ext:
        dist[e] = 0
    while queue:
        v = queue.popleft()
        for u in pred[v]:
            if dist[u] is None:
                dist[u] = dist[v] + 1
                queue.append(u)

    usage: Counter = Counter()
    for s in range(n):
        d = dist[s]
        if not d:
            continue
        steps = sorted((t, sigs[w]) for t, w in view.out[s] if dist[w] == d - 1)
        usage[tr.get(steps[0][0]).name] += 1

    available = Counter(tr.get(t).name for t in view.arcs["tid"].tolist())
    names = view.mg.transformations

    # greedy set cover: every non-extremal graph with an improving arc needs one
    todo = {s for s in range(n) if s not in ext and view.out[s]}
    covers = {tr.get(name).tid: {s for s in todo if any(t == tr.get(name).tid for t, _ in view.out[s])} for name in names}
    cover = []
    while todo:
        tid = max(covers, key=lambda t: (len(covers[t] & todo), -t))
        gain = covers[tid] & todo
        if not gain:
            break
        cover.append(tr.get(tid).name)
        todo -= gain

    return ProofReport(
        acyclic=cycle is None,
        cycle_witness=[sigs[i] for i in cycle] if cycle else None,
        sinks=[sigs[i] for i in sinks],
        counterexamples=[sigs[i] for i in sinks if i not in ext],
        distance={sigs[i]: dist[i] for i in range(n)},
        usage={name: usage.get(name, 0) for name in names},
        available={name: available.get(name, 0) for name in names},
        cover=cover,
    )
