"""Arc counts of the full metagraph under several counting conventions.

The published arc counts for orders 2..9 do not say how applications are
counted.  ``calibration_table`` reports every convention side by side and
names the one closest to the published figure for each order.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

from . import transform as tr
from .metagraph import Metagraph

PUBLISHED_ARCS = {1: 0, 2: 4, 3: 36, 4: 362, 5: 3188, 6: 34376, 7: 468936, 8: 10_143_824, 9: 380_814_904}

# Number of role orderings that describe the same edit as one canonical tuple.
ORDERING_FACTOR = {
    "remove_edge": 2,
    "add_edge": 2,
    "rotation": 1,
    "move_edge": 4,
    "detour": 2,
    "shortcut": 2,
    "two_opt": 4,
    "slide": 1,
}

CONVENTIONS = ("raw", "per-triple", "per-pair", "ordered")


def ordered_count(mg: Metagraph, self_arcs: bool = True) -> int:
    arcs = mg.arcs if self_arcs else mg.arcs[mg.arcs["src"] != mg.arcs["dst"]]
    counts = np.bincount(arcs["tid"], minlength=len(tr.TRANSFORMATIONS))
    return int(sum(int(counts[t.tid]) * ORDERING_FACTOR[t.name] for t in tr.TRANSFORMATIONS))


def counts(mg: Metagraph) -> dict[str, int]:
    out = {}
    for self_arcs in (True, False):
        suffix = "" if self_arcs else "/no-self"
        for mode in CONVENTIONS:
            if mode == "ordered":
                out[mode + suffix] = ordered_count(mg, self_arcs)
            else:
                out[mode + suffix] = mg.count(mode, self_arcs=self_arcs)
    return out


def calibration_row(n: int, workers: int = 1, mg: Metagraph | None = None) -> dict:
    mg = mg or Metagraph.build(n, "all", "all", workers=workers)
    c = counts(mg)
    published = PUBLISHED_ARCS.get(n)
    row = {"n": n, "graphs": len(mg.signatures), "published": published, "counts": c}
    if published is not None:
        best = min(c, key=lambda k: (abs(c[k] - published), k))
        row["match"] = [k for k, v in c.items() if v == published]
        row["closest"] = best
        row["deviation"] = c[best] - published
    return row


def calibration_table(orders: Iterable[int], workers: int = 1) -> list[dict]:
    return [calibration_row(n, workers) for n in orders]


def format_table(rows: list[dict]) -> str:
    keys = list(rows[0]["counts"]) if rows else []
    head = ["n", "graphs", "published"] + keys + ["closest", "deviation"]
    body = []
    for r in rows:
        line = [str(r["n"]), str(r["graphs"]), str(r.get("published"))]
        line += [str(r["counts"][k]) for k in keys]
        closest = r.get("closest", "-")
        if r.get("match"):
            closest = "=" + ",".join(r["match"])
        line += [closest, f"{r.get('deviation', 0):+d}"]
        body.append(line)
    widths = [max(len(x) for x in col) for col in zip(head, *body)]
    fmt = lambda cells: "  ".join(c.rjust(w) for c, w in zip(cells, widths))  # noqa: E731
    return "\n".join([fmt(head)] + [fmt(b) for b in body]) + "\n"
