"""Exact 2D convex hulls of invariant point clouds and their facet inequalities."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .store import Point, PointCloud, Store

Coord = tuple[int, int]

# Orientation products stay far below 2**63 for coordinates up to ~1e9; at
# order 10 invariant values are below 1e4.
COORD_LIMIT = 10**9


def cross(o: Coord, a: Coord, b: Coord) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _check_bounds(pts: Iterable[Coord]) -> None:
    for x, y in pts:
        if abs(x) > COORD_LIMIT or abs(y) > COORD_LIMIT:
            raise OverflowError(f"coordinate ({x}, {y}) exceeds the exact-orientation bound {COORD_LIMIT}")


def convex_hull(points: Iterable[Coord] | PointCloud) -> list[Coord]:
    """Counter-clockwise hull vertices starting from the lowest-leftmost point.

    Points in the interior of a hull edge are not vertices.  One point gives
    ``[p]``; collinear input gives its two extreme points.
    """
    if isinstance(points, PointCloud):
        points = [(p.x, p.y) for p in points.points]
    pts = sorted(set(points))
    if not pts:
        raise ValueError("convex hull of an empty cloud")
    _check_bounds(pts)
    if len(pts) <= 2:
        return pts
    lower: list[Coord] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Coord] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 and hull[0] == hull[1]:
        return hull[:1]
    return hull


@dataclass(frozen=True)
class Facet:
    """``a*x + b*y <= c`` (sense ``"<="``) or ``>= c`` (sense ``">="``).

    Coefficients are gcd-reduced and sign-normalized so that ``a > 0`` or
    ``a == 0 and b > 0``; the sense carries the direction.
    """

    a: int
    b: int
    c: int
    sense: str
    tight: tuple[Coord, ...] = ()
    witnesses: tuple[tuple[str, ...], ...] = ()

    @property
    def key(self) -> tuple[int, int, int, str]:
        return (self.a, self.b, self.c, self.sense)

    def holds(self, x: int, y: int) -> bool:
        v = self.a * x + self.b * y
        return v <= self.c if self.sense == "<=" else v >= self.c

    def is_tight(self, x: int, y: int) -> bool:
        return self.a * x + self.b * y == self.c

    def linear_text(self, x_name: str, y_name: str) -> str:
        return f"{_lin([(self.a, x_name), (self.b, y_name)])} {self.sense} {self.c}"

    def bound_text(self, x_name: str, y_name: str) -> str:
        """The inequality solved for the first invariant when possible."""
        if self.a == 0:
            return f"{y_name} {self.sense} {Fraction(self.c, self.b)}"
        # a > 0, so dividing keeps the sense
        slope = Fraction(-self.b, self.a)
        const = Fraction(self.c, self.a)
        rhs = []
        if slope:
            rhs.append(y_name if slope == 1 else f"-{y_name}" if slope == -1 else f"{slope}*{y_name}")
        if const or not rhs:
            rhs.append(str(const))
        return f"{x_name} {self.sense} " + " + ".join(rhs).replace("+ -", "- ")


def _lin(terms: list[tuple[int, str]]) -> str:
    parts = []
    for coef, name in terms:
        if coef == 0:
            continue
        sign = "-" if coef < 0 else "+"
        mag = abs(coef)
        body = name if mag == 1 else f"{mag}*{name}"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def normalize(a: int, b: int, c: int) -> tuple[int, int, int, str]:
    """Normalize ``a*x + b*y <= c`` into ``(a, b, c, sense)`` form."""
    g = gcd(gcd(abs(a), abs(b)), abs(c))
    if g == 0:
        raise ValueError("degenerate inequality 0 <= 0")
    a, b, c = a // g, b // g, c // g
    if a < 0 or (a == 0 and b < 0):
        return -a, -b, -c, ">="
    return a, b, c, "<="


def edge_inequality(p: Coord, q: Coord) -> tuple[int, int, int, str]:
    """Half-plane to the left of the directed edge ``p -> q``, as a normalized facet."""
    dx, dy = q[0] - p[0], q[1] - p[1]
    # left of p->q  <=>  cross(p, q, r) >= 0  <=>  dy*x - dx*y <= dy*px - dx*py
    return normalize(dy, -dx, dy * p[0] - dx * p[1])


def facets(hull: Sequence[Coord], cloud: PointCloud | Iterable[Coord]) -> list[Facet]:
    """One facet per hull edge, annotated with every cloud point lying on it."""
    if isinstance(cloud, PointCloud):
        pts = list(cloud.points)
    else:
        pts = [Point(x, y, 1, ()) for x, y in cloud]
    if len(hull) < 2:
        return []
    out = []
    k = len(hull)
    for i in range(k):
        p, q = hull[i], hull[(i + 1) % k]
        a, b, c, sense = edge_inequality(p, q)
        on = [pt for pt in pts if a * pt.x + b * pt.y == c]
        on.sort(key=lambda pt: (pt.x, pt.y))
        out.append(Facet(a, b, c, sense, tuple((pt.x, pt.y) for pt in on), tuple(pt.samples for pt in on)))
    return out


def hull_vertex_witnesses(store: Store, cloud: PointCloud, hull: Sequence[Coord]) -> dict[Coord, list[str]]:
    """Every signature sitting on a hull vertex (not just the sampled ones)."""
    want = set(hull)
    out: dict[Coord, list[str]] = {v: [] for v in hull}
    for sig, (xv, yv) in store._joined([cloud.x_name, cloud.y_name], cloud.cls, cloud.n):
        if (xv, yv) in want:
            out[(xv, yv)].append(sig)
    return out


@dataclass
class OrderReport:
    n: int
    cloud: PointCloud
    hull: list[Coord]
    facets: list[Facet]
    vertex_witnesses: dict[Coord, list[str]]

    @property
    def degenerate(self) -> bool:
        return len(self.hull) < 3


@dataclass
class ConjectureReport:
    x_name: str
    y_name: str
    cls: str
    orders: list[OrderReport]
    stability: list[dict] = field(default_factory=list)

    def text(self) -> str:
        lines = []
        for rep in self.orders:
            lines.append(f"== n = {rep.n}: {rep.cloud.total()} {self.cls} graphs, {len(rep.cloud.points)} points")
            if rep.degenerate:
                kind = "single point" if len(rep.hull) == 1 else "collinear"
                lines.append(f"degenerate hull ({kind}): {rep.hull}")
            for f in rep.facets:
                lines.append(
                    f"  {f.bound_text(self.x_name, self.y_name)}   [{f.linear_text(self.x_name, self.y_name)}]"
                    f" for all {self.cls} graphs, n = {rep.n}; tight at {list(f.tight)}"
                )
            lines.append("  extremal graphs (hull vertices):")
            for v in rep.hull:
                lines.append(f"    {v}: {' '.join(rep.vertex_witnesses.get(v, []))}")
        if self.stability:
            lines.append("== coincidences across consecutive orders")
            for s in self.stability:
                lines.append(
                    f"  n={s['n']}->{s['n'] + 1}: {s['kind']} {s['a']}*{self.x_name} + {s['b']}*{self.y_name} "
                    f"{s['sense']} c  (c = {s['c'][0]} -> {s['c'][1]})"
                )
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "x": self.x_name,
            "y": self.y_name,
            "class": self.cls,
            "orders": [order_json(rep, self.x_name, self.y_name) for rep in self.orders],
            "stability": self.stability,
        }


def order_json(rep: OrderReport, x_name: str, y_name: str) -> dict:
    return {
        "n": rep.n,
        "degenerate": rep.degenerate,
        "points": [
            {"x": p.x, "y": p.y, "multiplicity": p.multiplicity, "samples": list(p.samples)}
            | ({"annotation": p.annotation} if p.annotation is not None else {})
            for p in rep.cloud.points
        ],
        "hull": [list(v) for v in rep.hull],
        "facets": [
            {
                "a": f.a,
                "b": f.b,
                "c": f.c,
                "sense": f.sense,
                "text": f.linear_text(x_name, y_name),
                "tight": [list(t) for t in f.tight],
                "witnesses": [list(w) for w in f.witnesses],
            }
            for f in rep.facets
        ],
        "hull_witnesses": {f"{v[0]},{v[1]}": sigs for v, sigs in rep.vertex_witnesses.items()},
    }


def order_report(store: Store, x_name: str, y_name: str, cls: str, n: int) -> OrderReport:
    cloud = store.query_points(x_name, y_name, cls, n)
    hull = convex_hull(cloud)
    return OrderReport(n, cloud, hull, facets(hull, cloud), hull_vertex_witnesses(store, cloud, hull))


def stability_hints(orders: list[OrderReport]) -> list[dict]:
    """Facets of consecutive orders sharing a normal: ``identical`` or ``parallel``."""
    hints = []
    for cur, nxt in zip(orders, orders[1:]):
        if nxt.n != cur.n + 1:
            continue
        later = {(f.a, f.b, f.sense): f.c for f in nxt.facets}
        for f in cur.facets:
            c2 = later.get((f.a, f.b, f.sense))
            if c2 is None:
                continue
            hints.append(
                {
                    "n": cur.n,
                    "kind": "identical" if c2 == f.c else "parallel",
                    "a": f.a,
                    "b": f.b,
                    "sense": f.sense,
                    "c": [f.c, c2],
                }
            )
    return hints


def conjecture_report(store: Store, x_name: str, y_name: str, cls: str, orders: Iterable[int]) -> ConjectureReport:
    reps = [order_report(store, x_name, y_name, cls, n) for n in orders]
    return ConjectureReport(x_name, y_name, cls, reps, stability_hints(reps))


def to_tikz(rep: OrderReport, x_name: str, y_name: str) -> str:
    """pgfplots coordinate table plus the hull polyline, one ``axis`` per order."""
    ann = rep.cloud.annotation_name
    cols = f"{x_name} {y_name} mult" + (f" {ann}" if ann else "")
    lines = [
        f"% {rep.cloud.cls} graphs of order {rep.n}: {x_name} vs {y_name}",
        "\\begin{tikzpicture}",
        "\\begin{axis}[xlabel={" + x_name + "}, ylabel={" + y_name + "}]",
        "\\addplot[scatter, only marks, point meta=\\thisrow{" + (ann or "mult") + "}] table[x="
        + x_name + ", y=" + y_name + "] {",
        cols,
    ]
    for p in rep.cloud.points:
        row = f"{p.x} {p.y} {p.multiplicity}"
        if ann:
            row += f" {p.annotation}"
        lines.append(row)
    lines.append("};")
    poly = " ".join(f"({x},{y})" for x, y in rep.hull)
    closing = " (%d,%d)" % rep.hull[0] if len(rep.hull) > 2 else ""
    lines.append("\\addplot[no marks] coordinates {" + poly + closing + "};")
    lines.append("\\end{axis}")
    lines.append("\\end{tikzpicture}")
    return "\n".join(lines) + "\n"


def to_csv_rows(rep: OrderReport) -> list[list]:
    rows = []
    hull_set = set(rep.hull)
    for p in rep.cloud.points:
        rows.append([rep.n, p.x, p.y, p.multiplicity, int((p.x, p.y) in hull_set), " ".join(p.samples)])
    return rows


def dumps_json(report: ConjectureReport) -> str:
    return json.dumps(report.to_json(), indent=2, sort_keys=False) + "\n"


__all__ = [
    "ConjectureReport",
    "Facet",
    "OrderReport",
    "conjecture_report",
    "convex_hull",
    "cross",
    "edge_inequality",
    "facets",
    "normalize",
    "order_report",
    "to_tikz",
]
