"""Invariant columns on disk and the relational-style queries over them.

A store is a directory with one sub-directory per graph class
(``all`` or ``connected``) and one text file per invariant inside it::

    # format phoeg-column 1
    # class connected
    # orders 1 7
    <signature>\t<value>
    ...

Rows are sorted by signature, so files are byte-identical across rebuilds and
columns can be joined on signature with a merge scan.
"""

from __future__ import annotations

import os
from collections import defaultdict
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Iterator

from . import invariants
from .enumerate import enumerate_signatures
from .errors import (
    MissingColumnError,
    StoreFormatError,
    UndefinedInvariantError,
    UnknownClassError,
)
from .graph6 import decode

FORMAT_VERSION = 1
CLASSES = ("all", "connected")
DEFAULT_SAMPLES = 4


def class_predicate(cls: str):
    if cls == "all":
        return None
    if cls == "connected":
        return invariants.is_connected
    raise UnknownClassError(f"unknown store class {cls!r}; expected one of {', '.join(CLASSES)}")


def order_of(sig: str) -> int:
    return ord(sig[0]) - 63


def size_of(sig: str) -> int:
    """Edge count read straight from the graph6 bits (padding bits are zero)."""
    return sum((ord(c) - 63).bit_count() for c in sig[1:])


@dataclass
class InvariantColumn:
    name: str
    cls: str
    orders: tuple[int, int]
    rows: list[tuple[str, int]]

    def __post_init__(self) -> None:
        class_predicate(self.cls)

    def validate(self) -> None:
        pred = class_predicate(self.cls)
        prev = None
        lo, hi = self.orders
        for sig, _ in self.rows:
            if prev is not None and sig <= prev:
                raise StoreFormatError(f"column {self.name}: signatures not strictly sorted at {sig!r}")
            g = decode(sig)
            if not lo <= g.n <= hi:
                raise StoreFormatError(f"column {self.name}: {sig!r} outside order range {lo}..{hi}")
            if pred is not None and not pred(g):
                raise StoreFormatError(f"column {self.name}: {sig!r} is not in class {self.cls}")
            prev = sig

    def as_dict(self) -> dict[str, int]:
        return dict(self.rows)

    def dumps(self) -> str:
        lines = [
            f"# format phoeg-column {FORMAT_VERSION}",
            f"# class {self.cls}",
            f"# orders {self.orders[0]} {self.orders[1]}",
        ]
        lines.extend(f"{sig}\t{val}" for sig, val in self.rows)
        return "\n".join(lines) + "\n"

    def save(self, path: str | os.PathLike) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(path.suffix + ".tmp")
        with open(tmp, "w", encoding="ascii", newline="\n") as fh:
            fh.write(self.dumps())
        os.replace(tmp, path)

    @classmethod
    def load(cls, path: str | os.PathLike) -> InvariantColumn:
        path = Path(path)
        with open(path, encoding="ascii") as fh:
            header = [fh.readline().rstrip("\n") for _ in range(3)]
            try:
                fmt = header[0].split()
                if fmt[:3] != ["#", "format", "phoeg-column"] or int(fmt[3]) != FORMAT_VERSION:
                    raise ValueError
                klass = header[1].split()[2]
                lo, hi = (int(x) for x in header[2].split()[2:4])
            except (ValueError, IndexError):
                raise StoreFormatError(f"{path}: bad column header") from None
            rows = []
            for lineno, line in enumerate(fh, start=4):
                line = line.rstrip("\n")
                if not line:
                    continue
                try:
                    sig, val = line.split("\t")
                    rows.append((sig, int(val)))
                except ValueError:
                    raise StoreFormatError(f"{path}:{lineno}: expected 'signature<TAB>value'") from None
        return cls(path.stem, klass, (lo, hi), rows)


@dataclass(frozen=True)
class CellExtremalResult:
    n: int
    m: int
    optimum: int
    witnesses: tuple[str, ...]
    direction: str


@dataclass(frozen=True)
class Point:
    x: int
    y: int
    multiplicity: int
    samples: tuple[str, ...]
    annotation: int | None = None


@dataclass(frozen=True)
class PointCloud:
    x_name: str
    y_name: str
    cls: str
    n: int | None
    points: tuple[Point, ...]
    annotation_name: str | None = None
    samples_per_point: int = DEFAULT_SAMPLES

    def total(self) -> int:
        return sum(p.multiplicity for p in self.points)


def build_column_rows(
    names: list[str], max_n: int, cls: str, min_n: int = 1, workers: int = 1
) -> dict[str, list[tuple[str, int]]]:
    invs = [invariants.get(name) for name in names]
    pred = class_predicate(cls)
    out: dict[str, list[tuple[str, int]]] = {name: [] for name in names}
    for n in range(min_n, max_n + 1):
        for sig in enumerate_signatures(n, pred, workers=workers):
            g = decode(sig)
            for inv in invs:
                try:
                    out[inv.name].append((sig, inv(g)))
                except UndefinedInvariantError as exc:
                    raise UndefinedInvariantError(
                        f"invariant {inv.name!r} is undefined on {sig} admitted by class {cls!r}: {exc}"
                    ) from None
    for rows in out.values():
        rows.sort()
    return out


class Store:
    """A directory of invariant columns."""

    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)
        self._cache: dict[tuple[str, str], InvariantColumn] = {}

    def path(self, name: str, cls: str) -> Path:
        return self.root / cls / f"{name}.col"

    def build(self, max_n: int, cls: str, names: Iterable[str], min_n: int = 1, workers: int = 1) -> list[Path]:
        """Compute and write one column per invariant; rebuilding is byte-identical."""
        names = list(dict.fromkeys(names))
        for name in names:
            invariants.get(name)
        class_predicate(cls)
        from .enumerate import check_order

        check_order(max_n)
        rows = build_column_rows(names, max_n, cls, min_n, workers)
        paths = []
        for name in names:
            col = InvariantColumn(name, cls, (min_n, max_n), rows[name])
            p = self.path(name, cls)
            col.save(p)
            self._cache[(name, cls)] = col
            paths.append(p)
        return paths

    def has(self, name: str, cls: str) -> bool:
        return self.path(name, cls).exists()

    def column(self, name: str, cls: str) -> InvariantColumn:
        key = (name, cls)
        if key not in self._cache:
            p = self.path(name, cls)
            if not p.exists():
                raise MissingColumnError(f"no column {name!r} for class {cls!r} under {self.root}")
            self._cache[key] = InvariantColumn.load(p)
        return self._cache[key]

    def values(self, name: str, cls: str) -> dict[str, int]:
        return self.column(name, cls).as_dict()

    def _covers(self, col: InvariantColumn, max_n: int) -> None:
        if col.orders[1] < max_n:
            raise MissingColumnError(
                f"column {col.name!r} ({col.cls}) only covers orders {col.orders[0]}..{col.orders[1]}, need {max_n}"
            )

    def query_extremal(self, name: str, direction: str, max_n: int, cls: str) -> list[CellExtremalResult]:
        """Best value of ``name`` in every (n, m) cell, keeping every tied graph.

        Same result as ranking rows with DENSE_RANK over ``PARTITION BY n, m``
        and keeping rank 1.
        """
        if direction not in ("max", "min"):
            raise ValueError(f"direction must be 'max' or 'min', got {direction!r}")
        col = self.column(name, cls)
        self._covers(col, max_n)
        cells: dict[tuple[int, int], list] = {}
        better = (lambda a, b: a > b) if direction == "max" else (lambda a, b: a < b)
        for sig, val in col.rows:
            n = order_of(sig)
            if n > max_n:
                continue
            key = (n, size_of(sig))
            cur = cells.get(key)
            if cur is None or better(val, cur[0]):
                cells[key] = [val, [sig]]
            elif val == cur[0]:
                cur[1].append(sig)
        return [
            CellExtremalResult(n, m, val, tuple(sorted(sigs)), direction)
            for (n, m), (val, sigs) in sorted(cells.items())
        ]

    def _joined(self, names: list[str], cls: str, n: int | None) -> Iterator[tuple[str, list[int]]]:
        cols = [self.column(name, cls) for name in names]
        if n is not None:
            for col in cols:
                lo, hi = col.orders
                if not lo <= n <= hi:
                    raise MissingColumnError(f"column {col.name!r} ({cls}) does not cover order {n}")
        maps = [col.as_dict() for col in cols[1:]]
        for sig, val in cols[0].rows:
            if n is not None and order_of(sig) != n:
                continue
            vals = [val]
            for mp in maps:
                other = mp.get(sig)
                if other is None:
                    break
                vals.append(other)
            else:
                yield sig, vals

    def query_points(
        self, x: str, y: str, cls: str, n: int | None, samples: int = DEFAULT_SAMPLES
    ) -> PointCloud:
        """Group graphs by their (x, y) coordinates with exact multiplicities."""
        groups: dict[tuple[int, int], list] = {}
        for sig, (xv, yv) in self._joined([x, y], cls, n):
            entry = groups.get((xv, yv))
            if entry is None:
                groups[(xv, yv)] = [1, [sig]]
            else:
                entry[0] += 1
                if len(entry[1]) < samples:
                    entry[1].append(sig)
        points = tuple(
            Point(xv, yv, mult, tuple(sigs)) for (xv, yv), (mult, sigs) in sorted(groups.items())
        )
        return PointCloud(x, y, cls, n, points, samples_per_point=samples)

    def annotate_points(self, cloud: PointCloud, name: str, aggregator: str = "max") -> PointCloud:
        """Attach the max/min of ``name`` over all graphs at each coordinate."""
        agg = {"max": max, "min": min}.get(aggregator)
        if agg is None:
            raise ValueError(f"aggregator must be 'max' or 'min', got {aggregator!r}")
        acc: dict[tuple[int, int], int] = defaultdict(lambda: None)  # type: ignore[arg-type]
        for _, (xv, yv, av) in self._joined([cloud.x_name, cloud.y_name, name], cloud.cls, cloud.n):
            cur = acc[(xv, yv)]
            acc[(xv, yv)] = av if cur is None else agg(cur, av)
        points = tuple(replace(p, annotation=acc.get((p.x, p.y))) for p in cloud.points)
        return replace(cloud, points=points, annotation_name=name)

    def columns(self) -> dict[str, list[str]]:
        out: dict[str, list[str]] = {}
        for cls in CLASSES:
            d = self.root / cls
            if d.is_dir():
                out[cls] = sorted(p.stem for p in d.glob("*.col"))
        return out


def cloud_from_values(
    x_name: str,
    y_name: str,
    values: Iterable[tuple[str, int, int]],
    cls: str = "all",
    n: int | None = None,
    samples: int = DEFAULT_SAMPLES,
) -> PointCloud:
    """Build a cloud from ``(signature, x, y)`` triples without a store."""
    groups: dict[tuple[int, int], list] = {}
    for sig, xv, yv in values:
        entry = groups.setdefault((xv, yv), [0, []])
        entry[0] += 1
        if len(entry[1]) < samples:
            entry[1].append(sig)
    points = tuple(Point(xv, yv, m, tuple(s)) for (xv, yv), (m, s) in sorted(groups.items()))
    return PointCloud(x_name, y_name, cls, n, points, samples_per_point=samples)


__all__ = [
    "CLASSES",
    "CellExtremalResult",
    "InvariantColumn",
    "Point",
    "PointCloud",
    "Store",
    "class_predicate",
    "cloud_from_values",
    "order_of",
    "size_of",
]
