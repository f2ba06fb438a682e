"""The metagraph of transformations: build, store, count and query.

On disk a metagraph is a directory::

    meta.json        order, class, transformation list, record layout
    signatures.g6    sorted class signatures; line number = signature id
    arcs.bin         fixed-width little-endian records (src, tid, p0..p3, dst)
    index.bin        uint64 record offsets per source id (len = #signatures + 1)

Records are sorted by (source id, transformation id, parameters), so a
rebuild with the same flags produces identical files.
"""

from __future__ import annotations

import json
import os
import shutil
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import transform as tr
from .canon import kernel
from .enumerate import canonical_keys, key_to_graph6, unpack_key
from .errors import DiskSpaceError, OrderError, UnknownSignatureError
from .graph import Graph
from .graph6 import decode
from .store import class_predicate

FORMAT_VERSION = 1
MAX_META_ORDER = 9
ARC_DTYPE = np.dtype(
    [("src", "<u4"), ("tid", "u1"), ("params", "i1", (4,)), ("dst", "<u4")], align=False
)


@dataclass(frozen=True)
class MetaArc:
    src: str
    tid: str
    params: tuple[int, ...]
    dst: str


def _canon_key(g: Graph) -> int:
    return int(kernel.canonical_key(g.n, g.rows))


def _source_arcs(
    n: int, src_id: int, g: Graph, transformations: Sequence[tr.Transformation], key_to_id: dict[int, int]
) -> list[tuple]:
    out = []
    for t in transformations:
        for params in t.applications(g):
            h = tr.apply_unchecked(g, t, params)
            dst = key_to_id.get(_canon_key(h))
            if dst is None:  # target left the class
                continue
            out.append((src_id, t.tid, tuple(params) + (-1,) * (4 - len(params)), dst))
    return out


def estimate_arcs(n: int, cls: str, transformations: Sequence[tr.Transformation], sample: int = 200) -> int:
    """Projected raw arc count from the applications of a sample of sources."""
    keys = _class_keys(n, cls)
    if len(keys) == 0:
        return 0
    idx = np.linspace(0, len(keys) - 1, min(sample, len(keys))).astype(int)
    total = 0
    for i in idx:
        g = unpack_key(n, int(keys[i]))
        total += sum(sum(1 for _ in t.applications(g)) for t in transformations)
    return int(total * len(keys) / len(idx))


def _class_keys(n: int, cls: str) -> np.ndarray:
    keys = canonical_keys(n)
    pred = class_predicate(cls)
    if pred is None:
        return keys
    mask = np.fromiter((pred(unpack_key(n, int(k))) for k in keys), dtype=bool, count=len(keys))
    return keys[mask]


class Metagraph:
    def __init__(
        self,
        n: int,
        cls: str,
        transformations: Sequence[str],
        signatures: list[str],
        arcs: np.ndarray,
        offsets: np.ndarray | None = None,
    ):
        self.n = n
        self.cls = cls
        self.transformations = list(transformations)
        self.signatures = signatures
        self.sig_id = {s: i for i, s in enumerate(signatures)}
        self.arcs = arcs
        if offsets is None:
            offsets = np.searchsorted(arcs["src"], np.arange(len(signatures) + 1), side="left").astype(np.uint64)
        self.offsets = offsets
        self._in_order: np.ndarray | None = None
        self._in_offsets: np.ndarray | None = None

    # building

    @classmethod
    def build(
        cls_,
        n: int,
        cls: str = "all",
        transformations: Iterable[str] | str | None = "all",
        workers: int = 1,
    ) -> Metagraph:
        if not 1 <= n <= MAX_META_ORDER:
            raise OrderError(f"metagraph orders are 1..{MAX_META_ORDER}, got {n}")
        if isinstance(transformations, str) or transformations is None:
            ts = tr.parse_subset(transformations)
        else:
            ts = tr.parse_subset(",".join(transformations)) if transformations else []
        keys = _class_keys(n, cls)
        key_to_id = {int(k): i for i, k in enumerate(keys.tolist())}
        signatures = [key_to_graph6(n, int(k)) for k in keys.tolist()]
        rows: list[tuple] = []
        if ts:
            graphs = [unpack_key(n, int(k)) for k in keys.tolist()]
            if workers > 1 and len(graphs) > 64:
                from concurrent.futures import ProcessPoolExecutor

                chunks = np.array_split(np.arange(len(graphs)), workers * 4)
                with ProcessPoolExecutor(max_workers=workers) as pool:
                    parts = pool.map(
                        _build_chunk,
                        [(n, [int(i) for i in c], [int(keys[i]) for i in c], [t.tid for t in ts], cls) for c in chunks],
                    )
                    for part in parts:
                        rows.extend(part)
            else:
                for i, g in enumerate(graphs):
                    rows.extend(_source_arcs(n, i, g, ts, key_to_id))
        arcs = np.array(rows, dtype=ARC_DTYPE) if rows else np.zeros(0, dtype=ARC_DTYPE)
        return cls_(n, cls, [t.name for t in ts], signatures, arcs)

    # persistence

    def save(self, out: str | os.PathLike, check_space: bool = True) -> Path:
        out = Path(out)
        out.mkdir(parents=True, exist_ok=True)
        if check_space:
            need = self.arcs.nbytes + 8 * len(self.offsets) + 16 * len(self.signatures) + 4096
            free = shutil.disk_usage(out).free
            if need > free:
                raise DiskSpaceError(f"metagraph needs ~{need} bytes, only {free} free under {out}")
        meta = {
            "format": FORMAT_VERSION,
            "order": self.n,
            "class": self.cls,
            "transformations": self.transformations,
            "signatures": len(self.signatures),
            "arcs": int(len(self.arcs)),
            "record": "<u4 src, u1 tid, 4*i1 params (-1 padded), <u4 dst",
        }
        (out / "meta.json").write_text(json.dumps(meta, indent=2) + "\n")
        (out / "signatures.g6").write_text("".join(s + "\n" for s in self.signatures), encoding="ascii")
        self.arcs.tofile(out / "arcs.bin")
        np.asarray(self.offsets, dtype="<u8").tofile(out / "index.bin")
        return out

    @classmethod
    def load(cls_, path: str | os.PathLike) -> Metagraph:
        path = Path(path)
        meta = json.loads((path / "meta.json").read_text())
        if meta.get("format") != FORMAT_VERSION:
            raise ValueError(f"{path}: unsupported metagraph format {meta.get('format')!r}")
        sigs = (path / "signatures.g6").read_text(encoding="ascii").split()
        arcs = np.fromfile(path / "arcs.bin", dtype=ARC_DTYPE)
        offsets = np.fromfile(path / "index.bin", dtype="<u8")
        return cls_(meta["order"], meta["class"], meta["transformations"], sigs, arcs, offsets)

    # queries

    def __len__(self) -> int:
        return len(self.arcs)

    def id_of(self, sig: str) -> int:
        try:
            return self.sig_id[sig]
        except KeyError:
            raise UnknownSignatureError(f"signature {sig!r} is not a vertex of this metagraph") from None

    def _arc(self, rec) -> MetaArc:
        tid = int(rec["tid"])
        arity = tr.get(tid).arity
        params = tuple(int(x) for x in rec["params"][:arity])
        return MetaArc(self.signatures[int(rec["src"])], tr.get(tid).name, params, self.signatures[int(rec["dst"])])

    def iter_arcs(self) -> Iterator[MetaArc]:
        for rec in self.arcs:
            yield self._arc(rec)

    def _ensure_in_index(self) -> None:
        if self._in_order is None:
            order = np.argsort(self.arcs["dst"], kind="stable")
            self._in_order = order
            self._in_offsets = np.searchsorted(
                self.arcs["dst"][order], np.arange(len(self.signatures) + 1), side="left"
            )

    def neighbors(
        self,
        sig: str,
        direction: str = "out",
        tids: Iterable[str] | None = None,
    ) -> list[MetaArc]:
        i = self.id_of(sig)
        if direction == "out":
            recs = self.arcs[int(self.offsets[i]):int(self.offsets[i + 1])]
        elif direction == "in":
            self._ensure_in_index()
            recs = self.arcs[self._in_order[self._in_offsets[i]:self._in_offsets[i + 1]]]
        else:
            raise ValueError(f"direction must be 'out' or 'in', got {direction!r}")
        if tids is not None:
            wanted = np.array(sorted(tr.get(t).tid for t in tids), dtype=np.uint8)
            recs = recs[np.isin(recs["tid"], wanted)]
        return [self._arc(r) for r in recs]

    def count(self, mode: str = "raw", self_arcs: bool = True, tid: str | None = None) -> int:
        """Arc count: ``raw`` applications, distinct ``per-triple`` (src, tid, dst) or ``per-pair`` (src, dst)."""
        arcs = self.arcs
        if tid is not None:
            arcs = arcs[arcs["tid"] == tr.get(tid).tid]
        if not self_arcs:
            arcs = arcs[arcs["src"] != arcs["dst"]]
        if mode == "raw":
            return int(len(arcs))
        src = arcs["src"].astype(np.uint64)
        dst = arcs["dst"].astype(np.uint64)
        if mode == "per-triple":
            key = (src << np.uint64(40)) | (arcs["tid"].astype(np.uint64) << np.uint64(32)) | dst
        elif mode == "per-pair":
            key = (src << np.uint64(32)) | dst
        else:
            raise ValueError(f"mode must be raw, per-triple or per-pair, got {mode!r}")
        return int(len(np.unique(key)))

    def counts_by_transformation(self) -> dict[str, int]:
        c = Counter(int(t) for t in self.arcs["tid"])
        return {tr.get(t).name: c.get(t, 0) for t in (tr.get(name).tid for name in self.transformations)}

    def pairs(self, self_arcs: bool = False) -> set[tuple[int, int]]:
        arcs = self.arcs if self_arcs else self.arcs[self.arcs["src"] != self.arcs["dst"]]
        return set(zip(arcs["src"].tolist(), arcs["dst"].tolist()))

    # export

    def csv_rows(self) -> Iterator[list]:
        for a in self.iter_arcs():
            yield [a.src, a.tid, " ".join(str(p) for p in a.params), a.dst]

    def to_dot(self) -> str:
        lines = ["digraph metagraph {"]
        for s in self.signatures:
            lines.append(f'  "{_dot_escape(s)}";')
        seen = set()
        for rec in self.arcs:
            key = (int(rec["src"]), int(rec["tid"]), int(rec["dst"]))
            if key in seen:
                continue
            seen.add(key)
            lines.append(
                f'  "{_dot_escape(self.signatures[key[0]])}" -> "{_dot_escape(self.signatures[key[2]])}"'
                f' [label="{tr.get(key[1]).name}"];'
            )
        lines.append("}")
        return "\n".join(lines) + "\n"


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def _build_chunk(args) -> list[tuple]:
    n, ids, keys, tids, cls = args
    all_keys = _class_keys(n, cls)
    key_to_id = {int(k): i for i, k in enumerate(all_keys.tolist())}
    ts = [tr.get(t) for t in tids]
    out = []
    for i, k in zip(ids, keys):
        out.extend(_source_arcs(n, i, unpack_key(n, k), ts, key_to_id))
    return out


def build_and_save(
    n: int,
    cls: str,
    transformations: str | None,
    out: str | os.PathLike,
    workers: int = 1,
) -> Metagraph:
    """Build then write; orders >= 8 first check the projected size against free disk space."""
    ts = tr.parse_subset(transformations)
    if n >= 8:
        Path(out).mkdir(parents=True, exist_ok=True)
        projected = estimate_arcs(n, cls, ts) * ARC_DTYPE.itemsize
        free = shutil.disk_usage(out).free
        if projected * 2 > free:
            raise DiskSpaceError(
                f"order {n} metagraph projected at ~{projected / 1e9:.1f} GB; only {free / 1e9:.1f} GB free"
            )
    mg = Metagraph.build(n, cls, [t.name for t in ts], workers=workers)
    mg.save(out)
    return mg


def rederive(mg: Metagraph, rec) -> bool:
    """Recompute an arc's target from its source and parameters."""
    t = tr.get(int(rec["tid"]))
    params = tuple(int(x) for x in rec["params"][: t.arity])
    g = decode(mg.signatures[int(rec["src"])])
    h = tr.apply(g, t.tid, params)
    return _canon_key(h) == _canon_key(decode(mg.signatures[int(rec["dst"])]))
