"""Canonical forms, signatures and isomorphism testing.

The kernel is chosen at import time: the compiled ``_ccore`` extension when
it is importable, otherwise the pure-Python ``_canon_py``.  Setting
``PHOEG_PURE_PYTHON=1`` forces the fallback.  Both kernels return the same
canonical graph for every input.
"""

from __future__ import annotations

import os

from . import _canon_py
from .graph import Graph
from .graph6 import encode

if os.environ.get("PHOEG_PURE_PYTHON"):
    kernel = _canon_py
else:
    try:
        from . import _ccore as kernel
    except ImportError:  # extension not built
        kernel = _canon_py

BACKEND = "compiled" if kernel is not _canon_py else "python"


def canonical_labeling(g: Graph) -> list[int]:
    """``perm`` with ``perm[v]`` the canonical label of vertex ``v``."""
    lab = kernel.canon(g.n, g.rows)
    perm = [0] * g.n
    for i, v in enumerate(lab):
        perm[v] = i
    return perm


def canonical_form(g: Graph) -> tuple[Graph, list[int]]:
    """Return ``(C(g), perm)`` where ``g.permute(perm) == C(g)``."""
    perm = canonical_labeling(g)
    return Graph._trusted(g.n, _relabel(g, perm)), perm


def _relabel(g: Graph, perm: list[int]) -> list[int]:
    rows = [0] * g.n
    for v, row in enumerate(g.rows):
        img = 0
        while row:
            low = row & -row
            img |= 1 << perm[low.bit_length() - 1]
            row ^= low
        rows[perm[v]] = img
    return rows


def canonical_graph(g: Graph) -> Graph:
    return canonical_form(g)[0]


def signature(g: Graph) -> str:
    """graph6 text of the canonical form; equal iff the graphs are isomorphic."""
    return encode(canonical_form(g)[0])


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.num_edges != h.num_edges:
        return False
    if sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_form(g)[0] == canonical_form(h)[0]


def isomorphism(g: Graph, h: Graph) -> list[int] | None:
    """A permutation ``p`` with ``g.permute(p) == h``, or ``None``."""
    cg, pg = canonical_form(g)
    ch, ph = canonical_form(h)
    if cg != ch:
        return None
    inv_h = [0] * h.n
    for v, c in enumerate(ph):
        inv_h[c] = v
    return [inv_h[pg[v]] for v in range(g.n)]
