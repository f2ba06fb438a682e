"""Pure-Python canonical labeling and augmentation kernels.

This is the reference implementation of the algorithm compiled in
``_ccore.pyx``; both must pick exactly the same canonical labeling, so any
change here has to be mirrored there (``tests/test_backends.py`` checks it).

Search outline: equitable partition refinement, individualization of each
vertex of the first non-singleton cell, and a depth-first walk of the
resulting tree.  A leaf is scored by its relabelled adjacency read in graph6
column order; the maximum wins.  Leaves that coincide with the first or the
best leaf yield automorphisms, which are used to jump back to the common
ancestor and to skip children lying in an already-explored orbit.
"""

from __future__ import annotations

from collections import deque

import numpy as np


def _refine(adj, n, lab, ptn, active):
    in_queue = set(active)
    queue = deque(active)
    while queue:
        s = queue.popleft()
        in_queue.discard(s)
        e = s
        while ptn[e]:
            e += 1
        splitter = 0
        for p in range(s, e + 1):
            splitter |= 1 << lab[p]
        i = 0
        while i < n:
            j = i
            while ptn[j]:
                j += 1
            if j > i:
                counts = [(adj[lab[p]] & splitter).bit_count() for p in range(i, j + 1)]
                first = counts[0]
                if any(c != first for c in counts):
                    order = sorted(range(j - i + 1), key=counts.__getitem__)
                    seg = [lab[i + k] for k in order]
                    lab[i:j + 1] = seg
                    starts = [i]
                    prev = counts[order[0]]
                    for k in range(1, len(order)):
                        c = counts[order[k]]
                        if c != prev:
                            ptn[i + k - 1] = 0
                            starts.append(i + k)
                            prev = c
                    for st in starts:
                        if st not in in_queue:
                            in_queue.add(st)
                            queue.append(st)
            i = j + 1


def _certificate(adj, n, lab):
    cols = []
    for j in range(1, n):
        row = adj[lab[j]]
        col = 0
        for i in range(j):
            col = (col << 1) | (row >> lab[i] & 1)
        cols.append(col)
    return tuple(cols)


class _Search:
    __slots__ = ("adj", "n", "first_cert", "first_lab", "first_path",
                 "best_cert", "best_lab", "best_path", "gens")

    def __init__(self, adj, n):
        self.adj = adj
        self.n = n
        self.first_cert = None
        self.first_lab = None
        self.first_path = None
        self.best_cert = None
        self.best_lab = None
        self.best_path = None
        self.gens = []

    def _orbit_roots(self, prefix):
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self.gens:
            if all(g[v] == v for v in prefix):
                for v in range(self.n):
                    a, b = find(v), find(g[v])
                    if a != b:
                        if a < b:
                            parent[b] = a
                        else:
                            parent[a] = b
        return find

    def _leaf(self, lab, path):
        depth = len(path)
        cert = _certificate(self.adj, self.n, lab)
        if self.first_cert is None:
            self.first_cert = self.best_cert = cert
            self.first_lab = self.best_lab = list(lab)
            self.first_path = self.best_path = list(path)
            return depth - 1
        if cert == self.first_cert:
            return self._automorphism(lab, path, self.first_lab, self.first_path)
        if cert == self.best_cert:
            return self._automorphism(lab, path, self.best_lab, self.best_path)
        if cert > self.best_cert:
            self.best_cert = cert
            self.best_lab = list(lab)
            self.best_path = list(path)
        return depth - 1

    def _automorphism(self, lab, path, other_lab, other_path):
        gamma = [0] * self.n
        for i, v in enumerate(lab):
            gamma[v] = other_lab[i]
        self.gens.append(gamma)
        k = 0
        while k < len(path) and k < len(other_path) and path[k] == other_path[k]:
            k += 1
        return k

    def search(self, lab, ptn, path):
        n = self.n
        target = -1
        for p in range(n):
            if ptn[p]:
                target = p
                break
        if target < 0:
            return self._leaf(lab, path)
        depth = len(path)
        end = target
        while ptn[end]:
            end += 1
        cell = lab[target:end + 1]
        tried = []
        for v in cell:
            if tried:
                find = self._orbit_roots(path)
                rv = find(v)
                if any(find(w) == rv for w in tried):
                    continue
            tried.append(v)
            clab = list(lab)
            cptn = list(ptn)
            k = clab.index(v, target, end + 1)
            clab[target], clab[k] = clab[k], clab[target]
            cptn[target] = 0
            _refine(self.adj, n, clab, cptn, [target])
            path.append(v)
            r = self.search(clab, cptn, path)
            path.pop()
            if r < depth:
                return r
        return depth - 1


def canon(n, rows):
    """Return ``lab`` with ``lab[i]`` the original vertex given canonical label ``i``."""
    adj = list(rows)
    if n == 1:
        return [0]
    lab = list(range(n))
    ptn = [1] * n
    ptn[n - 1] = 0
    _refine(adj, n, lab, ptn, [0])
    s = _Search(adj, n)
    s.search(lab, ptn, [])
    return s.best_lab


def relabel(n, rows, lab):
    pos = [0] * n
    for i, v in enumerate(lab):
        pos[v] = i
    out = [0] * n
    for v in range(n):
        r = rows[v]
        img = 0
        while r:
            low = r & -r
            img |= 1 << pos[low.bit_length() - 1]
            r ^= low
        out[pos[v]] = img
    return out


def packed_key(n, rows):
    """Upper-triangle bits in graph6 column order as one integer."""
    key = 0
    for j in range(1, n):
        col = rows[j]
        for i in range(j):
            key = (key << 1) | (col >> i & 1)
    return key


def canonical_key(n, rows):
    return packed_key(n, relabel(n, rows, canon(n, rows)))


def augment(n, rows):
    """Canonical keys of every one-vertex extension of an order-``n`` graph.

    The new vertex gets label ``n`` and is joined to each subset of
    ``0..n-1`` in turn; one key per subset, duplicates kept.  Returns a
    ``uint64`` numpy array.
    """
    m = n + 1
    base = list(rows) + [0]
    out = []
    for subset in range(1 << n):
        child = [r | ((subset >> v & 1) << n) for v, r in enumerate(base[:n])]
        child.append(subset)
        out.append(canonical_key(m, child))
    return np.array(out, dtype=np.uint64)
