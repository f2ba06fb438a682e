# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled canonical labeling and augmentation kernels.

Mirrors ``_canon_py`` step for step (same refinement order, same target
cell rule, same leaf score), so both backends produce identical canonical
graphs.  Vertex sets are ``uint64`` masks, which caps the order at 62.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, realloc, free
from libc.string cimport memcpy

import numpy as np

cdef enum:
    MAXN = 64

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef inline int popcount(uint64_t x) noexcept nogil:
    return __builtin_popcountll(x)


cdef struct Search:
    int n
    uint64_t adj[MAXN]
    int have_first
    uint64_t first_cert[MAXN]
    int first_lab[MAXN]
    int first_path[MAXN]
    int first_depth
    uint64_t best_cert[MAXN]
    int best_lab[MAXN]
    int best_path[MAXN]
    int best_depth
    int path[MAXN]
    int ngens
    int capgens
    int *gens


cdef void refine(Search *s, int *lab, int *ptn, int start) noexcept nogil:
    cdef int n = s.n
    cdef int queue[MAXN + 1]
    cdef char inq[MAXN]
    cdef int qhead = 0, qtail = 0, qlen = 0
    cdef int counts[MAXN]
    cdef int bucket[MAXN + 1]
    cdef int seg[MAXN]
    cdef int segc[MAXN]
    cdef int i, j, p, e, st, c, k, first, split, prev
    cdef uint64_t splitter
    for i in range(n):
        inq[i] = 0
    queue[qtail] = start
    qtail = (qtail + 1) % (MAXN + 1)
    qlen = 1
    inq[start] = 1
    while qlen:
        st = queue[qhead]
        qhead = (qhead + 1) % (MAXN + 1)
        qlen -= 1
        inq[st] = 0
        e = st
        while ptn[e]:
            e += 1
        splitter = 0
        for p in range(st, e + 1):
            splitter |= (<uint64_t>1) << lab[p]
        i = 0
        while i < n:
            j = i
            while ptn[j]:
                j += 1
            if j > i:
                split = 0
                first = popcount(s.adj[lab[i]] & splitter)
                counts[0] = first
                for p in range(i + 1, j + 1):
                    c = popcount(s.adj[lab[p]] & splitter)
                    counts[p - i] = c
                    if c != first:
                        split = 1
                if split:
                    # stable counting sort of the cell by neighbour count
                    for k in range(n + 1):
                        bucket[k] = 0
                    for k in range(j - i + 1):
                        bucket[counts[k] + 1] += 1
                    for k in range(1, n + 1):
                        bucket[k] += bucket[k - 1]
                    for k in range(j - i + 1):
                        c = counts[k]
                        seg[bucket[c]] = lab[i + k]
                        segc[bucket[c]] = c
                        bucket[c] += 1
                    for k in range(j - i + 1):
                        lab[i + k] = seg[k]
                    prev = segc[0]
                    if not inq[i]:
                        inq[i] = 1
                        queue[qtail] = i
                        qtail = (qtail + 1) % (MAXN + 1)
                        qlen += 1
                    for k in range(1, j - i + 1):
                        if segc[k] != prev:
                            ptn[i + k - 1] = 0
                            prev = segc[k]
                            if not inq[i + k]:
                                inq[i + k] = 1
                                queue[qtail] = i + k
                                qtail = (qtail + 1) % (MAXN + 1)
                                qlen += 1
            i = j + 1


cdef void certificate(Search *s, int *lab, uint64_t *cert) noexcept nogil:
    cdef int n = s.n
    cdef int i, j
    cdef uint64_t row, col
    for j in range(1, n):
        row = s.adj[lab[j]]
        col = 0
        for i in range(j):
            col = (col << 1) | ((row >> lab[i]) & 1)
        cert[j - 1] = col


cdef int cert_cmp(uint64_t *a, uint64_t *b, int m) noexcept nogil:
    cdef int k
    for k in range(m):
        if a[k] != b[k]:
            return 1 if a[k] > b[k] else -1
    return 0


cdef int automorphism(Search *s, int *lab, int depth, int *other_lab, int *other_path, int other_depth) noexcept nogil:
    cdef int n = s.n
    cdef int i, k
    cdef int *g
    if s.ngens == s.capgens:
        s.capgens = s.capgens * 2 if s.capgens else 16
        s.gens = <int *> realloc(s.gens, s.capgens * MAXN * sizeof(int))
    g = s.gens + s.ngens * MAXN
    for i in range(n):
        g[lab[i]] = other_lab[i]
    s.ngens += 1
    k = 0
    while k < depth and k < other_depth and s.path[k] == other_path[k]:
        k += 1
    return k


cdef int leaf(Search *s, int *lab, int depth) noexcept nogil:
    cdef uint64_t cert[MAXN]
    cdef int m = s.n - 1
    certificate(s, lab, cert)
    if not s.have_first:
        s.have_first = 1
        memcpy(s.first_cert, cert, m * sizeof(uint64_t))
        memcpy(s.best_cert, cert, m * sizeof(uint64_t))
        memcpy(s.first_lab, lab, s.n * sizeof(int))
        memcpy(s.best_lab, lab, s.n * sizeof(int))
        memcpy(s.first_path, s.path, depth * sizeof(int))
        memcpy(s.best_path, s.path, depth * sizeof(int))
        s.first_depth = depth
        s.best_depth = depth
        return depth - 1
    if cert_cmp(cert, s.first_cert, m) == 0:
        return automorphism(s, lab, depth, s.first_lab, s.first_path, s.first_depth)
    c = cert_cmp(cert, s.best_cert, m)
    if c == 0:
        return automorphism(s, lab, depth, s.best_lab, s.best_path, s.best_depth)
    if c > 0:
        memcpy(s.best_cert, cert, m * sizeof(uint64_t))
        memcpy(s.best_lab, lab, s.n * sizeof(int))
        memcpy(s.best_path, s.path, depth * sizeof(int))
        s.best_depth = depth
    return depth - 1


cdef int find(int *parent, int x) noexcept nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


cdef void orbits(Search *s, int depth, int *parent) noexcept nogil:
    cdef int n = s.n
    cdef int gi, v, a, b, ok
    cdef int *g
    for v in range(n):
        parent[v] = v
    for gi in range(s.ngens):
        g = s.gens + gi * MAXN
        ok = 1
        for v in range(depth):
            if g[s.path[v]] != s.path[v]:
                ok = 0
                break
        if not ok:
            continue
        for v in range(n):
            a = find(parent, v)
            b = find(parent, g[v])
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b


cdef int search(Search *s, int *lab, int *ptn, int depth) noexcept nogil:
    cdef int n = s.n
    cdef int target = -1
    cdef int p, end, ci, k, v, r, rv, t, skip, ntried, seen_gens
    cdef int cell[MAXN]
    cdef int tried[MAXN]
    cdef int parent[MAXN]
    cdef int clab[MAXN]
    cdef int cptn[MAXN]
    for p in range(n):
        if ptn[p]:
            target = p
            break
    if target < 0:
        return leaf(s, lab, depth)
    end = target
    while ptn[end]:
        end += 1
    for p in range(target, end + 1):
        cell[p - target] = lab[p]
    ntried = 0
    seen_gens = -1
    for ci in range(end - target + 1):
        v = cell[ci]
        if ntried:
            if seen_gens != s.ngens:
                orbits(s, depth, parent)
                seen_gens = s.ngens
            rv = find(parent, v)
            skip = 0
            for t in range(ntried):
                if find(parent, tried[t]) == rv:
                    skip = 1
                    break
            if skip:
                continue
        tried[ntried] = v
        ntried += 1
        memcpy(clab, lab, n * sizeof(int))
        memcpy(cptn, ptn, n * sizeof(int))
        for k in range(target, end + 1):
            if clab[k] == v:
                clab[k] = clab[target]
                clab[target] = v
                break
        cptn[target] = 0
        refine(s, clab, cptn, target)
        s.path[depth] = v
        r = search(s, clab, cptn, depth + 1)
        if r < depth:
            return r
    return depth - 1


cdef void run(Search *s, int *out_lab) noexcept nogil:
    cdef int lab[MAXN]
    cdef int ptn[MAXN]
    cdef int i
    cdef int n = s.n
    s.have_first = 0
    s.ngens = 0
    if n == 1:
        out_lab[0] = 0
        return
    for i in range(n):
        lab[i] = i
        ptn[i] = 1
    ptn[n - 1] = 0
    refine(s, lab, ptn, 0)
    search(s, lab, ptn, 0)
    memcpy(out_lab, s.best_lab, n * sizeof(int))


cdef uint64_t canonical_packed(Search *s) noexcept nogil:
    """Canonical upper-triangle bits in graph6 column order (n <= 11)."""
    cdef int lab[MAXN]
    cdef int i, j
    cdef uint64_t key = 0
    cdef uint64_t row
    run(s, lab)
    for j in range(1, s.n):
        row = s.adj[lab[j]]
        for i in range(j):
            key = (key << 1) | ((row >> lab[i]) & 1)
    return key


cdef Search *new_search(int n):
    cdef Search *s = <Search *> malloc(sizeof(Search))
    s.n = n
    s.gens = NULL
    s.capgens = 0
    s.ngens = 0
    return s


cdef void free_search(Search *s):
    if s.gens != NULL:
        free(s.gens)
    free(s)


def canon(int n, rows):
    """Return ``lab`` with ``lab[i]`` the original vertex given canonical label ``i``."""
    cdef Search *s = new_search(n)
    cdef int out[MAXN]
    cdef int i
    try:
        for i in range(n):
            s.adj[i] = rows[i]
        with nogil:
            run(s, out)
        return [out[i] for i in range(n)]
    finally:
        free_search(s)


def canonical_key(int n, rows):
    cdef Search *s = new_search(n)
    cdef int i
    cdef uint64_t key
    if n > 11:
        free_search(s)
        raise ValueError("packed keys need n <= 11")
    try:
        for i in range(n):
            s.adj[i] = rows[i]
        with nogil:
            key = canonical_packed(s)
        return key
    finally:
        free_search(s)


def augment(int n, rows):
    """Canonical keys of every one-vertex extension of an order-``n`` graph.

    The new vertex gets label ``n`` and is joined to each subset of
    ``0..n-1`` in turn; one key per subset, duplicates kept.  Returns a
    ``uint64`` numpy array.
    """
    cdef int m = n + 1
    cdef uint64_t base[MAXN]
    cdef Search *s
    cdef uint64_t subset, total
    cdef int v
    cdef uint64_t[::1] view
    if m > 11:
        raise ValueError("augment supports parent order <= 10")
    for v in range(n):
        base[v] = rows[v]
    total = (<uint64_t>1) << n
    out = np.empty(total, dtype=np.uint64)
    view = out
    s = new_search(m)
    try:
        with nogil:
            for subset in range(total):
                for v in range(n):
                    s.adj[v] = base[v] | (((subset >> v) & 1) << n)
                s.adj[n] = subset
                view[subset] = canonical_packed(s)
        return out
    finally:
        free_search(s)
