"""Exact counts of small induced trees and weighted induced forests.

For a graph ``G`` and size ``k`` this computes

* ``Y_k``: the number of ``k``-sets inducing a tree with max degree <= delta;
* ``Z_k``: the number of ``k``-sets inducing a forest with max degree <= delta,
  each weighted by its number of admissible rootings, i.e. the product over
  components of the number of vertices with degree <= delta - 1.

``Z_k`` is the number of induced rooted forests whose roots have degree at most
``delta - 1``. Both properties are closed under taking subsets, so the search
extends only partial sets that are already bounded-degree forests.
"""

from __future__ import annotations

import numpy as np
from functools import lru_cache

from numba import njit

from ..errors import CapExceededError
from .graph import SampledGraph

__all__ = ["COUNT_K_CAP", "count_induced_structures", "count_induced_pair"]

COUNT_K_CAP = 8
# largest k whose pattern tables (2**C(k, 2) entries) are precomputed
TABLE_K_MAX = 7


@njit(cache=True)
def _score_pattern(P, s, label, deg, rc, seen, comps, delta):
    # (extends, is_tree, rooting_weight) for a new vertex adjacent to the chosen set as in P
    good = True
    cnt = 0
    for i in range(s):
        if (P >> i) & 1:
            cnt += 1
            lab = label[s, i]
            if deg[s, i] >= delta or seen[lab]:
                good = False
            seen[lab] = 1
    if cnt > delta:
        good = False
    tree = 0
    w = 0
    if good:
        tree = 1 if comps - cnt + 1 == 1 else 0
        merged = 1 if cnt <= delta - 1 else 0
        for i in range(s):
            if (P >> i) & 1:
                merged += rc[label[s, i]]
                if deg[s, i] == delta - 1:
                    merged -= 1
        w = merged
        for i in range(s):
            if label[s, i] == i and not seen[i]:
                w *= rc[i]
    for i in range(s):
        seen[i] = 0
    return good, tree, w


@njit(cache=True)
def _count_kernel(adj, k, delta):
    # pat[s, v] has bit i set when v is adjacent to the i-th chosen vertex;
    # ok[s, P] says whether a vertex with pattern P extends the level-s set
    n = adj.shape[0]
    size = 1 << (k - 1)
    verts = np.zeros(k + 1, np.int64)
    start = np.zeros(k + 1, np.int64)
    label = np.zeros((k + 1, k + 1), np.int64)
    deg = np.zeros((k + 1, k + 1), np.int64)
    pat = np.zeros((k + 1, n), np.int64)
    ok = np.zeros((k + 1, size), np.bool_)
    stamp = np.zeros(size, np.int64)
    ok_last = np.zeros(size, np.bool_)
    tree_t = np.zeros(size, np.int64)
    weight_t = np.zeros(size, np.int64)
    rc = np.zeros(k + 1, np.int64)
    seen = np.zeros(k + 1, np.int64)
    node = 0
    comps = 0
    y = 0
    z = 0
    s = 0
    fresh = True
    while s >= 0:
        if fresh:
            comps = 0
            for i in range(s):
                rc[i] = 0
            for i in range(s):
                if label[s, i] == i:
                    comps += 1
                if deg[s, i] <= delta - 1:
                    rc[label[s, i]] += 1
            if s < k - 1:
                for P in range(1 << s):
                    ok[s, P] = _score_pattern(P, s, label, deg, rc, seen, comps, delta)[0]
            fresh = False
        if s == k - 1:
            # last vertex: table entries are filled on first use
            node += 1
            for v in range(start[s], n):
                P = pat[s, v]
                if stamp[P] != node:
                    stamp[P] = node
                    good, tree, w = _score_pattern(P, s, label, deg, rc, seen, comps, delta)
                    ok_last[P] = good
                    tree_t[P] = tree
                    weight_t[P] = w
                if ok_last[P]:
                    y += tree_t[P]
                    z += weight_t[P]
            s -= 1
            if s >= 0:
                start[s] = verts[s] + 1
            continue
        placed = False
        v = start[s]
        while v <= n - (k - s):
            P = pat[s, v]
            if ok[s, P]:
                new = s
                for i in range(s):
                    label[s + 1, i] = label[s, i]
                    deg[s + 1, i] = deg[s, i]
                    if (P >> i) & 1 and label[s, i] < new:
                        new = label[s, i]
                cnt = 0
                for i in range(s):
                    if (P >> i) & 1:
                        cnt += 1
                        deg[s + 1, i] += 1
                        old = label[s, i]
                        if old != new:
                            for j in range(s):
                                if label[s, j] == old:
                                    label[s + 1, j] = new
                label[s + 1, s] = new
                deg[s + 1, s] = cnt
                for u in range(v + 1, n):
                    pat[s + 1, u] = pat[s, u] | (np.int64(adj[v, u]) << s)
                verts[s] = v
                s += 1
                start[s] = v + 1
                placed = True
                fresh = True
                break
            v += 1
        if not placed:
            s -= 1
            if s >= 0:
                start[s] = verts[s] + 1
    return y, z


@njit(cache=True)
def _pattern_tables(k, delta):
    # pair (i, j), i < j, of the k chosen vertices sits at bit j*(j-1)/2 + i
    npairs = k * (k - 1) // 2
    total = 1 << npairs
    ok = np.zeros(total, np.bool_)
    tree = np.zeros(total, np.int64)
    weight = np.zeros(total, np.int64)
    deg = np.zeros(k, np.int64)
    parent = np.zeros(k, np.int64)
    roots = np.zeros(k, np.int64)
    for P in range(total):
        for i in range(k):
            deg[i] = 0
            parent[i] = i
        acyclic = True
        for j in range(1, k):
            for i in range(j):
                if (P >> (j * (j - 1) // 2 + i)) & 1:
                    deg[i] += 1
                    deg[j] += 1
                    a = i
                    while parent[a] != a:
                        a = parent[a]
                    b = j
                    while parent[b] != b:
                        b = parent[b]
                    if a == b:
                        acyclic = False
                    else:
                        parent[b] = a
        if not acyclic:
            continue
        good = True
        for i in range(k):
            if deg[i] > delta:
                good = False
        if not good:
            continue
        ok[P] = True
        comps = 0
        for i in range(k):
            roots[i] = 0
        for i in range(k):
            a = i
            while parent[a] != a:
                a = parent[a]
            if a == i:
                comps += 1
            if deg[i] <= delta - 1:
                roots[a] += 1
        w = 1
        for i in range(k):
            if parent[i] == i:
                w *= roots[i]
        tree[P] = 1 if comps == 1 else 0
        weight[P] = w
    return ok, tree, weight


@njit(cache=True)
def _count_with_tables(adj, k, ok, tree, weight):
    n = adj.shape[0]
    verts = np.zeros(k + 1, np.int64)
    start = np.zeros(k + 1, np.int64)
    pattern = np.zeros(k + 1, np.int64)
    y = 0
    z = 0
    s = 0
    while s >= 0:
        shift = s * (s - 1) // 2
        base = pattern[s]
        if s == k - 1:
            for v in range(start[s], n):
                bits = 0
                for i in range(s):
                    bits |= np.int64(adj[verts[i], v]) << i
                P = base | (bits << shift)
                if ok[P]:
                    y += tree[P]
                    z += weight[P]
            s -= 1
            if s >= 0:
                start[s] = verts[s] + 1
            continue
        placed = False
        for v in range(start[s], n - (k - s) + 1):
            bits = 0
            for i in range(s):
                bits |= np.int64(adj[verts[i], v]) << i
            P = base | (bits << shift)
            if ok[P]:
                verts[s] = v
                pattern[s + 1] = P
                s += 1
                start[s] = v + 1
                placed = True
                break
        if not placed:
            s -= 1
            if s >= 0:
                start[s] = verts[s] + 1
    return y, z


@lru_cache(maxsize=16)
def _tables(k, delta):
    return _pattern_tables(k, delta)


def _check(graph, k, delta, cap):
    if not isinstance(graph, SampledGraph):
        raise TypeError("graph must be a SampledGraph")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if k > cap:
        raise CapExceededError(f"k={k} exceeds the counting cap {cap}")
    if delta < 1:
        raise ValueError(f"delta must be >= 1, got {delta}")


def count_induced_pair(graph: SampledGraph, k: int, delta: int, cap: int = COUNT_K_CAP) -> tuple[int, int]:
    """``(Y_k, Z_k)`` for one graph in a single pass."""
    _check(graph, k, delta, cap)
    if k > graph.n:
        return 0, 0
    adj = graph.adjacency.astype(np.uint8)
    if k <= TABLE_K_MAX:
        y, z = _count_with_tables(adj, k, *_tables(k, delta))
    else:
        y, z = _count_kernel(adj, k, delta)
    return int(y), int(z)


def count_induced_structures(graph: SampledGraph, k: int, delta: int, kind: str,
                             cap: int = COUNT_K_CAP) -> int:
    """``Y_k`` for ``kind='tree'`` or ``Z_k`` for ``kind='rooted_forest'``."""
    if kind not in ("tree", "rooted_forest"):
        raise ValueError(f"kind must be 'tree' or 'rooted_forest', got {kind!r}")
    y, z = count_induced_pair(graph, k, delta, cap)
    return y if kind == "tree" else z
