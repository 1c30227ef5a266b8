"""Prüfer-style codes for labelled trees, rooted forests and trees with a fixed
independent set ``{1..m}``.

Vertices are ``1..n`` throughout. Each codec prunes leaves in a fixed label
order and records the neighbour of the pruned leaf:

* trees: smallest leaf first, code in ``[n]^(n-2)``;
* rooted forests: largest non-root leaf first until only roots remain, code
  ``(body, tail)`` with ``body`` in ``[n]^(n-1-m)`` and ``tail`` a root;
* trees with ``{1..m}`` independent: smallest leaf first, entries split between
  ``a`` in ``{m+1..n}^(m-1)`` and ``b`` in ``[n]^(n-m-1)``.
"""

from __future__ import annotations

import heapq
from collections import Counter
from dataclasses import dataclass
from typing import Iterable

__all__ = [
    "LabeledTree",
    "LabeledRootedForest",
    "ForestCode",
    "IndependentSetTreeCode",
    "encode_tree",
    "decode_tree",
    "encode_rooted_forest",
    "decode_rooted_forest",
    "encode_tree_with_independent_set",
    "decode_tree_with_independent_set",
]


def _normalise_edges(n: int, edges: Iterable) -> frozenset:
    out = set()
    for e in edges:
        u, v = e
        if not (1 <= u <= n and 1 <= v <= n):
            raise ValueError(f"edge {e} has an endpoint outside 1..{n}")
        if u == v:
            raise ValueError(f"self-loop at {u}")
        out.add((u, v) if u < v else (v, u))
    return frozenset(out)


def _components(n: int, edges) -> list[int] | None:
    """Union-find component label per vertex (index 1..n), or None on a cycle."""
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return None
        parent[ru] = rv
    return [find(x) for x in range(n + 1)]


def _adjacency(n: int, edges) -> list[set]:
    adj = [set() for _ in range(n + 1)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


@dataclass(frozen=True)
class LabeledTree:
    n: int
    edges: frozenset

    def __init__(self, n: int, edges: Iterable):
        if n < 1:
            raise ValueError(f"n must be >= 1, got {n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", _normalise_edges(n, edges))
        if len(self.edges) != n - 1:
            raise ValueError(f"a tree on {n} vertices has {n - 1} edges, got {len(self.edges)}")
        if _components(n, self.edges) is None:
            raise ValueError("edges contain a cycle")

    def degrees(self) -> list[int]:
        deg = [0] * (self.n + 1)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def max_degree(self) -> int:
        return max(self.degrees()[1:], default=0)

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in sorted(self.edges)]}

    @classmethod
    def from_dict(cls, data: dict) -> "LabeledTree":
        return cls(data["n"], [tuple(e) for e in data["edges"]])


@dataclass(frozen=True)
class LabeledRootedForest:
    n: int
    edges: frozenset
    roots: frozenset

    def __init__(self, n: int, edges: Iterable, roots: Iterable[int]):
        if n < 1:
            raise ValueError(f"n must be >= 1, got {n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", _normalise_edges(n, edges))
        object.__setattr__(self, "roots", frozenset(roots))
        if not self.roots or not all(1 <= r <= n for r in self.roots):
            raise ValueError(f"roots must be a non-empty subset of 1..{n}")
        comp = _components(n, self.edges)
        if comp is None:
            raise ValueError("edges contain a cycle")
        per_comp = Counter(comp[r] for r in self.roots)
        if any(c > 1 for c in per_comp.values()):
            raise ValueError("a component contains more than one root")
        if len(set(comp[1:])) != len(self.roots):
            raise ValueError("a component contains no root")

    @property
    def m(self) -> int:
        return len(self.roots)

    def degrees(self) -> list[int]:
        deg = [0] * (self.n + 1)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "edges": [list(e) for e in sorted(self.edges)],
            "roots": sorted(self.roots),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "LabeledRootedForest":
        return cls(data["n"], [tuple(e) for e in data["edges"]], data["roots"])


@dataclass(frozen=True)
class ForestCode:
    """``roots`` is sorted; when every vertex is a root the body is empty and the
    tail is, by convention, the smallest root."""

    roots: tuple
    body: tuple
    tail: int

    def to_dict(self) -> dict:
        return {"roots": list(self.roots), "body": list(self.body), "tail": self.tail}

    @classmethod
    def from_dict(cls, data: dict) -> "ForestCode":
        return cls(tuple(sorted(data["roots"])), tuple(data["body"]), data["tail"])


@dataclass(frozen=True)
class IndependentSetTreeCode:
    m: int
    a: tuple
    b: tuple

    def to_dict(self) -> dict:
        return {"m": self.m, "a": list(self.a), "b": list(self.b)}

    @classmethod
    def from_dict(cls, data: dict) -> "IndependentSetTreeCode":
        return cls(data["m"], tuple(data["a"]), tuple(data["b"]))


# -- plain trees ------------------------------------------------------------


def encode_tree(tree: LabeledTree) -> tuple:
    """Standard Prüfer code: vertex ``v`` occurs ``deg(v) - 1`` times."""
    n = tree.n
    if n < 2:
        raise ValueError("Prüfer codes need n >= 2")
    adj = _adjacency(n, tree.edges)
    deg = [len(a) for a in adj]
    leaves = [v for v in range(1, n + 1) if deg[v] == 1]
    heapq.heapify(leaves)
    code = []
    for _ in range(n - 2):
        v = heapq.heappop(leaves)
        (u,) = adj[v]
        code.append(u)
        adj[u].discard(v)
        deg[u] -= 1
        if deg[u] == 1:
            heapq.heappush(leaves, u)
    return tuple(code)


def _check_code(code, n, length, name="code"):
    if len(code) != length:
        raise ValueError(f"{name} must have length {length}, got {len(code)}")
    for x in code:
        if isinstance(x, bool) or not isinstance(x, int) or not 1 <= x <= n:
            raise ValueError(f"{name} entry {x!r} outside 1..{n}")


def decode_tree(code, n: int) -> LabeledTree:
    if n < 2:
        raise ValueError("Prüfer codes need n >= 2")
    code = tuple(code)
    _check_code(code, n, n - 2)
    deg = [1] * (n + 1)
    for x in code:
        deg[x] += 1
    leaves = [v for v in range(1, n + 1) if deg[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in code:
        v = heapq.heappop(leaves)
        edges.append((v, x))
        deg[x] -= 1
        if deg[x] == 1:
            heapq.heappush(leaves, x)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, v))
    return LabeledTree(n, edges)


# -- rooted forests ---------------------------------------------------------


def encode_rooted_forest(forest: LabeledRootedForest) -> ForestCode:
    """Prune the largest-labelled non-root leaf until only roots remain.

    A non-root vertex appears ``deg - 1`` times, the tail root ``deg - 1`` times
    in the body, any other root ``deg`` times.
    """
    n = forest.n
    roots = forest.roots
    if forest.m == n:
        return ForestCode(tuple(sorted(roots)), (), min(roots))
    adj = _adjacency(n, forest.edges)
    deg = [len(a) for a in adj]
    heap = [-v for v in range(1, n + 1) if v not in roots and deg[v] == 1]
    heapq.heapify(heap)
    seq = []
    for _ in range(n - forest.m):
        v = -heapq.heappop(heap)
        (u,) = adj[v]
        seq.append(u)
        adj[u].discard(v)
        deg[u] -= 1
        if u not in roots and deg[u] == 1:
            heapq.heappush(heap, -u)
    return ForestCode(tuple(sorted(roots)), tuple(seq[:-1]), seq[-1])


def decode_rooted_forest(code: ForestCode, n: int) -> LabeledRootedForest:
    roots = frozenset(code.roots)
    m = len(roots)
    if m != len(code.roots) or not 1 <= m <= n or not all(1 <= r <= n for r in roots):
        raise ValueError(f"roots must be m distinct labels in 1..{n}")
    if m == n:
        if code.body or code.tail != min(roots):
            raise ValueError("an all-root forest is coded by an empty body and the smallest root")
        return LabeledRootedForest(n, (), roots)
    _check_code(code.body, n, n - 1 - m, "body")
    if code.tail not in roots:
        raise ValueError(f"tail {code.tail} is not a root")
    seq = code.body + (code.tail,)
    occ = Counter(seq)
    heap = [-v for v in range(1, n + 1) if v not in roots and occ[v] == 0]
    heapq.heapify(heap)
    edges = []
    for x in seq:
        if not heap:
            raise ValueError("malformed forest code: no prunable vertex")
        v = -heapq.heappop(heap)
        edges.append((v, x))
        occ[x] -= 1
        if occ[x] == 0 and x not in roots:
            heapq.heappush(heap, -x)
    if heap:
        raise ValueError("malformed forest code: unpruned non-root vertices")
    return LabeledRootedForest(n, edges, roots)


# -- trees with independent set {1..m} --------------------------------------


def encode_tree_with_independent_set(tree: LabeledTree, m: int) -> IndependentSetTreeCode:
    n = tree.n
    if not 1 <= m <= n - 2:
        raise ValueError(f"need 1 <= m <= n-2, got m={m}, n={n}")
    if any(u <= m and v <= m for u, v in tree.edges):
        raise ValueError(f"vertices 1..{m} are not independent")
    adj = _adjacency(n, tree.edges)
    deg = [len(x) for x in adj]
    leaves = [v for v in range(1, n + 1) if deg[v] == 1]
    heapq.heapify(leaves)
    remaining = m
    a, b = [], []
    for _ in range(n - 2):
        v = heapq.heappop(leaves)
        (u,) = adj[v]
        if v <= m and remaining >= 2:
            a.append(u)
        else:
            b.append(u)
        if v <= m:
            remaining -= 1
        adj[u].discard(v)
        deg[u] -= 1
        if deg[u] == 1:
            heapq.heappush(leaves, u)
    return IndependentSetTreeCode(m, tuple(a), tuple(b))


def decode_tree_with_independent_set(code: IndependentSetTreeCode, n: int) -> LabeledTree:
    m = code.m
    if not 1 <= m <= n - 2:
        raise ValueError(f"need 1 <= m <= n-2, got m={m}, n={n}")
    _check_code(code.a, n, m - 1, "a")
    _check_code(code.b, n, n - m - 1, "b")
    if any(x <= m for x in code.a):
        raise ValueError(f"a may only contain labels in {m + 1}..{n}")
    occ = Counter(code.a) + Counter(code.b)
    leaves = [v for v in range(1, n + 1) if occ[v] == 0]
    heapq.heapify(leaves)
    ia = ib = 0
    remaining = m
    edges = []
    for _ in range(n - 2):
        v = heapq.heappop(leaves)
        if v <= m and remaining >= 2:
            if ia == len(code.a):
                raise ValueError("malformed code: sequence a exhausted")
            u = code.a[ia]
            ia += 1
        else:
            if ib == len(code.b):
                raise ValueError("malformed code: sequence b exhausted")
            u = code.b[ib]
            ib += 1
        if v <= m:
            remaining -= 1
        edges.append((v, u))
        occ[u] -= 1
        if occ[u] == 0:
            heapq.heappush(leaves, u)
    if ia != len(code.a) or ib != len(code.b):
        raise ValueError("malformed code: unused entries")
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    if any(u <= m and v <= m for u, v in edges):
        raise ValueError(f"malformed code: decodes to an edge inside 1..{m}")
    return LabeledTree(n, edges)
