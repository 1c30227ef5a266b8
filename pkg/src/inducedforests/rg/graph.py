"""Seeded binomial random graphs and induced-subgraph checks.

Vertices are ``0..n-1``. Adjacency is kept both as a boolean matrix and as one
Python-int bitmask per vertex, which is what the search code works with.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

__all__ = [
    "SampledGraph",
    "sample_gnp",
    "trial_seed",
    "is_induced_ok",
    "induced_profile",
]


@dataclass(frozen=True, eq=False)
class SampledGraph:
    n: int
    adjacency: np.ndarray
    p: float | None = None
    seed: int | None = None
    masks: tuple = field(init=False, repr=False)

    def __post_init__(self):
        adj = np.asarray(self.adjacency, dtype=bool)
        if adj.shape != (self.n, self.n):
            raise ValueError(f"adjacency must be {self.n}x{self.n}, got {adj.shape}")
        if adj.diagonal().any():
            raise ValueError("self-loops are not allowed")
        if not np.array_equal(adj, adj.T):
            raise ValueError("adjacency must be symmetric")
        adj = adj.copy()
        adj.setflags(write=False)
        object.__setattr__(self, "adjacency", adj)
        weights = [1 << j for j in range(self.n)]
        masks = tuple(sum(w for w, bit in zip(weights, row) if bit) for row in adj.tolist())
        object.__setattr__(self, "masks", masks)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "SampledGraph":
        adj = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            if u == v:
                raise ValueError("self-loops are not allowed")
            adj[u, v] = adj[v, u] = True
        return cls(n, adj)

    @property
    def edge_count(self) -> int:
        return int(self.adjacency.sum()) // 2

    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)

    def edges(self) -> list[tuple[int, int]]:
        i, j = np.nonzero(np.triu(self.adjacency, 1))
        return list(zip(i.tolist(), j.tolist()))

    def __eq__(self, other):
        if not isinstance(other, SampledGraph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.adjacency, other.adjacency)

    def __hash__(self):
        return hash((self.n, self.masks))


def sample_gnp(n: int, p: float, seed: int) -> SampledGraph:
    """G(n, p) from one uniform per pair, pairs in lexicographic order ``(i, j)``, ``i < j``."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    rng = np.random.default_rng(seed)
    i, j = np.triu_indices(n, 1)
    draws = rng.random(i.size)
    adj = np.zeros((n, n), dtype=bool)
    hit = draws < p
    adj[i[hit], j[hit]] = True
    adj |= adj.T
    return SampledGraph(n, adj, p=p, seed=seed)


def trial_seed(seed: int, trial_index: int) -> int:
    """Independent 64-bit seed for one trial, a pure function of ``(seed, trial_index)``."""
    ss = np.random.SeedSequence(seed, spawn_key=(trial_index,))
    return int(ss.generate_state(1, np.uint64)[0])


def _mask_of(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def induced_profile(masks, subset: int):
    """``(edge_count, max_degree, component_count)`` of the subgraph induced by a bitmask."""
    edges2 = 0
    max_deg = 0
    rest = subset
    while rest:
        low = rest & -rest
        v = low.bit_length() - 1
        rest ^= low
        d = (masks[v] & subset).bit_count()
        edges2 += d
        if d > max_deg:
            max_deg = d
    comps = 0
    rest = subset
    while rest:
        comps += 1
        frontier = rest & -rest
        seen = frontier
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            new = masks[low.bit_length() - 1] & subset & ~seen
            seen |= new
            frontier |= new
        rest &= ~seen
    return edges2 // 2, max_deg, comps


def is_induced_ok(graph: SampledGraph, subset, delta: int, mode: str) -> bool:
    """True iff ``graph[subset]`` is acyclic with max degree <= delta (and connected for trees).

    The empty set is a forest but not a tree.
    """
    if mode not in ("tree", "forest"):
        raise ValueError(f"mode must be 'tree' or 'forest', got {mode!r}")
    vertices = set(subset)
    if any(not 0 <= v < graph.n for v in vertices):
        raise ValueError("subset contains vertices outside the graph")
    mask = _mask_of(vertices)
    if not mask:
        return mode == "forest"
    edges, max_deg, comps = induced_profile(graph.masks, mask)
    size = len(vertices)
    if max_deg > delta or edges != size - comps:
        return False
    return mode == "forest" or comps == 1
