"""Exact maximum induced bounded-degree trees and forests.

Three strategies are provided:

``bipartite`` (default)
    A forest is bipartite, so it splits into independent colour classes
    ``A`` (the larger) and ``B``. Passes run over ``|A| = K`` from the largest
    possible value downwards. Each pass enumerates independent sets of size
    ``K`` with a clique-cover bound, then searches for the best ``B``. A pass
    can only produce forests of size ``<= 2K``, so once the incumbent reaches
    ``2(K-1)`` it is optimal. Inside a pass every ``B`` vertex can be assumed to
    have a neighbour in ``A``, because otherwise moving it into ``A`` gives a
    class of size ``K + 1`` that was already covered by an earlier pass.

``inclusion``
    Plain include/exclude branch and bound in descending-degree order,
    with the remaining-vertex bound, degree pruning and acyclicity via
    component masks. Tree connectivity is only checked at recorded nodes.

``exhaustive``
    Scans all ``2**n`` subsets. Only for small graphs; used as the oracle.

``auto`` (default) picks ``inclusion`` for graphs with edge density below
``SPARSE_DENSITY`` and ``bipartite`` otherwise. On sparse graphs the optimum
is large relative to the independence number, so the bipartite passes barely
prune; on dense graphs the reverse holds.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import CapExceededError
from .graph import SampledGraph, induced_profile

__all__ = [
    "SEARCH_CAP",
    "EXHAUSTIVE_CAP",
    "SPARSE_DENSITY",
    "SearchResult",
    "SearchCapError",
    "max_induced_bounded",
    "max_induced_all",
]

SEARCH_CAP = 220
EXHAUSTIVE_CAP = 20
SPARSE_DENSITY = 0.25
_MODES = ("tree", "forest")


class SearchCapError(CapExceededError):
    """Raised instead of falling back to a heuristic on graphs that are too large."""


@dataclass(frozen=True)
class SearchResult:
    size: int
    witness: tuple
    nodes_explored: int
    mode: str
    delta: int
    strategy: str

    def to_dict(self) -> dict:
        return {
            "size": self.size,
            "witness": list(self.witness),
            "nodes_explored": self.nodes_explored,
            "mode": self.mode,
            "delta": self.delta,
            "strategy": self.strategy,
        }


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _clique_sequence(P, adj):
    """Greedy clique cover of ``P``: vertices in cover order with their running clique count."""
    order, colour = [], []
    k = 0
    while P:
        k += 1
        low = P & -P
        v = low.bit_length() - 1
        P ^= low
        order.append(v)
        colour.append(k)
        cand = P & adj[v]
        while cand:
            low = cand & -cand
            u = low.bit_length() - 1
            P ^= low
            order.append(u)
            colour.append(k)
            cand = (cand ^ low) & adj[u]
    return order, colour


def _clique_cover_size(P, adj, limit):
    """Greedy clique-cover size of ``P``, stopping early once it reaches ``limit``."""
    k = 0
    while P:
        k += 1
        if k >= limit:
            return k
        low = P & -P
        P ^= low
        cand = P & adj[low.bit_length() - 1]
        while cand:
            low = cand & -cand
            P ^= low
            cand = (cand ^ low) & adj[low.bit_length() - 1]
    return k


class _Counter:
    __slots__ = ("nodes",)

    def __init__(self):
        self.nodes = 0


def _independent_sets(adj, full, K, counter):
    """Yield every independent set of exactly ``K`` vertices, as a bitmask."""

    def rec(A, need, P):
        counter.nodes += 1
        if need == 0:
            yield A
            return
        order, colour = _clique_sequence(P, adj)
        for idx in range(len(order) - 1, -1, -1):
            if colour[idx] < need:
                return
            v = order[idx]
            P &= ~(1 << v)
            yield from rec(A | (1 << v), need - 1, P & ~adj[v])

    yield from rec(0, K, full)


class _Target:
    __slots__ = ("mode", "delta", "tree", "best", "witness", "counter", "done")

    def __init__(self, mode, delta, n):
        self.mode = mode
        self.delta = delta
        self.tree = mode == "tree"
        # a singleton is a tree; the empty set is a forest
        self.best = 1 if (self.tree and n) else 0
        self.witness = 1 if (self.tree and n) else 0
        self.counter = _Counter()
        self.done = False


def _extend_class(A, K, adj, nbr_a, target):
    """Best second colour class ``B`` for a fixed independent ``A`` with ``|A| = K``."""
    delta = target.delta
    counter = target.counter
    cost = {}
    by_cost = [0] * K
    for v, nA in nbr_a.items():
        d = nA.bit_count()
        if d <= delta:
            cost[v] = d - 1
            by_cost[d - 1] |= 1 << v
    within = [0] * K
    acc = 0
    for c in range(K):
        acc |= by_cost[c]
        within[c] = acc

    def room_for(Cb, R, cap):
        total = 0
        for c in range(min(R, K - 1) + 1):
            k = (Cb & by_cost[c]).bit_count()
            if not k:
                continue
            if c == 0:
                total += k
            else:
                take = min(k, R // c)
                total += take
                R -= take * c
                if take < k:
                    break
            if total >= cap:
                return cap
        return min(total, cap)

    deg = dict.fromkeys(_bits(A), 0)
    tree = target.tree

    def rec(Cb, bsize, used, comps, B):
        counter.nodes += 1
        size = K + bsize
        if size > target.best and (not tree or used == K - 1):
            target.best = size
            target.witness = A | B
        if bsize == K:
            return
        R = K - 1 - used
        while Cb:
            room = room_for(Cb, R, K - bsize)
            need = target.best - size + 1
            if room < need:
                return
            if need >= 2 and _clique_cover_size(Cb, adj, need) < need:
                return
            low = Cb & -Cb
            v = low.bit_length() - 1
            Cb ^= low
            nA = nbr_a[v]
            merged = nA
            rest = []
            for comp in comps:
                if comp & nA:
                    merged |= comp
                else:
                    rest.append(comp)
            rest.append(merged)
            R2 = R - cost[v]
            C2 = Cb & ~adj[v] & within[R2]
            for u in _bits(nA):
                deg[u] += 1
                if deg[u] == delta:
                    C2 &= ~adj[u]
            once = twice = 0
            for u in _bits(merged):
                a = adj[u]
                twice |= once & a
                once |= a
            C2 &= ~twice
            rec(C2, bsize + 1, used + cost[v], rest, B | low)
            for u in _bits(nA):
                deg[u] -= 1

    cands = 0
    for v in cost:
        cands |= 1 << v
    rec(cands, 0, 0, [1 << u for u in _bits(A)], 0)


def _bipartite_search(adj, n, targets):
    full = (1 << n) - 1
    shared = _Counter()
    if n == 0:
        return shared
    k_max = _clique_cover_size(full, adj, n + 1)
    for K in range(k_max, 0, -1):
        for t in targets:
            if t.best >= 2 * K:
                t.done = True
        active = [t for t in targets if not t.done]
        if not active:
            break
        for A in _independent_sets(adj, full, K, shared):
            nbr_a = {}
            rest = full & ~A
            for v in _bits(rest):
                nA = adj[v] & A
                if nA:
                    nbr_a[v] = nA
            for t in active:
                _extend_class(A, K, adj, nbr_a, t)
    return shared


def _inclusion_search(adj, n, target):
    counter = target.counter
    delta = target.delta
    tree = target.tree
    order = sorted(range(n), key=lambda v: (-adj[v].bit_count(), v))
    deg = [0] * n

    def rec(i, chosen, size, comps):
        counter.nodes += 1
        if size > target.best and (not tree or len(comps) == 1):
            target.best = size
            target.witness = chosen
        if i == n or size + (n - i) <= target.best:
            return
        v = order[i]
        nb = adj[v] & chosen
        if nb.bit_count() <= delta and all(deg[u] < delta for u in _bits(nb)):
            merged = 1 << v
            rest = []
            ok = True
            for comp in comps:
                hit = (comp & nb).bit_count()
                if hit > 1:
                    ok = False
                    break
                if hit:
                    merged |= comp
                else:
                    rest.append(comp)
            if ok:
                for u in _bits(nb):
                    deg[u] += 1
                deg[v] = nb.bit_count()
                rec(i + 1, chosen | (1 << v), size + 1, rest + [merged])
                for u in _bits(nb):
                    deg[u] -= 1
                deg[v] = 0
        rec(i + 1, chosen, size, comps)

    rec(0, 0, 0, [])


def _exhaustive_search(adj, n, targets):
    for mask in range(1, 1 << n):
        size = mask.bit_count()
        if all(size <= t.best for t in targets):
            continue
        edges, max_deg, comps = induced_profile(adj, mask)
        if edges != size - comps:
            continue
        for t in targets:
            t.counter.nodes += 1
            if size > t.best and max_deg <= t.delta and (not t.tree or comps == 1):
                t.best = size
                t.witness = mask


def _check(graph, delta, cap, strategy):
    if not isinstance(graph, SampledGraph):
        raise TypeError("graph must be a SampledGraph")
    if delta < 0:
        raise ValueError(f"delta must be nonnegative, got {delta}")
    if strategy not in ("auto", "bipartite", "inclusion", "exhaustive"):
        raise ValueError(f"unknown strategy {strategy!r}")
    limit = EXHAUSTIVE_CAP if strategy == "exhaustive" else cap
    if graph.n > limit:
        raise SearchCapError(f"n={graph.n} exceeds the {strategy} search cap {limit}")


def _resolve(graph, strategy):
    if strategy != "auto":
        return strategy
    pairs = graph.n * (graph.n - 1) // 2
    return "inclusion" if pairs and graph.edge_count < SPARSE_DENSITY * pairs else "bipartite"


def _run(graph, specs, strategy):
    strategy = _resolve(graph, strategy)
    targets = [_Target(mode, delta, graph.n) for mode, delta in specs]
    adj = graph.masks
    shared = _Counter()
    if strategy == "bipartite":
        shared = _bipartite_search(adj, graph.n, targets)
    elif strategy == "inclusion":
        for t in targets:
            _inclusion_search(adj, graph.n, t)
    else:
        _exhaustive_search(adj, graph.n, targets)
    return [
        SearchResult(
            size=t.best,
            witness=tuple(_bits(t.witness)),
            nodes_explored=t.counter.nodes + shared.nodes,
            mode=t.mode,
            delta=t.delta,
            strategy=strategy,
        )
        for t in targets
    ]


def max_induced_bounded(graph: SampledGraph, delta: int, mode: str, strategy: str = "auto",
                        cap: int = SEARCH_CAP) -> SearchResult:
    """Exact maximum induced tree (``mode='tree'``) or forest with max degree <= delta."""
    if mode not in _MODES:
        raise ValueError(f"mode must be 'tree' or 'forest', got {mode!r}")
    _check(graph, delta, cap, strategy)
    return _run(graph, [(mode, delta)], strategy)[0]


def max_induced_all(graph: SampledGraph, delta: int, strategy: str = "auto",
                    cap: int = SEARCH_CAP) -> dict[str, SearchResult]:
    """``T_delta``, ``F_delta`` and unbounded ``F`` in one search sharing the class enumeration."""
    _check(graph, delta, cap, strategy)
    unbounded = max(graph.n - 1, delta)
    specs = [("tree", delta), ("forest", delta), ("forest", unbounded)]
    tree, forest, free = _run(graph, specs, strategy)
    return {"tree": tree, "forest": forest, "forest_unbounded": free}
