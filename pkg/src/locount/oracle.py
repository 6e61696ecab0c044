"""Brute-force reference counters.

Nothing here calls into the counting engine, the subset dictionaries or the
pattern-analysis search; these are the ground truth the fast paths are
checked against, so they stay deliberately plain.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

from .errors import BudgetExceeded
from .graph import Graph

__all__ = [
    "OracleBudget",
    "oracle_embeddings",
    "oracle_count_strong",
    "oracle_count_weak",
    "oracle_count_cliques",
    "oracle_automorphisms",
    "oracle_locatability",
    "oracle_degenerate_reps",
    "oracle_left_cover",
    "oracle_degeneracy",
]


@dataclass(frozen=True)
class OracleBudget:
    max_host_vertices: int = 40
    max_pattern_vertices: int = 16
    node_limit: int = 20_000_000


DEFAULT_BUDGET = OracleBudget()


class _Counter:
    __slots__ = ("nodes", "limit")

    def __init__(self, limit):
        self.nodes = 0
        self.limit = limit

    def tick(self):
        self.nodes += 1
        if self.nodes > self.limit:
            raise BudgetExceeded(f"oracle exceeded {self.limit} search nodes")


def _check_sizes(budget: OracleBudget, host: int | None = None, pattern: int | None = None):
    if host is not None and host > budget.max_host_vertices:
        raise BudgetExceeded(f"host has {host} vertices, budget is {budget.max_host_vertices}")
    if pattern is not None and pattern > budget.max_pattern_vertices:
        raise BudgetExceeded(
            f"pattern has {pattern} vertices, budget is {budget.max_pattern_vertices}")


def oracle_embeddings(g: Graph, H: Graph, S: Iterable[int], T: Iterable[int], strong: bool,
                      budget: OracleBudget = DEFAULT_BUDGET,
                      s_image: Iterable[int] | None = None) -> Iterator[dict]:
    """Yield every strong (or weak) embedding as a dict pattern-vertex -> host-vertex.

    ``s_image`` restricts the embeddings to those mapping ``S`` onto that set.
    """
    S = list(S)
    T = list(T)
    Sset = set(S)
    _check_sizes(budget, g.vertex_count, H.vertex_count)
    counter = _Counter(budget.node_limit)
    allowed_s = set(s_image) if s_image is not None else None
    if allowed_s is not None and len(allowed_s) != len(S):
        return
    S.sort(key=lambda u: -H.degree(u))
    seq = S + T
    phi = {}
    used = set()
    host_all = range(g.vertex_count)

    def compatible(u, v):
        if g.degree(v) < H.degree(u):
            return False
        for w, x in phi.items():
            e_h = H.has_edge(u, w)
            e_g = g.has_edge(v, x)
            if strong and (u in Sset or w in Sset):
                if e_h != e_g:
                    return False
            elif e_h and not e_g:
                return False
        return True

    def t_lookahead():
        for t in T:
            if t in phi:
                continue
            images = [phi[w] for w in H.neighbours(t) if w in phi]
            if not images:
                continue
            cand = set(g.neighbours(images[0]))
            for x in images[1:]:
                cand &= g.neighbours(x)
            if not cand - used:
                return False
        return True

    def rec(k):
        counter.tick()
        if k == len(seq):
            yield dict(phi)
            return
        u = seq[k]
        mapped_nbrs = [phi[w] for w in H.neighbours(u) if w in phi]
        if mapped_nbrs:
            cands = sorted(g.neighbours(mapped_nbrs[0]))
        else:
            cands = host_all
        in_s = u in Sset
        for v in cands:
            if v in used:
                continue
            if in_s and allowed_s is not None and v not in allowed_s:
                continue
            if not in_s and allowed_s is not None and v in allowed_s:
                continue
            if not compatible(u, v):
                continue
            phi[u] = v
            used.add(v)
            if not in_s or t_lookahead():
                yield from rec(k + 1)
            del phi[u]
            used.discard(v)

    yield from rec(0)


def _count(it) -> int:
    n = 0
    for _ in it:
        n += 1
    return n


def oracle_count_strong(g: Graph, p, budget: OracleBudget = DEFAULT_BUDGET,
                        s_image=None) -> int:
    """Injective maps exact on every S-S and S-T pair (T-T pairs free)."""
    return _count(oracle_embeddings(g, p.graph, p.S, p.T, True, budget, s_image))


def oracle_count_weak(g: Graph, p, budget: OracleBudget = DEFAULT_BUDGET,
                      s_image=None) -> int:
    """Injective maps sending every pattern edge onto a host edge."""
    return _count(oracle_embeddings(g, p.graph, p.S, p.T, False, budget, s_image))


def oracle_count_cliques(g: Graph, k: int, budget: OracleBudget = DEFAULT_BUDGET) -> int:
    if k < 1:
        raise ValueError("k must be positive")
    _check_sizes(budget, g.vertex_count)
    if math.comb(g.vertex_count, k) > budget.node_limit:
        raise BudgetExceeded(f"C({g.vertex_count}, {k}) subsets exceed the node budget")
    return sum(1 for X in combinations(range(g.vertex_count), k)
               if all(g.has_edge(u, v) for u, v in combinations(X, 2)))


def oracle_automorphisms(g: Graph, S: Iterable[int] | None = None,
                         budget: OracleBudget = DEFAULT_BUDGET) -> int:
    """Adjacency-preserving permutations (mapping ``S`` onto itself when given)."""
    _check_sizes(budget, pattern=g.vertex_count)
    n = g.vertex_count
    Sset = set(S) if S is not None else None
    counter = _Counter(budget.node_limit)
    lam = [-1] * n
    used = [False] * n

    def rec(u):
        counter.tick()
        if u == n:
            return 1
        total = 0
        for v in range(n):
            if used[v] or g.degree(v) != g.degree(u):
                continue
            if Sset is not None and ((u in Sset) != (v in Sset)):
                continue
            if any(g.has_edge(u, w) != g.has_edge(v, lam[w]) for w in range(u)):
                continue
            lam[u] = v
            used[v] = True
            total += rec(u + 1)
            used[v] = False
        lam[u] = -1
        return total

    return rec(0)


def oracle_left_cover(order: list, g: Graph, Sp: Iterable[int]) -> tuple:
    """Exhaustive search: smallest (then lexicographic) C with Sp inside N^-[C]."""
    Sp = set(Sp)
    pos = {v: i for i, v in enumerate(order)}
    closed = {v: {v} | {u for u in g.neighbours(v) if pos[u] < pos[v]} for v in order}
    for k in range(0, len(order) + 1):
        for C in combinations(sorted(order), k):
            covered = set()
            for v in C:
                covered |= closed[v]
            if Sp <= covered:
                return C
    raise AssertionError("unreachable")


def _orderings(g: Graph, d: int, counter: _Counter) -> Iterator[list]:
    """All vertex orderings with every left-degree at most ``d``.

    Prefixes that already break the bound are cut; the survivors are exactly the
    filtered full enumeration.
    """
    n = g.vertex_count
    order = []
    placed = [False] * n

    def rec():
        counter.tick()
        if len(order) == n:
            yield list(order)
            return
        for v in range(n):
            if placed[v]:
                continue
            if sum(1 for u in g.neighbours(v) if placed[u]) > d:
                continue
            placed[v] = True
            order.append(v)
            yield from rec()
            order.pop()
            placed[v] = False

    yield from rec()


def oracle_degeneracy(g: Graph) -> int:
    """Maximum over vertex subsets of the minimum induced degree."""
    n = g.vertex_count
    best = 0
    for mask in range(1, 1 << n):
        vs = [v for v in range(n) if mask >> v & 1]
        low = min(sum(1 for u in g.neighbours(v) if mask >> u & 1) for v in vs)
        best = max(best, low)
    return best


def oracle_locatability(p, d: int, budget: OracleBudget = OracleBudget(max_pattern_vertices=10)):
    """Max over all d-degenerate orderings of the exhaustive left-cover number of S."""
    from .pattern import LOCATABLE, NOT_D_DEGENERATE, LocatabilityResult

    g = p.graph
    _check_sizes(budget, pattern=g.vertex_count)
    counter = _Counter(budget.node_limit)
    S = list(p.S)
    cache = {}
    best = None
    for order in _orderings(g, d, counter):
        pos = {v: i for i, v in enumerate(order)}
        sig = tuple(frozenset(u for u in ({v} | g.neighbours(v)) if pos[u] <= pos[v] and u in p.S)
                    for v in range(g.vertex_count))
        if sig not in cache:
            cache[sig] = len(oracle_left_cover(order, g, S))
        c = cache[sig]
        if best is None or c > best[0]:
            best = (c, tuple(order))
    if best is None:
        return LocatabilityResult(NOT_D_DEGENERATE)
    cover = oracle_left_cover(list(best[1]), g, S)
    return LocatabilityResult(LOCATABLE, best[0], best[1], cover)


def oracle_degenerate_reps(p, d: int, budget: OracleBudget = OracleBudget(max_pattern_vertices=10)
                           ) -> set:
    """Representations (as ``(s, edges, J)`` tuples) over all d-degenerate orderings."""
    g = p.graph
    _check_sizes(budget, pattern=g.vertex_count)
    counter = _Counter(budget.node_limit)
    Sset = set(p.S)
    out = set()
    for order in _orderings(g, d, counter):
        s_order = [v for v in order if v in Sset]
        rank = {v: i for i, v in enumerate(s_order)}
        edges = tuple(sorted((min(rank[u], rank[v]), max(rank[u], rank[v]))
                             for u, v in combinations(s_order, 2) if g.has_edge(u, v)))
        J = {}
        for t in p.T:
            key = tuple(sorted(rank[x] for x in g.neighbours(t)))
            J[key] = J.get(key, 0) + 1
        out.add((len(s_order), edges, tuple(sorted(J.items()))))
    return out
