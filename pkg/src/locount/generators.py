"""Seeded instance generators.

All randomness comes from :class:`random.Random` (Mersenne Twister) seeded
with the integer in :class:`GenSpec`, so a spec always reproduces the same
graph.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations

from .graph import Graph, degeneracy
from .pattern import Pattern, validate_pattern


@dataclass(frozen=True)
class GenSpec:
    seed: int
    n: int
    d: int
    attach_prob: float = 1.0


def gen_random_degenerate(spec: GenSpec) -> Graph:
    """Vertex ``i`` attaches to ``min(d, i)`` uniformly chosen earlier vertices.

    With ``attach_prob < 1`` each chosen back-edge is kept independently with
    that probability.  Every vertex has at most ``d`` earlier neighbours, so the
    degeneracy is at most ``d``.
    """
    if spec.n < 0 or spec.d < 0:
        raise ValueError("n and d must be non-negative")
    rng = random.Random(spec.seed)
    edges = []
    for i in range(1, spec.n):
        for j in rng.sample(range(i), min(spec.d, i)):
            if spec.attach_prob >= 1.0 or rng.random() < spec.attach_prob:
                edges.append((j, i))
    return Graph.from_edges(spec.n, edges)


def _components(n: int, edges: set) -> list:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        parent[find(u)] = find(v)
    groups = {}
    for v in range(n):
        groups.setdefault(find(v), []).append(v)
    return list(groups.values())


def gen_random_pattern(s: int, t: int, seed: int, d: int | None = None, s_edge_prob: float = 0.4,
                       max_class: int | None = None, max_tries: int = 200) -> Pattern:
    """Random valid pattern with ``|S| = s`` and ``|T| = t``.

    Each T-vertex gets a random non-empty neighbourhood in S (at most
    ``max_class`` vertices), S-S edges appear with probability ``s_edge_prob``,
    and disconnected samples are repaired with S-S edges between components.
    When ``d`` is given, samples of degeneracy above ``d`` are rejected.
    Vertex indices are shuffled so S is not always a prefix.
    """
    if not 1 <= s < t:
        raise ValueError(f"need 1 <= |S| < |T|, got |S|={s}, |T|={t}")
    rng = random.Random(seed)
    cap = s if max_class is None else max(1, min(max_class, s))
    for _ in range(max_tries):
        n = s + t
        label = list(range(n))
        rng.shuffle(label)
        S = label[:s]
        T = label[s:]
        edges = set()
        for u, v in combinations(S, 2):
            if rng.random() < s_edge_prob:
                edges.add((min(u, v), max(u, v)))
        for x in T:
            k = rng.randint(1, cap)
            for u in rng.sample(S, k):
                edges.add((min(u, x), max(u, x)))
        comps = _components(n, edges)
        while len(comps) > 1:
            a = rng.choice([v for v in comps[0] if v in S])
            b = rng.choice([v for v in comps[1] if v in S])
            edges.add((min(a, b), max(a, b)))
            comps = _components(n, edges)
        g = Graph.from_edges(n, edges)
        if d is not None and degeneracy(g) > d:
            continue
        return validate_pattern(g, S, T)
    raise ValueError(f"no pattern with |S|={s}, |T|={t}, degeneracy <= {d} after {max_tries} tries")


def gen_planted(spec: GenSpec, p: Pattern) -> Graph:
    """Random degenerate host with one copy of ``p`` planted on random vertices."""
    base = gen_random_degenerate(spec)
    if base.vertex_count < p.graph.vertex_count:
        raise ValueError("host too small to plant the pattern")
    rng = random.Random(spec.seed ^ 0x5EED)
    image = rng.sample(range(base.vertex_count), p.graph.vertex_count)
    edges = set(base.edges())
    for u, v in p.graph.edges():
        a, b = image[u], image[v]
        edges.add((min(a, b), max(a, b)))
    return Graph.from_edges(base.vertex_count, edges)


@dataclass
class ReductionInstance:
    host: Graph
    pattern: Pattern
    k: int
    d: int
    host_roles: dict = field(default_factory=dict)
    pattern_roles: dict = field(default_factory=dict)


def _reduction_graph(base: Graph, d: int, prefix: str):
    """Subdivide ``base`` and add the two dense gadgets; returns graph and roles."""
    n0 = base.vertex_count
    names = [f"{prefix}b{base.name(v)}" for v in range(n0)]
    B = list(range(n0))
    A = []
    edges = []
    for u, v in base.edges():
        a = len(names)
        names.append(f"{prefix}a{base.name(u)}_{base.name(v)}")
        A.append(a)
        edges += [(a, u), (a, v)]
    DA = list(range(len(names), len(names) + d - 2))
    names += [f"{prefix}da{i}" for i in range(d - 2)]
    DB = list(range(len(names), len(names) + d))
    names += [f"{prefix}db{i}" for i in range(d)]
    edges += [(x, a) for x in DA for a in A]
    edges += [(y, b) for y in DB for b in B + DA]
    g = Graph.from_edges(len(names), edges, names)
    return g, {"A": A, "B": B, "D_A": DA, "D_B": DB}


def gen_reduction_instance(gprime: Graph, k: int, d: int) -> ReductionInstance:
    """Host and pattern whose weak copy count equals the k-clique count of ``gprime``."""
    if d < 5:
        raise ValueError("the reduction needs d >= 5")
    if k < 3:
        raise ValueError("the reduction needs k >= 3")
    host, host_roles = _reduction_graph(gprime, d, "")
    kk = Graph.from_edges(k, combinations(range(k), 2), [str(i) for i in range(k)])
    hg, pattern_roles = _reduction_graph(kk, d, "h")
    S = pattern_roles["B"] + pattern_roles["D_A"]
    T = pattern_roles["A"] + pattern_roles["D_B"]
    pattern = validate_pattern(hg, S, T)
    return ReductionInstance(host, pattern, k, d, host_roles, pattern_roles)
