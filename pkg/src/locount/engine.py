"""Locate-and-count: exact strong and weak pattern counts in degenerate hosts."""
from __future__ import annotations

import logging
import math
import multiprocessing
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, NamedTuple

from .errors import AnchorMismatch, ParameterError
from .graph import Graph, OrderedGraph, degeneracy_order
from .pattern import (IndexRep, LocatabilityResult, Pattern, _min_cover_size, aut, aut_S,
                      degenerate_reps, min_locatable_c)
from .subsets import SubsetDictQ, SubsetDictR, build_Q, build_R

logger = logging.getLogger(__name__)

STRONG = "strong"
WEAK = "weak"


def _rank_supply(ordered: list, q: SubsetDictQ) -> list:
    """Re-key ``q.outside`` by rank in ``ordered`` instead of anchor position."""
    s = len(ordered)
    qbit = [q.mask((v,)) for v in ordered]
    supply = [0] * (1 << s)
    for qm in range(1 << s):
        rm = 0
        for i in range(s):
            if qm & qbit[i]:
                rm |= 1 << i
        supply[rm] = q.outside(qm)
    return supply


class _Anchored:
    """Per-candidate data shared by every representation tried at one ``S~``.

    ``supply[mask]`` counts vertices outside ``S~`` whose trace on ``S~`` is the
    index set ``mask``, where bit ``i`` is the ``i``-th vertex of ``S~`` in host
    order.  ``edges`` is ``G[S~]`` relabelled the same way.
    """

    __slots__ = ("ordered", "supply", "edges")

    def __init__(self, og: OrderedGraph, q: SubsetDictQ):
        ordered = og.sort_by_position(q.anchor)
        self.ordered = ordered
        self.supply = _rank_supply(ordered, q)
        s = len(ordered)
        g = og.graph
        self.edges = frozenset((i, j) for i in range(s) for j in range(i + 1, s)
                               if g.has_edge(ordered[i], ordered[j]))


def _anchored(og: OrderedGraph, St, q: SubsetDictQ) -> _Anchored:
    if tuple(sorted(St)) != q.anchor:
        raise AnchorMismatch(f"dictionary anchored at {q.anchor}, asked for {tuple(sorted(St))}")
    return _Anchored(og, q)


def _index_mask(I) -> int:
    m = 0
    for i in I:
        m |= 1 << i
    return m


# --- strong ------------------------------------------------------------------

def _strong(ctx: _Anchored, rep: IndexRep, autS: int) -> int:
    if ctx.edges != rep.edge_set:
        return 0
    k = 1
    for I, need in rep.J:
        k *= math.comb(ctx.supply[_index_mask(I)], need)
        if not k:
            return 0
    return autS * k


def count_strong_fixed(og: OrderedGraph, rep: IndexRep, St, q: SubsetDictQ, autS: int) -> int:
    """Strong embeddings with S-image ``St`` whose representation is ``rep``."""
    return _strong(_anchored(og, St, q), rep, autS)


# --- weak --------------------------------------------------------------------

@dataclass
class FlowNetwork:
    """Pools of host vertices grouped by trace, demands from the pattern classes.

    An arc joins a pool and a demand whose index set is contained in the pool's.
    """

    pools: list            # (index set, supply)
    demands: list          # (index set, demand)
    arcs: list             # (pool index, demand index)
    total_demand: int
    max_demand: int

    def arcs_into(self) -> list:
        into = [[] for _ in self.demands]
        for a, (_, r) in enumerate(self.arcs):
            into[r].append(a)
        return into


def _mask_to_index(mask: int) -> tuple:
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


def _network(supply: list, rep: IndexRep, d: int | None) -> FlowNetwork:
    pool_masks = [m for m in range(len(supply)) if supply[m] > 0]
    demand_masks = [_index_mask(I) for I, _ in rep.J]
    demand_at = {m: r for r, m in enumerate(demand_masks)}
    pool_at = {m: l for l, m in enumerate(pool_masks)}
    arcs = set()
    if d is None:
        d = rep.s
    for m in pool_masks:
        if m.bit_count() > d:
            for dm, r in demand_at.items():
                if dm & m == dm:
                    arcs.add((pool_at[m], r))
        else:
            sub = m
            while True:
                r = demand_at.get(sub)
                if r is not None:
                    arcs.add((pool_at[m], r))
                if not sub:
                    break
                sub = (sub - 1) & m
    demands = [(I, need) for I, need in rep.J]
    return FlowNetwork(
        pools=[(_mask_to_index(m), supply[m]) for m in pool_masks],
        demands=demands,
        arcs=sorted(arcs, key=lambda a: (a[1], a[0])),
        total_demand=sum(n for _, n in demands),
        max_demand=max((n for _, n in demands), default=0),
    )


def build_flow_network(rep: IndexRep, q: SubsetDictQ, ordered_anchor, d: int | None = None
                       ) -> FlowNetwork:
    """Flow network for ``rep`` at the anchor of ``q``, ordered as ``ordered_anchor``.

    ``d`` splits pools by trace size when enumerating arcs: small traces try
    their subsets, large ones are tested against every demand.
    """
    ordered_anchor = list(ordered_anchor)
    if sorted(ordered_anchor) != list(q.anchor):
        raise AnchorMismatch("ordered anchor is not the dictionary's anchor")
    return _network(_rank_supply(ordered_anchor, q), rep, d)


def enumerate_valid_flows(net: FlowNetwork) -> Iterator[tuple]:
    """Every integer arc assignment meeting each demand exactly within pool supplies.

    Yields tuples aligned with ``net.arcs``.
    """
    into = net.arcs_into()
    remaining = [sup for _, sup in net.pools]
    flow = [0] * len(net.arcs)
    ndem = len(net.demands)

    def fill(r: int, k: int, left: int):
        arcs = into[r]
        if k == len(arcs) - 1:
            a = arcs[k]
            l = net.arcs[a][0]
            if left <= remaining[l]:
                flow[a] = left
                remaining[l] -= left
                yield from demand(r + 1)
                remaining[l] += left
                flow[a] = 0
            return
        a = arcs[k]
        l = net.arcs[a][0]
        for x in range(min(left, remaining[l]), -1, -1):
            flow[a] = x
            remaining[l] -= x
            yield from fill(r, k + 1, left - x)
            remaining[l] += x
        flow[a] = 0

    def demand(r: int):
        if r == ndem:
            yield tuple(flow)
            return
        if not into[r]:
            return
        need = net.demands[r][1]
        reachable = sum(remaining[net.arcs[a][0]] for a in into[r])
        if reachable < need:
            return
        yield from fill(r, 0, need)

    yield from demand(0)


def flow_weight(net: FlowNetwork, flow: tuple, paper_literal: bool = False) -> int:
    """Number of distinct T-side vertex assignments realising ``flow``.

    Each pool chooses disjoint vertex sets for its arcs: a multinomial
    coefficient.  ``paper_literal`` drops the per-arc factorials, which counts
    ordered selections instead (kept for diagnostics).
    """
    out = [0] * len(net.pools)
    per_pool = [[] for _ in net.pools]
    for (l, _), x in zip(net.arcs, flow):
        out[l] += x
        per_pool[l].append(x)
    w = 1
    for l, (_, sup) in enumerate(net.pools):
        if paper_literal:
            w *= math.perm(sup, out[l])
        else:
            left = sup
            for x in per_pool[l]:
                w *= math.comb(left, x)
                left -= x
    return w


def _weak(ctx: _Anchored, rep: IndexRep, autS: int, d: int | None, paper_literal: bool) -> int:
    if not rep.edge_set <= ctx.edges:
        return 0
    net = _network(ctx.supply, rep, d)
    t = 0
    for f in enumerate_valid_flows(net):
        t += flow_weight(net, f, paper_literal)
    return autS * t


def count_weak_fixed(og: OrderedGraph, rep: IndexRep, St, q: SubsetDictQ, autS: int,
                     paper_literal: bool = False) -> int:
    """Weak embeddings with S-image ``St`` whose representation is ``rep``."""
    return _weak(_anchored(og, St, q), rep, autS, og.max_left_degree, paper_literal)


# --- the locate loop ------------------------------------------------------------

@dataclass
class CountResult:
    mode: str
    embeddings: int
    copies: int
    aut: int
    aut_S: int
    d: int
    locatability: LocatabilityResult | None
    reason: str | None = None
    reps: int = 0
    elapsed_ms: dict = field(default_factory=dict)
    stats: dict = field(default_factory=dict)

    def __iter__(self):
        yield self.embeddings
        yield self.copies


@dataclass
class _Job:
    og: OrderedGraph
    r: SubsetDictR
    s: int
    c: int
    reps: list
    autS: int
    mode: str
    paper_literal: bool
    dedup: str
    eligible: list
    s_degrees: list
    full_demand: int
    size_demands: list
    edge_count: int


def _passes_filters(job: _Job, St: tuple) -> bool:
    g = job.og.graph
    degs = sorted((g.degree(v) for v in St), reverse=True)
    if any(a < b for a, b in zip(degs, job.s_degrees)):
        return False
    e = 0
    for i in range(job.s):
        ni = g.neighbours(St[i])
        for j in range(i + 1, job.s):
            if St[j] in ni:
                e += 1
    if e < job.edge_count or (job.mode == STRONG and e != job.edge_count):
        return False
    if job.full_demand:
        common = g.neighbours(St[0])
        for v in St[1:]:
            common = common & g.neighbours(v)
            if len(common) < job.full_demand:
                return False
        if len(common) < job.full_demand:
            return False
    return True


def _supply_ok(job: _Job, supply: list) -> bool:
    s = job.s
    by_size = [0] * (s + 1)
    for m, c in enumerate(supply):
        by_size[m.bit_count()] += c
    if job.mode == STRONG:
        return all(by_size[k] >= job.size_demands[k] for k in range(s + 1))
    have = need = 0
    for k in range(s, 0, -1):
        have += by_size[k]
        need += job.size_demands[k]
        if have < need:
            return False
    return True


def _least_witness(og: OrderedGraph, St: tuple, c: int):
    bit = {v: 1 << i for i, v in enumerate(St)}
    masks = {}
    for x in St:
        for w in og.right(x) | {x}:
            m = 0
            for u in og.closed_left((w,)):
                m |= bit.get(u, 0)
            masks[w] = m
    full = (1 << len(St)) - 1
    k = _min_cover_size(masks.values(), full)
    for L in combinations(sorted(masks), k):
        m = 0
        for w in L:
            m |= masks[w]
        if m == full:
            return L
    return None


def _locate(job: _Job, worker: int = 0, workers: int = 1) -> tuple:
    og = job.og
    n = len(og)
    seen = set()
    total = 0
    generated = passed = processed = 0
    strong_by_edges = {}
    for rep in job.reps:
        strong_by_edges.setdefault(rep.edge_set, []).append(rep)
    d = og.max_left_degree
    eligible = job.eligible
    for size in range(1, job.c + 1):
        for L in combinations(range(n), size):
            pool = [v for v in og.closed_left(L) if eligible[v]]
            if len(pool) < job.s:
                continue
            pool.sort()
            for St in combinations(pool, job.s):
                generated += 1
                if workers > 1 and hash(St) % workers != worker:
                    continue
                if job.dedup == "hash" and St in seen:
                    continue
                if not _passes_filters(job, St):
                    continue
                if job.dedup == "hash":
                    seen.add(St)
                elif _least_witness(og, St, job.c) != L:
                    continue
                passed += 1
                q = build_Q(og, job.r, St)
                ctx = _Anchored(og, q)
                if not _supply_ok(job, ctx.supply):
                    continue
                processed += 1
                if job.mode == STRONG:
                    for rep in strong_by_edges.get(ctx.edges, ()):
                        total += _strong(ctx, rep, job.autS)
                else:
                    for rep in job.reps:
                        total += _weak(ctx, rep, job.autS, d, job.paper_literal)
    return total, {"candidates": generated, "distinct": passed, "counted": processed}


_WORKER_JOB = None


def _worker(args):
    worker, workers = args
    return _locate(_WORKER_JOB, worker, workers)


def _run_locate(job: _Job, threads: int) -> tuple:
    global _WORKER_JOB
    if threads <= 1:
        return _locate(job)
    _WORKER_JOB = job
    try:
        ctx = multiprocessing.get_context("fork")
        with ProcessPoolExecutor(max_workers=threads, mp_context=ctx) as ex:
            parts = list(ex.map(_worker, [(w, threads) for w in range(threads)]))
    finally:
        _WORKER_JOB = None
    total = sum(t for t, _ in parts)
    stats = {}
    for _, st in parts:
        for k, v in st.items():
            stats[k] = stats.get(k, 0) + v
    # every worker walks the full candidate stream
    stats["candidates"] //= threads
    return total, stats


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("LOCOUNT_THREADS", "1")))
    except ValueError:
        return 1


def count_pattern(g: Graph, p: Pattern, mode: str = WEAK, *, d: int | None = None,
                  threads: int | None = None, dedup: str = "hash",
                  paper_literal_weak: bool = False) -> CountResult:
    """Count strong or weak embeddings of ``p`` in ``g``.

    ``copies`` divides by ``aut(H)`` in weak mode and by ``aut_S(H)`` in strong
    mode, where embeddings are role-preserving.
    """
    if mode not in (STRONG, WEAK):
        raise ValueError(f"unknown mode {mode!r}")
    if dedup not in ("hash", "canonical"):
        raise ValueError(f"unknown dedup rule {dedup!r}")
    threads = default_threads() if threads is None else threads
    timings = {}
    t0 = time.perf_counter()
    og = degeneracy_order(g)
    host_d = og.max_left_degree
    if d is not None:
        if d < host_d:
            raise ParameterError(f"d = {d} is below the host degeneracy {host_d}")
        host_d = d
    timings["ordering"] = (time.perf_counter() - t0) * 1e3

    t0 = time.perf_counter()
    autS = aut_S(p)
    total_aut = aut(p)
    if p.degeneracy > host_d:
        timings["reps"] = (time.perf_counter() - t0) * 1e3
        return CountResult(mode, 0, 0, autS if mode == STRONG else total_aut, autS, host_d, None,
                           reason="pattern degeneracy exceeds host degeneracy",
                           elapsed_ms=timings)
    loc = min_locatable_c(p, host_d)
    reps = sorted(degenerate_reps(p, host_d))
    timings["reps"] = (time.perf_counter() - t0) * 1e3

    t0 = time.perf_counter()
    r = build_R(og)
    timings["R"] = (time.perf_counter() - t0) * 1e3

    s_deg = sorted((p.graph.degree(x) for x in p.S), reverse=True)
    size_demands = [0] * (p.s + 1)
    for X, n in p.class_sizes.items():
        size_demands[len(X)] += n
    min_deg = s_deg[-1]
    job = _Job(og=og, r=r, s=p.s, c=loc.c, reps=reps, autS=autS, mode=mode,
               paper_literal=paper_literal_weak, dedup=dedup,
               eligible=[g.degree(v) >= min_deg for v in range(len(og))],
               s_degrees=s_deg, full_demand=p.class_sizes.get(p.S, 0),
               size_demands=size_demands, edge_count=len(p.s_edges))
    t0 = time.perf_counter()
    total, stats = _run_locate(job, threads)
    timings["locate_count"] = (time.perf_counter() - t0) * 1e3
    # strong embeddings are role-preserving, so their images repeat aut_S times
    divisor = autS if mode == STRONG else total_aut
    copies, rem = divmod(total, divisor)
    if rem and not paper_literal_weak:
        raise AssertionError(f"embedding count {total} is not a multiple of {divisor}")
    return CountResult(mode, total, copies, divisor, autS, host_d, loc, reps=len(reps),
                       elapsed_ms=timings, stats=stats)


# --- bicliques ---------------------------------------------------------------------

class BicliqueCount(NamedTuple):
    embeddings: int
    copies: int


def biclique_aut(s: int, t: int) -> int:
    if s == t:
        return 2 * math.factorial(s) ** 2
    return math.factorial(s) * math.factorial(t)


def count_biclique(g: Graph, s: int, t: int, og: OrderedGraph | None = None,
                   r: SubsetDictR | None = None) -> BicliqueCount:
    """Copies of ``K_{s,t}`` as a subgraph, located through left neighbourhoods.

    Each copy is charged to the side that avoids its rightmost vertex; that
    side lies in the left neighbourhood of the rightmost vertex.
    """
    if s < 1 or s > t:
        raise ValueError("need 1 <= s <= t")
    og = og or degeneracy_order(g)
    d = og.max_left_degree
    if s >= d + 1:
        return BicliqueCount(0, 0)
    r = r or build_R(og)
    nbrs = g.neighbours
    pos = og.pos
    sizes = [(s, t)] if s == t or t > d else [(s, t), (t, s)]
    copies = 0
    for side, other in sizes:
        seen = set()
        for x in range(len(og)):
            left = og.left(x)
            if len(left) < side:
                continue
            for X in combinations(left, side):
                if X in seen:
                    continue
                seen.add(X)
                last = max(X, key=pos.__getitem__)
                c_left = 0
                for v in og.left(last):
                    if all(v in nbrs(u) for u in X):
                        c_left += 1
                c_right = r.get_key(X)
                copies += math.comb(c_left + c_right, other) - math.comb(c_left, other)
    return BicliqueCount(copies * biclique_aut(s, t), copies)
