"""Two-sided patterns: validation, automorphisms, index representations and
locatability.

A pattern is a connected graph ``H`` with sides ``S`` (small) and ``T``
(large, independent, every vertex adjacent to ``S``).  Because ``S`` is a
vertex cover, everything here is driven by the neighbourhood classes of ``T``
with respect to ``S``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, permutations
from typing import Iterable, Sequence

from .errors import GraphFormatError, PatternError
from .graph import Graph, OrderedGraph, degeneracy, neighbourhood_classes

NOT_D_DEGENERATE = "not_d_degenerate"
LOCATABLE = "locatable"


class Pattern:
    """A validated pattern; build through :func:`validate_pattern`."""

    def __init__(self, graph: Graph, S: Sequence[int], T: Sequence[int]):
        self.graph = graph
        self.S = tuple(sorted(S))
        self.T = tuple(sorted(T))
        self.classes = neighbourhood_classes(graph, self.S, self.T)

    def __repr__(self):
        return f"Pattern(|S|={len(self.S)}, |T|={len(self.T)}, m={self.graph.edge_count})"

    @property
    def s(self) -> int:
        return len(self.S)

    @cached_property
    def class_sizes(self) -> dict:
        return {X: len(members) for X, members in self.classes.items()}

    @cached_property
    def degeneracy(self) -> int:
        return degeneracy(self.graph)

    @cached_property
    def s_edges(self) -> list:
        Sset = set(self.S)
        return [(u, v) for u, v in self.graph.edges() if u in Sset and v in Sset]

    def is_biclique(self) -> bool:
        return not self.s_edges and set(self.classes) == {self.S}

    def to_text(self) -> str:
        g = self.graph
        lines = ["S: " + " ".join(g.name(v) for v in self.S),
                 "T: " + " ".join(g.name(v) for v in self.T)]
        lines += [f"{g.name(u)} {g.name(v)}" for u, v in g.edges()]
        return "\n".join(lines) + "\n"


def validate_pattern(g: Graph, S: Iterable[int], T: Iterable[int]) -> Pattern:
    S = set(S)
    T = set(T)
    if S & T:
        raise PatternError("overlap", f"vertices {sorted(S & T)} are on both sides")
    if S | T != set(range(g.vertex_count)):
        missing = sorted(set(range(g.vertex_count)) - S - T)
        raise PatternError("sides_incomplete", f"vertices {missing} are on neither side")
    if not g.is_connected():
        raise PatternError("not_connected", "pattern graph is not connected")
    for t in T:
        if g.neighbours(t) & T:
            raise PatternError("t_not_independent", f"T-vertex {g.name(t)} has a T-neighbour")
    for t in T:
        if not g.neighbours(t) & S:
            raise PatternError("t_not_covered", f"T-vertex {g.name(t)} has no neighbour in S")
    if len(S) >= len(T):
        raise PatternError("sides_size", f"|S| = {len(S)} is not smaller than |T| = {len(T)}")
    return Pattern(g, S, T)


def parse_pattern(text: str) -> Pattern:
    """Read ``S: <labels>`` and ``T: <labels>`` lines followed by edge lines."""
    sides = {}
    edge_lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, rest = line.partition(":")
        if sep and head.strip() in ("S", "T"):
            if head.strip() in sides:
                raise GraphFormatError(f"side {head.strip()} declared twice", lineno)
            sides[head.strip()] = rest.split()
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"expected two endpoint labels, got {len(parts)} fields", lineno)
        if parts[0] == parts[1]:
            raise GraphFormatError(f"self-loop at {parts[0]!r}", lineno)
        edge_lines.append((lineno, parts))
    if "S" not in sides or "T" not in sides:
        raise GraphFormatError("pattern needs both an 'S:' and a 'T:' line")
    labels = sides["S"] + sides["T"]
    index = {}
    for lab in labels:
        if lab in index:
            raise PatternError("overlap", f"label {lab!r} is declared twice")
        index[lab] = len(index)
    edges = []
    for lineno, (a, b) in edge_lines:
        for lab in (a, b):
            if lab not in index:
                raise PatternError("sides_incomplete", f"line {lineno}: {lab!r} is on neither side")
        edges.append((index[a], index[b]))
    g = Graph.from_edges(len(labels), edges, labels)
    S = range(len(sides["S"]))
    T = range(len(sides["S"]), len(labels))
    return validate_pattern(g, S, T)


# --- automorphisms ----------------------------------------------------------

def _class_size_map(p: Pattern) -> dict:
    return {frozenset(X): n for X, n in p.class_sizes.items()}


def _preserves_s_structure(p: Pattern, sigma: dict, sizes: dict) -> bool:
    g = p.graph
    for u, v in p.s_edges:
        if not g.has_edge(sigma[u], sigma[v]):
            return False
    for X, n in sizes.items():
        if sizes.get(frozenset(sigma[x] for x in X)) != n:
            return False
    return True


def aut_S(p: Pattern) -> int:
    """Number of automorphisms of ``H`` mapping ``S`` onto itself."""
    sizes = _class_size_map(p)
    valid = 0
    for image in permutations(p.S):
        if _preserves_s_structure(p, dict(zip(p.S, image)), sizes):
            valid += 1
    fixed = 1
    for n in p.class_sizes.values():
        fixed *= math.factorial(n)
    return valid * fixed


def vertex_covers(g: Graph, k: int) -> list:
    """All vertex covers of size exactly ``k``, by include/exclude branching."""
    n = g.vertex_count
    found = set()

    def branch(inside: frozenset, outside: frozenset):
        if len(inside) > k:
            return
        pending = None
        for u, v in g.edges():
            if u not in inside and v not in inside:
                pending = u if u not in outside else v
                break
        if pending is None:
            free = [v for v in range(n) if v not in inside and v not in outside]
            for extra in combinations(free, k - len(inside)):
                found.add(tuple(sorted(inside.union(extra))))
            return
        branch(inside | {pending}, outside)
        nbrs = g.neighbours(pending)
        if nbrs & outside:
            return
        branch(inside | nbrs, outside | {pending})

    if 0 <= k <= n:
        branch(frozenset(), frozenset())
    return sorted(found)


def orbit_S(p: Pattern) -> set:
    """All images of ``S`` under automorphisms of ``H``."""
    g = p.graph
    sizes = _class_size_map(p)
    s_deg = [g.degree(x) for x in p.S]
    orbit = set()
    for C in vertex_covers(g, p.s):
        Cset = frozenset(C)
        if sorted(g.degree(c) for c in C) != sorted(s_deg):
            continue
        outer = {}
        for u in range(g.vertex_count):
            if u not in Cset:
                key = g.neighbours(u) & Cset
                outer[key] = outer.get(key, 0) + 1
        if sorted(outer.values()) != sorted(sizes.values()):
            continue
        for image in permutations(C):
            if any(g.degree(a) != g.degree(b) for a, b in zip(p.S, image)):
                continue
            sigma = dict(zip(p.S, image))
            if _extends(p, sigma, sizes, outer):
                orbit.add(Cset)
                break
    return orbit


def _extends(p: Pattern, sigma: dict, sizes: dict, outer: dict) -> bool:
    g = p.graph
    S = p.S
    for i in range(len(S)):
        for j in range(i + 1, len(S)):
            if g.has_edge(S[i], S[j]) != g.has_edge(sigma[S[i]], sigma[S[j]]):
                return False
    for X, n in sizes.items():
        if outer.get(frozenset(sigma[x] for x in X)) != n:
            return False
    return True


def aut(p: Pattern) -> int:
    return len(orbit_S(p)) * aut_S(p)


# --- index representations -------------------------------------------------

@dataclass(frozen=True, order=True)
class IndexRep:
    """``H[S]`` relabelled by rank in an ordering of ``S``, plus the class
    multiplicities keyed by index sets."""

    s: int
    edges: tuple          # sorted (i, j) pairs with i < j
    J: tuple              # sorted (index-set, multiplicity) pairs, positive only

    @cached_property
    def J_map(self) -> dict:
        return dict(self.J)

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def ordered_s_graph(self) -> OrderedGraph:
        return OrderedGraph(Graph.from_edges(self.s, self.edges), range(self.s))


def index_rep(p: Pattern, s_order: Sequence[int]) -> IndexRep:
    s_order = tuple(s_order)
    if sorted(s_order) != list(p.S):
        raise ValueError("s_order must be a permutation of S")
    rank = {v: i for i, v in enumerate(s_order)}
    edges = tuple(sorted(tuple(sorted((rank[u], rank[v]))) for u, v in p.s_edges))
    J = tuple(sorted((tuple(sorted(rank[x] for x in X)), len(members))
                     for X, members in p.classes.items()))
    return IndexRep(len(s_order), edges, J)


# --- left covers -------------------------------------------------------------

def _min_cover_size(cands: Iterable[int], full: int) -> int:
    """Fewest masks from ``cands`` whose union is ``full`` (``full`` must be reachable)."""
    cands = {c & full for c in cands} - {0}
    if full == 0:
        return 0
    # drop dominated masks
    cands = [c for c in cands if not any(c != o and c | o == o for o in cands)]
    reach = {0}
    for k in range(1, len(cands) + 1):
        reach = {r | c for r in reach for c in cands}
        if full in reach:
            return k
    raise ValueError("masks do not cover the target")


def _maximal(masks) -> frozenset:
    ms = set(masks)
    return frozenset(m for m in ms if not any(m != o and m | o == o for o in ms))


def min_left_cover(oh: OrderedGraph, Sp: Iterable[int]) -> tuple:
    """Smallest ``C`` (increasing size, then lexicographic) with ``Sp <= N^-[C]``."""
    Sp = sorted(set(Sp))
    if not Sp:
        return ()
    bit = {v: 1 << i for i, v in enumerate(Sp)}
    full = (1 << len(Sp)) - 1
    masks = {}
    for v in range(len(oh)):
        m = bit.get(v, 0)
        for u in oh.left(v):
            m |= bit.get(u, 0)
        if m:
            masks[v] = m
    size = _min_cover_size(masks.values(), full)
    for C in combinations(sorted(masks), size):
        m = 0
        for v in C:
            m |= masks[v]
        if m == full:
            return C
    raise AssertionError("unreachable: cover size computed but no cover found")


def left_cover_number(oh: OrderedGraph, Sp: Iterable[int]) -> int:
    return len(min_left_cover(oh, Sp))


# --- placements of T-classes around an ordering of S ------------------------

_RIGHT = -1


@dataclass
class _Slots:
    """Per-class placement options for one ordering of ``S``.

    All members of a class can share one slot without loss of generality: the
    rightmost member dominates coverage, and moving the others onto its slot
    only lowers the left-degree of the S-vertices they would precede.
    """

    sigma: tuple
    base_ok: bool
    base: list
    s_masks: list
    options: list = field(default_factory=list)   # per class: [(slot, cover_mask, burden list)]


def _slot_options(p: Pattern, sigma: tuple, d: int, classes: list) -> _Slots:
    g = p.graph
    s = len(sigma)
    pos = {v: i for i, v in enumerate(sigma)}
    base = [0] * s
    s_masks = [0] * s
    for i, v in enumerate(sigma):
        m = 1 << i
        for u in g.neighbours(v):
            j = pos.get(u)
            if j is not None and j < i:
                base[i] += 1
                m |= 1 << j
        s_masks[i] = m
    slots = _Slots(sigma, max(base, default=0) <= d, base, s_masks)
    for X, size in classes:
        xpos = sorted(pos[x] for x in X)
        full = 0
        for j in xpos:
            full |= 1 << j
        opts = []
        for m in range(xpos[-1] + 1):
            left = [j for j in xpos if j < m]
            if len(left) > d:
                break
            cov = 0
            for j in left:
                cov |= 1 << j
            opts.append((m, cov, [j for j in xpos if j >= m]))
        if len(xpos) <= d:
            opts.append((_RIGHT, full, []))
        slots.options.append(opts)
    return slots


def _feasible(slots: _Slots, classes: list, d: int):
    """Some slot assignment with every left-degree at most ``d``, or ``None``."""
    if not slots.base_ok:
        return None
    load = list(slots.base)
    order = sorted(range(len(classes)), key=lambda c: slots.options[c][-1][0] != _RIGHT,
                   reverse=True)
    choice = [None] * len(classes)

    def rec(k):
        if k == len(order):
            return True
        c = order[k]
        size = classes[c][1]
        for opt in reversed(slots.options[c]):
            if all(load[j] + size <= d for j in opt[2]):
                for j in opt[2]:
                    load[j] += size
                choice[c] = opt
                if rec(k + 1):
                    return True
                for j in opt[2]:
                    load[j] -= size
        return False

    return list(choice) if rec(0) else None


def _witness_order(p: Pattern, slots: _Slots, choice: list, classes_members: list) -> list:
    s = len(slots.sigma)
    buckets = [[] for _ in range(s + 1)]
    for opt, members in zip(choice, classes_members):
        m = opt[0]
        buckets[s if m == _RIGHT else m].extend(sorted(members))
    order = []
    for i in range(s):
        order.extend(buckets[i])
        order.append(slots.sigma[i])
    order.extend(buckets[s])
    return order


@dataclass(frozen=True)
class LocatabilityResult:
    status: str
    c: int | None = None
    witness_order: tuple | None = None
    witness_cover: tuple | None = None

    @property
    def locatable(self) -> bool:
        return self.status == LOCATABLE

    def __str__(self):
        if self.status == NOT_D_DEGENERATE:
            return "NotDDegenerate"
        return f"Locatable({self.c})"


def _class_list(p: Pattern):
    items = sorted(p.classes.items())
    return [(X, len(m)) for X, m in items], [m for _, m in items]


def degenerate_reps(p: Pattern, d: int) -> frozenset:
    """Index representations of ``H`` under every ``d``-degenerate ordering."""
    if p.degeneracy > d:
        return frozenset()
    classes, _ = _class_list(p)
    reps = set()
    for sigma in permutations(p.S):
        rep = index_rep(p, sigma)
        if rep in reps:
            continue
        if _feasible(_slot_options(p, sigma, d, classes), classes, d) is not None:
            reps.add(rep)
    return frozenset(reps)


def min_locatable_c(p: Pattern, d: int) -> LocatabilityResult:
    """Largest left-cover number of ``S`` over all ``d``-degenerate orderings."""
    if p.degeneracy > d:
        return LocatabilityResult(NOT_D_DEGENERATE)
    classes, members = _class_list(p)
    s = p.s
    full = (1 << s) - 1
    best = 0
    best_state = None

    tried = set()
    for sigma in permutations(p.S):
        # orderings of S with the same representation pose the same search
        rep = index_rep(p, sigma)
        if rep in tried:
            continue
        tried.add(rep)
        slots = _slot_options(p, sigma, d, classes)
        if not slots.base_ok:
            continue
        load = list(slots.base)
        fixed = list(slots.s_masks)
        # classes whose only option is the right side never change during search
        free = []
        for c, opts in enumerate(slots.options):
            if len(opts) == 1 and opts[0][0] == _RIGHT:
                fixed.append(opts[0][1])
            else:
                free.append(c)
        free.sort(key=lambda c: -classes[c][1])
        choice = [opts[0] if len(opts) == 1 else None for opts in slots.options]

        def smallest_open(k):
            # options only get scarcer as load grows and their masks are nested,
            # so each pending class ends up with at least its smallest open mask
            out = []
            for c in free[k:]:
                size = classes[c][1]
                for opt in slots.options[c]:
                    if all(load[j] + size <= d for j in opt[2]):
                        if opt[1]:
                            out.append(opt[1])
                        break
                else:
                    return None
            return out

        visited = set()

        def rec(k, cover_masks):
            nonlocal best, best_state
            # a revisited state cannot beat ``best``: it was bounded by it, or set it
            key = (k, tuple(load), _maximal(cover_masks))
            if key in visited:
                return
            visited.add(key)
            forced = smallest_open(k)
            if forced is None or _min_cover_size(cover_masks + forced, full) <= best:
                return
            if k == len(free):
                best = _min_cover_size(cover_masks, full)
                best_state = (slots, list(choice))
                return
            c = free[k]
            size = classes[c][1]
            for opt in slots.options[c]:
                if any(load[j] + size > d for j in opt[2]):
                    continue
                for j in opt[2]:
                    load[j] += size
                choice[c] = opt
                rec(k + 1, cover_masks + [opt[1]])
                for j in opt[2]:
                    load[j] -= size
            choice[c] = None

        rec(0, fixed)
        if best == s:
            break

    slots, choice = best_state
    order = _witness_order(p, slots, choice, members)
    oh = OrderedGraph(p.graph, order)
    cover = min_left_cover(oh, p.S)
    if len(cover) != best or oh.max_left_degree > d:
        raise AssertionError("witness ordering disagrees with the placement search")
    return LocatabilityResult(LOCATABLE, best, tuple(order), cover)


def check_1d_structure(p: Pattern, d: int) -> bool:
    """Structural test for locatability with a single locator vertex."""
    g = p.graph
    Sset = set(p.S)
    s_deg = [len(g.neighbours(x) & Sset) for x in p.S]
    if all(k == p.s - 1 for k in s_deg):
        return True
    full_nbrs = len(p.classes.get(p.S, ()))
    return full_nbrs >= d + 1 - min(s_deg)
