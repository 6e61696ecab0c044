"""Simple undirected graphs, vertex orderings and neighbourhood classes."""
from __future__ import annotations

from collections import defaultdict
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import GraphFormatError


class Graph:
    """Simple undirected graph on dense vertex indices ``0..n-1``.

    Instances are treated as immutable once built.
    """

    def __init__(self, vertex_count: int, adjacency: Sequence[Sequence[int]],
                 external_names: Sequence[str] | None = None):
        self.vertex_count = vertex_count
        self.adjacency = tuple(tuple(sorted(a)) for a in adjacency)
        self.external_names = tuple(external_names) if external_names is not None else None
        self._nbr_sets = tuple(frozenset(a) for a in self.adjacency)

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[tuple[int, int]],
                   external_names: Sequence[str] | None = None) -> "Graph":
        adj = [set() for _ in range(vertex_count)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise ValueError(f"edge ({u}, {v}) out of range")
            adj[u].add(v)
            adj[v].add(u)
        return cls(vertex_count, adj, external_names)

    def __repr__(self):
        return f"Graph(n={self.vertex_count}, m={self.edge_count})"

    def __eq__(self, other):
        return isinstance(other, Graph) and self.adjacency == other.adjacency

    def __hash__(self):
        return hash(self.adjacency)

    def __len__(self):
        return self.vertex_count

    @cached_property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.vertex_count) for v in self.adjacency[u] if u < v]

    def neighbours(self, v: int) -> frozenset:
        return self._nbr_sets[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._nbr_sets[u]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def name(self, v: int) -> str:
        return self.external_names[v] if self.external_names is not None else str(v)

    def index_of(self, label: str) -> int:
        if self.external_names is None:
            return int(label)
        return self._label_index[label]

    @cached_property
    def _label_index(self) -> dict:
        return {name: i for i, name in enumerate(self.external_names)}

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        indptr = np.zeros(self.vertex_count + 1, dtype=np.int64)
        np.cumsum([len(a) for a in self.adjacency], out=indptr[1:])
        indices = np.fromiter((u for a in self.adjacency for u in a), dtype=np.int64,
                              count=int(indptr[-1]))
        return indptr, indices

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph, relabelled to ``0..len(vertices)-1`` in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        adj = [[index[u] for u in self.adjacency[v] if u in index] for v in vertices]
        names = [self.name(v) for v in vertices] if self.external_names is not None else None
        return Graph(len(vertices), adj, names)

    def is_connected(self) -> bool:
        if self.vertex_count == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for u in self.adjacency[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == self.vertex_count

    def to_text(self) -> str:
        lines = [f"{self.name(u)} {self.name(v)}" for u, v in self.edges()]
        lines += [self.name(v) for v in range(self.vertex_count) if not self.adjacency[v]]
        return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    """Read a whitespace-separated edge list; ``#`` starts a comment.

    Labels are mapped to dense indices in first-seen order and duplicate edges
    collapse.  A line holding a single label declares an isolated vertex.
    """
    names: dict[str, int] = {}
    edges = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) == 1:
            names.setdefault(parts[0], len(names))
            continue
        if len(parts) != 2:
            raise GraphFormatError(f"expected two endpoint labels, got {len(parts)} fields", lineno)
        a, b = parts
        if a == b:
            raise GraphFormatError(f"self-loop at {a!r}", lineno)
        u = names.setdefault(a, len(names))
        v = names.setdefault(b, len(names))
        edges.add((min(u, v), max(u, v)))
    labels = sorted(names, key=names.get)
    return Graph.from_edges(len(labels), edges, labels)


class OrderedGraph:
    """A graph together with a total order on its vertices."""

    def __init__(self, graph: Graph, order: Sequence[int]):
        order = np.asarray(order, dtype=np.int64)
        n = graph.vertex_count
        if order.shape != (n,) or (n and not np.array_equal(np.sort(order), np.arange(n))):
            raise ValueError("order must be a permutation of the vertices")
        position = np.empty(n, dtype=np.int64)
        position[order] = np.arange(n, dtype=np.int64)
        self.graph = graph
        self.order = order
        self.position = position
        self.pos = position.tolist()
        indptr, indices = graph.csr
        lptr, lidx = kernels.left_csr(indptr, indices, position)
        lidx = lidx.tolist()
        self._left = tuple(tuple(lidx[lptr[v]:lptr[v + 1]]) for v in range(n))
        self._left_sets = tuple(frozenset(x) for x in self._left)

    def __len__(self):
        return self.graph.vertex_count

    @cached_property
    def max_left_degree(self) -> int:
        return max((len(x) for x in self._left), default=0)

    def _check(self, v):
        if not 0 <= v < self.graph.vertex_count:
            raise IndexError(f"vertex {v} out of range")

    def left(self, v: int) -> tuple:
        """N^-(v) as a tuple sorted by vertex index."""
        self._check(v)
        return self._left[v]

    def left_set(self, v: int) -> frozenset:
        self._check(v)
        return self._left_sets[v]

    def right(self, v: int) -> frozenset:
        self._check(v)
        return self.graph.neighbours(v) - self._left_sets[v]

    def closed_left(self, vertices: Iterable[int]) -> set:
        """N^-[X]: the set itself together with all left neighbours of its members."""
        out = set()
        for v in vertices:
            self._check(v)
            out.add(v)
            out.update(self._left[v])
        return out

    def before(self, u: int, v: int) -> bool:
        return self.pos[u] < self.pos[v]

    def sort_by_position(self, vertices: Iterable[int]) -> list:
        return sorted(vertices, key=self.pos.__getitem__)


def left_neighbourhood(og: OrderedGraph, v: int, closed: bool = False) -> frozenset:
    """``{u in N(v) : u precedes v}``; with ``closed`` also ``v`` itself."""
    left = og.left_set(v)
    return left | {v} if closed else left


def degeneracy_order(g: Graph) -> OrderedGraph:
    """Smallest-last ordering; its maximum left-degree equals the degeneracy of ``g``."""
    indptr, indices = g.csr
    removal, _ = kernels.peel_order(indptr, indices, g.vertex_count)
    return OrderedGraph(g, removal[::-1].copy())


def degeneracy(g: Graph) -> int:
    return degeneracy_order(g).max_left_degree


def neighbourhood_classes(g: Graph, S: Iterable[int], T: Iterable[int]) -> dict:
    """Partition ``T`` by trace ``N(t) & S``; keys are sorted tuples of ``S``-vertices."""
    S = set(S)
    T = list(T)
    if S.intersection(T):
        raise ValueError("S and T overlap")
    classes = defaultdict(list)
    for t in T:
        classes[tuple(sorted(g.neighbours(t) & S))].append(t)
    return dict(classes)
