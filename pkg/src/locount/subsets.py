"""Subset dictionaries over left neighbourhoods.

``R[X]`` counts vertices whose left neighbourhood contains ``X``.  ``Q`` is
anchored at a small vertex set ``A`` and counts, for each ``X`` inside ``A``,
the vertices whose neighbourhood meets ``A`` in exactly ``X``.
"""
from __future__ import annotations

from collections import Counter
from itertools import combinations
from typing import Iterable

import numpy as np

from . import kernels
from .errors import AnchorMismatch
from .graph import OrderedGraph


def _key(vertices: Iterable[int]) -> tuple:
    return tuple(sorted(vertices))


class SubsetDictR:
    """Left-superset counts; absent keys read as zero."""

    def __init__(self, table: dict, source: OrderedGraph):
        self.table = table
        self.source = source

    def __getitem__(self, X) -> int:
        return self.table.get(_key(X), 0)

    def __len__(self):
        return len(self.table)

    def get_key(self, key: tuple) -> int:
        """Lookup with an already canonical (sorted) key."""
        return self.table.get(key, 0)


def build_R(og: OrderedGraph) -> SubsetDictR:
    """Credit every subset of every left neighbourhood once."""
    counts = Counter()
    for v in range(len(og)):
        left = og.left(v)
        for k in range(len(left) + 1):
            counts.update(combinations(left, k))
    return SubsetDictR(dict(counts), og)


class SubsetDictQ:
    """Exact-trace counts anchored at ``anchor`` (a sorted tuple).

    ``table[mask]`` is the number of vertices ``v`` with ``N(v) & anchor`` equal
    to the anchor members selected by ``mask`` (bit ``i`` is ``anchor[i]``).
    Members of the anchor are counted too; :meth:`outside` leaves them out.
    """

    def __init__(self, anchor: tuple, table: list, anchor_traces: list):
        self.anchor = anchor
        self.table = table
        self.anchor_traces = anchor_traces
        self._bit = {v: 1 << i for i, v in enumerate(anchor)}

    def mask(self, X: Iterable[int]) -> int:
        m = 0
        for v in X:
            try:
                m |= self._bit[v]
            except KeyError:
                raise AnchorMismatch(f"vertex {v} is not in the anchor {self.anchor}") from None
        return m

    def members(self, mask: int) -> tuple:
        return tuple(v for i, v in enumerate(self.anchor) if mask >> i & 1)

    def __getitem__(self, X) -> int:
        return self.table[self.mask(X)]

    def outside(self, mask: int) -> int:
        """Count for ``mask`` restricted to vertices outside the anchor."""
        return self.table[mask] - self.anchor_traces.count(mask)

    def as_dict(self) -> dict:
        return {self.members(m): c for m, c in enumerate(self.table)}

    def __eq__(self, other):
        return (isinstance(other, SubsetDictQ) and self.anchor == other.anchor
                and self.table == other.table)


def _anchor_traces(og: OrderedGraph, anchor: tuple, bit: dict) -> list:
    traces = []
    for a in anchor:
        m = 0
        for u in og.graph.neighbours(a):
            b = bit.get(u)
            if b:
                m |= b
        traces.append(m)
    return traces


def _check_anchor(og: OrderedGraph, anchor) -> tuple:
    anchor = _key(anchor)
    n = len(og)
    if len(set(anchor)) != len(anchor) or any(not 0 <= v < n for v in anchor):
        raise AnchorMismatch(f"anchor {anchor} is not a set of vertices of the graph")
    return anchor


def build_Q(og: OrderedGraph, r: SubsetDictR, anchor: Iterable[int]) -> SubsetDictQ:
    """Fast build from ``R`` plus a scan of ``N^-[anchor]``.

    Containment counts ``#{v : Y <= N(v)}`` are ``R[Y]`` plus the vertices that
    see some member of ``Y`` on their right; every such vertex is a left
    neighbour of an anchor member.  Exact counts follow by Moebius inversion
    over supersets.
    """
    anchor = _check_anchor(og, anchor)
    s = len(anchor)
    bit = {v: 1 << i for i, v in enumerate(anchor)}
    width = 1 << s
    dmax = og.max_left_degree
    contain = [0] * width
    for m in range(width):
        if m.bit_count() <= dmax:
            contain[m] = r.get_key(tuple(v for i, v in enumerate(anchor) if m >> i & 1))
    nbrs = og.graph.neighbours
    for v in og.closed_left(anchor):
        tr = 0
        for u in nbrs(v):
            b = bit.get(u)
            if b:
                tr |= b
        lm = 0
        for u in og.left(v):
            b = bit.get(u)
            if b:
                lm |= b
        extra = tr & ~lm
        if not extra:
            continue
        sub = tr
        while sub:
            if sub & extra:
                contain[sub] += 1
            sub = (sub - 1) & tr
    table = _mobius(contain, s)
    return SubsetDictQ(anchor, table, _anchor_traces(og, anchor, bit))


def _mobius(contain: list, s: int) -> list:
    if s >= 6:
        arr = np.array([contain], dtype=np.int64)
        return kernels.superset_mobius(arr, s)[0].tolist()
    table = list(contain)
    for i in range(s):
        bit = 1 << i
        for m in range(1 << s):
            if not m & bit:
                table[m] -= table[m | bit]
    return table


def build_Q_reference(og: OrderedGraph, anchor: Iterable[int]) -> SubsetDictQ:
    """Direct build: compute ``N(v) & anchor`` for every vertex."""
    anchor = _check_anchor(og, anchor)
    s = len(anchor)
    bit = {v: 1 << i for i, v in enumerate(anchor)}
    n = len(og)
    table = [0] * (1 << s)
    if n:
        indptr, indices = og.graph.csr
        masks = kernels.trace_masks(indptr, indices, np.asarray(anchor, dtype=np.int64),
                                    np.arange(n, dtype=np.int64))
        for m, c in zip(*np.unique(masks, return_counts=True)):
            table[int(m)] = int(c)
    return SubsetDictQ(anchor, table, _anchor_traces(og, anchor, bit))


def query(d, X) -> int:
    """Exact count for ``X`` in either dictionary."""
    return d[X]
