import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from conftest import complete, complete_bipartite
from locount.errors import AnchorMismatch
from locount.generators import GenSpec, gen_random_degenerate
from locount.graph import OrderedGraph, degeneracy_order
from locount.subsets import build_Q, build_Q_reference, build_R, query


def test_R_empty_key_is_vertex_count():
    g = gen_random_degenerate(GenSpec(3, 25, 3))
    r = build_R(degeneracy_order(g))
    assert r[()] == 25 and query(r, []) == 25


def test_R_triangle():
    og = OrderedGraph(complete(3), [0, 1, 2])
    r = build_R(og)
    assert r[{0}] == 2 and r[{0, 1}] == 1 and r[{1}] == 1 and r[{2}] == 0 and r[{1, 2}] == 0


def test_R_random_queries_match_scan():
    rng = random.Random(4)
    g = gen_random_degenerate(GenSpec(11, 80, 3))
    og = degeneracy_order(g)
    r = build_R(og)
    for _ in range(200):
        X = set(rng.sample(range(80), rng.randint(0, 3)))
        assert r[X] == sum(1 for v in range(80) if X <= og.left_set(v))


def test_Q_empty_anchor():
    g = gen_random_degenerate(GenSpec(2, 17, 2))
    og = degeneracy_order(g)
    q = build_Q(og, build_R(og), [])
    assert q[()] == 17 and q.table == [17]


def test_Q_complete_bipartite():
    g = complete_bipartite(2, 3)
    og = degeneracy_order(g)
    q = build_Q(og, build_R(og), [0, 1])
    assert q[{0, 1}] == 3 and q[()] == 2 and q[{0}] == 0 and q[{1}] == 0
    g4 = complete_bipartite(2, 4)
    og4 = degeneracy_order(g4)
    assert query(build_Q(og4, build_R(og4), [0, 1]), [0, 1]) == 4


def test_Q_outside_excludes_anchor_members():
    # path 0-1-2: anchor {0, 1}; vertex 2 sees {1}, vertex 0 sees {1}, vertex 1 sees {0}
    g = complete(3).induced([0, 1, 2])
    og = degeneracy_order(g)
    q = build_Q(og, build_R(og), [0, 1])
    assert q[{0, 1}] == 1
    assert q.outside(q.mask([0, 1])) == 1
    assert q[{1}] == 1 and q.outside(q.mask([1])) == 0


def test_Q_rejects_foreign_vertices():
    g = complete_bipartite(2, 3)
    og = degeneracy_order(g)
    q = build_Q(og, build_R(og), [0, 1])
    with pytest.raises(AnchorMismatch):
        q[{0, 4}]
    with pytest.raises(AnchorMismatch):
        build_Q(og, build_R(og), [0, 9])


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 2**40), st.integers(1, 45), st.integers(0, 5), st.integers(0, 8),
       st.sampled_from([1.0, 0.7, 0.4]))
def test_Q_fast_matches_reference(seed, n, d, k, prob):
    g = gen_random_degenerate(GenSpec(seed, n, d, prob))
    og = degeneracy_order(g)
    anchor = random.Random(seed).sample(range(n), min(k, n))
    fast = build_Q(og, build_R(og), anchor)
    ref = build_Q_reference(og, anchor)
    assert fast == ref
    assert sum(fast.table) == n


def test_Q_counts_match_definition():
    g = gen_random_degenerate(GenSpec(21, 30, 3))
    og = degeneracy_order(g)
    anchor = [1, 4, 9, 16]
    q = build_Q(og, build_R(og), anchor)
    for k in range(5):
        for X in combinations(anchor, k):
            hits = [v for v in range(30) if g.neighbours(v) & set(anchor) == set(X)]
            assert q[X] == len(hits)
            assert q.outside(q.mask(X)) == len([v for v in hits if v not in anchor])


def test_R_singletons_sum_to_edge_count_and_monotone():
    g = gen_random_degenerate(GenSpec(8, 70, 4, 0.8))
    og = degeneracy_order(g)
    r = build_R(og)
    assert sum(r[{u}] for u in range(70)) == g.edge_count
    for key in list(r.table):
        for k in range(len(key)):
            for sub in combinations(key, k):
                assert r.get_key(sub) >= r.get_key(key)
