import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import complete, complete_bipartite, path
from locount.errors import GraphFormatError
from locount.generators import GenSpec, gen_random_degenerate
from locount.graph import (Graph, OrderedGraph, degeneracy, degeneracy_order, left_neighbourhood,
                           neighbourhood_classes, parse_graph)
from locount.oracle import oracle_degeneracy


def test_parse_path():
    g = parse_graph("a b\nb c")
    assert g.vertex_count == 3 and g.edge_count == 2
    assert [g.name(v) for v in range(3)] == ["a", "b", "c"]


def test_parse_self_loop_reports_line():
    with pytest.raises(GraphFormatError, match="line 1"):
        parse_graph("a a")


def test_parse_duplicate_edges_collapse():
    g = parse_graph("x y\nx y\ny x")
    assert g.vertex_count == 2 and g.edge_count == 1


def test_parse_comments_blank_lines_and_isolated():
    g = parse_graph("# header\n\na b  # trailing\nc\n")
    assert g.vertex_count == 3 and g.edge_count == 1 and g.degree(2) == 0


def test_parse_too_many_fields():
    with pytest.raises(GraphFormatError, match="line 2"):
        parse_graph("a b\na b c\n")


def test_text_round_trip_keeps_isolated_vertices():
    g = parse_graph("a b\nb c\nz\n")
    h = parse_graph(g.to_text())
    assert h.vertex_count == 4 and h.degree(h.index_of("z")) == 0
    assert sorted(h.edges()) == sorted(g.edges())


def test_from_edges_rejects_bad_input():
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 0)])
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 2)])


def test_degeneracy_small_cases():
    assert degeneracy(path(3)) == 1
    assert degeneracy(complete(4)) == 3
    assert degeneracy(Graph(0, [])) == 0
    assert degeneracy(Graph(1, [[]])) == 0


def test_degeneracy_matches_subset_bruteforce():
    rng = random.Random(5)
    for _ in range(25):
        n = 10
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.3]
        g = Graph.from_edges(n, edges)
        assert degeneracy(g) == oracle_degeneracy(g)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 40), st.integers(0, 5))
def test_generated_hosts_respect_degeneracy(seed, n, d):
    g = gen_random_degenerate(GenSpec(seed, n, d))
    og = degeneracy_order(g)
    assert og.max_left_degree <= d
    assert sorted(og.order.tolist()) == list(range(n))
    assert all(og.order[og.pos[v]] == v for v in range(n))


def test_left_neighbourhood_examples():
    tri = complete(3)
    og = OrderedGraph(tri, [0, 1, 2])
    assert left_neighbourhood(og, 0) == frozenset()
    assert left_neighbourhood(og, 2) == {0, 1}
    assert left_neighbourhood(og, 1, closed=True) == {0, 1}
    assert og.closed_left([1, 2]) == {0, 1, 2}


def test_left_right_partition_neighbourhood():
    g = gen_random_degenerate(GenSpec(9, 60, 3))
    og = degeneracy_order(g)
    for v in range(60):
        left, right = og.left_set(v), og.right(v)
        assert not left & right and left | right == g.neighbours(v)
        assert all(og.before(u, v) for u in left)


def test_ordered_graph_validation():
    with pytest.raises(ValueError):
        OrderedGraph(path(3), [0, 0, 1])
    og = OrderedGraph(path(3), [2, 1, 0])
    with pytest.raises(IndexError):
        og.left(3)


def test_neighbourhood_classes():
    assert neighbourhood_classes(complete_bipartite(2, 3), [0, 1], [2, 3, 4]) == {(0, 1): [2, 3, 4]}
    star = complete_bipartite(1, 3)
    assert neighbourhood_classes(star, [0], [1, 2, 3]) == {(0,): [1, 2, 3]}
    with pytest.raises(ValueError):
        neighbourhood_classes(star, [0, 1], [1, 2])


def test_class_count_bound_on_degenerate_bipartite():
    rng = random.Random(2)
    for d in (1, 2, 3):
        s, t = 4, 40
        edges = []
        for v in range(s, s + t):
            for u in rng.sample(range(s), rng.randint(1, d)):
                edges.append((u, v))
        g = Graph.from_edges(s + t, edges)
        classes = neighbourhood_classes(g, range(s), range(s, s + t))
        assert sorted(x for m in classes.values() for x in m) == list(range(s, s + t))
        assert len(classes) <= 4 * s ** d


def test_csr_matches_adjacency():
    g = gen_random_degenerate(GenSpec(1, 30, 3))
    indptr, indices = g.csr
    for v in range(30):
        assert tuple(indices[indptr[v]:indptr[v + 1]].tolist()) == g.adjacency[v]
    assert isinstance(indptr, np.ndarray)
