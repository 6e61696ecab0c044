import pytest

from conftest import biclique_pattern, complete, complete_bipartite, path
from locount.errors import BudgetExceeded
from locount.graph import Graph
from locount.oracle import (OracleBudget, oracle_automorphisms, oracle_count_cliques,
                            oracle_count_strong, oracle_count_weak, oracle_embeddings,
                            oracle_locatability)
from locount.pattern import validate_pattern


def test_strong_examples():
    star = biclique_pattern(1, 2)
    assert oracle_count_strong(path(2), star) == 0
    assert oracle_count_strong(path(3), star) == 2
    assert oracle_count_strong(complete(3), star) == 6


def test_weak_examples():
    assert oracle_count_weak(complete(3), biclique_pattern(1, 2)) == 6
    assert oracle_count_weak(complete_bipartite(2, 4), biclique_pattern(2, 3)) == 48
    k4_star = Graph.from_edges(7, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3),
                                   (0, 4), (1, 5), (2, 6)])
    p = validate_pattern(k4_star, [0, 1, 2], [3, 4, 5, 6])
    assert oracle_count_weak(path(10), p) == 0


def test_strong_is_stricter_than_weak():
    # host triangle plus pendant: the S-vertex sees both T-images, which are adjacent
    star = biclique_pattern(1, 2)
    g = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (2, 3)])
    assert oracle_count_strong(g, star) == oracle_count_weak(g, star)
    # an S-S non-edge must stay a non-edge in strong mode
    p4 = Graph.from_edges(5, [(0, 2), (1, 2), (0, 3), (1, 4)])
    p = validate_pattern(p4, [0, 1], [2, 3, 4])
    host = Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 4)])
    assert oracle_count_strong(host, p) < oracle_count_weak(host, p)


def test_embeddings_are_valid_maps():
    p = biclique_pattern(2, 3)
    g = complete_bipartite(2, 4)
    seen = set()
    for phi in oracle_embeddings(g, p.graph, p.S, p.T, strong=False):
        assert len(set(phi.values())) == 5
        assert all(g.has_edge(phi[u], phi[v]) for u, v in p.graph.edges())
        seen.add(tuple(sorted(phi.items())))
    assert len(seen) == 48


def test_s_image_restriction():
    p = biclique_pattern(2, 3)
    g = complete_bipartite(2, 4)
    assert oracle_count_weak(g, p, s_image=[0, 1]) == 48
    assert oracle_count_weak(g, p, s_image=[2, 3]) == 0
    assert oracle_count_weak(g, p, s_image=[0]) == 0


def test_cliques():
    assert oracle_count_cliques(complete(3), 3) == 1
    assert oracle_count_cliques(complete(4), 3) == 4
    c5 = Graph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)])
    assert oracle_count_cliques(c5, 3) == 0
    assert oracle_count_cliques(c5, 1) == 5
    with pytest.raises(ValueError):
        oracle_count_cliques(c5, 0)


def test_automorphisms():
    assert oracle_automorphisms(complete(3)) == 6
    assert oracle_automorphisms(complete_bipartite(2, 3), S=[0, 1]) == 12
    assert oracle_automorphisms(path(3)) == 2
    assert oracle_automorphisms(complete_bipartite(2, 2)) == 8


def test_locatability_examples():
    assert str(oracle_locatability(biclique_pattern(2, 3), 2)) == "Locatable(1)"
    assert str(oracle_locatability(biclique_pattern(2, 3), 1)) == "NotDDegenerate"
    p = biclique_pattern(2, 4)
    res = oracle_locatability(p, p.graph.vertex_count)
    assert res.locatable and res.c <= p.s


def test_budgets_are_enforced():
    small = OracleBudget(max_host_vertices=5, max_pattern_vertices=4, node_limit=50)
    with pytest.raises(BudgetExceeded):
        oracle_count_weak(complete(6), biclique_pattern(1, 2), small)
    with pytest.raises(BudgetExceeded):
        oracle_count_weak(complete(5), biclique_pattern(2, 3), small)
    with pytest.raises(BudgetExceeded):
        oracle_count_weak(complete(5), biclique_pattern(1, 3), small)
    with pytest.raises(BudgetExceeded):
        oracle_count_cliques(complete(5), 2, OracleBudget(node_limit=3))
    with pytest.raises(BudgetExceeded):
        oracle_automorphisms(complete(6), budget=OracleBudget(node_limit=10))
