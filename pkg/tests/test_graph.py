import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from spandisc.graph import (DisjointSet, Graph, GraphFormatError, canonical, components,
                            cycle_order, graph_from_json, graph_to_json, is_connected,
                            is_hamilton_cycle, is_hamilton_path, is_linear_forest,
                            is_spanning_tree, is_tree, load_graph, make_complete,
                            make_complete_minus_clique, make_cycle, make_grid, make_path,
                            make_star, parse_graph, path_order, random_dense_graph,
                            serialize_graph)

from conftest import small_graphs


def test_grid_counts():
    for k in range(1, 6):
        for l in range(1, 6):
            g = make_grid(k, l)
            assert g.n == k * l
            assert g.m == k * (l - 1) + l * (k - 1)


def test_grid_coordinates_and_orientation():
    g = make_grid(3, 4)
    spec = g.grid
    assert spec.vertex(2, 3) == 11
    assert spec.coord(11) == (2, 3)
    for e, (u, v) in enumerate(g.edges):
        (i1, j1), (i2, j2) = spec.coord(u), spec.coord(v)
        assert abs(i1 - i2) + abs(j1 - j2) == 1
        assert spec.is_horizontal(u, v) == (i1 == i2)


def test_complete_and_clique_removed():
    assert make_complete(6).m == 15
    g, v1, v2 = make_complete_minus_clique(12)
    assert len(v1) == 3 and len(v2) == 9
    degs = g.degrees()
    assert sum(1 for d in degs if d == 9) == 3
    assert sum(1 for d in degs if d == 11) == 9
    with pytest.raises(ValueError):
        make_complete_minus_clique(10)


def test_edge_ids_stable_and_lookup():
    g = Graph(4, [(2, 1), (0, 3), (1, 0)])
    assert g.edges == ((1, 2), (0, 3), (0, 1))
    assert g.edge_id(2, 1) == 0 and g.edge_id(1, 0) == 2
    assert g.has_edge(3, 0) and not g.has_edge(1, 3)
    assert g.other(0, 1) == 2


def test_rejects_loops_and_multi_edges():
    with pytest.raises(GraphFormatError):
        Graph(3, [(0, 0)])
    with pytest.raises(GraphFormatError):
        Graph(3, [(0, 1), (1, 0)])
    with pytest.raises(GraphFormatError):
        Graph(2, [(0, 5)])


def test_linear_forest_examples():
    g = make_complete(5)
    assert is_linear_forest(g, [])
    assert is_linear_forest(g, [g.edge_id(0, 1), g.edge_id(1, 2), g.edge_id(3, 4)])
    assert not is_linear_forest(g, [g.edge_id(0, 1), g.edge_id(0, 2), g.edge_id(0, 3)])
    assert not is_linear_forest(g, [g.edge_id(0, 1), g.edge_id(1, 2), g.edge_id(0, 2)])


def test_tree_and_cycle_predicates():
    c = make_cycle(5)
    assert is_hamilton_cycle(c, range(5))
    assert cycle_order(c, range(5)) is not None
    assert is_hamilton_path(c, range(4))
    assert path_order(c, range(4)) in ([0, 1, 2, 3, 4], [4, 3, 2, 1, 0])
    assert is_spanning_tree(c, range(4)) and not is_spanning_tree(c, range(5))
    assert is_tree(c, [0]) and not is_tree(c, [])
    s = make_star(3)
    assert is_spanning_tree(s, range(3)) and not is_hamilton_path(s, range(3))


def test_parse_roundtrip(tmp_path):
    text = "# comment\n4\n0 1\n\n1 2\n2 3  # trailing\n"
    g = parse_graph(text)
    assert g.n == 4 and g.m == 3
    assert parse_graph(serialize_graph(g)) == g
    assert graph_from_json(json.dumps(graph_to_json(g))) == g
    p = tmp_path / "g.txt"
    p.write_text(serialize_graph(g))
    assert load_graph(str(p)) == g
    q = tmp_path / "g.json"
    q.write_text(json.dumps(graph_to_json(g)))
    assert load_graph(str(q)) == g
    with pytest.raises(GraphFormatError):
        parse_graph("3\n0 1 2\n")
    with pytest.raises(GraphFormatError):
        parse_graph("")


def test_dense_generator_min_degree():
    rng = random.Random(1)
    for n in (8, 13, 24):
        g = random_dense_graph(n, (3 * n) // 4, rng)
        assert g.min_degree() >= (3 * n) // 4


@given(small_graphs())
def test_components_partition(g):
    comps = components(g)
    assert sorted(v for c in comps for v in c) == list(range(g.n))
    ds = DisjointSet(g.n)
    for u, v in g.edges:
        ds.union(u, v)
    assert ds.count == len(comps)
    assert is_connected(g) == (len(comps) <= 1)


@given(small_graphs(), st.randoms(use_true_random=False))
def test_relabel_preserves_structure(g, r):
    perm = list(range(g.n))
    r.shuffle(perm)
    h = g.relabel(perm)
    assert h.m == g.m
    assert sorted(h.degrees()) == sorted(g.degrees())
    assert canonical(h).m == g.m


@given(small_graphs())
def test_path_edges_are_linear_forest(g):
    # every Hamilton path's edge set is a linear forest and a spanning tree
    order = list(range(g.n))
    if all(g.has_edge(a, b) for a, b in zip(order, order[1:])) and g.n >= 2:
        eds = g.path_edges(order)
        assert is_linear_forest(g, eds)
        assert is_spanning_tree(g, eds)
