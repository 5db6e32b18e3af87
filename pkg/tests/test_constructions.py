import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from spandisc.constructions import (InvalidCut, NoMixedVertex, NotAGrid, boundary_min_scan,
                                    cut_labeling, find_separator, grid_long_path,
                                    grid_sign_classification, half_grid_labeling, long_path_bound,
                                    make_cut, p2_strip_labeling, parity_class, parity_tree_pair,
                                    stripe_paths)
from spandisc.families import enumerate_spanning_trees, spanning_tree_value
from spandisc.graph import (is_spanning_tree, make_complete, make_grid, make_path, make_star,
                            path_order, random_graph)
from spandisc.labeling import Labeling, signed_neighborhoods, subgraph_sum


@pytest.mark.parametrize("k", range(2, 9))
def test_half_grid_bound(k):
    g, f = half_grid_labeling(k)
    assert spanning_tree_value(g, f) <= k - 1


def test_half_grid_exact_values():
    # frozen from the exact inner maximum
    assert [spanning_tree_value(*half_grid_labeling(k)) for k in range(2, 7)] == [1, 2, 3, 4, 5]


@pytest.mark.parametrize("k", range(2, 12))
def test_p2_strip_bound(k):
    g, f = p2_strip_labeling(k)
    assert spanning_tree_value(g, f) <= 3


def test_p2_strip_bound_by_enumeration():
    for k in (2, 3, 4, 5):
        g, f = p2_strip_labeling(k)
        assert max(abs(subgraph_sum(f, t)) for t in enumerate_spanning_trees(g)) <= 3


def test_cut_examples():
    p = make_path(5)
    cut = make_cut(p, {0, 1}, {3, 4}, {2})
    assert cut.bound == 1
    assert spanning_tree_value(p, cut_labeling(p, cut)) <= 1
    s = make_star(6)
    cut = make_cut(s, {1, 2, 3}, {4, 5, 6}, {0})
    assert cut.bound == 1
    assert spanning_tree_value(s, cut_labeling(s, cut)) <= 1
    empty = make_cut(p, set(), {1, 2, 3, 4}, {0})
    assert empty.bound == 5
    with pytest.raises(InvalidCut):
        make_cut(p, {0, 1}, {2, 3}, {4})
    with pytest.raises(InvalidCut):
        make_cut(p, {0}, {0, 4}, {1, 2, 3})
    with pytest.raises(InvalidCut):
        make_cut(p, {0}, {4}, {1, 2})


def test_cut_orders_sides():
    p = make_path(6)
    cut = make_cut(p, {2, 3, 4, 5}, {0}, {1})
    assert len(cut.a) <= len(cut.b)


def test_cut_bound_by_enumeration():
    rng = random.Random(5)
    for _ in range(20):
        g = random_graph(rng.randint(3, 7), 0.5, rng)
        if not all(g.degrees()) or len({0}) == 0:
            continue
        try:
            cut = find_separator(g)
        except ValueError:
            continue
        f = cut_labeling(g, cut)
        assert max(abs(subgraph_sum(f, t)) for t in enumerate_spanning_trees(g)) <= cut.bound


def test_separator_examples():
    cut = find_separator(make_path(9))
    assert len(cut.c) == 1 and cut.bound <= 2
    cut = find_separator(make_grid(5, 5))
    assert len(cut.c) <= 5 and cut.bound <= 5
    g = make_grid(5, 5)
    assert spanning_tree_value(g, cut_labeling(g, cut)) <= cut.bound
    k6 = make_complete(6)
    cut = find_separator(k6)
    # a complete graph has no separating set: one side stays empty
    assert not cut.a and cut.bound == 6
    with pytest.raises(ValueError):
        find_separator(random_graph(4, 0.0, random.Random(0)))


def test_sign_classification():
    g = make_grid(3, 3)
    cls = grid_sign_classification(g, Labeling.constant(g.m))
    assert cls.positive == frozenset(range(9)) and not cls.mixed
    f = Labeling([-1] + [1] * (g.m - 1))
    cls = grid_sign_classification(g, f)
    assert cls.mixed == frozenset(g.edges[0])
    for v in range(g.n):
        pos, neg = signed_neighborhoods(g, f, v)
        assert (v in cls.mixed) == bool(pos and neg)
    with pytest.raises(NotAGrid):
        grid_sign_classification(make_path(3), Labeling.constant(2))


def test_half_grid_mixed_rows():
    g, f = half_grid_labeling(4)
    cls = grid_sign_classification(g, f)
    spec = g.grid
    rows = {spec.coord(v)[0] for v in cls.mixed}
    assert rows == {1, 2}


def test_parity_classes_partition():
    spec = make_grid(5, 6).grid
    allv = sorted(v for r in (0, 1) for s in (0, 1) for v in parity_class(spec, r, s))
    assert allv == list(range(30))


@pytest.mark.parametrize("k", [3, 5, 6])
def test_parity_pair_properties(k):
    g = make_grid(k, k)
    rng = random.Random(k)
    for _ in range(50):
        f = Labeling.random(g.m, rng)
        try:
            pp = parity_tree_pair(g, f)
        except NoMixedVertex:
            continue
        assert is_spanning_tree(g, pp.plus.edges) and is_spanning_tree(g, pp.minus.edges)
        assert pp.plus.sum - pp.minus.sum == 2 * pp.t
        sym = set(pp.plus.edges) ^ set(pp.minus.edges)
        assert len(sym) == 2 * pp.t
        assert max(pp.plus.abs, pp.minus.abs) >= pp.t
    with pytest.raises(NoMixedVertex):
        parity_tree_pair(g, Labeling.constant(g.m))


def _stripe_guarantee_all(k):
    g = make_grid(2, k)
    for idx in range(1 << g.m):
        f = Labeling.from_index(g.m, idx, fix_first=False)
        sp = stripe_paths(g, f)
        if 2 * sp.best.abs < k:
            return False
    return True


@pytest.mark.parametrize("k", [2, 3, 4])
def test_stripe_guarantee_exhaustive(k):
    assert _stripe_guarantee_all(k)


def test_stripe_paths_structure():
    g = make_grid(2, 6)
    spec = g.grid
    rng = random.Random(2)
    for _ in range(40):
        f = Labeling.random(g.m, rng)
        sp = stripe_paths(g, f)
        vert = {j: g.edge_id(spec.vertex(0, j), spec.vertex(1, j)) for j in range(6)}
        xs = {vert[j] for j in vert if f[vert[j]] > 0}
        ys = set(vert.values()) - xs
        for w in sp.paths:
            assert path_order(g, w.edges) is not None
        assert xs <= set(sp.p_x.edges) and xs <= set(sp.p_x_prime.edges)
        assert ys <= set(sp.p_y.edges) and ys <= set(sp.p_y_prime.edges)
        horiz = lambda w: {e for e in w.edges if spec.is_horizontal(*g.edges[e])}  # noqa: E731
        assert horiz(sp.p_x) | horiz(sp.p_x_prime) == horiz(sp.p_y) | horiz(sp.p_y_prime)
        assert sp.x + sp.y == 6
    allpos = stripe_paths(g, Labeling.constant(g.m))
    assert allpos.p_x.sum >= 6
    with pytest.raises(NotAGrid):
        stripe_paths(make_grid(3, 3), Labeling.constant(12))


def test_long_path_small_and_all_positive():
    for k, l in [(4, 8), (3, 5), (2, 2), (9, 4)]:
        g = make_grid(k, l)
        for s in range(10):
            f = Labeling.random(g.m, random.Random(s))
            w = grid_long_path(g, f)
            assert path_order(g, w.edges) is not None
            assert w.sum == subgraph_sum(f, w.edges)
    g = make_grid(6, 6)
    assert grid_long_path(g, Labeling.constant(g.m)).sum >= 3 * 6


def test_long_path_bound_8x16():
    assert long_path_bound(8, 16) == 6
    g = make_grid(8, 16)
    for s in range(100):
        w = grid_long_path(g, Labeling.random(g.m, random.Random(s)))
        assert w.abs > 6 and w.meta["bound_met"]


@pytest.mark.parametrize("k,expected", [(2, 1), (3, 2), (4, 3)])
def test_boundary_scan_full_window(k, expected):
    # the corner triangle {i + j <= k - 1} has (k^2 + k)/2 vertices and only k - 1
    # outside neighbours, so over the closed window the minimum is k - 1
    scan = boundary_min_scan(k)
    assert scan.min_boundary == expected
    spec = make_grid(k, k).grid
    tri = frozenset(spec.vertex(i, j) for i in range(k) for j in range(k) if i + j <= k - 1)
    g = make_grid(k, k)
    assert len({u for v in tri for u in g.neighbors(v)} - tri) == k - 1


@pytest.mark.parametrize("k", [2, 3, 4])
def test_boundary_scan_half_open_window(k):
    lo, hi = (k * k - k) // 2, (k * k + k) // 2 - 1
    assert boundary_min_scan(k, (max(lo, 1), hi)).min_boundary >= k


def test_boundary_scan_limits():
    with pytest.raises(ValueError):
        boundary_min_scan(5)


def test_boundary_scan_by_enumeration():
    g = make_grid(3, 3)
    best = min(len({u for v in s for u in g.neighbors(v)} - set(s))
               for r in range(3, 7) for s in itertools.combinations(range(9), r))
    assert boundary_min_scan(3).min_boundary == best


@given(st.integers(2, 6), st.integers(2, 6), st.randoms(use_true_random=False))
def test_long_path_always_valid(k, l, r):
    g = make_grid(k, l)
    f = Labeling.random(g.m, r)
    w = grid_long_path(g, f)
    assert path_order(g, w.edges) is not None
    assert w.meta["bound_met"] == (w.abs > long_path_bound(k, l))
