import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spandisc.families import enumerate_spanning_trees
from spandisc.graph import Graph, components, is_connected, make_complete, make_cycle
from spandisc.labeling import Labeling
from spandisc.randreg import (RejectionBudgetExceeded, census_statistics, cycle_count_mean,
                              fragmenting_labeling, isoperimetry_scan, oriented,
                              positive_component_experiment, positive_component_stats,
                              positive_greedy_tree, random_regular, sample_regular,
                              short_cycle_census)


def _random_labeling(m, rng):
    return Labeling(int(x) for x in rng.choice([-1, 1], m))


def test_k4_is_unique_cubic_graph():
    g = random_regular(4, 3, seed=0)
    assert sorted(g.edges) == sorted(make_complete(4).edges)


@pytest.mark.parametrize("n,d", [(100, 3), (50, 4), (30, 5), (11, 2)])
def test_regular_and_simple(n, d):
    g = random_regular(n, d, seed=n)
    assert all(x == d for x in g.degrees())
    assert len(set(g.edges)) == g.m == n * d // 2


def test_errors():
    with pytest.raises(ValueError):
        random_regular(5, 3)
    with pytest.raises(ValueError):
        random_regular(4, 4)
    with pytest.raises(RejectionBudgetExceeded):
        random_regular(12, 9, seed=0, max_attempts=1)


def test_sampling_is_seeded():
    assert random_regular(40, 3, seed=7) == random_regular(40, 3, seed=7)
    g, attempts = sample_regular(40, 3, seed=7)
    assert attempts >= 1


def test_cycle_census_small_graphs():
    assert short_cycle_census(make_complete(4)) == {3: 4, 4: 3, 5: 0}
    assert short_cycle_census(make_complete(5)) == {3: 10, 4: 15, 5: 12}
    assert short_cycle_census(make_cycle(5)) == {3: 0, 4: 0, 5: 1}
    assert cycle_count_mean(3) == pytest.approx(4 / 3)


def _brute_cycles(g, L):
    count = 0
    for vs in itertools.combinations(range(g.n), L):
        first, rest = vs[0], vs[1:]
        for perm in itertools.permutations(rest):
            order = (first,) + perm
            if perm[0] < perm[-1] and all(g.has_edge(a, b) for a, b in zip(order, order[1:] + order[:1])):
                count += 1
    return count


@settings(max_examples=15)
@given(st.integers(0, 10_000))
def test_cycle_census_vs_brute_force(seed):
    g = random_regular(10, 3, seed=seed)
    assert short_cycle_census(g) == {L: _brute_cycles(g, L) for L in (3, 4, 5)}


def test_component_stats_examples():
    g = make_cycle(6)
    st_ = positive_component_stats(g, Labeling.constant(6))
    assert st_.t == 1 and st_.a1 == 0 and st_.check(g.m)
    neg = positive_component_stats(g, Labeling.constant(6, -1))
    assert neg.flipped and neg.t == 1
    disc = Graph(4, [(0, 1)])
    s = positive_component_stats(disc, Labeling([1]))
    assert s.t == 3 and s.a1 == 2


def test_component_stats_identities_large():
    rng = np.random.default_rng(1)
    g = random_regular(1000, 3, rng)
    for _ in range(5):
        f = _random_labeling(g.m, rng)
        s = positive_component_stats(g, f)
        assert s.check(g.m)


def test_greedy_tree_examples():
    g = random_regular(20, 3, seed=3)
    while not is_connected(g):
        g = random_regular(20, 3, seed=4)
    t = positive_greedy_tree(g, Labeling.constant(g.m))
    assert t.negatives_used == 0 and t.witness.sum == g.n - 1
    with pytest.raises(ValueError):
        positive_greedy_tree(Graph(3, [(0, 1)]), Labeling([1]))


def test_greedy_tree_identity_and_optimality():
    rng = np.random.default_rng(5)
    for _ in range(20):
        g = random_regular(8, 3, rng)
        if not is_connected(g):
            continue
        f = _random_labeling(g.m, rng)
        tr = positive_greedy_tree(g, f)
        fo, _ = oriented(f)
        assert tr.negatives_used == tr.t - 1
        # no spanning tree uses fewer negative edges (enumeration)
        best = min(sum(1 for e in t if fo[e] < 0) for t in enumerate_spanning_trees(g))
        assert best == tr.negatives_used
        assert tr.witness.abs >= tr.bound


@settings(max_examples=20)
@given(st.integers(0, 10 ** 6))
def test_greedy_tree_identity_property(seed):
    rng = np.random.default_rng(seed)
    g = random_regular(100, 3, rng)
    if not is_connected(g):
        return
    f = _random_labeling(g.m, rng)
    tr = positive_greedy_tree(g, f)
    assert tr.t == positive_component_stats(g, f).t
    assert tr.negatives_used == tr.t - 1


def test_isoperimetry_examples():
    assert isoperimetry_scan(make_complete(4), 2).ratio == Fraction(1)
    r = isoperimetry_scan(make_cycle(6), 3)
    assert r.ratio == Fraction(2, 3) and r.exhaustive
    assert isoperimetry_scan(Graph(4, [(0, 1), (2, 3)]), 2).ratio == 0


def test_isoperimetry_heuristic_upper_bounds_exact():
    g = random_regular(16, 3, seed=2)
    exact = isoperimetry_scan(g, 4)
    heur = isoperimetry_scan(g, 4, heuristic=True, seed=1)
    assert not heur.exhaustive and heur.ratio >= exact.ratio
    with pytest.raises(ValueError):
        isoperimetry_scan(g, 8, budget=10, heuristic=False)


def test_fragmenting_labeling_orientation():
    rng = np.random.default_rng(0)
    g = random_regular(200, 3, rng)
    f = fragmenting_labeling(g, rng)
    assert 2 * len(f.negative_edges()) <= g.m
    s = positive_component_stats(g, f)
    assert s.a1 > 0 and not s.flipped


def test_experiment_rows():
    rep = positive_component_experiment(200, 4, seed=1)
    assert len(rep.rows) == 4
    summ = rep.summary()
    assert summ["tree_identity_violations"] == 0 and summ["orientation_violations"] == 0
    csv = rep.to_csv().splitlines()
    assert csv[0].startswith("sample,n,t,a1") and len(csv) == 5
    for r in rep.rows:
        assert r.count_bound_residual == pytest.approx(r.t - r.negatives / 2 - r.a1 / 4)
    assert positive_component_experiment(200, 4, seed=1).to_json() == rep.to_json()


def test_census_statistics_small():
    st_ = census_statistics(30, 50, seed=0, lengths=(3,))
    assert st_[3]["samples"] == 50 and st_[3]["limit"] == pytest.approx(4 / 3)
    assert math.isfinite(st_[3]["mean"])
