import itertools
import math
import random

import pytest
from hypothesis import given

from spandisc.families import (CapExceeded, EmptyFamily, FamilyKind, InvalidWitness, Witness,
                               brute_force_extremes, connected_vertex_subsets, count_family,
                               enumerate_family, family_max_abs, hamilton_extremes,
                               hamilton_path_extremes, is_member, spanning_tree_extremes,
                               spanning_tree_value)
from spandisc.graph import (Graph, components, is_connected, make_complete,
                            make_complete_minus_clique, make_cycle, make_grid, make_path,
                            make_star, random_graph)
from spandisc.labeling import Labeling, negative_star_labeling

from conftest import graph_and_labeling, small_graphs

ALL = list(FamilyKind)


def _subset_members(g, kind):
    """Members found by testing every edge subset (independent of the enumerators)."""
    out = set()
    for r in range(g.m + 1):
        for sub in itertools.combinations(range(g.m), r):
            if kind in (FamilyKind.TREES, FamilyKind.PATHS) and not sub:
                continue
            if is_member(g, kind, sub):
                out.add(sub)
    return out


# -- frozen member counts (checked against the subset scan below) --------------------

COUNTS = {
    "K4": (make_complete(4), {"tn": 16, "h": 3, "pn": 12, "t": 34, "p": 30}),
    "C5": (make_cycle(5), {"tn": 5, "h": 1, "pn": 5, "t": 20, "p": 20}),
    "P2xP3": (make_grid(2, 3), {"tn": 15, "h": 1, "pn": 8, "t": 66, "p": 49}),
    "K1,4": (make_star(4), {"tn": 1, "h": 0, "pn": 0, "t": 15, "p": 10}),
}


@pytest.mark.parametrize("name", sorted(COUNTS))
@pytest.mark.parametrize("kind", ALL)
def test_member_counts(name, kind):
    g, expected = COUNTS[name]
    assert count_family(g, kind) == expected[kind.value]
    assert set(enumerate_family(g, kind)) == _subset_members(g, kind)


def test_closed_form_counts():
    for n in range(3, 7):
        g = make_complete(n)
        assert count_family(g, FamilyKind.SPANNING_TREES) == n ** (n - 2)
        assert count_family(g, FamilyKind.HAMILTON_CYCLES) == math.factorial(n - 1) // 2
        assert count_family(g, FamilyKind.HAMILTON_PATHS) == math.factorial(n) // 2


@given(small_graphs(max_n=6))
def test_connected_subsets_match_scan(g):
    got = list(connected_vertex_subsets(g))
    assert len(got) == len(set(got))
    want = {frozenset(s) for r in range(1, g.n + 1) for s in itertools.combinations(range(g.n), r)
            if is_connected(g, s)}
    assert set(got) == want


# -- fast extremes against enumeration ---------------------------------------------

def _fast_extremes(g, f, kind):
    if kind is FamilyKind.SPANNING_TREES:
        hi, lo = spanning_tree_extremes(g, f)
        return hi.sum, lo.sum
    if kind is FamilyKind.HAMILTON_CYCLES:
        hi, lo = hamilton_extremes(g, f)
        return (None, None) if hi is None else (hi.sum, lo.sum)
    if kind is FamilyKind.HAMILTON_PATHS:
        hi, lo = hamilton_path_extremes(g, f)
        return (None, None) if hi is None else (hi.sum, lo.sum)
    raise AssertionError


@given(graph_and_labeling(min_n=2, max_n=7, connected=True))
def test_spanning_tree_extremes_vs_enumeration(gf):
    g, f = gf
    hi, lo, count = brute_force_extremes(g, f, FamilyKind.SPANNING_TREES)
    assert _fast_extremes(g, f, FamilyKind.SPANNING_TREES) == (hi, lo)
    # component formula for the inner maximum
    cp = len(components(g, lambda e: f[e] > 0))
    cn = len(components(g, lambda e: f[e] < 0))
    assert spanning_tree_value(g, f) == max(abs(hi), abs(lo)) == g.n + 1 - 2 * min(cp, cn)


@given(graph_and_labeling(min_n=1, max_n=7))
def test_hamilton_extremes_vs_enumeration(gf):
    g, f = gf
    for kind in (FamilyKind.HAMILTON_CYCLES, FamilyKind.HAMILTON_PATHS):
        hi, lo, count = brute_force_extremes(g, f, kind)
        assert _fast_extremes(g, f, kind) == ((hi, lo) if count else (None, None))


@given(graph_and_labeling(min_n=1, max_n=6))
def test_all_tree_and_path_maxima_vs_enumeration(gf):
    g, f = gf
    for kind in (FamilyKind.TREES, FamilyKind.PATHS):
        hi, lo, _ = brute_force_extremes(g, f, kind)
        w = family_max_abs(g, f, kind)
        assert w.abs == max(abs(hi), abs(lo))
        assert is_member(g, kind, w.edges)


@given(graph_and_labeling(min_n=2, max_n=6, connected=True))
def test_negation_swaps_extremes(gf):
    g, f = gf
    hi, lo = spanning_tree_extremes(g, f)
    nhi, nlo = spanning_tree_extremes(g, -f)
    assert (nhi.sum, nlo.sum) == (-lo.sum, -hi.sum)


def test_witnesses_validate():
    g = make_grid(3, 3)
    f = Labeling.random(g.m, random.Random(4))
    for kind in ALL:
        try:
            w = family_max_abs(g, f, kind)
        except EmptyFamily:
            assert kind is FamilyKind.HAMILTON_CYCLES  # odd grid has no Hamilton cycle
            continue
        assert is_member(g, kind, w.edges)
        assert w.sum == sum(f[e] for e in w.edges)
    with pytest.raises(InvalidWitness):
        Witness.build(g, f, FamilyKind.SPANNING_TREES, [0, 1])


def test_known_extremes():
    g = make_complete(5)
    hi, lo = spanning_tree_extremes(g, Labeling.constant(g.m))
    assert hi.sum == lo.sum == 4
    hi, lo = hamilton_extremes(make_cycle(6), Labeling([1, -1] * 3))
    assert hi.sum == lo.sum == 0
    assert hamilton_extremes(make_star(3), Labeling.constant(3)) == (None, None)
    w = family_max_abs(make_path(5), Labeling([1, 1, -1, 1]), FamilyKind.PATHS)
    assert w.sum == 2
    with pytest.raises(EmptyFamily):
        spanning_tree_extremes(Graph(3, [(0, 1)]), Labeling([1]))


def test_negative_star_every_hamilton_cycle_zero():
    g, v1, _ = make_complete_minus_clique(8)
    f = negative_star_labeling(g, v1)
    hi, lo = hamilton_extremes(g, f)
    assert hi.sum == 0 and lo.sum == 0
    b_hi, b_lo, count = brute_force_extremes(g, f, FamilyKind.HAMILTON_CYCLES)
    assert (b_hi, b_lo) == (0, 0) and count > 0


def test_caps():
    with pytest.raises(CapExceeded):
        hamilton_extremes(make_complete(19), Labeling.constant(171))
    with pytest.raises(CapExceeded):
        list(enumerate_family(make_complete(10), FamilyKind.SPANNING_TREES))


def test_random_graph_equivalence_all_families():
    rng = random.Random(99)
    for _ in range(15):
        g = random_graph(rng.randint(3, 6), 0.6, rng)
        f = Labeling.random(g.m, rng)
        for kind in ALL:
            hi, lo, count = brute_force_extremes(g, f, kind)
            if kind is FamilyKind.SPANNING_TREES and not is_connected(g):
                continue
            if count == 0 and kind in (FamilyKind.HAMILTON_CYCLES, FamilyKind.HAMILTON_PATHS):
                with pytest.raises(EmptyFamily):
                    family_max_abs(g, f, kind)
                continue
            assert family_max_abs(g, f, kind).abs == max(abs(hi), abs(lo))
