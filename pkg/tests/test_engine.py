import json

import pytest
from hypothesis import given, settings

from spandisc.engine import (bound_check, exact_discrepancy, labeling_discrepancy,
                             trivial_lower_bound)
from spandisc.families import CapExceeded, EmptyFamily, FamilyKind
from spandisc.graph import Graph, make_complete, make_cycle, make_grid, make_path, make_star
from spandisc.labeling import Labeling

from conftest import small_graphs

# Minimax values computed once by the slow oracle sweep and frozen here.
FROZEN = {
    ("K4", "tn"): 3, ("K4", "h"): 0, ("K4", "pn"): 1, ("K4", "t"): 3, ("K4", "p"): 2,
    ("K5", "tn"): 4, ("K5", "h"): 1, ("K5", "pn"): 2, ("K5", "t"): 4, ("K5", "p"): 3,
    ("C5", "tn"): 2, ("C5", "h"): 1, ("C5", "pn"): 2, ("C5", "t"): 2, ("C5", "p"): 2,
    ("P2xP3", "tn"): 1, ("P2xP3", "h"): 0, ("P2xP3", "pn"): 1, ("P2xP3", "t"): 3,
    ("P2xP3", "p"): 3,
    ("K1,4", "tn"): 0, ("K1,4", "t"): 2, ("K1,4", "p"): 2,
    ("P5", "tn"): 0, ("P5", "pn"): 0, ("P5", "t"): 1, ("P5", "p"): 1,
}
GRAPHS = {"K4": make_complete(4), "K5": make_complete(5), "C5": make_cycle(5),
          "P2xP3": make_grid(2, 3), "K1,4": make_star(4), "P5": make_path(5)}


@pytest.mark.parametrize("key", sorted(FROZEN))
def test_frozen_values_both_routes(key):
    name, fam = key
    g = GRAPHS[name]
    fast = exact_discrepancy(g, fam)
    assert fast.exact and fast.value == FROZEN[key]
    if g.m <= 8:
        slow = exact_discrepancy(g, fam, inner="oracle")
        assert slow.value == fast.value


@pytest.mark.parametrize("k,value", [(2, 1), (3, 1), (4, 1), (5, 1)])
def test_ladder_values(k, value):
    assert exact_discrepancy(make_grid(2, k), "tn").value == value


def test_square_grid_3x3():
    assert exact_discrepancy(make_grid(3, 3), "tn").value == 2


def test_complete_graph_values():
    for n in (3, 4, 5):
        assert exact_discrepancy(make_complete(n), FamilyKind.SPANNING_TREES).value == n - 1


def test_argmin_attains_value_and_is_smallest_index():
    g = make_grid(2, 4)
    rep = exact_discrepancy(g, "tn")
    val, w = labeling_discrepancy(g, rep.labeling, "tn")
    assert val == rep.value == w.abs
    # no smaller index attains the value
    from spandisc.labeling import Labeling as L
    idx = rep.labeling.negative_mask() >> 1
    for i in range(idx):
        assert labeling_discrepancy(g, L.from_index(g.m, i), "tn")[0] > rep.value


def test_threads_do_not_change_result(monkeypatch):
    import spandisc.engine as eng
    monkeypatch.setattr(eng, "BLOCK", 64)
    g = make_grid(3, 3)
    a = exact_discrepancy(g, "tn", threads=1)
    b = exact_discrepancy(g, "tn", threads=4)
    assert a.to_json() == b.to_json()
    c = exact_discrepancy(make_complete(4), "p", threads=3)
    assert c.to_json() == exact_discrepancy(make_complete(4), "p").to_json()


def test_budget_gives_inexact_bounds():
    g = make_grid(3, 3)
    rep = exact_discrepancy(g, "tn", budget=10)
    assert not rep.exact and rep.value is None
    assert rep.examined == 10 and rep.total == 2 ** (g.m - 1)
    assert rep.lower <= 2 <= rep.upper


def test_report_json_is_deterministic():
    g = make_grid(2, 3)
    a = json.dumps(exact_discrepancy(g, "tn").to_json(), sort_keys=True)
    b = json.dumps(exact_discrepancy(g, "tn").to_json(), sort_keys=True)
    assert a == b
    assert "wall_time" in exact_discrepancy(g, "tn").to_json(timing=True)


def test_errors():
    with pytest.raises(EmptyFamily):
        exact_discrepancy(Graph(3, [(0, 1)]), "tn")
    with pytest.raises(EmptyFamily):
        exact_discrepancy(make_star(3), "h")
    with pytest.raises(CapExceeded):
        exact_discrepancy(make_complete(12), "tn")
    with pytest.raises(ValueError):
        exact_discrepancy(make_cycle(4), "tn", inner="nope")


def test_bound_check():
    g = make_grid(2, 4)
    assert bound_check(g, "tn", 3, "upper").passed
    assert bound_check(g, "tn", 1, "lower").passed
    assert not bound_check(g, "tn", 2, "lower").passed
    f = Labeling.constant(g.m)
    bc = bound_check(g, "tn", 7, "lower", labeling=f)
    assert bc.passed and bc.observed == 7
    with pytest.raises(CapExceeded):
        bound_check(make_grid(3, 3), "tn", 2, "lower", budget=5)
    with pytest.raises(ValueError):
        bound_check(g, "tn", 1, "sideways")


@settings(max_examples=25)
@given(small_graphs(min_n=2, max_n=5, connected=True))
def test_fast_sweep_matches_oracle_sweep_and_lower_bound(g):
    if g.m > 8:
        return
    for fam in ("tn", "t", "p"):
        fast = exact_discrepancy(g, fam)
        slow = exact_discrepancy(g, fam, inner="oracle")
        assert fast.value == slow.value
        assert fast.value >= trivial_lower_bound(g, FamilyKind.parse(fam))
        # D(f) == D(-f): fixing edge 0 loses nothing
        full = exact_discrepancy(g, fam, fix_sign=False)
        assert full.value == fast.value
