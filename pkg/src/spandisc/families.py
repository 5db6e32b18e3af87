"""Extreme label sums over subgraph families for a fixed labeling.

Fast routes: greedy extremal spanning trees (matroid greedy), bitmask DP for
Hamilton cycles / paths / all paths, and connected-vertex-subset enumeration for
trees.  The backtracking enumerators in this module are the independent
brute-force oracles used to check them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator

import numpy as np

from . import _kernels
from .graph import (DisjointSet, Graph, cycle_order, is_hamilton_cycle, is_hamilton_path,
                    is_spanning_tree, is_tree, path_order)
from .labeling import Labeling, check_labeling, subgraph_sum


class FamilyKind(str, Enum):
    SPANNING_TREES = "tn"
    HAMILTON_CYCLES = "h"
    HAMILTON_PATHS = "pn"
    TREES = "t"
    PATHS = "p"

    @classmethod
    def parse(cls, text: str) -> FamilyKind:
        try:
            return cls(text.lower())
        except ValueError:
            raise ValueError(f"unknown family {text!r}; expected one of tn, h, pn, t, p") from None


class CapExceeded(ValueError):
    """Instance too large for an exact routine."""


class EmptyFamily(ValueError):
    """The graph has no member of the requested family (e.g. not Hamiltonian)."""


class InvalidWitness(ValueError):
    pass


HAMILTON_CAP = 18
TREE_CAP = 12
ENUM_EDGE_CAP = 40


@dataclass(frozen=True)
class Witness:
    kind: FamilyKind
    edges: tuple[int, ...]
    sum: int
    order: tuple[int, ...] | None = None
    meta: dict = field(default_factory=dict, compare=False)

    @classmethod
    def build(cls, g: Graph, f: Labeling, kind: FamilyKind, edges, order=None, **meta) -> Witness:
        """Validate membership of ``edges`` in the family and record the label sum."""
        edges = tuple(sorted(edges))
        if not is_member(g, kind, edges):
            raise InvalidWitness(f"edge set {list(edges)} is not a member of family {kind.value}")
        if order is None:
            if kind in (FamilyKind.HAMILTON_CYCLES,):
                order = cycle_order(g, edges)
            elif kind in (FamilyKind.HAMILTON_PATHS, FamilyKind.PATHS) and edges:
                order = path_order(g, edges)
        return cls(kind, edges, subgraph_sum(f, edges),
                   tuple(order) if order is not None else None, dict(meta))

    @property
    def abs(self) -> int:
        return abs(self.sum)

    def to_json(self) -> dict:
        out = {"kind": self.kind.value, "edges": list(self.edges), "sum": self.sum}
        if self.order is not None:
            out["order"] = list(self.order)
        return out


def is_member(g: Graph, kind: FamilyKind, edges) -> bool:
    edges = list(edges)
    if kind is FamilyKind.SPANNING_TREES:
        return is_spanning_tree(g, edges)
    if kind is FamilyKind.HAMILTON_CYCLES:
        return is_hamilton_cycle(g, edges)
    if kind is FamilyKind.HAMILTON_PATHS:
        return is_hamilton_path(g, edges)
    if kind is FamilyKind.TREES:
        # the single-vertex tree is represented by the empty edge set
        return not edges or is_tree(g, edges)
    if kind is FamilyKind.PATHS:
        return not edges or path_order(g, edges) is not None
    raise ValueError(kind)


# -- spanning trees -------------------------------------------------------------

def extremal_spanning_tree(g: Graph, f: Labeling, maximize: bool = True,
                           vertices=None) -> list[int]:
    """Kruskal on the labels: all edges of the preferred sign first, edge-id order within a sign.

    With ``vertices`` the tree spans the induced subgraph on that set.
    """
    want = 1 if maximize else -1
    inside = None if vertices is None else set(vertices)
    order = sorted(range(g.m), key=lambda e: (f[e] != want, e))
    ds = DisjointSet(g.n)
    tree = []
    for e in order:
        u, v = g.edges[e]
        if inside is not None and (u not in inside or v not in inside):
            continue
        if ds.union(u, v):
            tree.append(e)
    return tree


def spanning_tree_extremes(g: Graph, f: Labeling) -> tuple[Witness, Witness]:
    check_labeling(g, f)
    hi = extremal_spanning_tree(g, f, True)
    if len(hi) != g.n - 1:
        raise EmptyFamily("graph is disconnected: no spanning tree")
    lo = extremal_spanning_tree(g, f, False)
    kind = FamilyKind.SPANNING_TREES
    return Witness.build(g, f, kind, hi), Witness.build(g, f, kind, lo)


def spanning_tree_value(g: Graph, f: Labeling) -> int:
    """``max |f(T)|`` over spanning trees, via component counts of the two sign classes."""
    from .graph import components
    cp = len(components(g, lambda e: f[e] > 0))
    cn = len(components(g, lambda e: f[e] < 0))
    if len(components(g)) != 1:
        raise EmptyFamily("graph is disconnected: no spanning tree")
    return g.n + 1 - 2 * min(cp, cn)


# -- Hamilton cycles and paths ----------------------------------------------------

def _matrices(g: Graph, f: Labeling):
    adj = np.zeros((g.n, g.n), dtype=np.bool_)
    w = np.zeros((g.n, g.n), dtype=np.int8)
    for e, (u, v) in enumerate(g.edges):
        adj[u, v] = adj[v, u] = True
        w[u, v] = w[v, u] = f[e]
    return adj, w


def _check_cap(g: Graph, cap: int) -> None:
    if g.n > cap:
        raise CapExceeded(f"n = {g.n} exceeds the exact cap {cap}")


def _trace_cycle(table, adj, w, full, end):
    """Walk a ``cycle_dp`` table back from ``(full, end)`` to vertex 0."""
    order = [end + 1]
    mask, j = full, end
    while mask != (1 << j):
        prev = mask ^ (1 << j)
        target = table[mask, j]
        for t in range(adj.shape[0] - 1):
            if (prev >> t) & 1 and adj[t + 1, j + 1] and table[prev, t] + w[t + 1, j + 1] == target \
                    and table[prev, t] not in (_kernels.NEG_INF, _kernels.POS_INF):
                mask, j = prev, t
                break
        else:  # pragma: no cover - table inconsistency
            raise RuntimeError("DP reconstruction failed")
        order.append(j + 1)
    order.append(0)
    return order[::-1]


def _trace_path(table, adj, w, mask, end):
    order = [end]
    j = end
    while mask != (1 << j):
        prev = mask ^ (1 << j)
        target = table[mask, j]
        for t in range(adj.shape[0]):
            if (prev >> t) & 1 and adj[t, j] and table[prev, t] + w[t, j] == target \
                    and table[prev, t] not in (_kernels.NEG_INF, _kernels.POS_INF):
                mask, j = prev, t
                break
        else:  # pragma: no cover
            raise RuntimeError("DP reconstruction failed")
        order.append(j)
    return order[::-1]


def hamilton_extremes(g: Graph, f: Labeling, cap: int = HAMILTON_CAP):
    """``(max cycle, min cycle)`` witnesses, or ``(None, None)`` if there is no Hamilton cycle."""
    check_labeling(g, f)
    _check_cap(g, cap)
    if g.n < 3:
        return None, None
    adj, w = _matrices(g, f)
    hi, lo = _kernels.cycle_dp(g.n, adj, w)
    full = (1 << (g.n - 1)) - 1
    best_hi = best_lo = None
    for j in range(g.n - 1):
        if not adj[j + 1, 0] or hi[full, j] == _kernels.NEG_INF:
            continue
        vh = int(hi[full, j]) + int(w[j + 1, 0])
        vl = int(lo[full, j]) + int(w[j + 1, 0])
        if best_hi is None or vh > best_hi[0]:
            best_hi = (vh, j)
        if best_lo is None or vl < best_lo[0]:
            best_lo = (vl, j)
    if best_hi is None:
        return None, None
    kind = FamilyKind.HAMILTON_CYCLES
    out = []
    for table, (_, j) in ((hi, best_hi), (lo, best_lo)):
        order = _trace_cycle(table, adj, w, full, j)
        out.append(Witness.build(g, f, kind, g.path_edges(order, closed=True), order=order))
    return tuple(out)


def hamilton_path_extremes(g: Graph, f: Labeling, cap: int = HAMILTON_CAP):
    """``(max path, min path)`` over Hamiltonian paths, or ``(None, None)``."""
    check_labeling(g, f)
    _check_cap(g, cap)
    kind = FamilyKind.HAMILTON_PATHS
    if g.n == 1:
        w0 = Witness.build(g, f, kind, [], order=[0])
        return w0, w0
    adj, w = _matrices(g, f)
    hi, lo = _kernels.path_dp(g.n, adj, w)
    full = (1 << g.n) - 1
    ends = [j for j in range(g.n) if hi[full, j] != _kernels.NEG_INF]
    if not ends:
        return None, None
    jh = max(ends, key=lambda j: (hi[full, j], -j))
    jl = min(ends, key=lambda j: (lo[full, j], j))
    out = []
    for table, j in ((hi, jh), (lo, jl)):
        order = _trace_path(table, adj, w, full, j)
        out.append(Witness.build(g, f, kind, g.path_edges(order), order=order))
    return tuple(out)


def path_max_abs(g: Graph, f: Labeling, cap: int = HAMILTON_CAP) -> Witness:
    """Simple path maximising ``|f(P)|``; a single vertex (sum 0) when the graph has no edges."""
    check_labeling(g, f)
    _check_cap(g, cap)
    kind = FamilyKind.PATHS
    if g.m == 0:
        return Witness.build(g, f, kind, [], order=[0] if g.n else [])
    adj, w = _matrices(g, f)
    hi, lo = _kernels.path_dp(g.n, adj, w)
    reach = hi != _kernels.NEG_INF
    hmax = np.where(reach, hi, -10_000)
    lmin = np.where(reach, lo, 10_000)
    ih = np.unravel_index(int(np.argmax(hmax)), hmax.shape)
    il = np.unravel_index(int(np.argmin(lmin)), lmin.shape)
    if int(hmax[ih]) >= -int(lmin[il]):
        table, (mask, j) = hi, ih
    else:
        table, (mask, j) = lo, il
    order = _trace_path(table, adj, w, int(mask), int(j))
    if len(order) == 1:  # every path sums to 0 is impossible with m >= 1, kept for safety
        u, v = g.edges[0]
        order = [u, v]
    return Witness.build(g, f, kind, g.path_edges(order), order=order)


# -- all trees ------------------------------------------------------------------

def connected_vertex_subsets(g: Graph) -> Iterator[frozenset]:
    """Every connected vertex subset exactly once (canonical extension from its minimum)."""
    nbrs = [set(g.neighbors(v)) for v in range(g.n)]

    def grow(current, frontier, excluded, root):
        yield frozenset(current)
        frontier = sorted(frontier)
        for i, v in enumerate(frontier):
            # include v; the earlier frontier vertices are excluded for this branch
            new_ex = excluded | set(frontier[:i])
            new_front = (set(frontier[i + 1:]) | {u for u in nbrs[v] if u > root}) \
                - current - {v} - new_ex
            yield from grow(current | {v}, new_front, new_ex, root)

    for r in range(g.n):
        yield from grow({r}, {u for u in nbrs[r] if u > r}, set(), r)


def tree_max_abs(g: Graph, f: Labeling, cap: int = TREE_CAP) -> Witness:
    """Tree maximising ``|f(T)|`` over all subtrees (single vertices count with sum 0).

    For a vertex set ``S`` inducing a connected subgraph, the trees with vertex
    set exactly ``S`` are the spanning trees of ``G[S]``, so the extremes come from
    the greedy extremal spanning trees of ``G[S]``.
    """
    check_labeling(g, f)
    _check_cap(g, cap)
    kind = FamilyKind.TREES
    best_val, best_edges = 0, []
    for s in connected_vertex_subsets(g):
        if len(s) < 2:
            continue
        for maximize in (True, False):
            t = extremal_spanning_tree(g, f, maximize, vertices=s)
            val = abs(subgraph_sum(f, t))
            if val > best_val:
                best_val, best_edges = val, t
    return Witness.build(g, f, kind, best_edges)


# -- brute-force enumerators ------------------------------------------------------

def enumerate_spanning_trees(g: Graph) -> Iterator[tuple[int, ...]]:
    """Backtracking over edges in id order: include (if acyclic) / exclude (if still connectable)."""
    n, m = g.n, g.m
    if n == 1:
        yield ()
        return
    chosen: list[int] = []

    def connectable(start):
        ds = DisjointSet(n)
        for e in chosen:
            ds.union(*g.edges[e])
        for e in range(start, m):
            ds.union(*g.edges[e])
        return ds.count == 1

    def rec(i, ds_parent, count):
        if count == 1:
            yield tuple(chosen)
            return
        if i == m or not connectable(i):
            return
        u, v = g.edges[i]
        ds = DisjointSet(n)
        ds.parent = list(ds_parent)
        ds.count = count
        if ds.union(u, v):
            chosen.append(i)
            yield from rec(i + 1, ds.parent, ds.count)
            chosen.pop()
        yield from rec(i + 1, ds_parent, count)

    yield from rec(0, list(range(n)), n)


def _vertex_paths(g: Graph) -> Iterator[list[int]]:
    """All simple paths with at least one edge, each once (first vertex < last vertex)."""
    nbrs = [g.neighbors(v) for v in range(g.n)]
    for s in range(g.n):
        stack = [(s, [s], {s})]
        while stack:
            v, path, seen = stack.pop()
            if len(path) > 1 and path[0] < path[-1]:
                yield path
            for u in nbrs[v]:
                if u not in seen:
                    stack.append((u, path + [u], seen | {u}))


def enumerate_hamilton_cycles(g: Graph) -> Iterator[tuple[int, ...]]:
    """Each Hamilton cycle once: start at 0, second vertex smaller than the last."""
    n = g.n
    if n < 3:
        return
    nbrs = [g.neighbors(v) for v in range(n)]

    def rec(path, seen):
        v = path[-1]
        if len(path) == n:
            if g.has_edge(v, 0) and path[1] < path[-1]:
                yield tuple(sorted(g.path_edges(path, closed=True)))
            return
        for u in nbrs[v]:
            if u not in seen:
                path.append(u)
                seen.add(u)
                yield from rec(path, seen)
                seen.discard(u)
                path.pop()

    yield from rec([0], {0})


def enumerate_family(g: Graph, kind: FamilyKind, edge_cap: int = ENUM_EDGE_CAP,
                     vertex_cap: int = 14) -> Iterator[tuple[int, ...]]:
    """Yield each member of the family once as a sorted tuple of edge ids.

    The non-spanning families list members with at least one edge.
    """
    if g.m > edge_cap or g.n > vertex_cap:
        raise CapExceeded(f"graph with n={g.n}, m={g.m} exceeds enumeration caps "
                          f"(n <= {vertex_cap}, m <= {edge_cap})")
    if kind is FamilyKind.SPANNING_TREES:
        yield from enumerate_spanning_trees(g)
    elif kind is FamilyKind.HAMILTON_CYCLES:
        yield from enumerate_hamilton_cycles(g)
    elif kind is FamilyKind.HAMILTON_PATHS:
        if g.n == 1:
            yield ()
            return
        for p in _vertex_paths(g):
            if len(p) == g.n:
                yield tuple(sorted(g.path_edges(p)))
    elif kind is FamilyKind.PATHS:
        for p in _vertex_paths(g):
            yield tuple(sorted(g.path_edges(p)))
    elif kind is FamilyKind.TREES:
        for s in connected_vertex_subsets(g):
            if len(s) < 2:
                continue
            sub = sorted(s)
            pos = {v: i for i, v in enumerate(sub)}
            ids = [e for e, (u, v) in enumerate(g.edges) if u in pos and v in pos]
            h = Graph(len(sub), [(pos[g.edges[e][0]], pos[g.edges[e][1]]) for e in ids])
            for t in enumerate_spanning_trees(h):
                yield tuple(sorted(ids[i] for i in t))
    else:
        raise ValueError(kind)


def count_family(g: Graph, kind: FamilyKind, **caps) -> int:
    return sum(1 for _ in enumerate_family(g, kind, **caps))


def brute_force_extremes(g: Graph, f: Labeling, kind: FamilyKind, **caps):
    """``(max sum, min sum, count)`` by enumeration; ``None`` sums for an empty family."""
    hi = lo = None
    count = 0
    for member in enumerate_family(g, kind, **caps):
        s = subgraph_sum(f, member)
        hi = s if hi is None else max(hi, s)
        lo = s if lo is None else min(lo, s)
        count += 1
    if kind in (FamilyKind.TREES, FamilyKind.PATHS) and g.n >= 1:
        # single-vertex members
        hi = 0 if hi is None else max(hi, 0)
        lo = 0 if lo is None else min(lo, 0)
    return hi, lo, count


def family_max_abs(g: Graph, f: Labeling, kind: FamilyKind, **caps) -> Witness:
    """Fast exact ``max |f(A)|`` witness for any family; raises ``EmptyFamily`` if there is no member."""
    if kind is FamilyKind.SPANNING_TREES:
        hi, lo = spanning_tree_extremes(g, f)
    elif kind is FamilyKind.HAMILTON_CYCLES:
        hi, lo = hamilton_extremes(g, f, **caps)
    elif kind is FamilyKind.HAMILTON_PATHS:
        hi, lo = hamilton_path_extremes(g, f, **caps)
    elif kind is FamilyKind.TREES:
        return tree_max_abs(g, f, **caps)
    elif kind is FamilyKind.PATHS:
        return path_max_abs(g, f, **caps)
    else:
        raise ValueError(kind)
    if hi is None:
        raise EmptyFamily(f"graph has no member of family {kind.value}")
    return hi if hi.sum >= -lo.sum else lo
