"""Explicit labelings and witness constructions on grids and vertex cuts.

Each construction returns a checkable object; the guarantees are verified in the
tests with the exact spanning-tree extremes or by exhaustive sweeps.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .families import FamilyKind, Witness
from .graph import DisjointSet, Graph, GridSpec, is_connected, make_grid
from .labeling import Labeling, check_labeling


class NotAGrid(ValueError):
    pass


class NoMixedVertex(ValueError):
    """No parity class contains a vertex with both incident signs."""


def _grid(g: Graph) -> GridSpec:
    if g.grid is None:
        raise NotAGrid("operation needs a grid graph built by make_grid")
    return g.grid


# -- labelings ------------------------------------------------------------------

def half_grid_labeling(k: int) -> tuple[Graph, Labeling]:
    """``P_k x P_k``: +1 inside the upper ``ceil(k/2)`` rows, -1 inside the lower ``floor(k/2)``.

    The ``k`` vertical edges crossing the cut are split evenly between the signs for
    even ``k`` and are all -1 for odd ``k``; either way every spanning tree has
    ``|f(T)| <= k - 1``.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    g = make_grid(k, k)
    spec = g.grid
    h = k // 2
    signs = []
    for u, v in g.edges:
        (iu, ju), (iv, _) = spec.coord(u), spec.coord(v)
        if iu >= h and iv >= h:
            signs.append(1)
        elif iu < h and iv < h:
            signs.append(-1)
        else:
            signs.append(1 if (k % 2 == 0 and ju % 2 == 0) else -1)
    return g, Labeling(signs)


def p2_strip_labeling(k: int) -> tuple[Graph, Labeling]:
    """``P_2 x P_k`` split into a left block of ``ceil(k/2)`` columns (-1) and a right block (+1).

    For even ``k`` the two horizontal edges joining the blocks get +1.  For odd ``k``
    the blocks share the middle column and its vertical edge gets +1.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    g = make_grid(2, k)
    spec = g.grid
    a = (k + 1) // 2
    odd = k % 2 == 1
    signs = []
    for u, v in g.edges:
        (_, ju), (_, jv) = spec.coord(u), spec.coord(v)
        lo_col = min(ju, jv)
        if ju == jv:  # vertical
            left = lo_col < a - 1 if odd else lo_col <= a - 1
        else:
            left = lo_col + 1 <= a - 1
        signs.append(-1 if left else 1)
    return g, Labeling(signs)


# -- vertex cuts ------------------------------------------------------------------

@dataclass(frozen=True)
class CutPartition:
    a: frozenset
    b: frozenset
    c: frozenset

    @property
    def bound(self) -> int:
        return len(self.b) - len(self.a) + len(self.c)

    def to_json(self) -> dict:
        return {"A": sorted(self.a), "B": sorted(self.b), "C": sorted(self.c), "bound": self.bound}


class InvalidCut(ValueError):
    pass


def make_cut(g: Graph, a, b, c) -> CutPartition:
    """Validate ``V = A + B + C`` with no ``A``-``B`` edge; orders the sides so ``|A| <= |B|``."""
    a, b, c = frozenset(a), frozenset(b), frozenset(c)
    if a & b or a & c or b & c:
        raise InvalidCut("cut sets overlap")
    if (a | b | c) != frozenset(range(g.n)):
        raise InvalidCut("cut sets do not cover the vertex set")
    for u, v in g.edges:
        if (u in a and v in b) or (u in b and v in a):
            raise InvalidCut(f"edge ({u}, {v}) joins A and B")
    if len(a) > len(b):
        a, b = b, a
    return CutPartition(a, b, c)


def cut_labeling(g: Graph, cut: CutPartition) -> Labeling:
    """+1 on ``E(A) + E(A, C) + E(C)``, -1 on ``E(B) + E(B, C)``."""
    cut = make_cut(g, cut.a, cut.b, cut.c)
    return Labeling(-1 if (u in cut.b or v in cut.b) else 1 for u, v in g.edges)


def _bfs_layers(g: Graph, root: int) -> list[list[int]]:
    dist = [-1] * g.n
    dist[root] = 0
    layers = [[root]]
    q = deque([root])
    while q:
        v = q.popleft()
        for u in g.neighbors(v):
            if dist[u] < 0:
                dist[u] = dist[v] + 1
                if dist[u] == len(layers):
                    layers.append([])
                layers[dist[u]].append(u)
                q.append(u)
    return layers


def _refine(g: Graph, a: set, b: set, c: set) -> tuple[set, set, set]:
    """Move cut vertices into a side whenever that keeps the cut valid and lowers the bound."""
    nbrs = [set(g.neighbors(v)) for v in range(g.n)]

    def score(a_, b_, c_):
        lo, hi = sorted((len(a_), len(b_)))
        return hi - lo + len(c_)

    improved = True
    while improved:
        improved = False
        cur = score(a, b, c)
        for v in sorted(c):
            for side, other in ((a, b), (b, a)):
                if nbrs[v] & other:
                    continue
                side.add(v)
                c.discard(v)
                if score(a, b, c) < cur:
                    improved = True
                    break
                side.discard(v)
                c.add(v)
            if improved:
                break
    return a, b, c


def find_separator(g: Graph, roots: int = 8) -> CutPartition:
    """BFS-layer vertex separator with greedy refinement (heuristic, no size guarantee).

    Tries BFS trees from a few pseudo-peripheral roots; each layer is a candidate
    cut with the earlier layers on one side and the later layers on the other.
    """
    if g.n == 0:
        raise ValueError("empty graph")
    if not is_connected(g):
        raise ValueError("find_separator expects a connected graph")
    starts = []
    v = 0
    for _ in range(roots):
        layers = _bfs_layers(g, v)
        far = min(layers[-1])
        if far in starts:
            break
        starts.append(far)
        v = far
    starts += [s for s in range(min(g.n, roots)) if s not in starts]
    best = None
    for r in starts:
        layers = _bfs_layers(g, r)
        for i in range(len(layers)):
            a = {x for L in layers[:i] for x in L}
            b = {x for L in layers[i + 1:] for x in L}
            c = set(layers[i])
            a, b, c = _refine(g, a, b, c)
            cut = make_cut(g, a, b, c)
            key = (cut.bound, len(cut.c))
            if best is None or key < best[0]:
                best = (key, cut)
    return best[1]


# -- grid sign classes -------------------------------------------------------------

@dataclass(frozen=True)
class SignClassification:
    positive: frozenset
    negative: frozenset
    mixed: frozenset


def grid_sign_classification(g: Graph, f: Labeling) -> SignClassification:
    """``P``: all incident edges +1; ``N``: all -1; ``M``: both signs present."""
    _grid(g)
    check_labeling(g, f)
    p, n, mx = set(), set(), set()
    for v in range(g.n):
        signs = {f[e] for _, e in g.adj[v]}
        if signs == {-1}:
            n.add(v)
        elif signs == {1, -1}:
            mx.add(v)
        else:
            p.add(v)
    return SignClassification(frozenset(p), frozenset(n), frozenset(mx))


def parity_class(spec: GridSpec, r: int, s: int) -> list[int]:
    return [spec.vertex(i, j) for i in range(r, spec.k, 2) for j in range(s, spec.l, 2)]


@dataclass(frozen=True)
class ParityPair:
    plus: Witness
    minus: Witness
    t: int
    parity: tuple[int, int]
    attachments: tuple[tuple[int, int], ...]  # (vertex, edge difference) per mixed vertex


def parity_tree_pair(g: Graph, f: Labeling) -> ParityPair:
    """Two spanning trees that differ only in how the mixed vertices of one parity class attach.

    The class ``X_{r,s}`` with the most mixed vertices is made of leaves hanging off a
    tree on the other three classes; ``T+`` attaches each mixed leaf by a +1 edge and
    ``T-`` by a -1 edge, so ``f(T+) - f(T-) = 2t``.
    """
    spec = _grid(g)
    if spec.k < 2 or spec.l < 2:
        raise NotAGrid("parity trees need at least a 2x2 grid")
    mixed = grid_sign_classification(g, f).mixed
    best = max(((r, s) for r in (0, 1) for s in (0, 1)),
               key=lambda rs: (len(mixed.intersection(parity_class(spec, *rs))), -rs[0], -rs[1]))
    leaves = parity_class(spec, *best)
    t = len(mixed.intersection(leaves))
    if t == 0:
        raise NoMixedVertex("no vertex with both incident signs; use the exact inner maximum")
    leaf_set = set(leaves)
    ds = DisjointSet(g.n)
    base = []
    for e, (u, v) in enumerate(g.edges):
        if u not in leaf_set and v not in leaf_set and ds.union(u, v):
            base.append(e)
    assert len(base) == g.n - len(leaves) - 1, "rest of the grid must be connected"
    plus, minus, diff = list(base), list(base), []
    for v in leaves:
        inc = sorted(e for _, e in g.adj[v])
        if v in mixed:
            ep = next(e for e in inc if f[e] > 0)
            en = next(e for e in inc if f[e] < 0)
            plus.append(ep)
            minus.append(en)
            diff.append((v, ep, en))
        else:
            plus.append(inc[0])
            minus.append(inc[0])
    kind = FamilyKind.SPANNING_TREES
    wp = Witness.build(g, f, kind, plus)
    wm = Witness.build(g, f, kind, minus)
    return ParityPair(wp, wm, t, best, tuple((v, ep) for v, ep, _ in diff))


# -- stripe paths ---------------------------------------------------------------

def _stripe_orders(cols: int, switch_plus, switch_minus, vertex):
    """Four boustrophedon vertex orders on a 2-row strip.

    ``vertex(row, col)`` maps strip coordinates (row 1 on top) to graph vertices.
    Returned in the order: starts top-left / bottom-left switching at ``switch_plus``,
    then the same for ``switch_minus``.
    """
    out = []
    for switch in (switch_plus, switch_minus):
        for start in (1, 0):
            row, order = start, []
            for j in range(cols):
                order.append(vertex(row, j))
                if j in switch:
                    row = 1 - row
                    order.append(vertex(row, j))
            out.append(order)
    return out


@dataclass(frozen=True)
class StripePaths:
    p_x: Witness
    p_x_prime: Witness
    p_y: Witness
    p_y_prime: Witness
    x: int
    y: int

    @property
    def paths(self) -> tuple[Witness, ...]:
        return (self.p_x, self.p_x_prime, self.p_y, self.p_y_prime)

    @property
    def best(self) -> Witness:
        return max(self.paths, key=lambda w: w.abs)

    @property
    def guarantee_met(self) -> bool:
        return 2 * self.best.abs >= self.x + self.y


def stripe_paths(g: Graph, f: Labeling) -> StripePaths:
    """``P(X), P'(X), P(Y), P'(Y)`` on ``P_2 x P_l`` where ``X``/``Y`` are the +1/-1 vertical edges.

    Each path runs left to right and changes row exactly at the vertical edges of
    its class; the primed path starts on the bottom row.
    """
    spec = _grid(g)
    if spec.k != 2:
        raise NotAGrid("stripe paths need a grid with exactly 2 rows")
    check_labeling(g, f)
    cols = spec.l
    vert = {j: g.edge_id(spec.vertex(0, j), spec.vertex(1, j)) for j in range(cols)}
    xs = {j for j, e in vert.items() if f[e] > 0}
    ys = set(range(cols)) - xs
    orders = _stripe_orders(cols, xs, ys, spec.vertex)
    kind = FamilyKind.PATHS
    ws = [Witness.build(g, f, kind, g.path_edges(o), order=o) for o in orders]
    return StripePaths(*ws, x=len(xs), y=len(ys))


# -- long path in a general grid ----------------------------------------------------

def _oriented(spec: GridSpec):
    """``(rows, cols, vertex(r, c))`` with rows <= cols."""
    if spec.k <= spec.l:
        return spec.k, spec.l, spec.vertex
    return spec.l, spec.k, lambda r, c: spec.vertex(c, r)


def long_path_bound(k: int, l: int) -> float:
    return k * l / 8 - max(k, l) / 8 - min(k, l)


def grid_long_path(g: Graph, f: Labeling) -> Witness:
    """One simple path with large ``|f|`` built from the stripe paths of ``floor(k/2)`` strips.

    The strips are the row pairs ``(2i, 2i+1)`` (after orienting so rows <= columns).
    For each sign, a DP over the strips picks which strips to use, which of their
    four paths to take, and joins consecutive ones along the left/right boundary
    column, maximising the signed total including connector edges.
    """
    spec = _grid(g)
    check_labeling(g, f)
    rows, cols, vtx = _oriented(spec)
    if rows < 2:
        raise ValueError("grid_long_path needs at least 2 rows and 2 columns")
    lab = lambda a, b: f[g.edge_id(a, b)]  # noqa: E731

    strips = []
    for s in range(rows // 2):
        base = 2 * s
        vertex = lambda r, c, base=base: vtx(base + r, c)  # noqa: E731
        xs = {c for c in range(cols) if lab(vtx(base, c), vtx(base + 1, c)) > 0}
        ys = set(range(cols)) - xs
        strips.append(_stripe_orders(cols, xs, ys, vertex))

    def pathsum(order):
        return sum(lab(a, b) for a, b in zip(order, order[1:]))

    def oriented(order, end_side):
        # stripe orders run from column 0 to column cols-1
        return order if end_side == 1 else order[::-1]

    def junction(prev, nxt, s_prev, s_next, col):
        """Drop flags and connector vertices joining ``prev`` (ending at ``col``) to ``nxt``."""
        top_prev = vtx(2 * s_prev + 1, col)
        bot_next = vtx(2 * s_next, col)
        drop_prev = drop_next = False
        conn = []
        if prev[-1] != top_prev:
            if len(prev) > 1 and prev[-2] == top_prev:
                drop_prev = True
            else:
                conn.append(top_prev)
        for r in range(2 * s_prev + 2, 2 * s_next):
            conn.append(vtx(r, col))
        if nxt[0] != bot_next:
            if len(nxt) > 1 and nxt[1] == bot_next:
                drop_next = True
            else:
                conn.append(bot_next)
        return drop_prev, conn, drop_next

    def junction_gain(prev, nxt, s_prev, s_next, col):
        dp, conn, dn = junction(prev, nxt, s_prev, s_next, col)
        a = prev[:-1] if dp else prev
        b = nxt[1:] if dn else nxt
        chain = [a[-1]] + conn + [b[0]]
        gain = sum(lab(x, y) for x, y in zip(chain, chain[1:]))
        if dp:
            gain -= lab(prev[-2], prev[-1])
        if dn:
            gain -= lab(nxt[0], nxt[1])
        return gain

    best_order, best_val = None, -1
    for sigma in (1, -1):
        # state: (strip, option, end side) -> (value, back pointer)
        table: dict = {}
        for s, opts in enumerate(strips):
            for o, order in enumerate(opts):
                for side in (0, 1):
                    cur = oriented(order, side)
                    val = sigma * pathsum(cur)
                    back = None
                    for (ps, po, pside), (pval, _) in table.items():
                        if ps >= s or pside == side:
                            continue
                        # previous strip ends at column of pside; this one starts there
                        col = 0 if pside == 0 else cols - 1
                        prev = oriented(strips[ps][po], pside)
                        gain = sigma * junction_gain(prev, cur, ps, s, col)
                        cand = pval + gain + sigma * pathsum(cur)
                        if cand > val:
                            val, back = cand, (ps, po, pside)
                    table[(s, o, side)] = (val, back)
        key = max(table, key=lambda k_: (table[k_][0], -k_[0], -k_[1], -k_[2]))
        if table[key][0] <= best_val:
            continue
        chain = []
        while key is not None:
            chain.append(key)
            key = table[key][1]
        chain.reverse()
        order = list(oriented(strips[chain[0][0]][chain[0][1]], chain[0][2]))
        for (ps, po, pside), (s, o, side) in zip(chain, chain[1:]):
            col = 0 if pside == 0 else cols - 1
            nxt = oriented(strips[s][o], side)
            dp, conn, dn = junction(order, nxt, ps, s, col)
            if dp:
                order.pop()
            order += conn
            order += nxt[1:] if dn else nxt
        val = sigma * pathsum(order)
        if val > best_val:
            best_val, best_order = val, order
    w = Witness.build(g, f, FamilyKind.PATHS, g.path_edges(best_order), order=best_order)
    bound = long_path_bound(spec.k, spec.l)
    return Witness(w.kind, w.edges, w.sum, w.order, {"bound": bound, "bound_met": w.abs > bound})


# -- grid boundary ----------------------------------------------------------------------

@dataclass(frozen=True)
class BoundaryScan:
    k: int
    min_boundary: int
    argmin: frozenset
    size_range: tuple[int, int]
    subsets: int


def boundary_min_scan(k: int, size_range: tuple[int, int] | None = None,
                      max_k: int = 4) -> BoundaryScan:
    """Minimum external vertex boundary ``|N(S) - S|`` over ``S`` in ``P_k x P_k``.

    Exhaustive over all ``2^(k^2)`` subsets; the default size window is
    ``(k^2 - k)/2 <= |S| <= (k^2 + k)/2``.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if k > max_k:
        raise ValueError(f"k = {k} exceeds the exhaustive limit {max_k}")
    g = make_grid(k, k)
    n = g.n
    lo, hi = size_range if size_range is not None else ((k * k - k) // 2, (k * k + k) // 2)
    adjmask = np.zeros(n, dtype=np.int64)
    for u, v in g.edges:
        adjmask[u] |= 1 << v
        adjmask[v] |= 1 << u
    bnd = _kernels.boundary_sizes(n, adjmask)
    sizes = np.bitwise_count(np.arange(1 << n, dtype=np.uint64))
    ok = (sizes >= lo) & (sizes <= hi)
    vals = np.where(ok, bnd.astype(np.int64), np.iinfo(np.int64).max)
    idx = int(np.argmin(vals))
    subset = frozenset(v for v in range(n) if (idx >> v) & 1)
    return BoundaryScan(k, int(vals[idx]), subset, (lo, hi), int(ok.sum()))
