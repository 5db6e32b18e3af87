"""Hamilton cycles through forced edges, companion-edge plans and insertion amplifiers.

The building blocks used to push a Hamilton cycle's label sum away from zero in
dense graphs:

* ``cycle_through_forest`` - rotation-extension search for a Hamilton cycle of a
  vertex subset that contains a prescribed linear forest;
* ``monochromatic_path`` - long paths whose edges all touch a vertex set;
* ``pick_companion_edges`` / ``amplify`` - insert a path either whole (one closing
  edge is replaced) or vertex by vertex (each vertex replaces its companion edge);
* ``multicolor_amplifier`` - per-vertex choice between two companion triangles;
* ``search_dense`` - the two-case search for dense graphs with a strategy trace.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .families import HAMILTON_CAP, EmptyFamily, FamilyKind, Witness, hamilton_extremes
from .graph import Graph, is_linear_forest
from .labeling import Labeling, balance_threshold, check_labeling, classify_balance

EXHAUSTIVE_CAP = 12


class HamiltonSearchError(RuntimeError):
    """Rotation-extension gave up (and the instance is too big for exhaustive search)."""


class PreconditionError(ValueError):
    pass


class NoFeasiblePlan(RuntimeError):
    def __init__(self, vertex, message: str = ""):
        super().__init__(message or f"no admissible companion edge left for vertex {vertex}")
        self.vertex = vertex


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


# -- Hamilton cycles through a linear forest ----------------------------------------

class _Search:
    """Rotation-extension over whole forced segments; forced edges are never broken."""

    def __init__(self, g: Graph, verts: list[int], forced: list[int], edge_ok, rng):
        self.g = g
        self.verts = verts
        self.inside = set(verts)
        self.rng = rng
        self.nbrs = {v: [u for u, e in g.adj[v] if u in self.inside and edge_ok(e)] for v in verts}
        self.nbr_sets = {v: set(ns) for v, ns in self.nbrs.items()}
        self.fnbr = {v: [] for v in verts}
        for e in forced:
            a, b = g.edges[e]
            self.fnbr[a].append(b)
            self.fnbr[b].append(a)
        self.forced_pairs = {frozenset(g.edges[e]) for e in forced}

    def segment_from(self, u: int) -> list[int]:
        seg, prev = [u], None
        while True:
            nxt = [w for w in self.fnbr[seg[-1]] if w != prev]
            if not nxt:
                return seg
            prev = seg[-1]
            seg.append(nxt[0])

    def is_forced(self, a: int, b: int) -> bool:
        return frozenset((a, b)) in self.forced_pairs

    def run(self, max_steps: int) -> list[int] | None:
        rng = self.rng
        ends = [v for v in self.verts if len(self.fnbr[v]) <= 1]
        path = self.segment_from(rng.choice(ends))
        on = set(path)
        total = len(self.verts)
        for _ in range(max_steps):
            if len(path) == total:
                if path[-1] in self.nbr_sets[path[0]] and len(path) > 2:
                    return path
            else:
                if self._extend(path, on):
                    continue
                path.reverse()
                if self._extend(path, on):
                    continue
                if path[-1] in self.nbr_sets[path[0]] and self._cycle_extend(path, on):
                    continue
            if rng.random() < 0.5:
                path.reverse()
            self._rotate(path)
        return None

    def _extend(self, path, on) -> bool:
        cands = [u for u in self.nbrs[path[-1]] if u not in on and len(self.fnbr[u]) <= 1]
        if not cands:
            return False
        u = self.rng.choice(cands)
        seg = self.segment_from(u)
        path.extend(seg)
        on.update(seg)
        return True

    def _rotate(self, path) -> bool:
        end = path[-1]
        pos = {v: i for i, v in enumerate(path)}
        piv = [pos[u] for u in self.nbrs[end]
               if u in pos and pos[u] < len(path) - 2 and not self.is_forced(u, path[pos[u] + 1])]
        if not piv:
            return False
        i = self.rng.choice(piv)
        path[i + 1:] = path[i + 1:][::-1]
        return True

    def _cycle_extend(self, path, on) -> bool:
        pos = {v: i for i, v in enumerate(path)}
        L = len(path)
        opts = []
        for v in path:
            for u in self.nbrs[v]:
                if u not in on and len(self.fnbr[u]) <= 1:
                    opts.append((v, u))
        self.rng.shuffle(opts)
        for v, u in opts:
            i = pos[v]
            nxt, prv = path[(i + 1) % L], path[(i - 1) % L]
            if not self.is_forced(v, nxt):
                new = path[i + 1:] + path[:i + 1]
            elif not self.is_forced(v, prv):
                new = (path[:i][::-1] + path[i:][::-1])
            else:
                continue
            seg = self.segment_from(u)
            path[:] = new + seg
            on.update(seg)
            return True
        return False


def _exhaustive_cycle(g: Graph, verts: list[int], forced: list[int], edge_ok) -> list[int] | None:
    inside = set(verts)
    nbrs = {v: [u for u, e in g.adj[v] if u in inside and edge_ok(e)] for v in verts}
    forced_pairs = {frozenset(g.edges[e]) for e in forced}
    fdeg = {v: 0 for v in verts}
    for e in forced:
        for x in g.edges[e]:
            fdeg[x] += 1
    n = len(verts)
    start = verts[0]
    path, seen = [start], {start}

    def covered():
        edges = {frozenset((a, b)) for a, b in zip(path, path[1:])}
        edges.add(frozenset((path[-1], path[0])))
        return forced_pairs <= edges

    def rec():
        v = path[-1]
        if len(path) == n:
            return v in nbrs[start] and covered()
        # a vertex reached by an unforced edge must leave through its forced edge
        must = None
        if len(path) >= 2 and not frozenset((path[-2], v)) in forced_pairs and fdeg[v] >= 1:
            if fdeg[v] == 2:
                return False
            must = next(u for u in nbrs[v] if frozenset((u, v)) in forced_pairs)
        for u in nbrs[v]:
            if u in seen or (must is not None and u != must):
                continue
            path.append(u)
            seen.add(u)
            if rec():
                return True
            seen.discard(u)
            path.pop()
        return False

    if n < 3:
        return None
    return list(path) if rec() else None


def cycle_through_forest(g: Graph, forced: Iterable[int] = (), vertices: Iterable[int] | None = None,
                         seed=0, edge_ok: Callable[[int], bool] | None = None,
                         restarts: int = 40, exhaustive_cap: int = EXHAUSTIVE_CAP) -> list[int]:
    """Vertex order of a Hamilton cycle of ``G[vertices]`` containing every forced edge.

    ``edge_ok`` further restricts the usable edges (forced edges must satisfy it).
    Raises :class:`HamiltonSearchError` when the randomized search and, for small
    instances, the exhaustive search both fail.
    """
    forced = list(forced)
    verts = sorted(set(range(g.n) if vertices is None else vertices))
    edge_ok = edge_ok or (lambda e: True)
    inside = set(verts)
    for e in forced:
        a, b = g.edges[e]
        if a not in inside or b not in inside or not edge_ok(e):
            raise PreconditionError(f"forced edge {e} = {g.edges[e]} is not usable inside the vertex set")
    if not is_linear_forest(g, forced):
        raise PreconditionError("forced edges do not form a linear forest")
    if len(verts) < 3:
        raise HamiltonSearchError("a Hamilton cycle needs at least 3 vertices")
    rng = _rng(seed)
    search = _Search(g, verts, forced, edge_ok, rng)
    if any(len(search.nbrs[v]) < 2 for v in verts):
        if len(verts) > exhaustive_cap:
            raise HamiltonSearchError("some vertex has fewer than two usable neighbours")
    else:
        steps = 30 * len(verts) ** 2 + 200
        for _ in range(restarts):
            order = search.run(steps)
            if order is not None:
                return order
    if len(verts) <= exhaustive_cap:
        order = _exhaustive_cycle(g, verts, forced, edge_ok)
        if order is not None:
            return order
        raise HamiltonSearchError("no Hamilton cycle contains the forced edges (exhaustive search)")
    raise HamiltonSearchError(f"rotation-extension failed after {restarts} restarts")


def hamilton_with_forest(g: Graph, f: Labeling, forced: Iterable[int] = (), c: float | None = None,
                         seed=0, strict: bool = False, **kw) -> Witness:
    """Hamilton cycle of ``g`` containing the linear forest ``forced``.

    With ``c`` given, the hypotheses ``delta >= (1/2 + c) n`` and ``|F| <= 2 c n``
    are checked; a violation raises :class:`PreconditionError` under ``strict`` and
    is otherwise recorded in the witness ``meta``.
    """
    forced = list(forced)
    check_labeling(g, f)
    if not is_linear_forest(g, forced):
        raise PreconditionError("forced edges do not form a linear forest")
    met = None
    if c is not None:
        met = g.min_degree() >= (0.5 + c) * g.n and len(forced) <= 2 * c * g.n
        if strict and not met:
            raise PreconditionError(f"need delta >= (1/2 + {c}) n and |F| <= 2 c n")
    order = cycle_through_forest(g, forced, seed=seed, **kw)
    w = Witness.build(g, f, FamilyKind.HAMILTON_CYCLES, g.path_edges(order, closed=True), order=order)
    missing = set(forced) - set(w.edges)
    assert not missing, f"forced edges {missing} missing from cycle"
    return Witness(w.kind, w.edges, w.sum, w.order, {"preconditions_met": met, "forced": sorted(forced)})


# -- long paths touching a vertex set -------------------------------------------------

def monochromatic_path(g: Graph, f: Labeling, U: Iterable[int], sign: int | None = None,
                       alternating: bool = False, endpoints_in_u: bool = False,
                       seed=0, tries: int = 8) -> Witness:
    """Long path all of whose edges touch ``U`` (and have label ``sign`` if given).

    The alternating variant only uses edges with exactly one endpoint in ``U``, so
    the path alternates between ``U`` and ``N(U) - U``.  The returned witness carries
    ``meta["guarantee"]`` (``|U| * d / (2n)``, or ``|U| * d / n`` when alternating,
    with ``d`` the least admissible degree over ``U``) and ``meta["met"]``.
    """
    check_labeling(g, f)
    U = set(U)
    rng = _rng(seed)

    def usable(e):
        a, b = g.edges[e]
        if sign is not None and f[e] != sign:
            return False
        if alternating:
            return (a in U) != (b in U)
        return a in U or b in U

    nbrs = [[u for u, e in g.adj[v] if usable(e)] for v in range(g.n)]
    m_h = sum(1 for e in range(g.m) if usable(e))
    gamma = min((len(nbrs[u]) for u in U), default=0)
    # nu * gamma * n / 2 with nu = |U| / n and gamma * n the least admissible degree
    guarantee = len(U) * gamma / (g.n if alternating else 2 * g.n) if g.n else 0.0

    # peel to a core of minimum degree >= e(H)/n
    thr = math.ceil(m_h / g.n) if g.n else 0
    alive = set(range(g.n))
    deg = {v: len(nbrs[v]) for v in alive}
    changed = True
    while changed:
        changed = False
        for v in list(alive):
            if deg[v] < thr:
                alive.discard(v)
                for u in nbrs[v]:
                    if u in alive:
                        deg[u] -= 1
                changed = True
    pool = sorted(alive) or [v for v in range(g.n) if nbrs[v]]

    def grow(path, on, allowed):
        while True:
            cands = [u for u in nbrs[path[-1]] if u not in on and u in allowed]
            if not cands:
                return
            fewest = min(sum(1 for w in nbrs[u] if w not in on) for u in cands)
            u = rng.choice([u for u in cands if sum(1 for w in nbrs[u] if w not in on) == fewest])
            path.append(u)
            on.add(u)

    best: list[int] = []
    everything = set(range(g.n))
    for _ in range(max(1, tries)):
        if not pool:
            break
        start = rng.choice(pool)
        path, on = [start], {start}
        grow(path, on, alive or everything)
        grow(path, on, everything)
        path.reverse()
        grow(path, on, everything)
        if endpoints_in_u:
            while path and path[0] not in U:
                path.pop(0)
            while path and path[-1] not in U:
                path.pop()
        if len(path) > len(best):
            best = path
    if len(best) < 2:
        w = Witness.build(g, f, FamilyKind.PATHS, [], order=best[:1])
    else:
        w = Witness.build(g, f, FamilyKind.PATHS, g.path_edges(best), order=best)
    length = len(w.edges)
    return Witness(w.kind, w.edges, w.sum, w.order,
                   {"length": length, "guarantee": guarantee, "met": length >= guarantee,
                    "min_degree": gamma})


# -- companion edges --------------------------------------------------------------

Requirement = Callable[[int, int, int], bool]


def any_edge(v: int, a: int, b: int) -> bool:
    return True


def edge_in_positive_neighborhood(g: Graph, f: Labeling) -> Requirement:
    """``a`` and ``b`` are both positive neighbours of ``v``."""
    return lambda v, a, b: f[g.edge_id(v, a)] > 0 and f[g.edge_id(v, b)] > 0


def edge_with_sign(g: Graph, f: Labeling, sign: int) -> Requirement:
    return lambda v, a, b: f[g.edge_id(a, b)] == sign


def g_value_in(g: Graph, f: Labeling, values: Iterable[int]) -> Requirement:
    vals = set(values)
    return lambda v, a, b: f[g.edge_id(v, a)] + f[g.edge_id(v, b)] - f[g.edge_id(a, b)] in vals


def all_of(*reqs: Requirement) -> Requirement:
    return lambda v, a, b: all(r(v, a, b) for r in reqs)


def insertion_case_requirements(g: Graph, f: Labeling, case: str, X: Iterable[int]) -> Requirement:
    """Companion predicates of the five path-insertion cases.

    Vertices in ``X`` (the ``R``-coloured ones) need g-value 3 in cases
    ``i``/``iii``/``iv`` and 1 in case ``ii``, -1 in case ``v``; the remaining path
    vertices need any edge (``i``), g != -3 (``ii``), g = 3 (``iii``), g = 1 (``iv``)
    or g = -1 (``v``).
    """
    X = set(X)
    table = {
        "i": ({3}, None),
        "ii": ({1}, {-1, 1, 3}),
        "iii": ({3}, {3}),
        "iv": ({3}, {1}),
        "v": ({-1}, {-1}),
    }
    if case not in table:
        raise ValueError(f"unknown case {case!r}")
    xv, yv = table[case]
    rx = g_value_in(g, f, xv)
    ry = any_edge if yv is None else g_value_in(g, f, yv)
    return lambda v, a, b: rx(v, a, b) if v in X else ry(v, a, b)


def _edges_in_neighborhood(g: Graph, v: int, forbidden: set) -> list[tuple[int, int]]:
    nb = sorted(u for u in g.neighbors(v) if u not in forbidden)
    out = []
    for i, a in enumerate(nb):
        for b in nb[i + 1:]:
            if g.has_edge(a, b):
                out.append((a, b))
    return out


def _pick_edges(g: Graph, items: list[tuple[object, list[tuple[int, int]]]], rng,
                max_nodes: int = 20000) -> list[tuple[int, int]]:
    """Choose one candidate edge per item so that the choices are distinct and form a linear forest."""
    for key, cands in items:
        if not cands:
            raise NoFeasiblePlan(key)
    order = list(range(len(items)))
    shuffled = []
    for _, cands in items:
        c = list(cands)
        rng.shuffle(c)
        shuffled.append(c)
    deg: dict[int, int] = {}
    comp: dict[int, int] = {}
    chosen: list[tuple[int, int] | None] = [None] * len(items)
    used: set = set()
    nodes = 0
    deepest = [0]

    def root(x):
        while comp.get(x, x) != x:
            x = comp[x]
        return x

    def rec(i):
        nonlocal nodes
        deepest[0] = max(deepest[0], i)
        if i == len(order):
            return True
        for a, b in shuffled[order[i]]:
            nodes += 1
            if nodes > max_nodes:
                return False
            key = (min(a, b), max(a, b))
            if key in used or deg.get(a, 0) >= 2 or deg.get(b, 0) >= 2:
                continue
            ra, rb = root(a), root(b)
            if ra == rb:
                continue
            saved = dict(comp)
            comp[rb] = ra
            deg[a] = deg.get(a, 0) + 1
            deg[b] = deg.get(b, 0) + 1
            used.add(key)
            chosen[order[i]] = (a, b)
            if rec(i + 1):
                return True
            used.discard(key)
            deg[a] -= 1
            deg[b] -= 1
            comp.clear()
            comp.update(saved)
        return False

    if not rec(0):
        raise NoFeasiblePlan(items[order[min(deepest[0], len(order) - 1)]][0])
    return chosen  # type: ignore[return-value]


@dataclass(frozen=True)
class InsertionPlan:
    path: tuple[int, ...]
    companions: dict  # vertex -> (a, b)
    closing: tuple[int, int]  # (a, b) with a ~ x = path[0], b ~ y = path[-1]

    def forest(self, g: Graph) -> list[int]:
        eds = {g.edge_id(*ab) for ab in self.companions.values()}
        eds.add(g.edge_id(*self.closing))
        return sorted(eds)


def pick_companion_edges(g: Graph, f: Labeling, path: Sequence[int],
                         requirement: Requirement | dict = any_edge, seed=0,
                         exclude: Iterable[int] = ()) -> InsertionPlan:
    """Companion edge ``a_v b_v`` inside ``N(v)`` for each path vertex plus a closing edge ``ab``.

    All picked edges avoid the path (and ``exclude``), are distinct and together form
    a linear forest.  ``requirement`` is a predicate ``(v, a, b) -> bool`` or a dict of
    per-vertex predicates.
    """
    check_labeling(g, f)
    path = list(path)
    if not path:
        raise ValueError("empty path")
    rng = _rng(seed)
    forbidden = set(path) | set(exclude)

    def req_for(v):
        if isinstance(requirement, dict):
            return requirement.get(v, any_edge)
        return requirement

    items = []
    for v in path:
        r = req_for(v)
        cands = [(a, b) for a, b in _edges_in_neighborhood(g, v, forbidden) if r(v, a, b)]
        cands += [(b, a) for a, b in cands]
        items.append((v, cands))
    x, y = path[0], path[-1]
    if len(path) >= 2:
        close = []
        xs = {u for u in g.neighbors(x) if u not in forbidden}
        ys = {u for u in g.neighbors(y) if u not in forbidden}
        for a in sorted(xs):
            for b in sorted(ys):
                if a != b and g.has_edge(a, b):
                    close.append((a, b))
        items.append(("closing", close))
    picks = _pick_edges(g, items, rng)
    companions = {v: ab for v, ab in zip(path, picks)}
    closing = picks[-1] if len(path) >= 2 else companions[x]
    return InsertionPlan(tuple(path), companions, closing)


# -- insertion -----------------------------------------------------------------

def insert_vertices(order: Sequence[int], insertions: dict) -> list[int]:
    """Replace each cycle edge ``ab`` by ``a v b`` for ``v -> (a, b)`` in ``insertions``."""
    cyc = list(order)
    for v, (a, b) in insertions.items():
        L = len(cyc)
        pos = {w: i for i, w in enumerate(cyc)}
        i, j = pos[a], pos[b]
        if (i + 1) % L == j:
            cyc.insert(i + 1, v)
        elif (j + 1) % L == i:
            cyc.insert(j + 1, v)
        else:
            raise ValueError(f"{a}-{b} is not an edge of the cycle")
    return cyc


def insert_path(order: Sequence[int], path: Sequence[int], closing: tuple[int, int]) -> list[int]:
    """Replace the cycle edge ``ab`` by ``a x ... y b`` (``x, y`` the path ends)."""
    a, b = closing
    cyc = list(order)
    L = len(cyc)
    i, j = cyc.index(a), cyc.index(b)
    if (i + 1) % L == j:
        return cyc[:i + 1] + list(path) + cyc[i + 1:]
    if (j + 1) % L == i:
        return cyc[:j + 1] + list(path)[::-1] + cyc[j + 1:]
    raise ValueError(f"{a}-{b} is not an edge of the cycle")


def cycle_sum(g: Graph, f: Labeling, order: Sequence[int]) -> int:
    return sum(f[e] for e in g.path_edges(order, closed=True))


def _cycle_witness(g: Graph, f: Labeling, order, **meta) -> Witness:
    w = Witness.build(g, f, FamilyKind.HAMILTON_CYCLES, g.path_edges(order, closed=True), order=order)
    return Witness(w.kind, w.edges, w.sum, w.order, meta)


@dataclass(frozen=True)
class AmplifierResult:
    base_order: tuple[int, ...]
    base_sum: int
    h1: Witness
    h2: Witness

    @property
    def chosen(self) -> Witness:
        return self.h1 if self.h1.abs >= self.h2.abs else self.h2


def amplify(g: Graph, f: Labeling, plan: InsertionPlan, seed=0, **kw) -> AmplifierResult:
    """Build a cycle ``H`` of ``G - V(P)`` through the plan's edges, then insert ``P`` two ways.

    ``H1`` swaps the closing edge for the whole path; ``H2`` inserts every path
    vertex into its own companion edge.
    """
    check_labeling(g, f)
    rest = [v for v in range(g.n) if v not in set(plan.path)]
    forced = plan.forest(g)
    base = cycle_through_forest(g, forced, vertices=rest, seed=seed, **kw)
    base_sum = cycle_sum(g, f, base)
    h1 = insert_path(base, plan.path, plan.closing)
    if len(plan.path) == 1:
        h2 = list(h1)
    else:
        h2 = insert_vertices(base, plan.companions)
    return AmplifierResult(tuple(base), base_sum, _cycle_witness(g, f, h1, strategy="whole-path"),
                           _cycle_witness(g, f, h2, strategy="one-by-one"))


@dataclass(frozen=True)
class MulticolorResult:
    witness: Witness
    base_order: tuple[int, ...]
    options: dict  # vertex -> ((a, b) with larger g, (c, d) with smaller g)
    sign: int


def multicolor_amplifier(g: Graph, f: Labeling, M: Iterable[int], tau: int = 1, seed=0,
                         **kw) -> MulticolorResult:
    """Insert every vertex of ``M`` into one of two companion edges with different g-values.

    For each ``x`` the two g-values with at least ``tau`` triangles at ``x`` that are
    farthest apart are used.  All vertices take their larger-g edge or all take the
    smaller-g edge, whichever gives the larger ``|f|``.
    """
    check_labeling(g, f)
    M = sorted(set(M))
    rng = _rng(seed)
    if not M:
        order = cycle_through_forest(g, seed=rng, **kw)
        return MulticolorResult(_cycle_witness(g, f, order, sign=1), tuple(order), {}, 1)
    forbidden = set(M)
    items = []
    for x in M:
        by_val: dict[int, list] = {}
        for a, b in _edges_in_neighborhood(g, x, forbidden):
            val = f[g.edge_id(x, a)] + f[g.edge_id(x, b)] - f[g.edge_id(a, b)]
            by_val.setdefault(val, []).append((a, b))
        # g-values observed on at least tau triangles (all triangles at x count for colouring)
        counts = {val: 0 for val in (-3, -1, 1, 3)}
        for a, b in _edges_in_neighborhood(g, x, set()):
            counts[f[g.edge_id(x, a)] + f[g.edge_id(x, b)] - f[g.edge_id(a, b)]] += 1
        vals = sorted(v for v in by_val if counts[v] >= tau)
        if len(vals) < 2:
            raise NoFeasiblePlan(x, f"vertex {x} lacks two admissible triangle types")
        items.append(((x, "hi"), by_val[vals[-1]]))
        items.append(((x, "lo"), by_val[vals[0]]))
    picks = _pick_edges(g, items, rng)
    options = {}
    for ((x, tag), _), ab in zip(items, picks):
        options.setdefault(x, [None, None])[0 if tag == "hi" else 1] = ab
    options = {x: tuple(v) for x, v in options.items()}
    forced = sorted(g.edge_id(*ab) for pair in options.values() for ab in pair)
    rest = [v for v in range(g.n) if v not in forbidden]
    base = cycle_through_forest(g, forced, vertices=rest, seed=rng, **kw)
    best = None
    for sign, idx in ((1, 0), (-1, 1)):
        order = insert_vertices(base, {x: options[x][idx] for x in M})
        w = _cycle_witness(g, f, order, sign=sign)
        if best is None or w.abs > best[0].abs:
            best = (w, sign)
    return MulticolorResult(best[0], tuple(base), options, best[1])


# -- dense search --------------------------------------------------------------------

def _improve(g: Graph, f: Labeling, order: list[int], rounds: int = 4) -> list[int]:
    """Hill-climb ``|f(H)|`` with 2-opt moves (reverse a segment, replace two edges)."""
    cyc = list(order)
    n = len(cyc)
    lab = lambda a, b: f[g.edge_id(a, b)]  # noqa: E731
    cur = cycle_sum(g, f, cyc)
    sgn = 1 if cur >= 0 else -1
    for _ in range(rounds):
        improved = False
        for i in range(n - 1):
            for j in range(i + 2, n if i > 0 else n - 1):
                a, b = cyc[i], cyc[i + 1]
                c, d = cyc[j], cyc[(j + 1) % n]
                if not (g.has_edge(a, c) and g.has_edge(b, d)):
                    continue
                delta = lab(a, c) + lab(b, d) - lab(a, b) - lab(c, d)
                if cur == 0 and delta != 0:
                    sgn = 1 if delta > 0 else -1
                if sgn * delta > 0:
                    cyc[i + 1:j + 1] = cyc[i + 1:j + 1][::-1]
                    cur += delta
                    improved = True
        if not improved:
            break
    return cyc


@dataclass
class SearchResult:
    witness: Witness
    discrepancy: int
    trace: list = field(default_factory=list)
    exact_fallback: bool = False
    tight: bool = False
    flagged: bool = False

    def to_json(self) -> dict:
        return {"discrepancy": self.discrepancy, "witness": self.witness.to_json(),
                "trace": self.trace, "exact_fallback": self.exact_fallback,
                "tight": self.tight, "flagged": self.flagged}


def _insert_rest(g: Graph, fs: Labeling, cyc: list[int], rest: list[int], sigma_up: bool = True):
    """Insert ``rest`` one vertex at a time at the position with the largest g-value."""
    cyc = list(cyc)
    for w in rest:
        best = None
        L = len(cyc)
        for i in range(L):
            a, b = cyc[i], cyc[(i + 1) % L]
            if g.has_edge(w, a) and g.has_edge(w, b):
                val = fs[g.edge_id(w, a)] + fs[g.edge_id(w, b)] - fs[g.edge_id(a, b)]
                if best is None or val > best[0]:
                    best = (val, i)
        if best is None:
            return None
        cyc.insert(best[1] + 1, w)
    return cyc


def search_dense(g: Graph, f: Labeling, c: float = 0.05, seed=0,
                 exact_cap: int = HAMILTON_CAP) -> SearchResult:
    """Search for a Hamilton cycle with large ``|f|`` in a graph with ``delta >= (3/4 + c) n``.

    Case 1 (many ``c/4``-balanced vertices): a nearly monochromatic neighbourhood
    cycle with the other vertices inserted, or a negative path through the
    majority-positive balanced vertices inserted whole / one by one.  Case 2 (many
    unbalanced vertices): insert the unbalanced vertices all into negative or all
    into positive companion edges.  Every candidate is validated, improved by 2-opt,
    and the best is returned.  With no candidate, or only zero-sum ones, the exact
    DP is used when ``n <= exact_cap``.
    """
    check_labeling(g, f)
    rng = _rng(seed)
    n = g.n
    trace: list = []
    cands: list[tuple[list[int], str]] = []
    pre = g.min_degree() >= (0.75 + c) * n
    trace.append({"step": "precondition", "min_degree": g.min_degree(), "required": (0.75 + c) * n,
                  "met": pre})
    a = c / 4
    bal = classify_balance(g, f, a)
    nbal = len(bal.balanced())
    case1 = nbal >= math.ceil(round((0.75 + c) * n, 9))
    trace.append({"step": "case", "case": 1 if case1 else 2, "balanced": nbal,
                  "threshold": bal.threshold})

    def attempt(label, fn):
        try:
            out = fn()
        except (HamiltonSearchError, NoFeasiblePlan, PreconditionError, ValueError) as exc:
            trace.append({"step": label, "ok": False, "reason": str(exc)})
            return
        if out:
            for order, tag in out:
                cands.append((order, tag))
            trace.append({"step": label, "ok": True,
                          "sums": [cycle_sum(g, f, o) for o, _ in out]})

    if case1:
        for sigma in (1, -1):
            fs = f if sigma == 1 else -f
            attempt(f"case1-neighbourhood-cycle[{sigma:+d}]",
                    lambda fs=fs: _neighbourhood_cycle(g, fs, c, rng))
        balanced = bal.balanced()
        dp = [0] * n
        for v in range(n):
            dp[v] = sum(1 for _, e in g.adj[v] if f[e] > 0)
        S = [v for v in balanced if 2 * dp[v] >= g.degree(v)]
        sigma = 1 if 2 * len(S) >= len(balanced) else -1
        fs = f if sigma == 1 else -f
        if sigma == -1:
            S = [v for v in balanced if 2 * dp[v] <= g.degree(v)]
        trace.append({"step": "case1-majority", "sign": sigma, "size": len(S)})
        attempt("case1-path-amplifier", lambda: _path_amplifier(g, fs, S, rng))
    else:
        thr = balance_threshold(n, a)
        for sigma in (1, -1):
            fs = f if sigma == 1 else -f
            T = [v for v in range(n) if sum(1 for _, e in g.adj[v] if fs[e] < 0) <= thr]
            attempt(f"case2-unbalanced[{sigma:+d}]",
                    lambda fs=fs, T=T: _unbalanced_insertion(g, fs, T, c, rng))
    if not cands:
        attempt("plain-cycle", lambda: [(cycle_through_forest(g, seed=rng), "plain")])

    best = None
    for order, tag in cands:
        improved = _improve(g, f, order)
        for o, t in ((order, tag), (improved, tag + "+2opt")):
            s = cycle_sum(g, f, o)
            if best is None or abs(s) > abs(best[1]):
                best = (o, s, t)

    if best is not None and best[1] != 0:
        w = _cycle_witness(g, f, best[0], strategy=best[2])
        trace.append({"step": "result", "strategy": best[2], "sum": w.sum})
        return SearchResult(w, w.abs, trace)

    if n <= exact_cap:
        hi, lo = hamilton_extremes(g, f, cap=exact_cap)
        if hi is None:
            raise EmptyFamily("graph is not Hamiltonian")
        w = hi if hi.sum >= -lo.sum else lo
        tight = w.abs == 0
        trace.append({"step": "exact-fallback", "sum": w.sum, "tight": tight})
        return SearchResult(w, w.abs, trace, exact_fallback=True, tight=tight)
    if best is None:
        raise HamiltonSearchError("no Hamilton cycle found")
    w = _cycle_witness(g, f, best[0], strategy=best[2])
    trace.append({"step": "result", "strategy": best[2], "sum": w.sum, "flagged": True})
    return SearchResult(w, w.abs, trace, flagged=True)


def _neighbourhood_cycle(g: Graph, fs: Labeling, c: float, rng):
    """Positive cycle on ``N(v) - M`` (``M``: vertices with many negative neighbours in ``N(v)``)."""
    n = g.n
    nbr = [set(g.neighbors(v)) for v in range(n)]
    best_v = None
    for v in range(n):
        Nv = nbr[v]
        Mv = [u for u in Nv
              if sum(1 for w, e in g.adj[u] if w in Nv and fs[e] < 0) > c * n]
        if len(Mv) < c * n / 2 and (best_v is None or len(Mv) < len(best_v[1])):
            best_v = (v, Mv)
    if best_v is None:
        return []
    v, Mv = best_v
    core = sorted(nbr[v] - set(Mv))
    cyc = cycle_through_forest(g, vertices=core, seed=rng, edge_ok=lambda e: fs[e] > 0)
    rest = [u for u in range(n) if u not in set(core)]
    full = _insert_rest(g, fs, cyc, rest)
    return [(full, "neighbourhood-cycle")] if full else []


def _path_amplifier(g: Graph, fs: Labeling, S: list[int], rng):
    if len(S) < 1:
        return []
    n = g.n
    p = monochromatic_path(g, fs, S, sign=-1, endpoints_in_u=True, seed=rng)
    order = list(p.order or [])
    if len(order) < 2:
        return []
    Sset = set(S)
    pos_nb = edge_in_positive_neighborhood(g, fs)
    neg_edge = edge_with_sign(g, fs, -1)
    req = lambda v, a, b: pos_nb(v, a, b) if v in Sset else neg_edge(v, a, b)  # noqa: E731
    length = len(order)
    while length >= 2:
        sub = order[:length]
        if n - len(sub) >= 3:
            try:
                plan = pick_companion_edges(g, fs, sub, req, seed=rng)
                res = amplify(g, fs, plan, seed=rng)
                return [(list(res.h1.order), "whole-path"), (list(res.h2.order), "one-by-one")]
            except (NoFeasiblePlan, HamiltonSearchError):
                pass
        length //= 2
    return []


def _unbalanced_insertion(g: Graph, fs: Labeling, T: list[int], c: float, rng):
    """Insert the mostly-positive vertices ``T`` all into negative or all into positive edges."""
    n = g.n
    k = min(len(T), max(1, math.ceil(c * n)))
    while k >= 1:
        chosen = T[:k]
        forbidden = set(chosen)
        if n - k < 3:
            k //= 2
            continue
        items = []
        for v in chosen:
            inside = [(a, b) for a, b in _edges_in_neighborhood(g, v, forbidden)
                      if fs[g.edge_id(v, a)] > 0 and fs[g.edge_id(v, b)] > 0]
            items.append(((v, "-"), [ab for ab in inside if fs[g.edge_id(*ab)] < 0]))
            items.append(((v, "+"), [ab for ab in inside if fs[g.edge_id(*ab)] > 0]))
        try:
            picks = _pick_edges(g, items, rng)
            forced = sorted(g.edge_id(*ab) for ab in picks)
            rest = [v for v in range(n) if v not in forbidden]
            base = cycle_through_forest(g, forced, vertices=rest, seed=rng)
        except (NoFeasiblePlan, HamiltonSearchError):
            k //= 2
            continue
        neg = {v: ab for ((v, tag), _), ab in zip(items, picks) if tag == "-"}
        pos = {v: ab for ((v, tag), _), ab in zip(items, picks) if tag == "+"}
        return [(insert_vertices(base, neg), "insert-into-negative"),
                (insert_vertices(base, pos), "insert-into-positive")]
    return []
