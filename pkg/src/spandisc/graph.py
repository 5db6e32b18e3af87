"""Immutable simple graphs with stable edge ids, generators and small predicates.

Vertices are ``0..n-1``.  Edge ids are dense ``0..m-1`` and never change once the
graph is built; procedures that "delete" vertices or edges work on filtered views
(vertex subsets / edge predicates) instead of rebuilding the graph.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence


class GraphFormatError(ValueError):
    pass


@dataclass(frozen=True)
class GridSpec:
    """Coordinates of ``P_k x P_l``: ``k`` rows, ``l`` columns, ``(0, 0)`` bottom left.

    Vertex ``(i, j)`` (row ``i``, column ``j``) has id ``i * l + j``.
    """

    k: int
    l: int

    def vertex(self, i: int, j: int) -> int:
        if not (0 <= i < self.k and 0 <= j < self.l):
            raise IndexError(f"({i}, {j}) outside {self.k}x{self.l} grid")
        return i * self.l + j

    def coord(self, v: int) -> tuple[int, int]:
        return divmod(v, self.l)

    def is_horizontal(self, u: int, v: int) -> bool:
        return u // self.l == v // self.l


class Graph:
    """Simple undirected graph.

    ``edges[e]`` is the pair ``(u, v)`` with ``u < v``; ``adj[v]`` lists
    ``(neighbour, edge_id)`` pairs.
    """

    __slots__ = ("n", "edges", "adj", "_index", "grid", "name")

    def __init__(self, n: int, edges: Iterable[Sequence[int]], grid: GridSpec | None = None,
                 name: str = ""):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        self.n = n
        norm = []
        index: dict[tuple[int, int], int] = {}
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise GraphFormatError(f"loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in index:
                raise GraphFormatError(f"duplicate edge {key}")
            index[key] = len(norm)
            norm.append(key)
        self.edges: tuple[tuple[int, int], ...] = tuple(norm)
        self._index = index
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for e, (u, v) in enumerate(norm):
            adj[u].append((v, e))
            adj[v].append((u, e))
        self.adj: tuple[tuple[tuple[int, int], ...], ...] = tuple(tuple(a) for a in adj)
        self.grid = grid
        self.name = name

    @property
    def m(self) -> int:
        return len(self.edges)

    def __repr__(self) -> str:
        label = self.name or "Graph"
        return f"<{label} n={self.n} m={self.m}>"

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def edge_id(self, u: int, v: int) -> int:
        key = (u, v) if u < v else (v, u)
        try:
            return self._index[key]
        except KeyError:
            raise KeyError(f"no edge between {u} and {v}") from None

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._index

    def neighbors(self, v: int) -> list[int]:
        return [u for u, _ in self.adj[v]]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def other(self, e: int, v: int) -> int:
        u, w = self.edges[e]
        return w if u == v else u

    def check_edge_ids(self, ids: Iterable[int]) -> None:
        for e in ids:
            if not (0 <= e < self.m):
                raise KeyError(f"unknown edge id {e}")

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex ``v`` renamed to ``perm[v]``; edge order is kept."""
        return Graph(self.n, ((perm[u], perm[v]) for u, v in self.edges), name=self.name)

    def path_edges(self, vertices: Sequence[int], closed: bool = False) -> list[int]:
        """Edge ids along a vertex sequence (raises ``KeyError`` on a missing edge)."""
        out = [self.edge_id(a, b) for a, b in zip(vertices, vertices[1:])]
        if closed and len(vertices) > 2:
            out.append(self.edge_id(vertices[-1], vertices[0]))
        return out


# -- generators ---------------------------------------------------------------

def make_grid(k: int, l: int) -> Graph:
    """``P_k x P_l``; edges row-major, within a row horizontal edges before vertical."""
    if k < 1 or l < 1:
        raise ValueError("grid dimensions must be positive")
    spec = GridSpec(k, l)
    edges = []
    for i in range(k):
        for j in range(l - 1):
            edges.append((spec.vertex(i, j), spec.vertex(i, j + 1)))
        if i + 1 < k:
            for j in range(l):
                edges.append((spec.vertex(i, j), spec.vertex(i + 1, j)))
    return Graph(k * l, edges, grid=spec, name=f"grid{k}x{l}")


def make_complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("n must be positive")
    return Graph(n, ((u, v) for u in range(n) for v in range(u + 1, n)), name=f"K{n}")


def make_complete_minus_clique(n: int) -> tuple[Graph, list[int], list[int]]:
    """``K_n - K_{n/4}``: the first ``n/4`` vertices form an independent set ``V1``."""
    if n < 4 or n % 4:
        raise ValueError("n must be a positive multiple of 4")
    q = n // 4
    v1 = list(range(q))
    v2 = list(range(q, n))
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if not (u < q and v < q)]
    return Graph(n, edges, name=f"K{n}-K{q}"), v1, v2


def make_path(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)), name=f"P{n}")


def make_cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)], name=f"C{n}")


def make_star(leaves: int) -> Graph:
    return Graph(leaves + 1, ((0, i) for i in range(1, leaves + 1)), name=f"K1,{leaves}")


def random_graph(n: int, p: float, rng) -> Graph:
    """Erdos-Renyi ``G(n, p)`` drawn with a ``random.Random``-like ``rng``."""
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def random_dense_graph(n: int, min_degree: int, rng, p: float = 0.5) -> Graph:
    """Random graph with ``delta >= min_degree``: ``G(n, p)`` plus edges added at deficient vertices."""
    if min_degree > n - 1:
        raise ValueError("min_degree exceeds n - 1")
    adj = [set() for _ in range(n)]
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                adj[u].add(v)
                adj[v].add(u)
    for v in rng.sample(range(n), n):
        while len(adj[v]) < min_degree:
            cand = [u for u in range(n) if u != v and u not in adj[v]]
            u = rng.choice(cand)
            adj[v].add(u)
            adj[u].add(v)
    return Graph(n, sorted((u, v) for u in range(n) for v in adj[u] if u < v))


# -- predicates ---------------------------------------------------------------

class DisjointSet:
    __slots__ = ("parent", "count")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.count = n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        self.count -= 1
        return True


def is_linear_forest(g: Graph, edge_ids: Iterable[int]) -> bool:
    ids = list(edge_ids)
    g.check_edge_ids(ids)
    if len(set(ids)) != len(ids):
        return False
    deg = [0] * g.n
    ds = DisjointSet(g.n)
    for e in ids:
        u, v = g.edges[e]
        deg[u] += 1
        deg[v] += 1
        if deg[u] > 2 or deg[v] > 2 or not ds.union(u, v):
            return False
    return True


def components(g: Graph, edge_filter: Callable[[int], bool] | Iterable[int] | None = None,
               vertices: Iterable[int] | None = None) -> list[list[int]]:
    """Connected components of the spanning subgraph on the filtered edges.

    ``edge_filter`` is a predicate on edge ids or an explicit collection of ids;
    ``None`` keeps every edge.  ``vertices`` restricts to an induced vertex subset.
    """
    if edge_filter is None:
        keep = lambda e: True  # noqa: E731
    elif callable(edge_filter):
        keep = edge_filter
    else:
        chosen = set(edge_filter)
        keep = chosen.__contains__
    vs = range(g.n) if vertices is None else sorted(set(vertices))
    inside = None if vertices is None else set(vs)
    ds = DisjointSet(g.n)
    for e, (u, v) in enumerate(g.edges):
        if inside is not None and (u not in inside or v not in inside):
            continue
        if keep(e):
            ds.union(u, v)
    groups: dict[int, list[int]] = {}
    for v in vs:
        groups.setdefault(ds.find(v), []).append(v)
    return sorted(groups.values())


def is_connected(g: Graph, vertices: Iterable[int] | None = None) -> bool:
    return len(components(g, vertices=vertices)) <= 1


def is_spanning_tree(g: Graph, edge_ids: Iterable[int]) -> bool:
    ids = list(edge_ids)
    if len(set(ids)) != len(ids) or len(ids) != g.n - 1:
        return False
    g.check_edge_ids(ids)
    ds = DisjointSet(g.n)
    return all(ds.union(*g.edges[e]) for e in ids)


def is_tree(g: Graph, edge_ids: Iterable[int]) -> bool:
    """Non-empty edge set forming a tree (connected and acyclic)."""
    ids = list(edge_ids)
    if not ids or len(set(ids)) != len(ids):
        return False
    g.check_edge_ids(ids)
    verts = {x for e in ids for x in g.edges[e]}
    if len(ids) != len(verts) - 1:
        return False
    ds = DisjointSet(g.n)
    return all(ds.union(*g.edges[e]) for e in ids)


def path_order(g: Graph, edge_ids: Iterable[int]) -> list[int] | None:
    """Vertex sequence of a simple path given by its edges, or ``None`` if not a path."""
    ids = list(edge_ids)
    if not ids:
        return None
    if not is_linear_forest(g, ids):
        return None
    nbrs: dict[int, list[int]] = {}
    for e in ids:
        u, v = g.edges[e]
        nbrs.setdefault(u, []).append(v)
        nbrs.setdefault(v, []).append(u)
    if len(nbrs) != len(ids) + 1:
        return None
    start = min(v for v, ns in nbrs.items() if len(ns) == 1)
    order = [start]
    prev = -1
    cur = start
    while True:
        nxt = [w for w in nbrs[cur] if w != prev]
        if not nxt:
            break
        prev, cur = cur, nxt[0]
        order.append(cur)
    return order


def cycle_order(g: Graph, edge_ids: Iterable[int]) -> list[int] | None:
    """Vertex sequence of a simple cycle given by its edges, or ``None``."""
    ids = list(edge_ids)
    if len(ids) < 3 or len(set(ids)) != len(ids):
        return None
    g.check_edge_ids(ids)
    nbrs: dict[int, list[int]] = {}
    for e in ids:
        u, v = g.edges[e]
        nbrs.setdefault(u, []).append(v)
        nbrs.setdefault(v, []).append(u)
    if any(len(ns) != 2 for ns in nbrs.values()) or len(nbrs) != len(ids):
        return None
    start = min(nbrs)
    order = [start]
    prev, cur = start, nbrs[start][0]
    while cur != start:
        order.append(cur)
        a, b = nbrs[cur]
        prev, cur = cur, (b if a == prev else a)
    return order if len(order) == len(ids) else None


def is_hamilton_cycle(g: Graph, edge_ids: Iterable[int]) -> bool:
    ids = list(edge_ids)
    if g.n < 3 or len(ids) != g.n:
        return False
    order = cycle_order(g, ids)
    return order is not None and len(order) == g.n


def is_hamilton_path(g: Graph, edge_ids: Iterable[int]) -> bool:
    ids = list(edge_ids)
    if g.n == 1:
        return not ids
    order = path_order(g, ids)
    return order is not None and len(order) == g.n


# -- serialization ------------------------------------------------------------

def parse_graph(text: str) -> Graph:
    """Parse the edge-list format: first line ``n``, then ``u v`` per line (0-based).

    Blank lines and ``#`` comments are ignored.
    """
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise GraphFormatError("empty input")
    try:
        n = int(lines[0])
    except ValueError:
        raise GraphFormatError(f"first line must be the vertex count, got {lines[0]!r}") from None
    edges = []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer vertex in {line!r}") from None
    return Graph(n, edges)


def canonical(g: Graph) -> Graph:
    return Graph(g.n, sorted(g.edges), name=g.name)


def serialize_graph(g: Graph) -> str:
    body = "".join(f"{u} {v}\n" for u, v in sorted(g.edges))
    return f"{g.n}\n{body}"


def graph_to_json(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges]}


def graph_from_json(data: dict | str) -> Graph:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        return Graph(int(data["n"]), (tuple(e) for e in data["edges"]))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, GraphFormatError):
            raise
        raise GraphFormatError(f"malformed graph JSON: {exc}") from None


def load_graph(path: str) -> Graph:
    with open(path) as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return graph_from_json(text)
    return parse_graph(text)
