"""Edge labelings ``f: E -> {-1, +1}`` and the vertex statistics built from them."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from .graph import Graph


class Labeling:
    """Total map edge id -> sign, stored as a tuple of ``+1``/``-1``."""

    __slots__ = ("signs",)

    def __init__(self, signs: Iterable[int]):
        s = tuple(int(x) for x in signs)
        for x in s:
            if x not in (1, -1):
                raise ValueError(f"labels must be +1 or -1, got {x}")
        self.signs: tuple[int, ...] = s

    def __len__(self) -> int:
        return len(self.signs)

    def __getitem__(self, e: int) -> int:
        return self.signs[e]

    def __iter__(self):
        return iter(self.signs)

    def __neg__(self) -> Labeling:
        return Labeling(-x for x in self.signs)

    def __eq__(self, other) -> bool:
        return isinstance(other, Labeling) and self.signs == other.signs

    def __hash__(self) -> int:
        return hash(self.signs)

    def __repr__(self) -> str:
        return f"Labeling({self.to_string()!r})"

    @classmethod
    def constant(cls, m: int, sign: int = 1) -> Labeling:
        return cls([sign] * m)

    @classmethod
    def from_index(cls, m: int, index: int, fix_first: bool = True) -> Labeling:
        """Decode a sweep index.

        With ``fix_first`` edge 0 is ``+1`` and bit ``i-1`` of ``index`` set means
        edge ``i`` is ``-1``; otherwise bit ``i`` drives edge ``i``.
        """
        mask = negative_mask_from_index(index, fix_first)
        return cls(-1 if (mask >> e) & 1 else 1 for e in range(m))

    @classmethod
    def from_negative_mask(cls, m: int, mask: int) -> Labeling:
        return cls(-1 if (mask >> e) & 1 else 1 for e in range(m))

    @classmethod
    def random(cls, m: int, rng) -> Labeling:
        return cls(rng.choice((1, -1)) for _ in range(m))

    def negative_mask(self) -> int:
        mask = 0
        for e, x in enumerate(self.signs):
            if x < 0:
                mask |= 1 << e
        return mask

    def positive_edges(self) -> list[int]:
        return [e for e, x in enumerate(self.signs) if x > 0]

    def negative_edges(self) -> list[int]:
        return [e for e, x in enumerate(self.signs) if x < 0]

    def to_string(self) -> str:
        return "".join("+" if x > 0 else "-" for x in self.signs)

    @classmethod
    def from_string(cls, text: str) -> Labeling:
        signs = []
        for ch in text.strip():
            if ch == "+":
                signs.append(1)
            elif ch in "-−":
                signs.append(-1)
            elif not ch.isspace():
                raise ValueError(f"unexpected character {ch!r} in labeling string")
        return cls(signs)

    def to_json(self) -> list[int]:
        return list(self.signs)

    @classmethod
    def from_json(cls, data) -> Labeling:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data)


def negative_mask_from_index(index: int, fix_first: bool = True) -> int:
    return index << 1 if fix_first else index


def check_labeling(g: Graph, f: Labeling) -> None:
    if len(f) != g.m:
        raise ValueError(f"labeling has {len(f)} entries but the graph has {g.m} edges")


def subgraph_sum(f: Labeling, edge_ids: Iterable[int]) -> int:
    total = 0
    signs = f.signs
    m = len(signs)
    for e in edge_ids:
        if not 0 <= e < m:
            raise KeyError(f"unknown edge id {e}")
        total += signs[e]
    return total


def signed_neighborhoods(g: Graph, f: Labeling, v: int) -> tuple[list[int], list[int]]:
    """``(N+(v), N-(v))`` as sorted vertex lists."""
    if not 0 <= v < g.n:
        raise KeyError(f"unknown vertex {v}")
    pos, neg = [], []
    for u, e in g.adj[v]:
        (pos if f[e] > 0 else neg).append(u)
    return sorted(pos), sorted(neg)


def signed_degrees(g: Graph, f: Labeling) -> tuple[list[int], list[int]]:
    dp = [0] * g.n
    dn = [0] * g.n
    for e, (u, v) in enumerate(g.edges):
        d = dp if f[e] > 0 else dn
        d[u] += 1
        d[v] += 1
    return dp, dn


class Balance(str, Enum):
    BALANCED = "balanced"
    POSITIVE = "unbalanced-positive"
    NEGATIVE = "unbalanced-negative"


@dataclass(frozen=True)
class BalanceClass:
    tags: tuple[Balance, ...]
    nu: float
    threshold: int

    def balanced(self) -> list[int]:
        return [v for v, t in enumerate(self.tags) if t is Balance.BALANCED]

    def unbalanced(self) -> list[int]:
        return [v for v, t in enumerate(self.tags) if t is not Balance.BALANCED]


def balance_threshold(n: int, nu: float) -> int:
    # guard against 0.1 * 30 = 3.0000000000000004 style rounding
    return math.ceil(round(nu * n, 9))


def classify_balance(g: Graph, f: Labeling, nu: float) -> BalanceClass:
    """Tag each vertex: balanced iff ``d+(v) >= ceil(nu n)`` and ``d-(v) >= ceil(nu n)``.

    An unbalanced vertex is tagged by its majority sign (ties go positive).
    """
    if not 0 < nu < 1:
        raise ValueError("nu must lie in (0, 1)")
    check_labeling(g, f)
    thr = balance_threshold(g.n, nu)
    dp, dn = signed_degrees(g, f)
    tags = []
    for v in range(g.n):
        if dp[v] >= thr and dn[v] >= thr:
            tags.append(Balance.BALANCED)
        elif dp[v] >= dn[v]:
            tags.append(Balance.POSITIVE)
        else:
            tags.append(Balance.NEGATIVE)
    return BalanceClass(tuple(tags), nu, thr)


def triangle_g(g: Graph, f: Labeling, v: int, u: int, w: int) -> int:
    """Change of a cycle's label sum when its edge ``uw`` is replaced by ``u v w``."""
    if len({u, v, w}) != 3 or not (g.has_edge(u, v) and g.has_edge(v, w) and g.has_edge(u, w)):
        raise ValueError(f"{u}-{v}-{w} is not a triangle of the graph")
    return f[g.edge_id(u, v)] + f[g.edge_id(v, w)] - f[g.edge_id(u, w)]


class Color(str, Enum):
    RED = "red"
    BLUE = "blue"
    DARK_RED = "dark-red"
    DARK_BLUE = "dark-blue"


COLOR_VALUE = {Color.RED: -1, Color.BLUE: 1, Color.DARK_RED: -3, Color.DARK_BLUE: 3}
VALUE_COLOR = {v: c for c, v in COLOR_VALUE.items()}
SWAP_COLOR = {Color.RED: Color.BLUE, Color.BLUE: Color.RED,
              Color.DARK_RED: Color.DARK_BLUE, Color.DARK_BLUE: Color.DARK_RED}


@dataclass(frozen=True)
class ColorSet:
    colors: tuple[frozenset, ...]
    counts: tuple[dict, ...] = field(repr=False)
    tau: int = 1

    @property
    def multicolored(self) -> list[int]:
        return [v for v, c in enumerate(self.colors) if len(c) > 1]

    @property
    def uncolored(self) -> list[int]:
        return [v for v, c in enumerate(self.colors) if not c]

    def with_color(self, color: Color, only: bool = False) -> list[int]:
        if only:
            return [v for v, c in enumerate(self.colors) if c == {color}]
        return [v for v, c in enumerate(self.colors) if color in c]


def triangle_value_counts(g: Graph, f: Labeling) -> list[dict[int, int]]:
    """For each vertex ``v``, how many triangles at ``v`` give each g-value."""
    check_labeling(g, f)
    nbr_sets = [set(g.neighbors(v)) for v in range(g.n)]
    counts: list[dict[int, int]] = [{-3: 0, -1: 0, 1: 0, 3: 0} for _ in range(g.n)]
    for e, (u, w) in enumerate(g.edges):
        for v in nbr_sets[u] & nbr_sets[w]:
            val = f[g.edge_id(u, v)] + f[g.edge_id(v, w)] - f[e]
            counts[v][val] += 1
    return counts


def color_vertices(g: Graph, f: Labeling, tau: int) -> ColorSet:
    """Colour ``v`` with every colour whose g-value occurs on at least ``tau`` triangles at ``v``."""
    if tau < 1:
        raise ValueError("tau must be a positive integer")
    counts = triangle_value_counts(g, f)
    colors = tuple(frozenset(VALUE_COLOR[val] for val, c in cnt.items() if c >= tau)
                   for cnt in counts)
    return ColorSet(colors, tuple(counts), tau)


def negative_star_labeling(g: Graph, v1: Sequence[int]) -> Labeling:
    """``-1`` on every edge touching ``v1``, ``+1`` elsewhere."""
    s = set(v1)
    return Labeling(-1 if (u in s or v in s) else 1 for u, v in g.edges)
