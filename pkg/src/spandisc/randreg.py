"""Random regular graphs and positive-component statistics of their labelings.

Pipeline: sample a simple ``d``-regular graph from the configuration model
(rejecting loops and multi-edges), label it, count the components of the
positive subgraph, and build a spanning tree with as few negative edges as
possible.  That tree uses exactly ``t - 1`` negative edges (``t`` = number of
positive components), so ``|f(T)| >= n + 1 - 2t``.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from .families import FamilyKind, Witness, extremal_spanning_tree
from .graph import Graph, components, is_connected
from .labeling import Labeling, check_labeling


class RejectionBudgetExceeded(RuntimeError):
    def __init__(self, attempts: int):
        super().__init__(f"no simple graph after {attempts} configuration-model attempts")
        self.attempts = attempts


def random_regular(n: int, d: int, seed=0, max_attempts: int = 10_000) -> Graph:
    """Uniform simple ``d``-regular graph on ``n`` vertices (configuration model + rejection)."""
    return sample_regular(n, d, seed, max_attempts)[0]


def sample_regular(n: int, d: int, seed=0, max_attempts: int = 10_000) -> tuple[Graph, int]:
    """Like :func:`random_regular`, also returning the number of pairings drawn."""
    if d < 1 or n < 1:
        raise ValueError("need n >= 1 and d >= 1")
    if (n * d) % 2:
        raise ValueError("n * d must be even")
    if d >= n:
        raise ValueError("d must be smaller than n")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    points = np.repeat(np.arange(n, dtype=np.int64), d)
    for attempt in range(1, max_attempts + 1):
        perm = rng.permutation(points)
        u, v = perm[0::2], perm[1::2]
        if np.any(u == v):
            continue
        lo, hi = np.minimum(u, v), np.maximum(u, v)
        keys = lo * n + hi
        if np.unique(keys).size != keys.size:
            continue
        return Graph(n, zip(lo.tolist(), hi.tolist()), name=f"rr{n},{d}"), attempt
    raise RejectionBudgetExceeded(max_attempts)


def short_cycle_census(g: Graph, lengths=(3, 4, 5)) -> dict[int, int]:
    """Number of cycles of each length in ``lengths`` (each cycle counted once)."""
    out = {}
    nbrs = [sorted(g.neighbors(v)) for v in range(g.n)]
    for L in lengths:
        if L < 3:
            raise ValueError("cycle length must be >= 3")
        if L == 3:
            sets = [set(ns) for ns in nbrs]
            out[3] = sum(len(sets[u] & sets[v]) for u, v in g.edges) // 3
            continue
        count = 0
        # root each cycle at its smallest vertex; each cycle is found twice (two directions)
        for s in range(g.n):
            stack = [(s, [s])]
            while stack:
                v, path = stack.pop()
                if len(path) == L:
                    if s in nbrs[v]:
                        count += 1
                    continue
                for u in nbrs[v]:
                    if u > s and u not in path:
                        stack.append((u, path + [u]))
        out[L] = count // 2
    return out


def cycle_count_mean(j: int, d: int = 3) -> float:
    """Limiting mean ``(d - 1)^j / (2j)`` of the number of ``j``-cycles in a random ``d``-regular graph."""
    return (d - 1) ** j / (2 * j)


@dataclass
class ComponentStats:
    n: int
    t: int
    sizes: dict  # component size -> count (a_i)
    negatives: int
    positives: int
    flipped: bool

    @property
    def a1(self) -> int:
        return self.sizes.get(1, 0)

    def check(self, m: int) -> bool:
        return (self.t == sum(self.sizes.values())
                and sum(i * a for i, a in self.sizes.items()) == self.n
                and self.negatives + self.positives == m
                and self.negatives <= self.positives)

    def to_json(self) -> dict:
        d = asdict(self)
        d["sizes"] = {str(k): v for k, v in sorted(self.sizes.items())}
        d["a1"] = self.a1
        return d


def oriented(f: Labeling) -> tuple[Labeling, bool]:
    """``f`` or ``-f``, whichever has at most as many negative as positive edges."""
    neg = sum(1 for s in f if s < 0)
    return (-f, True) if 2 * neg > len(f) else (f, False)


def positive_component_stats(g: Graph, f: Labeling) -> ComponentStats:
    """Component statistics of the positive subgraph, after orienting so that ``|N| <= |P|``."""
    check_labeling(g, f)
    f, flipped = oriented(f)
    comps = components(g, lambda e: f[e] > 0)
    sizes: dict[int, int] = {}
    for c in comps:
        sizes[len(c)] = sizes.get(len(c), 0) + 1
    neg = sum(1 for s in f if s < 0)
    return ComponentStats(g.n, len(comps), sizes, neg, g.m - neg, flipped)


@dataclass(frozen=True)
class GreedyTree:
    witness: Witness
    negatives_used: int
    t: int
    bound: int  # n + 1 - 2t, a lower bound on |f(T)|
    flipped: bool


def positive_greedy_tree(g: Graph, f: Labeling) -> GreedyTree:
    """Spanning tree with the most positive edges (labels oriented so ``|N| <= |P|``)."""
    check_labeling(g, f)
    if not is_connected(g):
        raise ValueError("graph is disconnected: no spanning tree")
    fo, flipped = oriented(f)
    tree = extremal_spanning_tree(g, fo, maximize=True)
    w = Witness.build(g, fo, FamilyKind.SPANNING_TREES, tree)
    neg = sum(1 for e in tree if fo[e] < 0)
    t = len(components(g, lambda e: fo[e] > 0))
    return GreedyTree(w, neg, t, g.n + 1 - 2 * t, flipped)


@dataclass
class IsoperimetryResult:
    ratio: Fraction
    argmin: tuple
    exhaustive: bool
    examined: int

    def to_json(self) -> dict:
        return {"ratio": str(self.ratio), "ratio_float": float(self.ratio), "argmin": list(self.argmin),
                "exhaustive": self.exhaustive, "examined": self.examined}


def _boundary(g: Graph, U) -> int:
    Us = set(U)
    return len({w for v in Us for w in g.neighbors(v)} - Us)


def isoperimetry_scan(g: Graph, s: int, budget: int = 2_000_000, seed=0,
                      heuristic: bool | None = None) -> IsoperimetryResult:
    """``min |N(U) - U| / |U|`` over non-empty ``U`` with ``|U| <= s``.

    Exhaustive when the number of subsets fits ``budget`` (or ``heuristic=False``,
    which raises if it does not); otherwise a seeded local search gives an upper
    bound and the result is flagged non-exhaustive.
    """
    if s < 1:
        raise ValueError("s must be >= 1")
    s = min(s, g.n)
    total = sum(math.comb(g.n, k) for k in range(1, s + 1))
    if heuristic is None:
        heuristic = total > budget
    if not heuristic:
        if total > budget:
            raise ValueError(f"{total} subsets exceed the budget {budget}")
        best, arg = None, ()
        for k in range(1, s + 1):
            for U in itertools.combinations(range(g.n), k):
                r = Fraction(_boundary(g, U), k)
                if best is None or r < best:
                    best, arg = r, U
        return IsoperimetryResult(best, arg, True, total)

    rng = np.random.default_rng(seed)
    best, arg = None, ()
    examined = 0
    for _ in range(max(1, min(200, budget // max(1, s * g.n)))):
        U = {int(rng.integers(g.n))}
        while True:
            r = Fraction(_boundary(g, U), len(U))
            examined += 1
            if best is None or r < best:
                best, arg = r, tuple(sorted(U))
            if len(U) >= s:
                break
            frontier = {w for v in U for w in g.neighbors(v)} - U
            if not frontier:
                break
            # grow by the frontier vertex that minimises the new boundary
            scored = sorted((_boundary(g, U | {w}), w) for w in frontier)
            U.add(scored[0][1])
    return IsoperimetryResult(best, arg, False, examined)


def fragmenting_labeling(g: Graph, rng) -> Labeling:
    """Adversarial heuristic: negate edges so the positive subgraph splits into many small parts.

    Picks a random maximal independent set ``I`` and makes every edge at ``I``
    negative, isolating ``I`` in ``G+``; then, while ``|N| < |P|``, negates further
    edges that isolate additional vertices.  Stops as soon as ``|N| <= |P|`` would break.
    """
    n, m = g.n, g.m
    order = rng.permutation(n)
    signs = [1] * m
    isolated = np.zeros(n, dtype=bool)
    neg = 0
    for v in order:
        v = int(v)
        if isolated[v]:
            continue
        new = [e for _, e in g.adj[v] if signs[e] > 0]
        if 2 * (neg + len(new)) > m:
            continue
        for e in new:
            signs[e] = -1
        neg += len(new)
        isolated[v] = True
    return Labeling(signs)


@dataclass
class ExperimentRow:
    sample: int
    n: int
    t: int
    a1: int
    negatives: int
    positives: int
    tree_negatives: int
    witness_bound: int
    count_bound_residual: float  # t - (|N|/2 + a1/4)
    small_cyclic_components: int
    attempts: int

    @property
    def t_over_n(self) -> float:
        return self.t / self.n


def _small_cyclic(g: Graph, f: Labeling, limit: int = 8) -> int:
    """Positive components of at most ``limit`` vertices that contain a cycle."""
    count = 0
    for comp in components(g, lambda e: f[e] > 0):
        if len(comp) > limit:
            continue
        cs = set(comp)
        edges = sum(1 for v in comp for u, e in g.adj[v] if u in cs and f[e] > 0 and u > v)
        if edges >= len(comp):
            count += 1
    return count


@dataclass
class ExperimentReport:
    n: int
    d: int
    samples: int
    seed: int
    rows: list = field(default_factory=list)

    def summary(self) -> dict:
        if not self.rows:
            return {}
        arr = lambda key: np.array([getattr(r, key) for r in self.rows], dtype=float)  # noqa: E731
        return {
            "t_over_n_mean": float(arr("t").mean() / self.n),
            "a1_over_n_mean": float(arr("a1").mean() / self.n),
            "witness_bound_over_n_min": float(arr("witness_bound").min() / self.n),
            "count_bound_residual_max": float(arr("count_bound_residual").max()),
            "tree_identity_violations": int(sum(r.tree_negatives != r.t - 1 for r in self.rows)),
            "orientation_violations": int(sum(r.negatives > r.positives for r in self.rows)),
        }

    def to_json(self) -> dict:
        return {"n": self.n, "d": self.d, "samples": self.samples, "seed": self.seed,
                "summary": self.summary(), "rows": [asdict(r) for r in self.rows]}

    def to_csv(self) -> str:
        buf = io.StringIO()
        fields = list(ExperimentRow.__dataclass_fields__)
        w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        for r in self.rows:
            w.writerow(asdict(r))
        return buf.getvalue()


def positive_component_experiment(n: int, samples: int, seed: int = 0, d: int = 3,
                                  n_cap: int = 200_000) -> ExperimentReport:
    """Per-sample positive-component statistics under the fragmenting labeling heuristic.

    Records ``t``, ``a_1``, the tree witness bound ``n + 1 - 2t`` and the residual
    ``t - |N|/2 - a_1/4`` of the component-count inequality (reported, not asserted).
    """
    if n > n_cap:
        raise ValueError(f"n = {n} exceeds the cap {n_cap}")
    rep = ExperimentReport(n, d, samples, seed)
    seeds = np.random.SeedSequence(seed).spawn(samples)
    for i, ss in enumerate(seeds):
        rng = np.random.default_rng(ss)
        g, attempts = sample_regular(n, d, rng)
        while not is_connected(g):  # pragma: no cover - vanishingly rare for d = 3
            g, more = sample_regular(n, d, rng)
            attempts += more
        f, _ = oriented(fragmenting_labeling(g, rng))
        st = positive_component_stats(g, f)
        tree = positive_greedy_tree(g, f)
        rep.rows.append(ExperimentRow(
            i, n, st.t, st.a1, st.negatives, st.positives, tree.negatives_used, tree.bound,
            st.t - st.negatives / 2 - st.a1 / 4, _small_cyclic(g, f),
            attempts))
    return rep


def census_statistics(n: int, samples: int, seed: int = 0, d: int = 3,
                      lengths=(3, 4, 5)) -> dict:
    """Sample mean and standard error of short-cycle counts over random ``d``-regular graphs."""
    seeds = np.random.SeedSequence(seed).spawn(samples)
    counts = {L: [] for L in lengths}
    for ss in seeds:
        g = random_regular(n, d, np.random.default_rng(ss))
        for L, c in short_cycle_census(g, lengths).items():
            counts[L].append(c)
    out = {}
    for L, xs in counts.items():
        a = np.array(xs, dtype=float)
        out[L] = {"mean": float(a.mean()), "sd": float(a.std(ddof=1)) if len(a) > 1 else 0.0,
                  "limit": cycle_count_mean(L, d), "samples": len(a)}
    return out


__all__ = [
    "ComponentStats", "ExperimentReport", "ExperimentRow", "GreedyTree",
    "IsoperimetryResult", "RejectionBudgetExceeded", "census_statistics", "cycle_count_mean",
    "fragmenting_labeling", "isoperimetry_scan", "oriented", "positive_component_experiment",
    "positive_component_stats", "positive_greedy_tree", "random_regular", "sample_regular", "short_cycle_census",
]
