"""Command-line entry point: ``spandisc <subcommand> ...``.

Graph sources: ``--gen SPEC`` with SPEC one of

    grid:KxL      K-by-L grid graph
    kn:N          complete graph
    kn-minus:N    K_N minus a clique on N/4 vertices
    rr:N,D        random D-regular graph (uses --seed)

or ``--graph FILE`` (edge list: first line ``n``, then ``u v`` per line; or JSON).

Every report is JSON with the run configuration and library version embedded.
Exit status: 0 success, 1 infeasible / over budget / check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time

from . import __version__
from .constructions import (boundary_min_scan, cut_labeling, find_separator, grid_long_path,
                            half_grid_labeling, p2_strip_labeling, parity_tree_pair, stripe_paths)
from .engine import exact_discrepancy, labeling_discrepancy
from .families import (CapExceeded, EmptyFamily, FamilyKind, brute_force_extremes,
                       family_max_abs)
from .graph import (Graph, GraphFormatError, graph_to_json, is_connected, load_graph,
                    make_complete, make_complete_minus_clique, make_grid, random_graph,
                    serialize_graph)
from .hamilton import HamiltonSearchError, NoFeasiblePlan, PreconditionError, search_dense
from .labeling import Labeling, negative_star_labeling
from .randreg import positive_component_experiment, random_regular

SCHEMA = 1
THREADS_ENV = "SPANDISC_THREADS"


class UsageError(Exception):
    pass


class Infeasible(Exception):
    pass


def parse_gen(spec: str, seed: int = 0) -> Graph:
    kind, _, arg = spec.partition(":")
    try:
        if kind == "grid":
            k, l = arg.lower().split("x")
            return make_grid(int(k), int(l))
        if kind == "kn":
            return make_complete(int(arg))
        if kind == "kn-minus":
            return make_complete_minus_clique(int(arg))[0]
        if kind == "rr":
            n, d = arg.split(",")
            return random_regular(int(n), int(d), seed)
    except ValueError as exc:
        raise UsageError(f"--gen {spec!r}: {exc}") from exc
    raise UsageError(f"--gen {spec!r}: unknown generator (grid:KxL, kn:N, kn-minus:N, rr:N,D)")


def get_graph(args) -> Graph:
    if getattr(args, "graph", None):
        try:
            return load_graph(args.graph)
        except (OSError, GraphFormatError) as exc:
            raise UsageError(f"--graph: {exc}") from exc
    if getattr(args, "gen", None):
        return parse_gen(args.gen, args.seed)
    raise UsageError("one of --gen or --graph is required")


def get_labeling(g: Graph, spec: str | None, seed: int) -> Labeling:
    """``random``, ``plus``, ``minus``, ``negative-star``, a file, or a literal ``+``/``-`` string."""
    if spec is None or spec == "random":
        return Labeling.random(g.m, random.Random(seed))
    if spec == "plus":
        return Labeling.constant(g.m, 1)
    if spec == "minus":
        return Labeling.constant(g.m, -1)
    if spec == "negative-star":
        if g.n % 4:
            raise UsageError("--labeling negative-star needs a kn-minus graph")
        return negative_star_labeling(g, list(range(g.n // 4)))
    if os.path.exists(spec):
        with open(spec) as fh:
            text = fh.read().strip()
        f = Labeling.from_json(text) if text.startswith("[") else Labeling.from_string(text)
    else:
        try:
            f = Labeling.from_string(spec)
        except ValueError as exc:
            raise UsageError(f"--labeling: {exc}") from exc
    if len(f) != g.m:
        raise UsageError(f"--labeling has {len(f)} labels but the graph has {g.m} edges")
    return f


def get_family(name: str) -> FamilyKind:
    try:
        return FamilyKind.parse(name)
    except ValueError as exc:
        raise UsageError(f"--family: {exc}") from exc


# -- subcommands ------------------------------------------------------------------

def cmd_gen(args):
    g = get_graph(args)
    if args.format == "edges":
        return serialize_graph(g)
    return {"graph": graph_to_json(g), "n": g.n, "m": g.m}


def cmd_exact(args):
    g = get_graph(args)
    kind = get_family(args.family)
    rep = exact_discrepancy(g, kind, budget=args.budget, threads=args.threads)
    out = rep.to_json(timing=args.timing)
    if not rep.exact:
        raise Infeasible(out)
    return out


def cmd_label(args):
    g = get_graph(args)
    f = get_labeling(g, args.labeling, args.seed)
    kind = get_family(args.family)
    val, w = labeling_discrepancy(g, f, kind)
    return {"labeling": f.to_string(), "family": kind.value, "discrepancy": val,
            "witness": w.to_json()}


def cmd_construct(args):
    what = args.what
    if what == "half-grid":
        g, f = half_grid_labeling(args.k)
        val, w = labeling_discrepancy(g, f, FamilyKind.SPANNING_TREES)
        return {"labeling": f.to_string(), "discrepancy": val, "witness": w.to_json()}
    if what == "p2-strip":
        g, f = p2_strip_labeling(args.k)
        val, w = labeling_discrepancy(g, f, FamilyKind.SPANNING_TREES)
        return {"labeling": f.to_string(), "discrepancy": val, "witness": w.to_json()}
    if what == "boundary-scan":
        s = boundary_min_scan(args.k)
        return {"k": s.k, "min_boundary": s.min_boundary, "argmin": sorted(s.argmin),
                "size_range": list(s.size_range), "subsets": s.subsets}
    g = get_graph(args)
    if what == "cut":
        cut = find_separator(g)
        f = cut_labeling(g, cut)
        val, w = labeling_discrepancy(g, f, FamilyKind.SPANNING_TREES)
        return {"cut": cut.to_json(), "labeling": f.to_string(), "discrepancy": val,
                "witness": w.to_json()}
    f = get_labeling(g, args.labeling, args.seed)
    if what == "stripe-paths":
        sp = stripe_paths(g, f)
        return {"labeling": f.to_string(), "x": sp.x, "y": sp.y,
                "paths": [w.to_json() for w in sp.paths], "best": sp.best.abs,
                "guarantee_met": sp.guarantee_met}
    if what in ("parity-tree", "parity-trees"):
        pp = parity_tree_pair(g, f)
        return {"labeling": f.to_string(), "t": pp.t, "parity": list(pp.parity),
                "plus": pp.plus.to_json(), "minus": pp.minus.to_json(),
                "difference": pp.plus.sum - pp.minus.sum}
    if what == "long-path":
        w = grid_long_path(g, f)
        return {"labeling": f.to_string(), "witness": w.to_json(), "bound": w.meta["bound"],
                "bound_met": w.meta["bound_met"]}
    raise UsageError(f"--what {what!r}")  # pragma: no cover - argparse restricts choices


def cmd_search(args):
    g = get_graph(args)
    f = get_labeling(g, args.labeling, args.seed)
    res = search_dense(g, f, c=args.c, seed=args.seed, exact_cap=args.exact_cap)
    return {"labeling": f.to_string(), **res.to_json()}


def cmd_rrstats(args):
    rep = positive_component_experiment(args.n, args.samples, seed=args.seed, d=args.d)
    if args.csv:
        return rep.to_csv()
    return rep.to_json()


def _random_instance(kind: FamilyKind, rng: random.Random) -> tuple[Graph, Labeling]:
    while True:
        if kind is FamilyKind.HAMILTON_CYCLES or kind is FamilyKind.HAMILTON_PATHS:
            n = rng.randint(4, 7)
            g = random_graph(n, rng.uniform(0.5, 0.9), rng)
        else:
            n = rng.randint(3, 6)
            g = random_graph(n, rng.uniform(0.4, 0.8), rng)
        if g.m and (kind is not FamilyKind.SPANNING_TREES or is_connected(g)):
            return g, Labeling.random(g.m, rng)


def cmd_oracle_check(args):
    kind = get_family(args.family)
    rng = random.Random(args.seed)
    mismatches = []
    for i in range(args.pairs):
        g, f = _random_instance(kind, rng)
        hi, lo, count = brute_force_extremes(g, f, kind)
        want = None if count == 0 else max(abs(hi), abs(lo))
        try:
            got = family_max_abs(g, f, kind).abs
        except EmptyFamily:
            got = None
        if got != want:
            mismatches.append({"pair": i, "graph": graph_to_json(g), "labeling": f.to_string(),
                               "fast": got, "enumeration": want})
    out = {"family": kind.value, "pairs": args.pairs, "mismatches": mismatches}
    if mismatches:
        raise Infeasible(out)
    return out


def cmd_bench(args):
    g = get_graph(args)
    kind = get_family(args.family)
    t0 = time.perf_counter()
    rep = exact_discrepancy(g, kind, budget=args.budget, threads=args.threads)
    dt = time.perf_counter() - t0
    return {"family": kind.value, "examined": rep.examined, "seconds": round(dt, 4),
            "rate": round(rep.examined / dt, 1) if dt > 0 else None, "upper": rep.upper,
            "exact": rep.exact}


# -- parser ---------------------------------------------------------------------

def _add_graph(p):
    src = p.add_mutually_exclusive_group()
    src.add_argument("--gen", help="generator spec: grid:KxL, kn:N, kn-minus:N, rr:N,D")
    src.add_argument("--graph", help="graph file (edge list or JSON)")


def _add_output(p, csv: bool = False):
    p.add_argument("--json", action="store_true", help="JSON output (default)")
    if csv:
        p.add_argument("--csv", action="store_true", help="CSV rows instead of JSON")
    p.add_argument("--out", help="write the report to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    env_threads = int(os.environ.get(THREADS_ENV, "1") or 1)
    parser = argparse.ArgumentParser(prog="spandisc", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"spandisc {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="generate a graph")
    _add_graph(p)
    p.add_argument("--format", choices=("json", "edges"), default="json")
    _add_output(p)
    p.set_defaults(func=cmd_gen)

    for name, func, helptext in (("exact", cmd_exact, "exact discrepancy by labeling sweep"),
                                 ("bench", cmd_bench, "time a labeling sweep")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        _add_graph(p)
        p.add_argument("--family", default="tn", help="tn, h, pn, t or p")
        p.add_argument("--budget", type=int, help="maximum labelings to evaluate")
        p.add_argument("--threads", type=int, default=env_threads,
                       help=f"sweep workers (default ${THREADS_ENV} or 1)")
        if name == "exact":
            p.add_argument("--timing", action="store_true", help="include wall time")
        _add_output(p)
        p.set_defaults(func=func)

    p = sub.add_parser("label", parents=[common], help="discrepancy of one labeling")
    _add_graph(p)
    p.add_argument("--labeling", default="random")
    p.add_argument("--family", default="tn")
    _add_output(p)
    p.set_defaults(func=cmd_label)

    p = sub.add_parser("construct", parents=[common], help="run a labeling/witness construction")
    _add_graph(p)
    p.add_argument("--what", required=True,
                   choices=("half-grid", "p2-strip", "cut", "stripe-paths", "parity-tree", "parity-trees",
                            "long-path", "boundary-scan"))
    p.add_argument("--k", type=int, default=4, help="size for half-grid, p2-strip, boundary-scan")
    p.add_argument("--labeling", default="random")
    _add_output(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("search", parents=[common], help="dense-graph Hamilton cycle search")
    _add_graph(p)
    p.add_argument("--labeling", default="random")
    p.add_argument("--c", type=float, default=0.05)
    p.add_argument("--exact-cap", type=int, default=18)
    _add_output(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("rrstats", parents=[common], help="positive-component statistics")
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--samples", type=int, default=10)
    _add_output(p, csv=True)
    p.set_defaults(func=cmd_rrstats)

    p = sub.add_parser("oracle-check", parents=[common], help="fast oracles vs enumeration")
    p.add_argument("--family", default="tn")
    p.add_argument("--pairs", type=int, default=100)
    _add_output(p)
    p.set_defaults(func=cmd_oracle_check)
    return parser


def _config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "json", "out")}


def _emit(args, payload, ok: bool) -> None:
    if isinstance(payload, str):
        text = payload
    else:
        report = {"schema": SCHEMA, "version": __version__, "config": _config(args),
                  "ok": ok, "result": payload}
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with status 2 on usage errors
    try:
        payload = args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except Infeasible as exc:
        _emit(args, exc.args[0], ok=False)
        return 1
    except (CapExceeded, EmptyFamily, HamiltonSearchError, NoFeasiblePlan, PreconditionError,
            ValueError) as exc:
        _emit(args, {"error": type(exc).__name__, "message": str(exc)}, ok=False)
        return 1
    _emit(args, payload, ok=True)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
