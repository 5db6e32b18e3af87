"""Exact spanning-tree / path / Hamilton discrepancy of small grids and complete graphs.

    python3 scripts/grid_table.py --max-edges 24 --threads 4
"""
import argparse
import json
import time

from spandisc.engine import exact_discrepancy
from spandisc.families import EmptyFamily, FamilyKind
from spandisc.graph import make_complete, make_grid


def instances(max_edges):
    for k in range(2, 6):
        for l in range(k, 9):
            g = make_grid(k, l)
            if g.m <= max_edges:
                yield f"grid {k}x{l}", g
    for n in range(3, 8):
        g = make_complete(n)
        if g.m <= max_edges:
            yield f"K{n}", g


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-edges", type=int, default=20)
    ap.add_argument("--families", default="tn,pn,h")
    ap.add_argument("--threads", type=int, default=4)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    kinds = [FamilyKind(k) for k in args.families.split(",")]
    rows = []
    for name, g in instances(args.max_edges):
        row = {"graph": name, "n": g.n, "m": g.m}
        t0 = time.perf_counter()
        for kind in kinds:
            try:
                row[kind.value] = exact_discrepancy(g, kind, threads=args.threads).value
            except EmptyFamily:
                row[kind.value] = None
        row["seconds"] = round(time.perf_counter() - t0, 2)
        rows.append(row)
        if not args.json:
            vals = "  ".join(f"{k.value}={row[k.value] if row[k.value] is not None else '-':>2}" for k in kinds)
            print(f"{name:<12} n={g.n:<3} m={g.m:<3} {vals}  ({row['seconds']}s)", flush=True)
    if args.json:
        print(json.dumps(rows, indent=2))


if __name__ == "__main__":
    main()
