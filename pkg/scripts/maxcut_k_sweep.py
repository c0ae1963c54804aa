"""Max-Cut, sliding window: average f and total queries as k varies.

    python3 scripts/maxcut_k_sweep.py --graph-gen ba:n=500,m=2,seed=0 --window 250 --k 2-20:2
    python3 scripts/maxcut_k_sweep.py --edges path/to/snap.txt --window 5000 --k 10,20

Prints the per-(alg, k) aggregate table and optionally writes the summary CSV.
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass, field

from dynsubmod.bench import ALGORITHMS, BenchConfig, aggregate, summary_csv, sweep
from dynsubmod.data import (element_order, erdos_renyi_graph, load_edge_list,
                            preferential_attachment_graph, sliding_window_sequence)


@dataclass
class SweepConfig:
    window: int = 250
    ks: list[int] = field(default_factory=lambda: list(range(2, 21, 2)))
    algorithms: tuple[str, ...] = ALGORITHMS
    seeds: tuple[int, ...] = (0, 1, 2)
    eps_prime: float = 0.5
    order: str = "random"


def parse_ks(text: str) -> list[int]:
    """``2-20:2`` (range with step) or ``5,10,15``."""
    if "-" in text:
        span, _, step = text.partition(":")
        lo, hi = span.split("-")
        return list(range(int(lo), int(hi) + 1, int(step or 1)))
    return [int(x) for x in text.split(",")]


def load_graph(args):
    if args.edges:
        return load_edge_list(args.edges)
    kind, _, rest = args.graph_gen.partition(":")
    kv = dict(item.split("=") for item in rest.split(",") if item)
    if kind == "ba":
        return preferential_attachment_graph(int(kv["n"]), int(kv["m"]), seed=int(kv.get("seed", 0)))
    return erdos_renyi_graph(int(kv["n"]), float(kv["p"]), seed=int(kv.get("seed", 0)))


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    src = ap.add_mutually_exclusive_group()
    src.add_argument("--edges")
    src.add_argument("--graph-gen", default="ba:n=500,m=2,seed=0")
    ap.add_argument("--window", type=int, default=250)
    ap.add_argument("--k", default="2-20:2")
    ap.add_argument("--seeds", type=int, default=3)
    ap.add_argument("--order", default="random", choices=["degree", "index", "random"])
    ap.add_argument("--out", help="summary CSV path")
    args = ap.parse_args()

    cfg = SweepConfig(window=args.window, ks=parse_ks(args.k), seeds=tuple(range(args.seeds)), order=args.order)
    graph = load_graph(args)
    events = sliding_window_sequence(element_order(graph, cfg.order, seed=0), cfg.window)
    configs = [BenchConfig(graph, events, alg, k, eps_prime=cfg.eps_prime, seeds=cfg.seeds)
               for alg in cfg.algorithms for k in cfg.ks]
    results = sweep(configs)
    print(f"{'alg':<18}{'k':>4}{'avg_f':>12}{'queries':>14}")
    for row in aggregate(results):
        print(f"{row['alg']:<18}{row['k']:>4}{row['avg_f_mean']:>12.2f}{row['total_queries_mean']:>14.0f}")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(summary_csv(results))


if __name__ == "__main__":
    main()
