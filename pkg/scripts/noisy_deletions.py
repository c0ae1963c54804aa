"""Insert all vertices by descending degree, then delete them in a noisy copy of that order.

Tracks f(solution) over time for each algorithm; prints a coarse trajectory.

    python3 scripts/noisy_deletions.py --n 400 --k 10
"""
from __future__ import annotations

import argparse
import statistics
from dataclasses import dataclass

from dynsubmod.bench import BenchConfig, run_bench
from dynsubmod.data import insert_then_delete_sequence, noisy_degree_order, preferential_attachment_graph


@dataclass
class NoisyConfig:
    n: int = 400
    m: int = 2
    k: int = 10
    seeds: int = 3
    points: int = 10


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=400)
    ap.add_argument("--k", type=int, default=10)
    ap.add_argument("--seeds", type=int, default=3)
    a = ap.parse_args()
    cfg = NoisyConfig(n=a.n, k=a.k, seeds=a.seeds)

    graph = preferential_attachment_graph(cfg.n, cfg.m, seed=0)
    ins, dels = noisy_degree_order(graph, seed=0)
    events = insert_then_delete_sequence(ins, dels)
    stride = max(len(events) // cfg.points, 1)
    print("t:".ljust(18) + "".join(f"{t:>8}" for t in range(0, len(events), stride)))
    for alg in ("reduction-ls", "reduction-us", "sample-streaming", "random"):
        results = run_bench(BenchConfig(graph, events, alg, cfg.k, seeds=tuple(range(cfg.seeds))))
        traj = [statistics.mean(r.rows[t]["f_value"] for r in results) for t in range(0, len(events), stride)]
        print(f"{alg:<18}" + "".join(f"{v:>8.0f}" for v in traj))


if __name__ == "__main__":
    main()
