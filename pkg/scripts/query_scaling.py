"""Amortized oracle queries per update of the full reduction as the universe grows.

    python3 scripts/query_scaling.py --sizes 250,500,1000,2000 --seeds 5
"""
from __future__ import annotations

import argparse
import statistics
import time

from dynsubmod.data import erdos_renyi_graph, random_insert_delete_sequence
from dynsubmod.guessing import GuessGrid
from dynsubmod.reduction import LOCAL_SEARCH, UNIFORM


def amortized(n: int, k: int, eps_prime: float, strategy: str, seed: int, avg_degree: float) -> float:
    g = erdos_renyi_graph(n, min(avg_degree / n, 1.0), seed=seed)
    events = random_insert_delete_sequence(n, n, seed=seed)
    grid = GuessGrid(g, k, eps_prime, strategy, seed=seed)
    for ev in events:
        grid.apply_update(ev.op, ev.element)
    return grid.total_queries() / len(events)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="250,500,1000,2000")
    ap.add_argument("--k", type=int, default=8)
    ap.add_argument("--eps-prime", type=float, default=0.5)
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--avg-degree", type=float, default=10.0)
    ap.add_argument("--strategy", default=LOCAL_SEARCH, choices=[LOCAL_SEARCH, UNIFORM])
    a = ap.parse_args()
    print(f"{'n':>6}{'queries/update':>16}{'sec':>8}")
    for n in (int(x) for x in a.sizes.split(",")):
        t0 = time.perf_counter()
        q = statistics.mean(amortized(n, a.k, a.eps_prime, a.strategy, s, a.avg_degree) for s in range(a.seeds))
        print(f"{n:>6}{q:>16.1f}{time.perf_counter() - t0:>8.1f}")


if __name__ == "__main__":
    main()
