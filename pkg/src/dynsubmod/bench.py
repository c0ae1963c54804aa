"""Benchmark runner: replay an update sequence through an algorithm and log CSV rows.

Per-update CSV columns (``UPDATE_FIELDS``)::

    alg, k, seed, t, op, element, f_value, queries_update, queries_cum, solution_size

Per-seed summary (``SUMMARY_FIELDS``)::

    alg, k, seed, updates, avg_f, total_queries

Aggregate over seeds (``AGGREGATE_FIELDS``): mean/min/max of ``avg_f`` and
``total_queries`` per ``(alg, k)``. Floats are printed with 6 significant digits.
"""
from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass, field
from typing import Sequence

from .baselines import RandomSelector, SampleStreaming
from .data import UpdateEvent, lint_stream
from .errors import ConfigError
from .guessing import GuessGrid
from .oracle import CountingOracle, Objective
from .reduction import LOCAL_SEARCH, UNIFORM
from .verify import AuditReport, audit_instance, audit_reduction

ALGORITHMS = ("reduction-ls", "reduction-us", "sample-streaming", "random")
UPDATE_FIELDS = ["alg", "k", "seed", "t", "op", "element", "f_value",
                 "queries_update", "queries_cum", "solution_size"]
SUMMARY_FIELDS = ["alg", "k", "seed", "updates", "avg_f", "total_queries"]
AGGREGATE_FIELDS = ["alg", "k", "seeds", "avg_f_mean", "avg_f_min", "avg_f_max",
                    "total_queries_mean", "total_queries_min", "total_queries_max"]


def fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".6g")
    return str(x)


@dataclass
class BenchConfig:
    objective: Objective
    events: Sequence[UpdateEvent]
    algorithm: str
    k: int
    eps_prime: float = 0.5
    q: float = 0.5
    c: float = 1.0
    seeds: Sequence[int] = (0,)
    verify: bool = False
    verify_every: int | None = None   # default: 1 for n <= 50, else 10
    audit_trials: int = 50

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ConfigError(f"unknown algorithm {self.algorithm!r}; expected one of {ALGORITHMS}")
        if not isinstance(self.k, int) or self.k < 1:
            raise ConfigError(f"k must be a positive integer, got {self.k!r}")
        if not self.seeds:
            raise ConfigError("at least one seed is required")
        if not self.eps_prime > 0:
            raise ConfigError(f"eps_prime must be positive, got {self.eps_prime!r}")


class Driver:
    """Uniform ``step(op, v) -> (solution, f_value)`` face over every algorithm."""

    def __init__(self, config: BenchConfig, seed: int):
        self.alg = config.algorithm
        self.trials = config.audit_trials
        obj = config.objective
        if self.alg.startswith("reduction"):
            strategy = LOCAL_SEARCH if self.alg == "reduction-ls" else UNIFORM
            self.grid = GuessGrid(obj, config.k, config.eps_prime, strategy, seed=seed)
        else:
            self.oracle = CountingOracle(obj)
            if self.alg == "sample-streaming":
                self.impl = SampleStreaming(config.k, self.oracle, q=config.q, c=config.c, seed=seed)
            else:
                self.impl = RandomSelector(config.k, seed=seed)

    def step(self, op: str, v: int):
        if self.alg.startswith("reduction"):
            sol = self.grid.apply_update(op, v)
            return sol, self.grid.answer_value
        sol = self.impl.update(op, v)
        return sol, self.oracle.value(sol)   # the reporting query

    @property
    def queries(self) -> int:
        if self.alg.startswith("reduction"):
            return self.grid.total_queries()
        return self.oracle.set_queries

    def audit(self, alive, rng) -> list[AuditReport]:
        reports = []
        if self.alg.startswith("reduction"):
            shadow = CountingOracle(self.grid.objective)
            for i, run in sorted(self.grid.runs.items()):
                for rep in audit_reduction(run, shadow):
                    rep.detail["run"] = i
                    reports.append(rep)
                for name, inst in (("inst1", run.inst1), ("inst2", run.inst2)):
                    for rep in audit_instance(inst, shadow, rng=rng, trials=self.trials):
                        rep.detail.update(run=i, instance=name)
                        reports.append(rep)
            sol = self.grid.answer
        else:
            sol = self.impl.solution() if self.alg == "sample-streaming" else None
        if sol is not None:
            ok = sol <= alive
            reports.append(AuditReport("feasibility", ok, witness=None if ok else sorted(sol - alive)))
        return reports


@dataclass
class SeedResult:
    alg: str
    k: int
    seed: int
    rows: list[dict] = field(default_factory=list)
    verify: list[str] = field(default_factory=list)
    failed: bool = False

    @property
    def avg_f(self) -> float:
        return sum(r["f_value"] for r in self.rows) / len(self.rows) if self.rows else 0.0

    @property
    def total_queries(self) -> int:
        return self.rows[-1]["queries_cum"] if self.rows else 0

    def summary(self) -> dict:
        return {"alg": self.alg, "k": self.k, "seed": self.seed, "updates": len(self.rows),
                "avg_f": self.avg_f, "total_queries": self.total_queries}


def run_seed(config: BenchConfig, seed: int) -> SeedResult:
    driver = Driver(config, seed)
    every = config.verify_every or (1 if config.objective.n <= 50 else 10)
    audit_rng = random.Random(seed)
    res = SeedResult(config.algorithm, config.k, seed)
    alive: set[int] = set()
    prev = 0
    for idx, ev in enumerate(config.events):
        sol, val = driver.step(ev.op, ev.element)
        if ev.op == "insert":
            alive.add(ev.element)
        else:
            alive.discard(ev.element)
        cum = driver.queries
        res.rows.append({"alg": config.algorithm, "k": config.k, "seed": seed, "t": ev.t,
                         "op": ev.op, "element": ev.element, "f_value": float(val),
                         "queries_update": cum - prev, "queries_cum": cum,
                         "solution_size": len(sol)})
        prev = cum
        if config.verify and (idx + 1) % every == 0:
            for rep in driver.audit(frozenset(alive), audit_rng):
                res.verify.append(rep.to_json(t=ev.t))
                if not rep.passed:
                    res.failed = True
    return res


def run_bench(config: BenchConfig, jobs: int = 1) -> list[SeedResult]:
    """Replay the configured sequence once per seed; results come back in seed order."""
    lint_stream(config.events)
    if jobs > 1 and len(config.seeds) > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(run_seed, [config] * len(config.seeds), config.seeds))
    return [run_seed(config, s) for s in config.seeds]


def sweep(configs: Sequence[BenchConfig], jobs: int = 1) -> list[SeedResult]:
    """Run several configs over one objective; results keyed by (alg, k, seed) in input order."""
    if configs:
        obj = configs[0].objective
        if any(c.objective is not obj for c in configs):
            raise ConfigError("sweep configs must share one objective")
    out: list[SeedResult] = []
    for cfg in configs:
        out.extend(run_bench(cfg, jobs=jobs))
    return out


def aggregate(results: Sequence[SeedResult]) -> list[dict]:
    groups: dict[tuple, list[SeedResult]] = {}
    for r in results:
        groups.setdefault((r.alg, r.k), []).append(r)
    rows = []
    for (alg, k), rs in groups.items():
        fs = [r.avg_f for r in rs]
        qs = [r.total_queries for r in rs]
        rows.append({"alg": alg, "k": k, "seeds": len(rs),
                     "avg_f_mean": sum(fs) / len(fs), "avg_f_min": min(fs), "avg_f_max": max(fs),
                     "total_queries_mean": sum(qs) / len(qs),
                     "total_queries_min": min(qs), "total_queries_max": max(qs)})
    return rows


def _write(fh, fields, rows):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(fields)
    for r in rows:
        w.writerow([fmt(r[f]) for f in fields])


def updates_csv(results: Sequence[SeedResult]) -> str:
    buf = io.StringIO()
    _write(buf, UPDATE_FIELDS, (row for r in results for row in r.rows))
    return buf.getvalue()


def summary_csv(results: Sequence[SeedResult]) -> str:
    buf = io.StringIO()
    _write(buf, SUMMARY_FIELDS, (r.summary() for r in results))
    return buf.getvalue()


def aggregate_csv(results: Sequence[SeedResult]) -> str:
    buf = io.StringIO()
    _write(buf, AGGREGATE_FIELDS, aggregate(results))
    return buf.getvalue()
