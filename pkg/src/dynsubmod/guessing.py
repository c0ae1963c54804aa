"""Run a lazy grid of reductions over geometric OPT guesses ``(1+eps')^i``.

An element ``v`` only joins run ``i`` when
``(eps'/k) * (1+eps')^i <= f({v}) <= (1+eps')^i``, which bounds the number of
runs touched per update by roughly ``log_{1+eps'}(k/eps') + 1``.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, UpdateError
from .oracle import CountingOracle, Objective
from .reduction import ReductionRun, SubsetStrategy

log = logging.getLogger(__name__)

# relative slack for float rounding at the window's inclusive boundaries
_LOG_SLACK = 1e-9


def element_window(fv: float, eps_prime: float, k: int) -> range:
    """Guess indices ``i`` admitting an element of singleton value ``fv``.

    Both bounds are inclusive, so the result is
    ``range(ceil(log_b fv), floor(log_b(k*fv/eps')) + 1)`` with ``b = 1+eps'``;
    empty when ``fv <= 0``.
    """
    if not fv > 0:
        return range(0, 0)
    lb = math.log1p(eps_prime)
    lo = math.ceil(math.log(fv) / lb - _LOG_SLACK)
    hi = math.floor(math.log(k * fv / eps_prime) / lb + _LOG_SLACK)
    return range(lo, max(hi + 1, lo))


def run_seed(grid_seed: int, index: int) -> int:
    """Independent, reproducible seed for run ``index`` of a grid."""
    zigzag = 2 * index if index >= 0 else -2 * index - 1
    return int(np.random.SeedSequence([grid_seed & (2**63 - 1), zigzag]).generate_state(1, np.uint64)[0])


@dataclass
class ElementRecord:
    fv: float
    window: range


class GuessGrid:
    """Orchestrates reduction runs over the OPT guess grid.

    Parameters
    ----------
    objective : Objective
    k : int
    eps_prime : float
        Grid ratio is ``1 + eps_prime``.
    strategy : SubsetStrategy or str
    seed : int
    """

    def __init__(self, objective: Objective, k: int, eps_prime: float, strategy, seed: int = 0):
        if isinstance(strategy, str):
            strategy = SubsetStrategy(strategy)
        if not isinstance(k, int) or k < 1:
            raise ConfigError(f"k must be a positive integer, got {k!r}")
        if not eps_prime > 0:
            raise ConfigError(f"eps_prime must be positive, got {eps_prime!r}")
        if eps_prime > 1:
            log.warning("eps_prime=%s is outside (0, 1]; guarantees no longer apply", eps_prime)
        self.objective = objective
        self.k = k
        self.eps_prime = float(eps_prime)
        self.base = 1.0 + self.eps_prime
        self.strategy = strategy
        self.seed = seed
        self.oracle = CountingOracle(objective)   # singleton queries at insert time
        self.runs: dict[int, ReductionRun] = {}
        self.members: dict[int, set[int]] = {}
        self.elements: dict[int, ElementRecord] = {}
        self.retired_queries = 0
        self.last_fanout = 0
        self.answer: frozenset = frozenset()
        self.answer_value: float = 0.0
        self.answer_run: int | None = None
        self._empty_value: float | None = None

    def guess(self, i: int) -> float:
        return self.base ** i

    def _make_run(self, i: int) -> ReductionRun:
        return ReductionRun(self.k, self.guess(i), self.strategy,
                            CountingOracle(self.objective), seed=run_seed(self.seed, i))

    @property
    def alive(self) -> set[int]:
        return set(self.elements)

    def apply_update(self, op: str, v: int) -> frozenset:
        """Forward one insert/delete to the runs in ``v``'s window; return the best answer."""
        if op == "insert":
            if v in self.elements:
                raise UpdateError(f"insert of alive element {v}")
            fv = self.oracle.value({v})
            window = element_window(fv, self.eps_prime, self.k)
            self.elements[v] = ElementRecord(fv, window)
            for i in window:
                run = self.runs.get(i)
                if run is None:
                    run = self.runs[i] = self._make_run(i)
                    self.members[i] = set()
                run.insert(v)
                self.members[i].add(v)
            self.last_fanout = len(window)
        elif op == "delete":
            rec = self.elements.pop(v, None)
            if rec is None:
                raise UpdateError(f"delete of absent element {v}")
            for i in rec.window:
                run = self.runs[i]
                run.delete(v)
                self.members[i].discard(v)
                if not self.members[i]:
                    self.retired_queries += run.oracle.set_queries
                    del self.runs[i]
                    del self.members[i]
            self.last_fanout = len(rec.window)
        else:
            raise UpdateError(f"unknown op {op!r}")
        self._refresh_answer()
        return self.answer

    def _refresh_answer(self) -> None:
        best_i, best_val, best_set = None, 0.0, frozenset()
        for i in sorted(self.runs):
            run = self.runs[i]
            if best_i is None or run.last_value > best_val:
                best_i, best_val, best_set = i, run.last_value, run.last_solution
        if best_i is None:
            if self._empty_value is None:
                self._empty_value = self.oracle.value(frozenset())
            best_val = self._empty_value
        self.answer_run = best_i
        self.answer = best_set
        self.answer_value = best_val

    def insert(self, v: int) -> frozenset:
        return self.apply_update("insert", v)

    def delete(self, v: int) -> frozenset:
        return self.apply_update("delete", v)

    def total_queries(self) -> int:
        """Orchestrator queries plus every run's counter, including retired runs."""
        return (self.oracle.set_queries + self.retired_queries
                + sum(r.oracle.set_queries for r in self.runs.values()))

    def active_guesses(self) -> dict[int, float]:
        return {i: self.guess(i) for i in sorted(self.runs)}
