"""Non-monotone reduction for a fixed OPT guess.

Two thresholding instances run side by side. The first sees every alive
element; the second sees every alive element except the first's current
solution ``S1``. Each update reports the best of ``S1``, a subset ``S1'``
picked out of ``S1`` by a subset-selection routine, and the second instance's
solution ``S2``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import ConfigError, UpdateError
from .leveling import LevelingInstance, ThresholdParams
from .oracle import CountingOracle

UNIFORM = "uniform"
LOCAL_SEARCH = "local-search"
_ALPHA = {UNIFORM: 0.25, LOCAL_SEARCH: 0.5}


@dataclass(frozen=True)
class SubsetStrategy:
    kind: str

    def __post_init__(self):
        if self.kind not in _ALPHA:
            raise ConfigError(f"unknown subset strategy {self.kind!r}; expected one of {sorted(_ALPHA)}")

    @property
    def alpha(self) -> float:
        return _ALPHA[self.kind]


def threshold_for(opt_guess: float, k: int, alpha: float) -> float:
    """``tau = OPT / (k * (3 + 1/(2*alpha)))``."""
    return opt_guess / (k * (3.0 + 1.0 / (2.0 * alpha)))


def uniform_subset(S, rng: random.Random) -> frozenset:
    """Keep each element of ``S`` independently with probability 1/2 (no queries)."""
    return frozenset(s for s in sorted(S) if rng.random() < 0.5)


def local_search_subset(S, oracle: CountingOracle, rng: random.Random) -> frozenset:
    """Randomized double greedy over ``S``; exactly ``4 |S|`` queries.

    Grows ``X`` from the empty set and shrinks ``Y`` from ``S``; element ``s``
    joins ``X`` with probability ``a'/(a'+b')`` where ``a'``, ``b'`` are the
    clamped gains of adding ``s`` to ``X`` and removing it from ``Y``.
    """
    X: frozenset = frozenset()
    Y: frozenset = frozenset(S)
    for s in sorted(S):
        a = oracle.value(X | {s}) - oracle.value(X)
        Y_minus = Y - {s}
        b = oracle.value(Y_minus) - oracle.value(Y)
        a = max(a, 0.0)
        b = max(b, 0.0)
        p = 0.0 if a == 0.0 and b == 0.0 else a / (a + b)
        if rng.random() < p:
            X = X | {s}
        else:
            Y = Y_minus
    return X


@dataclass
class QueryBreakdown:
    """Per-type query totals: instance 1, instance 2, subset selection, argmax."""
    type1: int = 0
    type2: int = 0
    type3: int = 0
    report: int = 0

    @property
    def total(self) -> int:
        return self.type1 + self.type2 + self.type3 + self.report


@dataclass
class UpdateTrace:
    S1: frozenset
    S1_prime: frozenset
    S2: frozenset
    values: tuple
    output: frozenset
    queries: QueryBreakdown = field(default_factory=QueryBreakdown)


class ReductionRun:
    """Fixed-guess dynamic algorithm for non-monotone ``f`` under ``|S| <= k``.

    Parameters
    ----------
    k : int
    opt_guess : float
        Guess of the optimum; sets ``tau``.
    strategy : SubsetStrategy or str
    oracle : CountingOracle
        Private counter for this run.
    seed : int
    """

    def __init__(self, k: int, opt_guess: float, strategy, oracle: CountingOracle, seed: int = 0):
        if isinstance(strategy, str):
            strategy = SubsetStrategy(strategy)
        if not isinstance(k, int) or k < 1:
            raise ConfigError(f"k must be a positive integer, got {k!r}")
        if not opt_guess > 0:
            raise ConfigError(f"opt_guess must be positive, got {opt_guess!r}")
        self.k = k
        self.opt_guess = float(opt_guess)
        self.strategy = strategy
        self.tau = threshold_for(self.opt_guess, k, strategy.alpha)
        self.oracle = oracle
        seeder = random.Random(seed)
        params = ThresholdParams(k, self.tau)
        self.inst1 = LevelingInstance(params, oracle, seed=seeder.getrandbits(63))
        self.inst2 = LevelingInstance(params, oracle, seed=seeder.getrandbits(63))
        self.rng = random.Random(seeder.getrandbits(63))
        self.alive: set[int] = set()
        self.Z: frozenset = frozenset()
        self.last_solution: frozenset = frozenset()
        self.last_value: float = 0.0
        self.queries = QueryBreakdown()
        self.last_trace: UpdateTrace | None = None

    def _select(self, S1) -> frozenset:
        if self.strategy.kind == LOCAL_SEARCH:
            return local_search_subset(S1, self.oracle, self.rng)
        return uniform_subset(S1, self.rng)

    def update(self, op: str, v: int) -> frozenset:
        """Apply ``("insert"|"delete", v)`` and return the reported solution."""
        if op == "insert":
            if v in self.alive:
                raise UpdateError(f"insert of alive element {v}")
        elif op == "delete":
            if v not in self.alive:
                raise UpdateError(f"delete of absent element {v}")
        else:
            raise UpdateError(f"unknown op {op!r}")

        oracle = self.oracle
        q = QueryBreakdown()
        Z = self.inst1.extract()
        c0 = oracle.set_queries
        if op == "insert":
            self.alive.add(v)
            self.inst1.insert(v)
            Z = Z | {v}
            q.type1 += oracle.set_queries - c0
        else:
            self.alive.discard(v)
            self.inst1.delete(v)
            c1 = oracle.set_queries
            q.type1 += c1 - c0
            self.inst2.delete(v)
            q.type2 += oracle.set_queries - c1
            Z = Z - {v}
        S1 = self.inst1.extract()

        c0 = oracle.set_queries
        S1p = self._select(S1)
        q.type3 += oracle.set_queries - c0

        c0 = oracle.set_queries
        for u in sorted(S1 - Z):
            self.inst2.delete(u)
        for u in sorted(Z - S1):
            self.inst2.insert(u)
        q.type2 += oracle.set_queries - c0
        S2 = self.inst2.extract()
        self.Z = S1

        c0 = oracle.set_queries
        values = (oracle.value(S1), oracle.value(S1p), oracle.value(S2))
        q.report += oracle.set_queries - c0
        best = 0
        for j in (1, 2):
            if values[j] > values[best]:
                best = j
        out = (S1, S1p, S2)[best]
        self.last_solution = out
        self.last_value = values[best]
        self.queries.type1 += q.type1
        self.queries.type2 += q.type2
        self.queries.type3 += q.type3
        self.queries.report += q.report
        self.last_trace = UpdateTrace(S1, S1p, S2, values, out, q)
        return out

    def insert(self, v: int) -> frozenset:
        return self.update("insert", v)

    def delete(self, v: int) -> frozenset:
        return self.update("delete", v)

    def extract(self) -> frozenset:
        return self.last_solution

    def __len__(self) -> int:
        return len(self.alive)
