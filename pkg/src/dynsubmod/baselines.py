"""Comparison algorithms: dynamic Sample-Streaming and a uniform random selector."""
from __future__ import annotations

import random

import numpy as np

from .errors import ConfigError, UpdateError
from .oracle import CountingOracle


def _pass_rng(seed: int, restart: int) -> random.Random:
    state = np.random.SeedSequence([seed & (2**63 - 1), restart]).generate_state(2, np.uint32)
    return random.Random(int(state[0]) << 32 | int(state[1]))


class SampleStreaming:
    """Sample-and-swap streaming algorithm, made dynamic by restarting.

    An arriving element is kept for consideration with probability ``q``. While
    ``|S| < k`` it is admitted on strictly positive gain; once full it replaces
    the member with the smallest recorded admission gain if its own gain is at
    least ``(1 + c)`` times that. Deleting a member of ``S`` triggers a fresh
    pass over the alive elements in arrival order, drawing coins from a new
    sub-stream keyed by ``(seed, restart count)``.
    """

    def __init__(self, k: int, oracle: CountingOracle, q: float = 0.5, c: float = 1.0, seed: int = 0):
        if not isinstance(k, int) or k < 1:
            raise ConfigError(f"k must be a positive integer, got {k!r}")
        if not 0.0 <= q <= 1.0:
            raise ConfigError(f"q must lie in [0, 1], got {q!r}")
        if c < 0:
            raise ConfigError(f"c must be non-negative, got {c!r}")
        self.k = k
        self.q = q
        self.c = c
        self.oracle = oracle
        self.seed = seed
        self.restarts = 0
        self.rng = _pass_rng(seed, 0)
        self.S: dict[int, float] = {}       # member -> gain recorded at admission
        self.arrival: dict[int, int] = {}   # alive element -> arrival stamp
        self._clock = 0

    @property
    def alive_order(self) -> list[int]:
        return sorted(self.arrival, key=self.arrival.__getitem__)

    def solution(self) -> frozenset:
        return frozenset(self.S)

    def stream_arrive(self, u: int) -> None:
        if u in self.S:
            raise UpdateError(f"element {u} already in the solution")
        if self.rng.random() >= self.q:
            return
        S = frozenset(self.S)
        if len(S) < self.k:
            gain = self.oracle.marginal(u, S)
            if gain > 0:
                self.S[u] = gain
            return
        stamp = self.arrival.get
        v = min(self.S, key=lambda m: (self.S[m], stamp(m, 0)))
        gain = self.oracle.marginal(u, S)
        if gain >= (1.0 + self.c) * self.S[v]:
            del self.S[v]
            self.S[u] = gain

    def restart(self) -> None:
        self.restarts += 1
        self.rng = _pass_rng(self.seed, self.restarts)
        self.S = {}
        for u in self.alive_order:
            self.stream_arrive(u)

    def update(self, op: str, v: int) -> frozenset:
        if op == "insert":
            if v in self.arrival:
                raise UpdateError(f"insert of alive element {v}")
            self.arrival[v] = self._clock
            self._clock += 1
            self.stream_arrive(v)
        elif op == "delete":
            if v not in self.arrival:
                raise UpdateError(f"delete of absent element {v}")
            del self.arrival[v]
            if v in self.S:
                del self.S[v]
                self.restart()
        else:
            raise UpdateError(f"unknown op {op!r}")
        return self.solution()

    dynamic_update = update


def random_baseline(alive, k: int, rng: random.Random) -> frozenset:
    """Uniform subset of size ``min(k, |alive|)``; no queries."""
    pool = sorted(alive)
    if len(pool) <= k:
        return frozenset(pool)
    return frozenset(rng.sample(pool, k))


class RandomSelector:
    """Re-draws a uniform ``k``-subset after every update."""

    def __init__(self, k: int, seed: int = 0):
        if not isinstance(k, int) or k < 1:
            raise ConfigError(f"k must be a positive integer, got {k!r}")
        self.k = k
        self.rng = random.Random(seed)
        self.alive: set[int] = set()

    def update(self, op: str, v: int) -> frozenset:
        if op == "insert":
            if v in self.alive:
                raise UpdateError(f"insert of alive element {v}")
            self.alive.add(v)
        elif op == "delete":
            if v not in self.alive:
                raise UpdateError(f"delete of absent element {v}")
            self.alive.remove(v)
        else:
            raise UpdateError(f"unknown op {op!r}")
        return random_baseline(self.alive, self.k, self.rng)
