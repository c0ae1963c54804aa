"""Dynamic tau-thresholding backend built on a randomized leveling structure.

The structure keeps chosen elements ``e_1..e_T`` with prefix sets
``I_i = I_{i-1} + e_i`` and nested candidate pools ``R_0 >= R_1 >= ... >= R_T``
with ``R_{T+1}`` empty. Because the pools are nested, each alive element is
stored once with the index of the deepest pool containing it; ``R_i`` is the
set of elements whose level is at least ``i``.

After every update the reported set ``I_T`` either has ``k`` elements, each
admitted with marginal gain at least ``tau``, or leaves no alive element with
gain ``>= tau`` against it.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass

from .errors import ConfigError, PreconditionError
from .oracle import CountingOracle

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ThresholdParams:
    k: int
    tau: float

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 1:
            raise ConfigError(f"k must be a positive integer, got {self.k!r}")
        if not self.tau > 0:
            raise ConfigError(f"tau must be positive, got {self.tau!r}")


class LevelingInstance:
    """One dynamic thresholding instance over its own alive set.

    Parameters
    ----------
    params : ThresholdParams
    oracle : CountingOracle
        Queries made by this instance are charged here. Several instances may
        share one oracle; callers measure per-instance cost by counter deltas.
    seed : int
        Seeds the instance's private generator (pool permutations and the
        ``1/|R_i|`` coin on insertion).
    """

    def __init__(self, params: ThresholdParams, oracle: CountingOracle, seed: int = 0):
        self.params = params
        self.k = params.k
        self.tau = params.tau
        self.oracle = oracle
        self.rng = random.Random(seed)
        self.chosen: list[int] = []          # e_1..e_T (0-based list)
        self._prefix: list[frozenset] = [frozenset()]  # I_0..I_T
        self.level: dict[int, int] = {}      # element -> deepest pool index
        self._buckets: list[set[int]] = [set()]  # bucket[m] = elements with level m
        self.solution_value: float | None = None
        self.noop_updates = 0

    # ---- read-only views -------------------------------------------------

    @property
    def T(self) -> int:
        return len(self.chosen)

    @property
    def alive(self) -> set[int]:
        """``R_0``."""
        return set(self.level)

    def __contains__(self, v) -> bool:
        return v in self.level

    def __len__(self) -> int:
        return len(self.level)

    def prefix(self, i: int) -> frozenset:
        return self._prefix[i]

    def pool(self, i: int) -> set[int]:
        """``R_i`` as a fresh set."""
        out: set[int] = set()
        for m in range(i, len(self._buckets)):
            out |= self._buckets[m]
        return out

    def pool_size(self, i: int) -> int:
        return sum(len(b) for b in self._buckets[i:])

    def extract(self) -> frozenset:
        """Current solution ``I_T``; costs no queries."""
        return self._prefix[-1]

    # ---- bookkeeping helpers ---------------------------------------------

    def _set_level(self, v: int, m: int) -> None:
        old = self.level.get(v)
        if old is not None:
            self._buckets[old].discard(v)
        while len(self._buckets) <= m:
            self._buckets.append(set())
        self._buckets[m].add(v)
        self.level[v] = m

    def _drop(self, v: int) -> None:
        self._buckets[self.level.pop(v)].discard(v)

    def _flatten_from(self, i: int) -> None:
        """Clamp every level above ``i`` down to ``i`` (forgets pools R_{i+1}..)."""
        if len(self._buckets) <= i:
            return
        target = self._buckets[i]
        for m in range(i + 1, len(self._buckets)):
            for v in self._buckets[m]:
                self.level[v] = i
            target |= self._buckets[m]
        del self._buckets[i + 1:]

    def _truncate(self, T: int) -> None:
        del self.chosen[T:]
        del self._prefix[T + 1:]

    def _push(self, e: int) -> None:
        self.chosen.append(e)
        self._prefix.append(self._prefix[-1] | {e})

    def _refresh_value(self, before: frozenset) -> None:
        if self.extract() != before:
            self.solution_value = self.oracle.value(self.extract())

    # ---- the algorithm ---------------------------------------------------

    def promote(self, I, e: int) -> bool:
        """True iff ``|I| < k`` and ``f(I + e) - f(I) >= tau``.

        The size guard is tested first, so a full ``I`` costs no queries.
        """
        if e in I:
            raise PreconditionError(f"promote: element {e} already in I")
        if len(I) >= self.k:
            return False
        return self.oracle.marginal(e, I) >= self.tau

    def _lowest_failing(self, e: int, lo: int, hi: int) -> int:
        """Lowest ``z`` in ``[lo, hi]`` with ``promote(I_z, e)`` false.

        Caller guarantees ``promote(I_hi, e)`` is false. Returns ``lo - 1`` on
        an empty range.
        """
        if lo > hi:
            return lo - 1
        while lo < hi:
            mid = (lo + hi) // 2
            if self.promote(self._prefix[mid], e):
                lo = mid + 1
            else:
                hi = mid
        return lo

    def construct_level(self, i: int) -> None:
        """Rebuild levels ``i..`` from a random permutation of ``R_i``."""
        if not 1 <= i <= self.T + 1:
            raise PreconditionError(f"construct_level({i}) with T={self.T}")
        self._truncate(i - 1)
        self._flatten_from(i)
        if len(self._buckets) <= i:
            return
        pool = sorted(self._buckets[i])
        self.rng.shuffle(pool)
        ell = i
        for e in pool:
            if self.promote(self._prefix[ell - 1], e):
                self._push(e)
                z = ell
                ell += 1
            else:
                z = self._lowest_failing(e, i, ell - 1)
            if z > i:
                self._set_level(e, z)
        # T == ell - 1 by construction of self.chosen

    def insert(self, v: int) -> bool:
        """Insert ``v``. Returns False (state untouched) if ``v`` is already alive."""
        if v in self.level:
            self.noop_updates += 1
            log.debug("duplicate insert of %s ignored", v)
            return False
        before = self.extract()
        self._set_level(v, 0)
        for i in range(1, self.T + 2):
            if not self.promote(self._prefix[i - 1], v):
                break
            self._set_level(v, i)
            if self.rng.random() * self.pool_size(i) < 1.0:
                self._truncate(i - 1)
                self._push(v)
                # R_{i+1} <- {e' in R_i : promote(I_i, e')}
                members = sorted(self.pool(i))
                self._flatten_from(i)
                I_i = self._prefix[i]
                for e in members:
                    if e != v and self.promote(I_i, e):
                        self._set_level(e, i + 1)
                self.construct_level(i + 1)
                break
        self._refresh_value(before)
        return True

    def delete(self, v: int) -> bool:
        """Delete ``v``. Returns False (state untouched) if ``v`` is not alive."""
        if v not in self.level:
            self.noop_updates += 1
            log.debug("delete of absent %s ignored", v)
            return False
        before = self.extract()
        self._drop(v)
        try:
            i = self.chosen.index(v) + 1
        except ValueError:
            i = 0
        if i:
            self.construct_level(i)
        self._refresh_value(before)
        return True

    # ---- debugging -------------------------------------------------------

    def dump(self) -> str:
        """One line per level: ``i e_i |R_i|``."""
        lines = [f"0 - {len(self.level)}"]
        for i, e in enumerate(self.chosen, start=1):
            lines.append(f"{i} {e} {self.pool_size(i)}")
        return "\n".join(lines)
