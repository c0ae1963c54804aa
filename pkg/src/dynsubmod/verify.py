"""Brute-force optima and invariant audits for small instances.

Audits take a *shadow* oracle so that their queries never touch the counters
of the algorithm being checked.
"""
from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from typing import Any

from .errors import EnumerationCapError
from .leveling import LevelingInstance
from .oracle import CountingOracle

BRUTE_FORCE_CAP = 22
VALUE_TOL = 1e-9


@dataclass
class BruteForceResult:
    opt_value: float
    opt_set: frozenset
    enumerated: int


def _better(val, key, best_val, best_key) -> bool:
    # max value; ties go to the lexicographically smallest sorted tuple
    return best_key is None or val > best_val or (val == best_val and key < best_key)


def brute_force_opt(objective, alive, k: int, cap: int = BRUTE_FORCE_CAP) -> BruteForceResult:
    """Exact ``max f(S)`` over ``S <= alive``, ``|S| <= k``, by enumeration."""
    items = sorted(alive)
    if len(items) > cap:
        raise EnumerationCapError(f"{len(items)} elements exceed the brute-force cap of {cap}")
    best_val, best_key, count = 0.0, None, 0
    for size in range(min(k, len(items)) + 1):
        for combo in itertools.combinations(items, size):
            val = objective.evaluate(frozenset(combo))
            count += 1
            if _better(val, combo, best_val, best_key):
                best_val, best_key = val, combo
    return BruteForceResult(best_val, frozenset(best_key), count)


def brute_force_opt_gray(objective, alive, k: int, cap: int = BRUTE_FORCE_CAP) -> BruteForceResult:
    """Same optimum via a reflected Gray-code walk over all ``2^n`` subsets.

    Independent of :func:`brute_force_opt`; used to cross-check it.
    """
    items = sorted(alive)
    n = len(items)
    if n > cap:
        raise EnumerationCapError(f"{n} elements exceed the brute-force cap of {cap}")
    current: set[int] = set()
    best_val = objective.evaluate(frozenset())
    best_key: tuple = ()
    count = 1
    for step in range(1, 2 ** n):
        bit = (step & -step).bit_length() - 1
        x = items[bit]
        if x in current:
            current.remove(x)
        else:
            current.add(x)
        if len(current) > k:
            continue
        val = objective.evaluate(frozenset(current))
        count += 1
        key = tuple(sorted(current))
        if _better(val, key, best_val, best_key):
            best_val, best_key = val, key
    return BruteForceResult(best_val, frozenset(best_key), count)


@dataclass
class AuditReport:
    check: str
    passed: bool
    witness: Any = None
    detail: dict = field(default_factory=dict)

    def __bool__(self):
        return self.passed

    def to_json(self, t: int | None = None) -> str:
        rec: dict[str, Any] = {"t": t, "check": self.check, "pass": self.passed}
        if self.witness is not None:
            rec["witness"] = self.witness
        if self.detail:
            rec.update(self.detail)
        return json.dumps(rec, sort_keys=True, default=_jsonable)


def _jsonable(x):
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    raise TypeError(type(x))


def audit_property1(instance: LevelingInstance, shadow: CountingOracle, alive=None,
                    tau: float | None = None, tol: float = VALUE_TOL) -> AuditReport:
    """Threshold dichotomy: full with ``f(S) >= k*tau``, or no outside gain ``>= tau``.

    ``tau`` overrides the instance's threshold (used for fault injection).
    """
    tau = instance.tau if tau is None else tau
    alive = instance.alive if alive is None else alive
    S = instance.extract()
    k = instance.k
    if not S <= set(alive):
        return AuditReport("threshold_dichotomy", False, witness=sorted(S - set(alive)), detail={"reason": "not a subset"})
    if len(S) > k:
        return AuditReport("threshold_dichotomy", False, witness=sorted(S), detail={"reason": "size > k"})
    if len(S) == k:
        val = shadow.value(S)
        ok = val >= k * tau - tol
        return AuditReport("threshold_dichotomy", ok, witness=None if ok else sorted(S),
                           detail={"branch": "a", "value": val, "bound": k * tau})
    for v in sorted(set(alive) - S):
        gain = shadow.marginal(v, S)
        if gain >= tau + tol:
            return AuditReport("threshold_dichotomy", False, witness=v, detail={"branch": "b", "gain": gain, "tau": tau})
    return AuditReport("threshold_dichotomy", True, detail={"branch": "b"})


def absorption_margin(shadow: CountingOracle, S, C, tau: float) -> float:
    """``f(S) - (f(S | C) - |C| * tau)``; non-negative when the bound holds."""
    S, C = frozenset(S), frozenset(C)
    return shadow.value(S) - (shadow.value(S | C) - len(C) * tau)


def audit_lemma2(instance: LevelingInstance, shadow: CountingOracle, alive=None, trials: int = 200,
                 rng: random.Random | None = None, tol: float = VALUE_TOL) -> AuditReport:
    """``f(S) >= f(S | C) - |C| * tau`` for random ``C`` drawn from ``alive``."""
    rng = rng or random.Random(0)
    alive = sorted(instance.alive if alive is None else alive)
    S = instance.extract()
    if len(S) >= instance.k:
        return AuditReport("absorption_bound", True, detail={"skipped": "solution is full"})
    tau = instance.tau
    fS = shadow.value(S)
    worst = float("inf")
    witness = None
    for _ in range(trials):
        size = rng.randint(0, len(alive))
        C = frozenset(rng.sample(alive, size))
        margin = fS - (shadow.value(S | C) - len(C) * tau)
        if margin < worst:
            worst, witness = margin, C
    ok = worst >= -tol
    return AuditReport("absorption_bound", ok, witness=None if ok else sorted(witness),
                       detail={"worst_margin": worst if trials else None})


def audit_chain(instance: LevelingInstance) -> AuditReport:
    """Structural check of the level records."""
    T = instance.T
    if T > instance.k:
        return AuditReport("chain", False, detail={"reason": f"T={T} > k"})
    for i in range(1, T + 1):
        e = instance.chosen[i - 1]
        if instance.prefix(i) != instance.prefix(i - 1) | {e} or e in instance.prefix(i - 1):
            return AuditReport("chain", False, witness=i, detail={"reason": "I_i != I_{i-1} + e_i"})
        if instance.level.get(e, -1) < i:
            return AuditReport("chain", False, witness=e, detail={"reason": f"e_{i} not in R_{i}"})
    over = [v for v, m in instance.level.items() if m > T]
    if over:
        return AuditReport("chain", False, witness=sorted(over), detail={"reason": "R_{T+1} not empty"})
    if instance.pool(0) != instance.alive:
        return AuditReport("chain", False, detail={"reason": "R_0 != alive"})
    return AuditReport("chain", True)


def audit_reduction(run, shadow: CountingOracle) -> list[AuditReport]:
    """Second instance's ground set and output feasibility for a ReductionRun."""
    reports = []
    expected = run.alive - run.inst1.extract()
    ok = run.inst2.alive == expected
    reports.append(AuditReport("inst2_ground_set", ok,
                               witness=None if ok else sorted(run.inst2.alive ^ expected)))
    out = run.last_solution
    ok = len(out) <= run.k and out <= run.alive
    reports.append(AuditReport("feasibility", ok, witness=None if ok else sorted(out)))
    return reports


def audit_instance(instance: LevelingInstance, shadow: CountingOracle, rng=None, trials: int = 200) -> list[AuditReport]:
    reports = [audit_chain(instance), audit_property1(instance, shadow)]
    if len(instance.extract()) < instance.k:
        reports.append(audit_lemma2(instance, shadow, trials=trials, rng=rng))
    return reports
