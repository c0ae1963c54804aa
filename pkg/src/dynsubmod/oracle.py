"""Set-function oracles with query counting.

Every objective exposes ``n`` (universe size, elements are ``0..n-1``) and
``evaluate(A)``. Algorithms never call ``evaluate`` directly; they go through a
:class:`CountingOracle`, which is the only place queries are charged.
"""
from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, PreconditionError, ShapeError

DEFAULT_DET_CAP = 512


def determinant(M, cap: int = DEFAULT_DET_CAP) -> float:
    """Determinant by LU factorisation with partial pivoting.

    The 0x0 matrix has determinant 1.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ShapeError(f"determinant needs a square matrix, got shape {M.shape}")
    if M.shape[0] > cap:
        raise ShapeError(f"matrix dimension {M.shape[0]} exceeds cap {cap}")
    if M.shape[0] == 0:
        return 1.0
    return float(np.linalg.det(M))


class Objective:
    """Base class: a set function on the universe ``{0, ..., n-1}``."""

    n: int = 0
    name = "objective"

    def evaluate(self, A: Sequence[int] | frozenset | set) -> float:
        raise NotImplementedError

    def check_elements(self, A: Iterable[int]) -> None:
        if A and (min(A) < 0 or max(A) >= self.n):
            bad = [a for a in A if not 0 <= a < self.n]
            raise DomainError(f"element(s) {bad!r} outside universe of size {self.n}")


class MaxCutObjective(Objective):
    """Number of edges with exactly one endpoint in ``A``.

    Parameters
    ----------
    n : int
        Vertex count.
    edges : iterable of (u, v)
        Undirected edges on ``0..n-1``. Duplicates are collapsed; self-loops raise.
    labels : list, optional
        Original vertex labels (index ``i`` is dense id ``i``).
    """

    name = "maxcut"

    def __init__(self, n: int, edges: Iterable[tuple[int, int]], labels=None):
        self.n = int(n)
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop on vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise DomainError(f"edge ({u}, {v}) outside vertex range {self.n}")
            adj[u].add(v)
            adj[v].add(u)
        self.adjacency = [frozenset(s) for s in adj]
        self.degree = [len(s) for s in self.adjacency]
        self.labels = list(labels) if labels is not None else list(range(self.n))

    @property
    def num_edges(self) -> int:
        return sum(self.degree) // 2

    def edges(self):
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if u < v:
                    yield (u, v)

    def evaluate(self, A) -> float:
        s = A if isinstance(A, (set, frozenset)) else set(A)
        adj = self.adjacency
        deg = self.degree
        total = 0
        # cut = sum of degrees minus both endpoints of every inner edge
        for a in s:
            total += deg[a] - len(adj[a] & s)
        return float(total)


class LogDetObjective(Objective):
    """``ln(det(L_A) + 1)`` for a PSD kernel ``L``; ``f(empty) = ln 2``."""

    name = "logdet"

    def __init__(self, L, det_cap: int = DEFAULT_DET_CAP):
        L = np.asarray(L, dtype=float)
        if L.ndim != 2 or L.shape[0] != L.shape[1]:
            raise ShapeError(f"kernel must be square, got shape {L.shape}")
        self.L = L
        self.n = L.shape[0]
        self.det_cap = det_cap

    def evaluate(self, A) -> float:
        idx = sorted(A)
        d = determinant(self.L[np.ix_(idx, idx)], cap=self.det_cap)
        # PSD submatrices can come back as -1e-17 after rounding
        return math.log(max(d, 0.0) + 1.0)


class CoverageObjective(Objective):
    """Monotone weighted coverage; only used to exercise the threshold backend."""

    name = "coverage"

    def __init__(self, covers: Sequence[Iterable[int]], weights=None):
        self.covers = [frozenset(c) for c in covers]
        self.n = len(self.covers)
        items = set().union(*self.covers) if self.covers else set()
        self.weights = dict(weights) if weights is not None else {i: 1.0 for i in items}

    def evaluate(self, A) -> float:
        covered = set()
        for a in A:
            covered |= self.covers[a]
        return float(sum(self.weights.get(i, 0.0) for i in covered))


class ModularObjective(Objective):
    """``f(A) = sum of w[a]``; handy for hand-traceable tests."""

    name = "modular"

    def __init__(self, weights: Sequence[float]):
        self.weights = [float(w) for w in weights]
        self.n = len(self.weights)

    def evaluate(self, A) -> float:
        w = self.weights
        return float(sum(w[a] for a in A))


class RestrictedObjective(Objective):
    """``f`` restricted to subsets of ``support``; elements keep their ids."""

    def __init__(self, base: Objective, support: Iterable[int]):
        self.base = base
        self.support = frozenset(support)
        self.n = base.n
        self.name = f"{base.name}|restricted"

    def check_elements(self, A):
        for a in A:
            if a not in self.support:
                raise DomainError(f"element {a!r} outside restricted support")

    def evaluate(self, A) -> float:
        return self.base.evaluate(A)


class CountingOracle:
    """Wraps an :class:`Objective` and counts set queries.

    ``value`` costs one query; ``marginal`` costs two, even when the objective
    could compute the gain incrementally.
    """

    def __init__(self, objective: Objective, check_domain: bool = True):
        self.objective = objective
        self.set_queries = 0
        self.check_domain = check_domain

    def value(self, A) -> float:
        if not isinstance(A, (set, frozenset)):
            A = frozenset(A)
        if self.check_domain:
            self.objective.check_elements(A)
        self.set_queries += 1
        return self.objective.evaluate(A)

    def marginal(self, e: int, A) -> float:
        if not isinstance(A, (set, frozenset)):
            A = frozenset(A)
        if e in A:
            raise PreconditionError(f"marginal gain of {e} requested w.r.t. a set containing it")
        return self.value(A | {e}) - self.value(A)

    def shadow(self) -> "CountingOracle":
        """Fresh oracle on the same objective with its own counter (for audits)."""
        return CountingOracle(self.objective, check_domain=self.check_domain)

    def __repr__(self):
        return f"CountingOracle({self.objective.name}, set_queries={self.set_queries})"
