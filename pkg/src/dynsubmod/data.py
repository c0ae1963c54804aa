"""Dataset ingestion and update-sequence generation."""
from __future__ import annotations

import os
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import ConfigError, ParseError, ShapeError, UpdateError
from .oracle import LogDetObjective, MaxCutObjective

INSERT = "insert"
DELETE = "delete"
_SYMBOL = {INSERT: "+", DELETE: "-"}


@dataclass(frozen=True)
class UpdateEvent:
    op: str
    element: int
    t: int = 0

    def __post_init__(self):
        if self.op not in _SYMBOL:
            raise ValueError(f"op must be {INSERT!r} or {DELETE!r}, got {self.op!r}")

    def __str__(self):
        return f"{_SYMBOL[self.op]}{self.element}"


def _stamp(ops: Iterable[tuple[str, int]]) -> list[UpdateEvent]:
    return [UpdateEvent(op, e, t) for t, (op, e) in enumerate(ops)]


class GroundSet:
    """The set of currently alive elements, enforcing event consistency."""

    def __init__(self):
        self.alive: set[int] = set()

    def apply(self, event: UpdateEvent) -> None:
        if event.op == INSERT:
            if event.element in self.alive:
                raise UpdateError(f"t={event.t}: insert of alive element {event.element}")
            self.alive.add(event.element)
        else:
            if event.element not in self.alive:
                raise UpdateError(f"t={event.t}: delete of dead element {event.element}")
            self.alive.remove(event.element)

    def __len__(self):
        return len(self.alive)

    def __contains__(self, v):
        return v in self.alive


def lint_stream(events: Iterable[UpdateEvent]) -> int:
    """Raise :class:`UpdateError` on the first malformed event; return the event count."""
    g = GroundSet()
    n = 0
    for ev in events:
        g.apply(ev)
        n += 1
    return n


# ---- file formats ------------------------------------------------------------

def _parse_id(tok: str):
    try:
        return int(tok)
    except ValueError:
        return tok


def read_edge_list(path) -> tuple[list, list[tuple[int, int]]]:
    """Parse a whitespace-separated ``u v`` file into (labels, dense edges)."""
    raw: list[tuple] = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#") or line.startswith("%"):
                continue
            parts = line.split()
            if len(parts) < 2:
                raise ParseError(f"expected 'u v', got {line!r}", path, lineno)
            u, v = _parse_id(parts[0]), _parse_id(parts[1])
            if u == v:
                raise ParseError(f"self-loop on vertex {u!r}", path, lineno)
            raw.append((u, v))
    labels = sorted({x for e in raw for x in e}, key=lambda x: (isinstance(x, str), x))
    index = {lab: i for i, lab in enumerate(labels)}
    edges = sorted({tuple(sorted((index[u], index[v]))) for u, v in raw})
    return labels, edges


def load_edge_list(path) -> MaxCutObjective:
    """Max-Cut objective from a SNAP-style edge list.

    Vertices are relabelled to dense ids ``0..n-1`` in sorted label order;
    ``objective.labels[i]`` is the original label of vertex ``i``.
    """
    labels, edges = read_edge_list(path)
    return MaxCutObjective(len(labels), edges, labels=labels)


def write_edge_list(path, objective: MaxCutObjective) -> None:
    with open(path, "w") as fh:
        fh.write(f"# {objective.n} vertices, {objective.num_edges} edges\n")
        for u, v in objective.edges():
            fh.write(f"{u} {v}\n")


def load_kernel_csv(path, check_psd: bool = False, atol: float = 1e-9) -> LogDetObjective:
    """Log-det objective from an ``n x n`` CSV kernel.

    Always checks squareness, symmetry and a non-negative diagonal; with
    ``check_psd`` also rejects negative eigenvalues below ``-atol``.
    """
    try:
        L = np.loadtxt(path, delimiter=",", comments="#", ndmin=2)
    except ValueError as exc:
        raise ParseError(str(exc), path) from exc
    if L.shape[0] != L.shape[1]:
        raise ShapeError(f"{path}: kernel is {L.shape[0]}x{L.shape[1]}, not square")
    if not np.allclose(L, L.T, atol=atol, rtol=0):
        raise ParseError("kernel is not symmetric", path)
    if np.any(np.diag(L) < 0):
        raise ParseError("kernel has a negative diagonal entry", path)
    if check_psd and L.size:
        lam = np.linalg.eigvalsh(L)
        if lam.min() < -atol:
            raise ParseError(f"kernel is not PSD (min eigenvalue {lam.min():.3g})", path)
    return LogDetObjective(L)


def read_sequence(path) -> list[UpdateEvent]:
    """Scripted sequence: one ``+ <id>`` or ``- <id>`` per line, ``#`` comments."""
    ops = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            sym, rest = line[0], line[1:].strip()
            if sym not in "+-" or not rest:
                raise ParseError(f"expected '+ <id>' or '- <id>', got {line!r}", path, lineno)
            try:
                e = int(rest)
            except ValueError:
                raise ParseError(f"element id must be an integer, got {rest!r}", path, lineno) from None
            ops.append((INSERT if sym == "+" else DELETE, e))
    return _stamp(ops)


def write_sequence(path, events: Iterable[UpdateEvent]) -> None:
    with open(path, "w") as fh:
        for ev in events:
            fh.write(f"{_SYMBOL[ev.op]} {ev.element}\n")


# ---- sequence generators -----------------------------------------------------

def sliding_window_sequence(order: Sequence[int], W: int) -> list[UpdateEvent]:
    """Insert ``order[t]`` at step ``t``; each element dies ``W`` inserts later.

    The delete of ``order[t-W]`` is issued just before the insert of
    ``order[t]``; remaining elements are flushed in arrival order at the end.
    """
    if W < 1:
        raise ConfigError(f"window must be >= 1, got {W}")
    ops: list[tuple[str, int]] = []
    for t, e in enumerate(order):
        if t >= W:
            ops.append((DELETE, order[t - W]))
        ops.append((INSERT, e))
    for e in order[max(len(order) - W, 0):]:
        ops.append((DELETE, e))
    return _stamp(ops)


def insert_then_delete_sequence(insert_order: Sequence[int], delete_order: Sequence[int]) -> list[UpdateEvent]:
    return _stamp([(INSERT, e) for e in insert_order] + [(DELETE, e) for e in delete_order])


def degree_order(graph: MaxCutObjective) -> list[int]:
    """Vertices by descending degree, ties by id."""
    return sorted(range(graph.n), key=lambda v: (-graph.degree[v], v))


def noisy_degree_order(graph: MaxCutObjective, seed: int = 0) -> tuple[list[int], list[int]]:
    """(insert order, delete order) for the insert-all-then-delete-all experiment.

    The delete order starts from the degree order; a single left-to-right pass
    then, at each position not yet touched by a swap, swaps with probability
    1/2 with the left or right neighbour (direction chosen uniformly). A swap
    whose target is off the end or already swapped is skipped.
    """
    ins = degree_order(graph)
    out = list(ins)
    rng = random.Random(seed)
    swapped = [False] * len(out)
    for i in range(len(out)):
        if swapped[i]:
            continue
        if rng.random() >= 0.5:
            continue
        j = i - 1 if rng.random() < 0.5 else i + 1
        if 0 <= j < len(out) and not swapped[j]:
            out[i], out[j] = out[j], out[i]
            swapped[i] = swapped[j] = True
    return ins, out


def random_insert_delete_sequence(n: int, length: int, seed: int = 0, p_insert: float = 0.6) -> list[UpdateEvent]:
    """Random well-formed stream over ``0..n-1`` (oblivious: fixed before any run)."""
    rng = random.Random(seed)
    alive: list[int] = []
    dead = list(range(n))
    rng.shuffle(dead)
    ops = []
    for _ in range(length):
        if dead and (not alive or rng.random() < p_insert):
            v = dead.pop()
            alive.append(v)
            ops.append((INSERT, v))
        elif alive:
            v = alive.pop(rng.randrange(len(alive)))
            dead.insert(rng.randrange(len(dead) + 1), v)
            ops.append((DELETE, v))
    return _stamp(ops)


# ---- random instances --------------------------------------------------------

def erdos_renyi_graph(n: int, p: float, seed: int = 0) -> MaxCutObjective:
    import networkx as nx
    g = nx.gnp_random_graph(n, p, seed=seed)
    return MaxCutObjective(n, g.edges())


def preferential_attachment_graph(n: int, m: int, seed: int = 0) -> MaxCutObjective:
    import networkx as nx
    g = nx.barabasi_albert_graph(n, m, seed=seed)
    return MaxCutObjective(n, g.edges())


def random_psd_kernel(n: int, rank: int | None = None, seed: int = 0, scale: float = 1.0) -> np.ndarray:
    rng = np.random.default_rng(seed)
    B = rng.normal(size=(n, rank or n)) * scale
    return B @ B.T / (rank or n)


def parse_sequence_spec(spec: str) -> dict:
    """``sliding:W=N`` | ``noisy`` | ``file:PATH`` | ``random:L=N``."""
    kind, _, arg = spec.partition(":")
    if kind == "sliding":
        key, _, val = arg.partition("=")
        if key != "W" or not val.isdigit() or int(val) < 1:
            raise ConfigError(f"bad sliding-window spec {spec!r}; expected sliding:W=N")
        return {"kind": "sliding", "W": int(val)}
    if kind == "noisy" and not arg:
        return {"kind": "noisy"}
    if kind == "file" and arg:
        return {"kind": "file", "path": arg}
    if kind == "random":
        key, _, val = arg.partition("=")
        if key != "L" or not val.isdigit():
            raise ConfigError(f"bad random spec {spec!r}; expected random:L=N")
        return {"kind": "random", "length": int(val)}
    raise ConfigError(f"unknown sequence spec {spec!r}")


def build_sequence(spec: dict, objective, order: str = "auto", seed: int = 0) -> list[UpdateEvent]:
    """Materialise a sequence spec against an objective's universe."""
    kind = spec["kind"]
    if kind == "file":
        if not os.path.exists(spec["path"]):
            raise FileNotFoundError(spec["path"])
        events = read_sequence(spec["path"])
        for ev in events:
            if not 0 <= ev.element < objective.n:
                raise UpdateError(f"t={ev.t}: element {ev.element} outside universe of size {objective.n}")
        return events
    if kind == "random":
        return random_insert_delete_sequence(objective.n, spec["length"], seed=seed)
    if kind == "noisy":
        if not isinstance(objective, MaxCutObjective):
            raise ConfigError("noisy sequences need a graph objective")
        ins, dels = noisy_degree_order(objective, seed=seed)
        return insert_then_delete_sequence(ins, dels)
    base = element_order(objective, order, seed)
    return sliding_window_sequence(base, spec["W"])


def element_order(objective, order: str = "auto", seed: int = 0) -> list[int]:
    if order == "auto":
        order = "degree" if isinstance(objective, MaxCutObjective) else "index"
    if order == "degree":
        if not isinstance(objective, MaxCutObjective):
            raise ConfigError("degree order needs a graph objective")
        return degree_order(objective)
    if order == "index":
        return list(range(objective.n))
    if order == "random":
        out = list(range(objective.n))
        random.Random(seed).shuffle(out)
        return out
    raise ConfigError(f"unknown element order {order!r}")


def iter_checkpoints(events: Sequence[UpdateEvent]) -> Iterator[tuple[UpdateEvent, frozenset]]:
    """Yield each event with the alive set right after it."""
    g = GroundSet()
    for ev in events:
        g.apply(ev)
        yield ev, frozenset(g.alive)
