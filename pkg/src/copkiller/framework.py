"""Generalized shortest-path framework.

Every state ``s`` has a stay value and, for each neighbour ``u``, a move
value that depends on the (final) value of ``u``. The solved value is

    value(s) = best(stay_value(s), best over u of move_value(s, u, value(u)))

where ``best`` is ``min`` or ``max`` according to the rule's direction.
Three solvers are provided:

* :func:`solve_priority` settles states best-first, like Dijkstra, and checks
  at run time that no state is ever improved below an already settled value;
* :func:`solve_relaxation` runs synchronous rounds, like Bellman-Ford, and
  reports an ill-posed instance when round ``state_count`` still changes;
* :func:`value_iteration` is an in-place sweep oracle that returns values only.

Both policy-producing solvers share one policy extraction step: stays are
chosen whenever they are optimal, every other state points to the
lowest-numbered optimal neighbour among those already resolved, so following
actions always ends at a stay.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, Protocol, Sequence

import numpy as np

from copkiller.errors import EmptyStateSpace, IllPosed, NoConvergence, NotMonotone
from copkiller.graphs.core import Graph

STAY = -1
INF = math.inf

# absolute tolerance inside solvers, widened relatively for large values
ATOL = 1e-12
RTOL = 1e-12


class Direction(Enum):
    MINIMIZE = "min"
    MAXIMIZE = "max"


class NeighborOracle(Protocol):
    """A state space with dense ids ``0..state_count-1``.

    ``neighbors(s)`` returns ``(u, payload)`` pairs; the payload is handed to
    the rule's move value unchanged. ``symmetric`` may be set when ``u`` lists
    ``s`` whenever ``s`` lists ``u`` with the same payload.
    """

    state_count: int

    def neighbors(self, s: int) -> Sequence[tuple[int, Any]]: ...


class GraphOracle:
    """Vertices of a graph as states; payload is ``edge_data(v, u)`` (default 0)."""

    def __init__(self, graph: Graph, edge_data: Callable[[int, int], Any] | None = None):
        self.graph = graph
        self.state_count = graph.n
        self.symmetric = edge_data is None
        data = edge_data or (lambda v, u: 0)
        self._nbrs = [[(u, data(v, u)) for u in graph.neighbors(v)] for v in range(graph.n)]

    def neighbors(self, s: int) -> list[tuple[int, Any]]:
        return self._nbrs[s]


class FunctionOracle:
    def __init__(self, state_count: int, neighbors: Callable[[int], Sequence[tuple[int, Any]]]):
        self.state_count = state_count
        self._fn = neighbors

    def neighbors(self, s: int):
        return self._fn(s)


@dataclass(frozen=True)
class UpdateRule:
    """Direction plus the two value functions.

    ``move_value(s, u, value_u, payload)`` must be non-decreasing in
    ``value_u``.
    """

    direction: Direction
    stay_value: Callable[[int], float]
    move_value: Callable[[int, int, float, Any], float]

    def better(self, a: float, b: float) -> bool:
        """``a`` strictly better than ``b`` beyond tolerance."""
        if a == b:
            return False
        if self.direction is Direction.MINIMIZE:
            return a < b and not close(a, b)
        return a > b and not close(a, b)


def close(a: float, b: float) -> bool:
    if a == b:
        return True
    if math.isinf(a) or math.isinf(b):
        return False
    return abs(a - b) <= ATOL + RTOL * max(abs(a), abs(b))


def scaled(factor: float, value: float) -> float:
    """``factor * value`` with ``0 * inf = 0`` (infinity absorbs only positive factors)."""
    return 0.0 if factor == 0 else factor * value


@dataclass(frozen=True, eq=False)
class ValuePolicy:
    values: np.ndarray
    actions: np.ndarray  # STAY or the target state

    def __len__(self) -> int:
        return len(self.values)

    def is_stay(self, s: int) -> bool:
        return int(self.actions[s]) == STAY

    def target(self, s: int) -> int | None:
        a = int(self.actions[s])
        return None if a == STAY else a

    def chain(self, s: int) -> list[int]:
        """States visited by following actions from ``s`` up to the final stay."""
        out = [s]
        while not self.is_stay(out[-1]):
            out.append(int(self.actions[out[-1]]))
            if len(out) > len(self.values):
                raise RuntimeError("policy chain does not terminate")
        return out


def _predecessors(oracle: NeighborOracle) -> list[list[tuple[int, Any]]]:
    if getattr(oracle, "symmetric", False):
        return [list(oracle.neighbors(u)) for u in range(oracle.state_count)]
    preds: list[list[tuple[int, Any]]] = [[] for _ in range(oracle.state_count)]
    for v in range(oracle.state_count):
        for u, payload in oracle.neighbors(v):
            preds[u].append((v, payload))
    return preds


def extract_policy(oracle: NeighborOracle, rule: UpdateRule, values: Sequence[float]) -> ValuePolicy:
    """Build an acyclic policy realizing ``values`` and recompute values along it.

    Layer 0 holds states where staying is optimal. Layer ``L+1`` holds the
    unresolved states with an optimal move into layers ``0..L``; each picks
    the lowest-numbered such target.
    """
    count = oracle.state_count
    vals = [float(x) for x in values]
    final = [0.0] * count
    actions = [STAY] * count
    done = [False] * count
    layer = []
    for s in range(count):
        j = rule.stay_value(s)
        if not rule.better(vals[s], j):
            final[s] = j
            done[s] = True
            layer.append(s)
    preds = _predecessors(oracle)
    while layer:
        candidates: dict[int, tuple[int, Any]] = {}
        for u in layer:
            for v, payload in preds[u]:
                if done[v]:
                    continue
                if close(rule.move_value(v, u, final[u], payload), vals[v]):
                    if v not in candidates or u < candidates[v][0]:
                        candidates[v] = (u, payload)
        layer = sorted(candidates)
        for v in layer:
            u, payload = candidates[v]
            actions[v] = u
            final[v] = rule.move_value(v, u, final[u], payload)
            done[v] = True
    if not all(done):
        missing = done.index(False)
        raise IllPosed(f"state {missing} has no optimal action chain ending in a stay")
    return ValuePolicy(np.array(final, dtype=float), np.array(actions, dtype=np.int64))


def solve_priority(oracle: NeighborOracle, rule: UpdateRule) -> ValuePolicy:
    """Best-first settling; raises :class:`NotMonotone` if the order would break."""
    count = oracle.state_count
    if count == 0:
        raise EmptyStateSpace("no states")
    sign = 1.0 if rule.direction is Direction.MINIMIZE else -1.0
    value = [rule.stay_value(s) for s in range(count)]
    settled = [False] * count
    heap = [(sign * value[s], s) for s in range(count)]
    heapq.heapify(heap)
    preds = _predecessors(oracle)
    while heap:
        key, u = heapq.heappop(heap)
        if settled[u] or key != sign * value[u]:
            continue
        settled[u] = True
        tu = value[u]
        for v, payload in preds[u]:
            cand = rule.move_value(v, u, tu, payload)
            if not rule.better(cand, value[v]):
                continue
            if settled[v] or rule.better(cand, tu):
                raise NotMonotone(
                    f"moving from state {v} to settled state {u} gives {cand!r}, "
                    f"better than {u}'s own value {tu!r}; use solve_relaxation"
                )
            value[v] = cand
            heapq.heappush(heap, (sign * cand, v))
    return extract_policy(oracle, rule, value)


def _sweep_value(oracle, rule, s, current):
    best = rule.stay_value(s)
    for u, payload in oracle.neighbors(s):
        cand = rule.move_value(s, u, current[u], payload)
        if rule.better(cand, best):
            best = cand
    return best


def solve_relaxation(oracle: NeighborOracle, rule: UpdateRule) -> ValuePolicy:
    """Synchronous rounds from the stay values; at most ``state_count`` rounds."""
    count = oracle.state_count
    if count == 0:
        raise EmptyStateSpace("no states")
    current = [rule.stay_value(s) for s in range(count)]
    for _ in range(count):
        new = [_sweep_value(oracle, rule, s, current) for s in range(count)]
        changed = any(not close(a, b) for a, b in zip(new, current))
        current = new
        if not changed:
            return extract_policy(oracle, rule, current)
    raise IllPosed(f"values still changing after {count} rounds: an improving cycle makes the equation ill-defined")


def value_iteration(oracle: NeighborOracle, rule: UpdateRule, tol: float = 1e-13, max_iters: int = 100_000) -> np.ndarray:
    """In-place (Gauss-Seidel) sweeps from the stay values until the largest change is at most ``tol``."""
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    count = oracle.state_count
    if count == 0:
        raise EmptyStateSpace("no states")
    vals = [rule.stay_value(s) for s in range(count)]
    for _ in range(max_iters):
        delta = 0.0
        for s in range(count):
            best = rule.stay_value(s)
            for u, payload in oracle.neighbors(s):
                cand = rule.move_value(s, u, vals[u], payload)
                if (cand < best) if rule.direction is Direction.MINIMIZE else (cand > best):
                    best = cand
            if best != vals[s]:
                delta = max(delta, INF if math.isinf(best) or math.isinf(vals[s]) else abs(best - vals[s]))
            vals[s] = best
        if delta <= tol:
            return np.array(vals, dtype=float)
    raise NoConvergence(f"no convergence to {tol} within {max_iters} sweeps")
