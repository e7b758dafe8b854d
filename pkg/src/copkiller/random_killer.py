"""Cop versus a random killer with a known hop distribution.

Turns alternate: the cop moves to a neighbour or stays, then the killer hops
to vertex ``v`` with probability ``p[v]``. The killer wins by landing on the
cop; the cop wins when the killer lands next to her (she steps onto him on
her next turn). ``T(v)`` is the cop's best win probability standing on ``v``
just before a hop, with ``n_v`` the killer mass on the neighbours of ``v``:

* stay forever: ``n_v / (p_v + n_v)`` (0 when ``p_v + n_v = 0``, a stalemate);
* move to ``u`` after the hop: ``n_v + (1 - p_v - n_v) * T(u)``.

The cop is maximized with the framework's priority solver.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from copkiller.errors import BadDegree, BadVertex, CyclicPolicy, InvalidParams
from copkiller.framework import Direction, GraphOracle, UpdateRule, ValuePolicy, solve_priority
from copkiller.gambler import Distribution, as_distribution
from copkiller.graphs.core import Graph


class OutcomeTriple(NamedTuple):
    win: float
    lose: float
    stalemate: float


@dataclass(frozen=True, eq=False)
class CopPolicy(ValuePolicy):
    """A :class:`ValuePolicy` plus per-vertex neighbourhood masses.

    ``stalemate[v]`` marks stay actions at vertices with no killer mass in the
    closed neighbourhood.
    """

    own_mass: np.ndarray = None
    neighbor_mass: np.ndarray = None
    stalemate: np.ndarray = None


@dataclass(frozen=True)
class OptimizerConfig:
    restarts: int = 32
    iterations: int = 400
    initial_step: float = 0.25
    step_shrink: float = 0.5
    min_step: float = 1e-4
    tolerance: float = 1e-10
    seed: int = 0

    def __post_init__(self):
        if self.restarts < 1:
            raise InvalidParams("restarts must be >= 1")
        if not self.tolerance > 0:
            raise InvalidParams("tolerance must be positive")
        if not 0 < self.step_shrink < 1 or not 0 < self.min_step <= self.initial_step:
            raise InvalidParams("step schedule must shrink from initial_step down to min_step")


def neighborhood_mass(graph: Graph, p: np.ndarray) -> np.ndarray:
    """``n_v``: killer mass on the open neighbourhood of every vertex."""
    return graph.matrix.astype(float) @ np.asarray(p, dtype=float)


def killer_rule(own: np.ndarray, nbr: np.ndarray) -> UpdateRule:
    closed = own + nbr

    def stay(v):
        return nbr[v] / closed[v] if closed[v] > 0 else 0.0

    def move(v, u, tu, _):
        return tu * max(0.0, 1.0 - closed[v]) + nbr[v]

    return UpdateRule(Direction.MAXIMIZE, stay, move)


def cop_value(graph: Graph, dist) -> CopPolicy:
    p = as_distribution(dist, graph.n).p
    nbr = neighborhood_mass(graph, p)
    res = solve_priority(GraphOracle(graph), killer_rule(p, nbr))
    stuck = (res.actions < 0) & (p + nbr == 0)
    return CopPolicy(res.values, res.actions, p.copy(), nbr, stuck)


def _check_vertex(graph: Graph, s: int) -> None:
    if not 0 <= s < graph.n:
        raise BadVertex(f"vertex {s} outside 0..{graph.n - 1}")


def best_first_move(graph: Graph, values: np.ndarray, s: int) -> int:
    """The cop's free opening move from ``s``: best closed-neighbour value, staying on ties."""
    _check_vertex(graph, s)
    best = s
    for u in graph.neighbors(s):
        if values[u] > values[best] + 1e-12:
            best = u
    return best


def game_value_from_start(graph: Graph, dist, s: int) -> float:
    """Cop's win probability when she starts on ``s`` and moves before the first hop."""
    _check_vertex(graph, s)
    t = cop_value(graph, dist).values
    return float(max(t[u] for u in (s,) + graph.neighbors(s)))


def evaluate_policy(graph: Graph, dist, policy: ValuePolicy, start: int) -> OutcomeTriple:
    """Win/lose/stalemate probabilities of following ``policy`` from ``start`` (killer to hop)."""
    _check_vertex(graph, start)
    p = as_distribution(dist, graph.n).p
    nbr = neighborhood_mass(graph, p)
    win = lose = stale = 0.0
    alive = 1.0
    seen = set()
    v = start
    while True:
        if v in seen:
            raise CyclicPolicy(f"policy revisits vertex {v}")
        seen.add(v)
        closed = p[v] + nbr[v]
        target = policy.target(v)
        if target is None:
            if closed > 0:
                win += alive * nbr[v] / closed
                lose += alive * p[v] / closed
            else:
                stale += alive
            return OutcomeTriple(float(win), float(lose), float(stale))
        win += alive * nbr[v]
        lose += alive * p[v]
        alive *= max(0.0, 1.0 - closed)
        v = target


def sqrt_bound(d: int) -> float:
    """Guaranteed cop win probability on a connected graph of maximum degree ``d``."""
    if d < 1:
        raise BadDegree(f"maximum degree must be >= 1, got {d}")
    r = math.sqrt(d)
    return r / (1.0 + r)


def star_distribution(d: int) -> Distribution:
    """Killer law on K_{1,d} (centre 0) meeting the bound: centre 1/(1+sqrt d), leaves equal."""
    if d < 1:
        raise BadDegree(f"star needs d >= 1, got {d}")
    centre = 1.0 / (1.0 + math.sqrt(d))
    return Distribution(np.array([centre] + [(1.0 - centre) / d] * d))


# killer search -------------------------------------------------------------

def _fast_values(adj, p) -> list[float]:
    """Same fixpoint as :func:`cop_value` without the generic framework overhead."""
    n = len(adj)
    nbr = [sum(p[u] for u in adj[v]) for v in range(n)]
    closed = [p[v] + nbr[v] for v in range(n)]
    t = [nbr[v] / closed[v] if closed[v] > 0 else 0.0 for v in range(n)]
    done = [False] * n
    heap = [(-t[v], v) for v in range(n)]
    heapq.heapify(heap)
    while heap:
        key, u = heapq.heappop(heap)
        if done[u] or -key != t[u]:
            continue
        done[u] = True
        for v in adj[u]:
            if done[v]:
                continue
            cand = t[u] * max(0.0, 1.0 - closed[v]) + nbr[v]
            if cand > t[v] + 1e-15:
                t[v] = cand
                heapq.heappush(heap, (-cand, v))
    return t


def _objective(adj, p, s) -> tuple[float, ...]:
    # primary: cop's value from s; the rest break plateaus at kinks of the max
    t = _fast_values(adj, p)
    return tuple(sorted((t[u] for u in (s,) + tuple(adj[s])), reverse=True))


def _improves(a: tuple[float, ...], b: tuple[float, ...], tol: float) -> bool:
    for x, y in zip(a, b):
        if x < y - tol:
            return True
        if x > y + tol:
            return False
    return False


def _local_search(adj, p: np.ndarray, s: int, cfg: OptimizerConfig) -> tuple[np.ndarray, tuple]:
    n = len(p)
    p = p.copy()
    best = _objective(adj, p, s)
    step = cfg.initial_step
    for _ in range(cfg.iterations):
        if step < cfg.min_step:
            break
        moved = False
        for i in range(n):
            if p[i] <= 0:
                continue
            for j in range(n):
                if j == i:
                    continue
                amount = min(step, p[i])
                q = p.copy()
                q[i] -= amount
                q[j] += amount
                q[i] = max(q[i], 0.0)
                cand = _objective(adj, q, s)
                if _improves(cand, best, cfg.tolerance):
                    p, best = q, cand
                    moved = True
                    if p[i] <= 0:
                        break
        if not moved:
            step *= cfg.step_shrink
    return p, best


def killer_best_distribution(graph: Graph, cop_start: int, config: OptimizerConfig | None = None) -> tuple[Distribution, float]:
    """Heuristic killer law minimizing :func:`game_value_from_start` for a known cop start.

    Seeded Dirichlet restarts (plus the uniform law) each followed by a
    pairwise mass-transfer local search with a shrinking step. Returns the
    best law found and its value; not a certified optimum.
    """
    cfg = config or OptimizerConfig()
    _check_vertex(graph, cop_start)
    n = graph.n
    if n == 1:
        return Distribution(np.ones(1)), 0.0
    adj = graph.adj
    children = np.random.SeedSequence(cfg.seed).spawn(cfg.restarts)
    starts = [np.full(n, 1.0 / n)] + [np.random.default_rng(c).dirichlet(np.ones(n)) for c in children]
    best_p, best_key = None, None
    for p0 in starts:
        p, key = _local_search(adj, p0, cop_start, cfg)
        if best_key is None or _improves(key, best_key, cfg.tolerance):
            best_p, best_key = p, key
    best_p = best_p / best_p.sum()
    return Distribution(best_p), game_value_from_start(graph, best_p, cop_start)
