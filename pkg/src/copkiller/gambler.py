"""Cop versus gambler: capture time, evasion probability and cop teams.

Each round the gambler hops to vertex ``v`` with probability ``p[v]``
independently of the past; the cop standing on ``v`` at that moment captures
him. Afterwards the cop moves to a neighbour (possibly paying an edge delay)
or stays for good.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import reduce
from itertools import product
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from copkiller.errors import AllZeroDistribution, DistributionError, InvalidParams, LayerMismatch, TooLarge
from copkiller.framework import INF, Direction, GraphOracle, UpdateRule, ValuePolicy, scaled, solve_priority
from copkiller.graphs.core import Graph

SUM_TOL = 1e-9
MAX_SUPERGRAPH_STATES = 10**6


@dataclass(frozen=True, eq=False)
class Distribution:
    """Probability vector over vertices (validated, never renormalized)."""

    p: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.p, dtype=float)
        if p.ndim != 1:
            raise DistributionError("distribution must be a flat vector")
        if not np.isfinite(p).all() or (p < 0).any():
            raise DistributionError("probabilities must be finite and non-negative")
        if p.size and not (p > 0).any():
            raise AllZeroDistribution("every probability is zero")
        if abs(p.sum() - 1.0) > SUM_TOL:
            raise DistributionError(f"probabilities sum to {p.sum()!r}, not 1")
        p.flags.writeable = False
        object.__setattr__(self, "p", p)

    @classmethod
    def uniform(cls, n: int) -> "Distribution":
        return cls(np.full(n, 1.0 / n))

    def __len__(self) -> int:
        return len(self.p)

    def __getitem__(self, v: int) -> float:
        return float(self.p[v])

    def to_json(self) -> str:
        return json.dumps({"p": self.p.tolist()})


def as_distribution(dist, n: int | None = None) -> Distribution:
    d = dist if isinstance(dist, Distribution) else Distribution(np.asarray(dist, dtype=float))
    if n is not None and len(d) != n:
        raise DistributionError(f"distribution has {len(d)} entries for a graph on {n} vertices")
    return d


def load_distribution(path: str | Path) -> Distribution:
    """Read ``{"p": [...]}`` or one probability per line."""
    text = Path(path).read_text()
    stripped = text.strip()
    if stripped.startswith("{"):
        doc = json.loads(stripped)
        if set(doc) != {"p"}:
            raise DistributionError('structured distribution must have the single key "p"')
        return Distribution(doc["p"])
    try:
        return Distribution([float(x) for x in stripped.split()])
    except ValueError as exc:
        raise DistributionError(f"bad probability: {exc}") from None


@dataclass(frozen=True, eq=False)
class EdgeDelays:
    """Extra turns spent crossing each directed edge (absent edges cost 0)."""

    graph: Graph
    delays: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (u, v), d in dict(self.delays).items():
            if not self.graph.has_edge(u, v):
                raise InvalidParams(f"delay given for non-edge ({u}, {v})")
            if int(d) != d or d < 0:
                raise InvalidParams(f"delay on ({u}, {v}) must be a non-negative integer, got {d}")
            clean[(int(u), int(v))] = int(d)
        object.__setattr__(self, "delays", clean)

    @classmethod
    def constant(cls, graph: Graph, d: int) -> "EdgeDelays":
        return cls(graph, {(u, v): d for u in range(graph.n) for v in graph.neighbors(u)})

    def __call__(self, u: int, v: int) -> int:
        return self.delays.get((u, v), 0)


def parse_delays(graph: Graph, text: str) -> EdgeDelays:
    """Lines ``"u v n"``: crossing from ``u`` to ``v`` costs ``n`` extra turns."""
    out = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split()
        try:
            u, v, d = (int(x) for x in parts)
        except ValueError:
            raise InvalidParams(f"delays line {lineno}: expected 'u v n', got {line!r}") from None
        out[(u, v)] = d
    return EdgeDelays(graph, out)


def _no_delays(graph: Graph, delays) -> EdgeDelays:
    if delays is None:
        return EdgeDelays(graph)
    if isinstance(delays, EdgeDelays):
        return delays
    return EdgeDelays(graph, delays)


def capture_rule(p: np.ndarray) -> UpdateRule:
    """Stay value ``1/p_v``; move value ``1 + (1-p_v)(T(u) + delay)``."""

    def stay(v):
        return 1.0 / p[v] if p[v] > 0 else INF

    def move(v, u, tu, delay):
        return 1.0 + scaled(1.0 - p[v], tu + delay)

    return UpdateRule(Direction.MINIMIZE, stay, move)


def capture_time(graph: Graph, dist) -> ValuePolicy:
    """Minimal expected number of rounds until capture from each start vertex."""
    d = as_distribution(dist, graph.n)
    return solve_priority(GraphOracle(graph), capture_rule(d.p))


def capture_time_delays(graph: Graph, dist, delays) -> ValuePolicy:
    d = as_distribution(dist, graph.n)
    dl = _no_delays(graph, delays)
    return solve_priority(GraphOracle(graph, dl), capture_rule(d.p))


def evasion(graph: Graph, dist, m: int, delays=None) -> np.ndarray:
    """Minimal survival probability ``e[j, v]`` over ``j = 0..m`` rounds.

    Each layer depends only on strictly lower layers, so the table is filled
    bottom-up; ``e[j, v] = 1`` for ``j <= 0``.
    """
    if m < 0:
        raise InvalidParams(f"m must be non-negative, got {m}")
    p = as_distribution(dist, graph.n).p
    return _evasion_layers(graph, np.tile(p, (m, 1)), m, _no_delays(graph, delays))


def evasion_time_varying(graph: Graph, layers, m: int, delays=None) -> np.ndarray:
    """Like :func:`evasion` but ``layers[i-1]`` is the gambler's law with ``i`` rounds left."""
    if m < 0:
        raise InvalidParams(f"m must be non-negative, got {m}")
    layers = [as_distribution(layer, graph.n).p for layer in layers]
    if len(layers) != m:
        raise LayerMismatch(f"need {m} layers, got {len(layers)}")
    table = np.array(layers, dtype=float).reshape(m, graph.n)
    return _evasion_layers(graph, table, m, _no_delays(graph, delays))


def _evasion_layers(graph: Graph, p_left: np.ndarray, m: int, delays: EdgeDelays) -> np.ndarray:
    n = graph.n
    e = np.ones((m + 1, n))
    # survive[j, v]: staying at v for the last j rounds
    survive = np.ones((m + 1, n))
    for j in range(1, m + 1):
        survive[j] = survive[j - 1] * (1.0 - p_left[j - 1])
    for j in range(1, m + 1):
        q = 1.0 - p_left[j - 1]
        for v in range(n):
            best = survive[j, v]
            for u in graph.neighbors(v):
                rest = j - 1 - delays(v, u)
                cand = q[v] * (e[rest, u] if rest > 0 else 1.0)
                if cand < best:
                    best = cand
            e[j, v] = best
    return e


# cop teams ---------------------------------------------------------------

def encode_cops(cops: Sequence[int], n: int) -> int:
    """Dense id of a cop tuple, first cop most significant (base ``n``)."""
    s = 0
    for v in cops:
        if not 0 <= v < n:
            raise InvalidParams(f"vertex {v} outside 0..{n - 1}")
        s = s * n + int(v)
    return s


def decode_cops(state: int, n: int, k: int) -> tuple[int, ...]:
    out = []
    for _ in range(k):
        state, v = divmod(state, n)
        out.append(v)
    return tuple(reversed(out))


class CopTeamOracle:
    """Joint positions of ``k`` cops; each cop moves to a neighbour or stays.

    The all-stay transition is excluded, it is the stay value.
    """

    symmetric = True

    def __init__(self, graph: Graph, k: int):
        if k < 1:
            raise InvalidParams(f"need at least one cop, got {k}")
        if graph.n == 0:
            raise InvalidParams("empty graph")
        if graph.n**k > MAX_SUPERGRAPH_STATES:
            raise TooLarge(f"{graph.n}^{k} joint states exceed {MAX_SUPERGRAPH_STATES}")
        self.graph, self.k = graph, k
        self.state_count = graph.n**k
        self._closed = [(v,) + graph.neighbors(v) for v in range(graph.n)]

    def decode(self, s: int) -> tuple[int, ...]:
        return decode_cops(s, self.graph.n, self.k)

    def encode(self, cops: Sequence[int]) -> int:
        return encode_cops(cops, self.graph.n)

    def neighbors(self, s: int) -> list[tuple[int, int]]:
        n = self.graph.n
        cops = self.decode(s)
        out = []
        for moved in product(*(self._closed[v] for v in cops)):
            t = reduce(lambda acc, v: acc * n + v, moved, 0)
            if t != s:
                out.append((t, 0))
        out.sort()
        return out


def occupied_mass(p: np.ndarray, cops: Iterable[int]) -> float:
    """Gambler mass on the set of occupied vertices (a shared vertex counts once)."""
    return float(sum(p[v] for v in set(cops)))


def multicop_capture_time(graph: Graph, dist, k: int) -> ValuePolicy:
    """Minimal expected capture time for ``k`` cops at every joint position."""
    p = as_distribution(dist, graph.n).p
    oracle = CopTeamOracle(graph, k)
    mass = [occupied_mass(p, oracle.decode(s)) for s in range(oracle.state_count)]

    def stay(s):
        return 1.0 / mass[s] if mass[s] > 0 else INF

    def move(s, t, tt, _):
        return 1.0 + scaled(max(0.0, 1.0 - mass[s]), tt)

    return solve_priority(oracle, UpdateRule(Direction.MINIMIZE, stay, move))
