"""Exact solution of the cop-and-killer game.

Rules: the cop picks a vertex, the killer picks a different vertex, then the
players alternate forced moves to an adjacent vertex, cop first. Whoever
moves onto the other player wins; if neither ever does the game is a
stalemate. Both players prefer a win to a stalemate to a loss.

States are ``(cop, killer, turn)`` with ``cop != killer``. Two solvers
compute the same :class:`LabelTable`:

* :func:`label_states` - retrograde propagation from the capture states
  with per-state counters of unrefuted moves;
* :func:`label_states_fixpoint` - synchronous rounds of boolean matrix
  updates (batched over many graphs by :func:`fixpoint_tables`).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from copkiller.errors import IsolatedVertex, StateNotFound
from copkiller.graphs.core import Graph


class Turn(IntEnum):
    COP = 0
    KILLER = 1


class Label(IntEnum):
    """Game value from the cop's point of view; larger is better for the cop."""

    KILLER_WIN = -1
    STALEMATE = 0
    COP_WIN = 1

    @property
    def text(self) -> str:
        return _LABEL_TEXT[self]


_LABEL_TEXT = {Label.COP_WIN: "CopWin", Label.KILLER_WIN: "KillerWin", Label.STALEMATE: "Stalemate"}

# graphs up to this size are solved with the retrograde solver by default
RETROGRADE_MAX_N = 64


def _check_graph(g: Graph) -> None:
    if g.n < 2:
        raise IsolatedVertex("the game needs at least two vertices")
    lonely = [v for v in range(g.n) if g.degree(v) == 0]
    if lonely:
        raise IsolatedVertex(f"vertex {lonely[0]} has no neighbours; moves are forced")


@dataclass(frozen=True, eq=False)
class LabelTable:
    """Labels and plies-to-capture for every state of one graph.

    ``labels[turn, cop, killer]`` holds a :class:`Label` code and
    ``distance[turn, cop, killer]`` the number of plies until capture under
    optimal play (``-1`` for stalemates and for the unused diagonal).
    """

    graph: Graph
    labels: np.ndarray
    distance: np.ndarray

    def _check(self, cop: int, killer: int, turn: Turn) -> None:
        n = self.graph.n
        if not (0 <= cop < n and 0 <= killer < n) or cop == killer or int(turn) not in (0, 1):
            raise StateNotFound((cop, killer, turn))

    def label(self, cop: int, killer: int, turn: Turn) -> Label:
        self._check(cop, killer, turn)
        return Label(int(self.labels[turn, cop, killer]))

    def dist(self, cop: int, killer: int, turn: Turn) -> int | None:
        self._check(cop, killer, turn)
        d = int(self.distance[turn, cop, killer])
        return None if d < 0 else d

    def same_as(self, other: "LabelTable") -> bool:
        off = ~np.eye(self.graph.n, dtype=bool)
        return (
            self.graph == other.graph
            and bool((self.labels[:, off] == other.labels[:, off]).all())
            and bool((self.distance[:, off] == other.distance[:, off]).all())
        )


def label_states(g: Graph) -> LabelTable:
    _check_graph(g)
    n, adj = g.n, g.adj
    size = 2 * n * n
    label = [0] * size
    dist = [-1] * size
    remaining = [0] * size
    queue: deque[int] = deque()
    nn = n * n
    # index: turn * n*n + cop * n + killer
    for c in range(n):
        for k in range(n):
            if c == k:
                continue
            if g.has_edge(c, k):
                for t, lab in ((Turn.COP, Label.COP_WIN), (Turn.KILLER, Label.KILLER_WIN)):
                    s = t * nn + c * n + k
                    label[s], dist[s] = lab, 1
                    queue.append(s)
            else:
                remaining[c * n + k] = len(adj[c])
                remaining[nn + c * n + k] = len(adj[k])
    resolved = [d > 0 for d in dist]
    while queue:
        s = queue.popleft()
        t, rest = divmod(s, nn)
        c, k = divmod(rest, n)
        lab, d = label[s], dist[s]
        if t == Turn.KILLER:
            # predecessors: cop moved here from a neighbour of c
            good = lab == Label.COP_WIN
            preds = [(0, cp * n + k) for cp in adj[c] if cp != k]
            win, loss = Label.COP_WIN, Label.KILLER_WIN
        else:
            good = lab == Label.KILLER_WIN
            preds = [(nn, c * n + kp) for kp in adj[k] if kp != c]
            win, loss = Label.KILLER_WIN, Label.COP_WIN
        for base, off in preds:
            p = base + off
            if resolved[p]:
                continue
            if good:
                label[p], dist[p], resolved[p] = win, d + 1, True
                queue.append(p)
            else:
                remaining[p] -= 1
                if remaining[p] == 0:
                    label[p], dist[p], resolved[p] = loss, d + 1, True
                    queue.append(p)
    labels = np.array(label, dtype=np.int8).reshape(2, n, n)
    distance = np.array(dist, dtype=np.int32).reshape(2, n, n)
    return LabelTable(g, labels, distance)


def fixpoint_tables(adjacency: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Label a batch of graphs by synchronous rounds until nothing changes.

    ``adjacency`` has shape ``(B, n, n)``; returns ``labels`` and
    ``distance`` of shape ``(B, 2, n, n)``. Round ``r`` resolves exactly the
    states whose capture is ``r`` plies away. Callers must reject graphs with
    isolated vertices.
    """
    a = np.asarray(adjacency, dtype=bool)
    if a.ndim == 2:
        a = a[None]
    batch, n, _ = a.shape
    af = a.astype(np.float32)
    deg = af.sum(axis=2)  # (B, n)
    off = ~np.eye(n, dtype=bool)
    free = off & ~a  # non-terminal states, same for both turns

    cop_win_c = a & off  # cop to move, adjacent: captures now
    killer_win_k = a & off
    killer_win_c = np.zeros_like(a)
    cop_win_k = np.zeros_like(a)
    dist_c = np.where(cop_win_c, 1, -1).astype(np.int32)
    dist_k = np.where(killer_win_k, 1, -1).astype(np.int32)

    rnd = 1
    while True:
        rnd += 1
        # cop to move at (c, k): some u in N(c) leads to a cop-won killer-turn state
        new_cw_c = (np.matmul(af, cop_win_k.astype(np.float32)) > 0.5) & free & ~cop_win_c
        # ... or every u in N(c) leads to a killer-won killer-turn state
        n_kw = np.matmul(af, killer_win_k.astype(np.float32))
        new_kw_c = (np.abs(n_kw - deg[:, :, None]) < 0.5) & free & ~killer_win_c
        # killer to move at (c, k): moves w in N(k) reach (c, w, cop turn)
        new_kw_k = (np.matmul(killer_win_c.astype(np.float32), af) > 0.5) & free & ~killer_win_k
        n_cw = np.matmul(cop_win_c.astype(np.float32), af)
        new_cw_k = (np.abs(n_cw - deg[:, None, :]) < 0.5) & free & ~cop_win_k
        if not (new_cw_c.any() or new_kw_c.any() or new_kw_k.any() or new_cw_k.any()):
            break
        cop_win_c |= new_cw_c
        killer_win_c |= new_kw_c
        killer_win_k |= new_kw_k
        cop_win_k |= new_cw_k
        dist_c[new_cw_c | new_kw_c] = rnd
        dist_k[new_kw_k | new_cw_k] = rnd

    labels = np.zeros((batch, 2, n, n), dtype=np.int8)
    labels[:, 0][cop_win_c] = Label.COP_WIN
    labels[:, 0][killer_win_c] = Label.KILLER_WIN
    labels[:, 1][cop_win_k] = Label.COP_WIN
    labels[:, 1][killer_win_k] = Label.KILLER_WIN
    distance = np.stack([dist_c, dist_k], axis=1)
    return labels, distance


def label_states_fixpoint(g: Graph) -> LabelTable:
    _check_graph(g)
    labels, distance = fixpoint_tables(g.matrix[None])
    return LabelTable(g, labels[0], distance[0])


def verdicts_from_labels(cop_turn_labels: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Whole-game verdict from cop-to-move labels of shape ``(..., n, n)``.

    Returns ``(verdict, cop_start, killer_reply)``: the cop maximizes over her
    start the killer's minimizing reply; ties go to the lowest index.
    """
    lab = cop_turn_labels.astype(np.int8).copy()
    n = lab.shape[-1]
    lab[..., np.arange(n), np.arange(n)] = 2  # killer may not start on the cop
    worst = lab.min(axis=-1)
    cop_start = worst.argmax(axis=-1)
    verdict = np.take_along_axis(worst, cop_start[..., None], axis=-1)[..., 0]
    row = np.take_along_axis(lab, cop_start[..., None, None], axis=-2)[..., 0, :]
    killer_reply = row.argmin(axis=-1)
    return verdict, cop_start, killer_reply


def optimal_move(table: LabelTable, cop: int, killer: int, turn: Turn) -> int:
    """A move that realizes the label of ``(cop, killer, turn)``.

    Winning side: fastest win. Losing side: slowest loss. Stalemate: any
    move that keeps the stalemate. Remaining ties go to the lowest vertex.
    """
    lab = table.label(cop, killer, turn)
    g = table.graph
    mover, other = (cop, killer) if turn == Turn.COP else (killer, cop)
    mover_wins = lab == (Label.COP_WIN if turn == Turn.COP else Label.KILLER_WIN)
    if mover_wins and g.has_edge(mover, other):
        return other
    nxt = Turn(1 - turn)
    options = []
    for u in g.neighbors(mover):
        state = (u, killer) if turn == Turn.COP else (cop, u)
        options.append((u, table.label(*state, nxt), table.dist(*state, nxt)))
    if lab == Label.STALEMATE:
        return min(u for u, l, _ in options if l == Label.STALEMATE)
    if mover_wins:
        return min((d, u) for u, l, d in options if l == lab)[1]
    return min((-d, u) for u, _, d in options)[1]


@dataclass(frozen=True, eq=False)
class Outcome:
    verdict: Label
    cop_start: int
    killer_reply: int
    table: LabelTable

    def witness(self) -> dict[tuple[int, int, Turn], int]:
        """Move for every state in which the player to move does not lose."""
        out = {}
        n = self.table.graph.n
        for turn in Turn:
            loss = Label.KILLER_WIN if turn == Turn.COP else Label.COP_WIN
            for c in range(n):
                for k in range(n):
                    if c != k and self.table.labels[turn, c, k] != loss:
                        out[(c, k, turn)] = optimal_move(self.table, c, k, turn)
        return out


def solve(g: Graph, method: str = "auto") -> Outcome:
    """Solve the whole game: cop start, killer reply and verdict.

    ``method`` is ``"retrograde"``, ``"fixpoint"`` or ``"auto"`` (retrograde up
    to ``RETROGRADE_MAX_N`` vertices, the vectorized fixpoint above that).
    """
    if method == "auto":
        method = "retrograde" if g.n <= RETROGRADE_MAX_N else "fixpoint"
    if method == "retrograde":
        table = label_states(g)
    elif method == "fixpoint":
        table = label_states_fixpoint(g)
    else:
        raise ValueError(f"unknown method {method!r}")
    verdict, cop_start, reply = verdicts_from_labels(table.labels[Turn.COP])
    return Outcome(Label(int(verdict)), int(cop_start), int(reply), table)


def solve_verdict(g: Graph, method: str = "auto") -> Label:
    return solve(g, method).verdict
