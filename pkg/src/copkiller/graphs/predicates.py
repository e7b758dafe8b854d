"""Structural predicates and exact cycle counting."""

from __future__ import annotations

from collections import deque

import numpy as np

from copkiller.errors import InvalidParams, TooLarge
from copkiller.graphs.core import Graph

MAX_CYCLE_GRAPH = 64


def has_universal_vertex(g: Graph) -> int | None:
    """Lowest-index vertex adjacent to every other vertex, or ``None``."""
    for v in range(g.n):
        if g.degree(v) == g.n - 1:
            return v
    return None


def dominated_nonadjacent_pair(g: Graph) -> tuple[int, int] | None:
    """Lexicographically smallest ``(a, b)``, ``a != b`` non-adjacent, with N(a) a subset of N(b).

    Such a pair (or a universal vertex) exists in every graph whose game is
    not a stalemate, so ``None`` here together with no universal vertex
    certifies a stalemate.
    """
    if g.n < 2:
        return None
    a = g.matrix.astype(np.int32)
    common = a @ a
    ok = (common == g.degrees[:, None]) & ~g.matrix
    np.fill_diagonal(ok, False)
    hits = np.argwhere(ok)
    if hits.size == 0:
        return None
    u, v = hits[0]  # argwhere is row-major, hence lexicographic
    return int(u), int(v)


def stalemate_certificate(g: Graph) -> bool:
    """True when the graph has neither a universal vertex nor a dominated non-adjacent pair."""
    return has_universal_vertex(g) is None and dominated_nonadjacent_pair(g) is None


def connected_components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp, queue = [], deque([s])
        while queue:
            v = queue.popleft()
            comp.append(v)
            for u in g.neighbors(v):
                if not seen[u]:
                    seen[u] = True
                    queue.append(u)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n > 0 and len(connected_components(g)) == 1


def is_bipartite(g: Graph) -> bool:
    colour = [-1] * g.n
    for s in range(g.n):
        if colour[s] >= 0:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in g.neighbors(v):
                if colour[u] < 0:
                    colour[u] = 1 - colour[v]
                    queue.append(u)
                elif colour[u] == colour[v]:
                    return False
    return True


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.m == g.n - 1 and is_connected(g)


def is_star(g: Graph) -> bool:
    """K_{1,k} for some k >= 1 (so K2 counts, K1 does not)."""
    return g.n >= 2 and is_tree(g) and has_universal_vertex(g) is not None


def min_degree(g: Graph) -> int:
    return int(g.degrees.min()) if g.n else 0


def max_degree(g: Graph) -> int:
    return int(g.degrees.max()) if g.n else 0


def count_cycles(g: Graph, length: int) -> int:
    """Number of cycles of exactly ``length`` vertices, each counted once.

    Every cycle is enumerated from its lowest vertex ``s`` over vertices
    greater than ``s``; the two traversal directions are folded by requiring
    the second vertex to be smaller than the last.
    """
    if not 3 <= length <= 12:
        raise InvalidParams(f"cycle length must lie in 3..12, got {length}")
    if g.n > MAX_CYCLE_GRAPH:
        raise TooLarge(f"cycle counting is exhaustive; n must be <= {MAX_CYCLE_GRAPH}")
    adj = g.adj
    total = 0

    def extend(path: list[int], on_path: set[int], s: int) -> None:
        nonlocal total
        last = path[-1]
        if len(path) == length:
            if s in adj[last] and path[1] < last:
                total += 1
            return
        for w in adj[last]:
            if w > s and w not in on_path:
                path.append(w)
                on_path.add(w)
                extend(path, on_path, s)
                path.pop()
                on_path.discard(w)

    for s in range(g.n):
        extend([s], {s}, s)
    return total


def triangle_count(g: Graph) -> int:
    return count_cycles(g, 3)
