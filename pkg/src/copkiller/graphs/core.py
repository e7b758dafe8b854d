"""Finite simple undirected graphs on vertices ``0..n-1``."""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from copkiller.errors import SelfLoopError, VertexIndexError


class Graph:
    """Immutable simple graph with sorted neighbour tuples.

    Build one from an edge iterable (``Graph(n, edges)``) or from a symmetric
    boolean matrix (``Graph.from_adjacency``). Duplicate edges are collapsed.
    """

    __slots__ = ("_n", "_adj", "__dict__")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError(f"vertex count must be non-negative, got {n}")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise VertexIndexError(f"edge ({u}, {v}) outside 0..{n - 1}")
            if u == v:
                raise SelfLoopError(f"self-loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self._n = n
        self._adj = tuple(tuple(sorted(s)) for s in nbrs)

    @classmethod
    def from_adjacency(cls, matrix) -> "Graph":
        a = np.asarray(matrix, dtype=bool)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("adjacency matrix must be square")
        if a.diagonal().any():
            raise SelfLoopError("adjacency matrix has a non-zero diagonal")
        if (a != a.T).any():
            raise ValueError("adjacency matrix must be symmetric")
        us, vs = np.nonzero(np.triu(a, 1))
        return cls(a.shape[0], zip(us.tolist(), vs.tolist()))

    @property
    def n(self) -> int:
        return self._n

    def __len__(self) -> int:
        return self._n

    @property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        return self._adj

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._neighbor_sets[u]

    @cached_property
    def _neighbor_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(a) for a in self._adj)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        for u, nb in enumerate(self._adj):
            for v in nb:
                if v > u:
                    yield (u, v)

    @cached_property
    def m(self) -> int:
        return sum(len(a) for a in self._adj) // 2

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.array([len(a) for a in self._adj], dtype=np.int64)

    @cached_property
    def matrix(self) -> np.ndarray:
        a = np.zeros((self._n, self._n), dtype=bool)
        for u, nb in enumerate(self._adj):
            a[u, list(nb)] = True
        a.flags.writeable = False
        return a

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        if sorted(perm) != list(range(self._n)):
            raise ValueError("perm must be a permutation of 0..n-1")
        return Graph(self._n, ((perm[u], perm[v]) for u, v in self.edges()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self._n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, edges={list(self.edges())})"
