"""Named graph families and a parser for ``name:arg,arg`` family strings.

Random graphs use numpy's PCG64 bit generator seeded with the given integer.
The stream layout is fixed: one ``random()`` draw per vertex pair ``(u, v)``,
``u < v``, in lexicographic order, and the edge is present iff the draw is
below ``p``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from copkiller.errors import InvalidParams
from copkiller.graphs.core import Graph


@dataclass(frozen=True)
class FamilySpec:
    """A family tag plus its integer (or, for ``gnp``, mixed) parameters."""

    family: str
    params: tuple = ()

    def __str__(self) -> str:
        if not self.params:
            return self.family
        return f"{self.family}:" + ",".join(str(p) for p in self.params)


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise InvalidParams(msg)


def path(n: int) -> Graph:
    _need(n >= 1, f"path needs n >= 1, got {n}")
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    _need(n >= 3, f"cycle needs n >= 3, got {n}")
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def star(leaves: int) -> Graph:
    """K_{1,leaves}; the centre is vertex 0."""
    _need(leaves >= 1, f"star needs at least one leaf, got {leaves}")
    return Graph(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def complete(n: int) -> Graph:
    _need(n >= 1, f"complete graph needs n >= 1, got {n}")
    return Graph(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def _lattice(rows: int, cols: int, steps) -> Graph:
    _need(rows >= 1 and cols >= 1, f"grid dimensions must be positive, got {rows}x{cols}")
    edges = []
    for r, c in product(range(rows), range(cols)):
        for dr, dc in steps:
            rr, cc = r + dr, c + dc
            if 0 <= rr < rows and 0 <= cc < cols:
                edges.append((r * cols + c, rr * cols + cc))
    return Graph(rows * cols, edges)


def grid(rows: int, cols: int) -> Graph:
    """rows x cols grid; vertex (r, c) is ``r * cols + c``."""
    return _lattice(rows, cols, [(0, 1), (1, 0)])


def king(rows: int, cols: int) -> Graph:
    """King's graph: grid plus both diagonals."""
    return _lattice(rows, cols, [(0, 1), (1, 0), (1, 1), (1, -1)])


def pentagon_plus() -> Graph:
    """5-cycle 0..4 plus vertex 5 joined to cycle vertices 1, 2, 3, 4."""
    return Graph(6, [(i, (i + 1) % 5) for i in range(5)] + [(5, i) for i in range(1, 5)])


def triangle_chain(k: int) -> Graph:
    """k triangles in a strip: path v0..v(k+1) plus chords (v_i, v_(i+2)).

    Consecutive triangles share a side and no vertex lies in all of them only
    when k >= 4; for k = 3 the middle vertex would be universal, so smaller k
    is rejected.
    """
    _need(k >= 4, f"triangle chain needs k >= 4 (k <= 3 forces a vertex common to all), got {k}")
    n = k + 2
    return Graph(n, [(i, i + 1) for i in range(n - 1)] + [(i, i + 2) for i in range(n - 2)])


def circulant_cluster(n: int, m: int) -> Graph:
    """u ~ v iff u - v = +-1 (mod 2m+3); needs n >= 4m+6 so every cluster has two vertices."""
    _need(m >= 1, f"circulant cluster needs m >= 1, got {m}")
    _need(n >= 4 * m + 6, f"circulant cluster needs n >= 4m+6 = {4 * m + 6}, got {n}")
    q = 2 * m + 3
    return Graph(n, ((u, v) for u in range(n) for v in range(u + 1, n) if (v - u) % q in (1, q - 1)))


def odd_girth_killer_win(m: int) -> Graph:
    """Two interleaved (2m+3)-cycles A and B; A_i is vertex i, B_i is vertex q+i.

    Every cluster {A_i, B_i} is fully joined to the next cluster, so the
    shortest odd cycle has length 2m+3.
    """
    _need(m >= 1, f"odd-girth construction needs m >= 1, got {m}")
    q = 2 * m + 3
    edges = []
    for i in range(q):
        j = (i + 1) % q
        edges += [(i, j), (i, q + j), (q + i, q + j), (q + i, j)]
    return Graph(2 * q, edges)


def petal(m: int, n: int) -> Graph:
    """m copies of C_n sharing vertex 0, which is joined to every vertex of each copy."""
    _need(m >= 1 and n >= 3, f"petal needs m >= 1 and n >= 3, got ({m}, {n})")
    edges = []
    nxt = 1
    for _ in range(m):
        ring = [0] + list(range(nxt, nxt + n - 1))
        nxt += n - 1
        edges += [(ring[i], ring[(i + 1) % n]) for i in range(n)]
        edges += [(0, v) for v in ring[1:]]
    return Graph(nxt, edges)


def disjoint_cycles(m: int, n: int) -> Graph:
    _need(m >= 1 and n >= 3, f"disjoint cycles needs m >= 1 and n >= 3, got ({m}, {n})")
    return Graph(m * n, ((b + i, b + (i + 1) % n) for b in range(0, m * n, n) for i in range(n)))


def gnp(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, p) with the documented PCG64 stream layout."""
    _need(n >= 1, f"G(n,p) needs n >= 1, got {n}")
    _need(0.0 <= p <= 1.0, f"edge probability must lie in [0, 1], got {p}")
    _need(0 <= seed < 2**64, f"seed must be a 64-bit unsigned integer, got {seed}")
    rng = np.random.Generator(np.random.PCG64(seed))
    draws = rng.random(n * (n - 1) // 2)
    us, vs = np.triu_indices(n, 1)
    keep = draws < p
    return Graph(n, zip(us[keep].tolist(), vs[keep].tolist()))


_BUILDERS = {
    "path": (path, (int,)),
    "cycle": (cycle, (int,)),
    "star": (star, (int,)),
    "complete": (complete, (int,)),
    "grid": (grid, (int, int)),
    "king": (king, (int, int)),
    "pentagon-plus": (pentagon_plus, ()),
    "triangle-chain": (triangle_chain, (int,)),
    "odd-girth": (odd_girth_killer_win, (int,)),
    "circulant-cluster": (circulant_cluster, (int, int)),
    "petal": (petal, (int, int)),
    "disjoint-cycles": (disjoint_cycles, (int, int)),
    "gnp": (gnp, (int, float, int)),
}

FAMILIES = tuple(_BUILDERS)


def parse_family(text: str) -> FamilySpec:
    """Parse ``"cycle:4"``, ``"grid:2,3"``, ``"gnp:10,0.4,7"`` or ``"pentagon-plus"``."""
    name, _, args = text.strip().partition(":")
    name = name.strip().lower()
    if name not in _BUILDERS:
        raise InvalidParams(f"unknown family {name!r}; expected one of {', '.join(FAMILIES)}")
    kinds = _BUILDERS[name][1]
    raw = [a.strip() for a in args.split(",")] if args.strip() else []
    if len(raw) != len(kinds):
        raise InvalidParams(f"family {name!r} takes {len(kinds)} parameter(s), got {len(raw)}")
    try:
        values = tuple(kind(a) for kind, a in zip(kinds, raw))
    except ValueError as exc:
        raise InvalidParams(f"bad parameter for {name!r}: {exc}") from None
    return FamilySpec(name, values)


def generate(spec: FamilySpec | str) -> Graph:
    if isinstance(spec, str):
        spec = parse_family(spec)
    try:
        builder, kinds = _BUILDERS[spec.family]
    except KeyError:
        raise InvalidParams(f"unknown family {spec.family!r}") from None
    if len(spec.params) != len(kinds):
        raise InvalidParams(f"family {spec.family!r} takes {len(kinds)} parameter(s)")
    return builder(*spec.params)
