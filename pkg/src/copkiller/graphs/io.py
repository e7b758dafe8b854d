"""Edge-list text and graph6 (short form) serialization."""

from __future__ import annotations

import warnings

from copkiller.errors import DuplicateEdgeWarning, FormatError, ParseError, SelfLoopError, VertexIndexError
from copkiller.graphs.core import Graph

GRAPH6_MAX_N = 62


def parse_edge_list(text: str) -> Graph:
    """Parse ``"n m"`` followed by ``m`` lines ``"u v"``.

    Blank lines are ignored. Repeated edges are collapsed and reported with a
    :class:`DuplicateEdgeWarning`.
    """
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty edge list")
    header = lines[0]
    try:
        if len(header) != 2:
            raise ValueError
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise ParseError(f"header must be 'n m', got {' '.join(header)!r}") from None
    if n < 0 or m < 0:
        raise ParseError("n and m must be non-negative")
    body = lines[1:]
    if len(body) != m:
        raise ParseError(f"header announces {m} edges, found {len(body)} lines")
    seen: set[tuple[int, int]] = set()
    duplicates = 0
    for lineno, parts in enumerate(body, start=2):
        try:
            if len(parts) != 2:
                raise ValueError
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {lineno}: expected 'u v', got {' '.join(parts)!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise VertexIndexError(f"line {lineno}: vertex out of range 0..{n - 1}")
        if u == v:
            raise SelfLoopError(f"line {lineno}: self-loop at {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            duplicates += 1
        seen.add(key)
    if duplicates:
        warnings.warn(f"collapsed {duplicates} duplicate edge(s)", DuplicateEdgeWarning, stacklevel=2)
    return Graph(n, seen)


def emit_edge_list(g: Graph) -> str:
    rows = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(rows) + "\n"


def _upper_bits(n: int):
    # graph6 bit order: column-major over the upper triangle
    for j in range(1, n):
        for i in range(j):
            yield i, j


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise FormatError("empty graph6 string")
    if any(not 63 <= ord(ch) <= 126 for ch in s):
        raise FormatError("graph6 characters must lie in '?'..'~'")
    if s[0] == "~":
        raise FormatError("long-form graph6 (n > 62) is not supported")
    n = ord(s[0]) - 63
    nbits = n * (n - 1) // 2
    data = s[1:]
    if len(data) != (nbits + 5) // 6:
        raise FormatError(f"expected {(nbits + 5) // 6} data characters for n={n}, got {len(data)}")
    bits = []
    for ch in data:
        x = ord(ch) - 63
        bits.extend((x >> k) & 1 for k in range(5, -1, -1))
    if any(bits[nbits:]):
        raise FormatError("non-zero padding bits")
    edges = [ij for ij, b in zip(_upper_bits(n), bits) if b]
    return Graph(n, edges)


def emit_graph6(g: Graph) -> str:
    if g.n > GRAPH6_MAX_N:
        raise FormatError(f"graph6 short form supports n <= {GRAPH6_MAX_N}, got {g.n}")
    bits = [1 if g.has_edge(i, j) else 0 for i, j in _upper_bits(g.n)]
    bits += [0] * (-len(bits) % 6)
    out = [chr(g.n + 63)]
    for k in range(0, len(bits), 6):
        x = 0
        for b in bits[k:k + 6]:
            x = (x << 1) | b
        out.append(chr(x + 63))
    return "".join(out)
