"""Cartesian, tensor and strong graph products.

Product vertex ``(g, h)`` is numbered ``g * |H| + h``.
"""

from __future__ import annotations

import numpy as np

from copkiller.errors import InvalidParams, TooLarge
from copkiller.graphs.core import Graph

MAX_PRODUCT_VERTICES = 10**6


def _factors(g: Graph, h: Graph) -> tuple[np.ndarray, np.ndarray]:
    if g.n < 1 or h.n < 1:
        raise InvalidParams("product factors need at least one vertex")
    if g.n * h.n > MAX_PRODUCT_VERTICES:
        raise TooLarge(f"product would have {g.n * h.n} vertices (limit {MAX_PRODUCT_VERTICES})")
    return g.matrix.astype(np.uint8), h.matrix.astype(np.uint8)


def cartesian_product(g: Graph, h: Graph) -> Graph:
    a, b = _factors(g, h)
    ia, ib = np.eye(g.n, dtype=np.uint8), np.eye(h.n, dtype=np.uint8)
    return Graph.from_adjacency(np.kron(ia, b) | np.kron(a, ib))


def tensor_product(g: Graph, h: Graph) -> Graph:
    a, b = _factors(g, h)
    return Graph.from_adjacency(np.kron(a, b))


def strong_product(g: Graph, h: Graph) -> Graph:
    a, b = _factors(g, h)
    ia, ib = np.eye(g.n, dtype=np.uint8), np.eye(h.n, dtype=np.uint8)
    return Graph.from_adjacency(np.kron(ia, b) | np.kron(a, ib) | np.kron(a, b))


PRODUCTS = {
    "cartesian": cartesian_product,
    "tensor": tensor_product,
    "strong": strong_product,
}
