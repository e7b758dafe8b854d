import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from copkiller.graphs import Graph, gnp, is_connected

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def connected_atlas(n_min, n_max):
    """Every connected graph up to isomorphism, from networkx's atlas."""
    for h in nx.graph_atlas_g():
        k = h.number_of_nodes()
        if n_min <= k <= n_max and k > 0 and nx.is_connected(h):
            yield Graph(k, h.edges())


def random_connected(rng, n_lo, n_hi, p_lo=0.2, p_hi=0.8):
    while True:
        n = int(rng.integers(n_lo, n_hi + 1))
        g = gnp(n, float(rng.uniform(p_lo, p_hi)), int(rng.integers(0, 2**32)))
        if is_connected(g):
            return g


def labeled_graphs(n):
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, [e for i, e in enumerate(pairs) if mask >> i & 1])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
