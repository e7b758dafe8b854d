"""Graphs, named families, serialization, products and structural predicates."""

from copkiller.graphs.core import Graph
from copkiller.graphs.families import (
    FAMILIES,
    FamilySpec,
    circulant_cluster,
    complete,
    cycle,
    disjoint_cycles,
    generate,
    gnp,
    grid,
    king,
    odd_girth_killer_win,
    parse_family,
    path,
    pentagon_plus,
    petal,
    star,
    triangle_chain,
)
from copkiller.graphs.io import emit_edge_list, emit_graph6, parse_edge_list, parse_graph6
from copkiller.graphs.predicates import (
    connected_components,
    count_cycles,
    dominated_nonadjacent_pair,
    has_universal_vertex,
    is_bipartite,
    is_connected,
    is_star,
    is_tree,
    max_degree,
    min_degree,
    stalemate_certificate,
    triangle_count,
)
from copkiller.graphs.products import PRODUCTS, cartesian_product, strong_product, tensor_product
