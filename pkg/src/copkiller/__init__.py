"""Pursuit games on graphs.

* :mod:`copkiller.graphs` - graphs, named families, graph6/edge-list I/O,
  products and structural predicates;
* :mod:`copkiller.pursuit` - exact cop-and-killer solver;
* :mod:`copkiller.framework` - generalized shortest-path value solvers;
* :mod:`copkiller.gambler` - cop versus gambler (capture time, evasion, teams);
* :mod:`copkiller.random_killer` - cop versus a killer with a known hop law;
* :mod:`copkiller.experiments` - reproducible experiment reports.
"""

from copkiller.errors import CopKillerError
from copkiller.gambler import (
    Distribution,
    EdgeDelays,
    capture_time,
    capture_time_delays,
    evasion,
    evasion_time_varying,
    multicop_capture_time,
)
from copkiller.graphs import Graph, generate, parse_edge_list, parse_graph6
from copkiller.pursuit import Label, Outcome, Turn, solve, solve_verdict
from copkiller.random_killer import (
    OptimizerConfig,
    cop_value,
    evaluate_policy,
    game_value_from_start,
    killer_best_distribution,
    sqrt_bound,
)

__version__ = "0.1.0"

__all__ = [
    "CopKillerError",
    "Distribution",
    "EdgeDelays",
    "Graph",
    "Label",
    "OptimizerConfig",
    "Outcome",
    "Turn",
    "capture_time",
    "capture_time_delays",
    "cop_value",
    "evaluate_policy",
    "evasion",
    "evasion_time_varying",
    "game_value_from_start",
    "generate",
    "killer_best_distribution",
    "multicop_capture_time",
    "parse_edge_list",
    "parse_graph6",
    "solve",
    "solve_verdict",
    "sqrt_bound",
]
