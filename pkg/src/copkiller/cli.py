"""Command-line front end.

Every command prints one JSON document ``{"schema", "command", "params",
"results"}`` (or CSV rows with ``--format csv``). Exit status is 0 on
success, 2 for bad input and 3 when a solver fails.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from copkiller.errors import CopKillerError, SolverError
from copkiller.experiments import (
    SCHEMA_VERSION,
    ExperimentReport,
    _plain,
    experiment_constructions,
    experiment_enumerate,
    experiment_products,
    experiment_random_killer,
    experiment_random_stalemate,
    experiment_star_bound,
)
from copkiller.framework import STAY
from copkiller.gambler import (
    Distribution,
    capture_time_delays,
    decode_cops,
    evasion,
    load_distribution,
    multicop_capture_time,
    parse_delays,
)
from copkiller.graphs import Graph, emit_edge_list, emit_graph6, generate, parse_edge_list, parse_graph6
from copkiller.pursuit import solve
from copkiller.random_killer import (
    OptimizerConfig,
    best_first_move,
    cop_value,
    evaluate_policy,
    killer_best_distribution,
)

EXIT_OK, EXIT_INPUT, EXIT_SOLVER = 0, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


# input helpers -----------------------------------------------------------------

def read_graph_file(path: str) -> Graph:
    """Edge list (``n m`` header) or a graph6 line, detected from the content."""
    text = Path(path).read_text()
    first = text.strip().splitlines()[0] if text.strip() else ""
    if first.startswith(">>graph6<<") or (len(first.split()) == 1 and not first.isdigit()):
        return parse_graph6(first)
    return parse_edge_list(text)


def load_graph(args) -> Graph:
    given = [x for x in (args.graph, args.g6, args.family) if x is not None]
    if len(given) != 1:
        raise argparse.ArgumentTypeError("give exactly one of --graph, --g6, --family")
    if args.graph is not None:
        return read_graph_file(args.graph)
    if args.g6 is not None:
        return parse_graph6(args.g6)
    return generate(args.family)


def load_dist(args, g: Graph) -> Distribution:
    if args.dist is None:
        return Distribution.uniform(g.n)
    return load_distribution(args.dist)


def _action(a: int, decode=None):
    if a == STAY:
        return "stay"
    return list(decode(a)) if decode else int(a)


def _graph_params(args, g: Graph) -> dict:
    src = {k: getattr(args, k) for k in ("graph", "g6", "family") if getattr(args, k, None) is not None}
    return {**src, "n": g.n, "graph6": emit_graph6(g) if g.n <= 62 else None}


# commands ----------------------------------------------------------------------

def cmd_solve(args):
    g = load_graph(args)
    out = solve(g)
    results = {"verdict": out.verdict.text, "cop_start": out.cop_start, "killer_reply": out.killer_reply,
               "edges": g.m}
    return _graph_params(args, g), results, [results]


def cmd_gambler_time(args):
    g = load_graph(args)
    dist = load_dist(args, g)
    delays = parse_delays(g, Path(args.delays).read_text()) if args.delays else None
    res = capture_time_delays(g, dist, delays)
    rows = [{"vertex": v, "value": float(res.values[v]), "action": _action(res.actions[v])} for v in range(g.n)]
    results = {"values": res.values.tolist(), "actions": [r["action"] for r in rows]}
    if args.start is not None:
        results["start"] = args.start
        results["value"] = float(res.values[args.start])
    params = {**_graph_params(args, g), "dist": dist.p.tolist(), "delays": args.delays}
    return params, results, rows


def cmd_evade(args):
    g = load_graph(args)
    dist = load_dist(args, g)
    delays = parse_delays(g, Path(args.delays).read_text()) if args.delays else None
    table = evasion(g, dist, args.m, delays)
    rows = [{"rounds": j, "vertex": v, "value": float(table[j, v])} for j in range(args.m + 1) for v in range(g.n)]
    results = {"values": table[args.m].tolist(), "table": table.tolist()}
    params = {**_graph_params(args, g), "dist": dist.p.tolist(), "m": args.m, "delays": args.delays}
    return params, results, rows


def cmd_multicop(args):
    g = load_graph(args)
    dist = load_dist(args, g)
    res = multicop_capture_time(g, dist, args.cops)

    def dec(s):
        return decode_cops(s, g.n, args.cops)

    rows = [{"cops": list(dec(s)), "value": float(res.values[s]), "action": _action(res.actions[s], dec)}
            for s in range(len(res))]
    results = {"states": rows}
    if args.start is not None:
        s = sum(args.start * g.n**i for i in range(args.cops))
        results["start"] = [args.start] * args.cops
        results["value"] = float(res.values[s])
    return {**_graph_params(args, g), "dist": dist.p.tolist(), "cops": args.cops}, results, rows


def cmd_random_killer(args):
    g = load_graph(args)
    params = _graph_params(args, g)
    if args.dist is not None:
        p = load_dist(args, g).p
        policy = cop_value(g, p)
        starts = [args.start] if args.start is not None else list(range(g.n))
        best = max(starts, key=lambda s: (max(policy.values[u] for u in (s,) + g.neighbors(s)), -s))
        first = best_first_move(g, policy.values, best)
        triple = evaluate_policy(g, p, policy, first)
        rows = [{"vertex": v, "value": float(policy.values[v]), "action": _action(policy.actions[v])} for v in range(g.n)]
        results = {"values": policy.values.tolist(), "actions": [r["action"] for r in rows], "cop_start": best,
                   "first_move": first, "value": float(policy.values[first]),
                   "win": float(triple.win), "lose": float(triple.lose), "stalemate": float(triple.stalemate)}
        return {**params, "dist": p.tolist()}, results, rows
    cfg = OptimizerConfig(seed=args.seed if args.seed is not None else 0)
    start = args.start if args.start is not None else 0
    dist, value = killer_best_distribution(g, start, cfg)
    results = {"cop_start": start, "dist": dist.p.tolist(), "value": value}
    rows = [{"vertex": v, "p": float(dist.p[v])} for v in range(g.n)]
    return {**params, "start": start, "seed": cfg.seed, "restarts": cfg.restarts}, results, rows


def cmd_generate(args):
    g = load_graph(args)
    results = {"graph6": emit_graph6(g) if g.n <= 62 else None, "n": g.n, "edges": g.m,
               "edge_list": emit_edge_list(g)}
    return _graph_params(args, g), results, [{"u": u, "v": v} for u, v in g.edges()]


def _seed(args, default):
    return default if args.seed is None else args.seed


EXPERIMENT_COMMANDS = {
    "products": lambda a: experiment_products(),
    "enumerate": lambda a: experiment_enumerate(a.n if a.n is not None else 5),
    "random-experiment": lambda a: experiment_random_stalemate(
        a.n if a.n is not None else 200, a.c, a.samples, _seed(a, 7)),
    "constructions": lambda a: experiment_constructions(),
    "star-bound": lambda a: experiment_star_bound(a.samples, 10, _seed(a, 13)),
    "killer-search": lambda a: experiment_random_killer(3, a.n if a.n is not None else 5,
                                                        OptimizerConfig(seed=_seed(a, 0))),
}

COMMANDS = {
    "solve": cmd_solve,
    "gambler-time": cmd_gambler_time,
    "evade": cmd_evade,
    "multicop": cmd_multicop,
    "random-killer": cmd_random_killer,
    "generate": cmd_generate,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="copkiller", description="Cop-and-killer, gambler and random-killer solvers.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in list(COMMANDS) + list(EXPERIMENT_COMMANDS):
        p = sub.add_parser(name)
        p.add_argument("--graph", help="edge list file or graph6 file")
        p.add_argument("--g6", help="graph6 string")
        p.add_argument("--family", help="generator, e.g. cycle:5 or grid:2,3")
        p.add_argument("--dist", help='gambler/killer law: {"p": [...]} or one value per line')
        p.add_argument("--delays", help='edge delays file, lines "u v n"')
        p.add_argument("--m", type=int, default=1, help="rounds for evade")
        p.add_argument("--cops", type=int, default=1)
        p.add_argument("--start", type=int)
        p.add_argument("--n", type=int)
        p.add_argument("--c", type=float, default=0.5)
        p.add_argument("--samples", type=int, default=100)
        p.add_argument("--seed", type=int)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", help="also write the document to this file")
        p.add_argument("--timing", action="store_true", help="include wall-clock time in experiment reports")
    return parser


def _rows_to_csv(rows) -> str:
    rows = _plain(rows)
    keys = list(dict.fromkeys(k for r in rows for k in r))
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in r.items()})
    return buf.getvalue()


def render(args) -> str:
    if args.command in EXPERIMENT_COMMANDS:
        report: ExperimentReport = EXPERIMENT_COMMANDS[args.command](args)
        return report.to_csv() if args.format == "csv" else report.to_json(include_timing=args.timing)
    params, results, rows = COMMANDS[args.command](args)
    if args.format == "csv":
        return _rows_to_csv(rows)
    doc = {"schema": SCHEMA_VERSION, "command": args.command, "params": params, "results": results}
    return json.dumps(_plain(doc), indent=2, sort_keys=True) + "\n"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = render(args)
    except SolverError as exc:
        print(f"copkiller: solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except (CopKillerError, ValueError, KeyError, OSError, argparse.ArgumentTypeError, json.JSONDecodeError) as exc:
        print(f"copkiller: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(text)
    if args.out:
        Path(args.out).write_text(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
