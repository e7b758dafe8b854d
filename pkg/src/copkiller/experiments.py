"""Experiment runners producing reproducible, serializable reports."""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from copkiller.errors import InvalidParams
from copkiller.graphs import (
    Graph,
    circulant_cluster,
    complete,
    count_cycles,
    cycle,
    disjoint_cycles,
    dominated_nonadjacent_pair,
    emit_graph6,
    generate,
    gnp,
    has_universal_vertex,
    is_bipartite,
    is_connected,
    is_tree,
    max_degree,
    min_degree,
    odd_girth_killer_win,
    path,
    pentagon_plus,
    petal,
    star,
    triangle_chain,
)
from copkiller.graphs.products import PRODUCTS
from copkiller.pursuit import Label, fixpoint_tables, solve, verdicts_from_labels
from copkiller.random_killer import (
    OptimizerConfig,
    best_first_move,
    cop_value,
    evaluate_policy,
    game_value_from_start,
    killer_best_distribution,
    sqrt_bound,
    star_distribution,
)

SCHEMA_VERSION = 1


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, Label):
        return obj.text
    return obj


@dataclass
class ExperimentReport:
    experiment: str
    params: dict
    seed: int | None = None
    cases: list[dict] = field(default_factory=list)
    aggregates: dict = field(default_factory=dict)
    checks: dict[str, bool] = field(default_factory=dict)
    duration: float = 0.0

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_dict(self, include_timing: bool = False) -> dict:
        results = {
            "seed": self.seed,
            "cases": self.cases,
            "aggregates": self.aggregates,
            "checks": self.checks,
            "passed": self.passed,
        }
        doc = {"schema": SCHEMA_VERSION, "command": self.experiment, "params": self.params, "results": results}
        if include_timing:
            doc["timing"] = {"seconds": round(self.duration, 3)}
        return _plain(doc)

    def to_json(self, include_timing: bool = False) -> str:
        # wall-clock time is excluded by default so reruns are byte-identical
        return json.dumps(self.to_dict(include_timing), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        cases = _plain(self.cases)
        keys = sorted({k for c in cases for k in c})
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        writer.writeheader()
        for c in cases:
            writer.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in c.items()})
        return buf.getvalue()


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        report = fn(*args, **kwargs)
        report.duration = time.perf_counter() - t0
        return report

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    wrapper.__wrapped__ = fn
    return wrapper


def _case_seed(seed: int, index: int) -> int:
    return int(np.random.SeedSequence([seed, index]).generate_state(1, np.uint64)[0])


def _g6(g: Graph) -> str | None:
    return emit_graph6(g) if g.n <= 62 else None


# random graphs ---------------------------------------------------------------

@_timed
def experiment_random_stalemate(n: int, c: float, samples: int, seed: int) -> ExperimentReport:
    """Stalemate rate of G(n, p) with p uniform in [n^-c, 1 - n^-c].

    Every sample is solved exactly; samples with an isolated vertex are
    excluded and counted. Each case also records whether the structural
    stalemate certificate holds; a certified graph that is not a stalemate
    is a violation.
    """
    if n < 2 or not 0 < c < 1 or samples < 1:
        raise InvalidParams("need n >= 2, 0 < c < 1 and samples >= 1")
    lo, hi = n ** (-c), 1.0 - n ** (-c)
    cases = []
    for i in range(samples):
        case_seed = _case_seed(seed, i)
        rng = np.random.default_rng(case_seed)
        p = float(lo + (hi - lo) * rng.random())
        graph_seed = int(rng.integers(0, 2**63))
        g = gnp(n, p, graph_seed)
        case = {"index": i, "family": f"gnp:{n},{p!r},{graph_seed}", "p": p, "graph6": _g6(g), "edges": g.m}
        if min_degree(g) == 0:
            case.update(excluded=True, verdict=None, certificate=None, violation=False)
        else:
            verdict = solve(g).verdict
            cert = has_universal_vertex(g) is None and dominated_nonadjacent_pair(g) is None
            case.update(
                excluded=False,
                verdict=verdict.text,
                certificate=cert,
                violation=bool(cert and verdict != Label.STALEMATE),
            )
        cases.append(case)
    solved = [cs for cs in cases if not cs["excluded"]]
    stale = sum(cs["verdict"] == "Stalemate" for cs in solved)
    aggregates = {
        "p_range": [lo, hi],
        "samples": samples,
        "excluded_min_degree_0": samples - len(solved),
        "stalemate": stale,
        "cop_win": sum(cs["verdict"] == "CopWin" for cs in solved),
        "killer_win": sum(cs["verdict"] == "KillerWin" for cs in solved),
        "stalemate_fraction": stale / len(solved) if solved else None,
        "certificate_holds": sum(bool(cs["certificate"]) for cs in solved),
        "certificate_violations": sum(cs["violation"] for cs in cases),
        # union bounds on the probability of failing the certificate, at p = lo and p = hi
        "union_bound_universal": [n * q ** (n - 1) for q in (lo, hi)],
        "union_bound_dominated": [n * n * (1 + q * (q - 1)) ** (n - 2) for q in (lo, hi)],
    }
    checks = {"no_certificate_violations": aggregates["certificate_violations"] == 0}
    return ExperimentReport(
        "random-experiment", {"n": n, "c": c, "samples": samples}, seed, cases, aggregates, checks
    )


# exhaustive enumeration ------------------------------------------------------

def all_adjacency(n: int) -> np.ndarray:
    """All labeled graphs on ``n`` vertices as a ``(2^(n(n-1)/2), n, n)`` boolean array."""
    iu, ju = np.triu_indices(n, 1)
    e = len(iu)
    masks = np.arange(1 << e, dtype=np.int64)
    bits = ((masks[:, None] >> np.arange(e)) & 1).astype(bool)
    a = np.zeros((1 << e, n, n), dtype=bool)
    a[:, iu, ju] = bits
    a[:, ju, iu] = bits
    return a


def _batch_properties(a: np.ndarray) -> dict[str, np.ndarray]:
    b, n, _ = a.shape
    ai = a.astype(np.int64)
    deg = ai.sum(axis=2)
    a2 = ai @ ai
    triangles = np.einsum("bij,bji->b", a2, ai) // 6
    reach = a | np.eye(n, dtype=bool)
    for _ in range(max(1, n.bit_length())):
        reach = (reach.astype(np.int64) @ reach.astype(np.int64)) > 0
    connected = reach.all(axis=(1, 2))
    odd = n if n % 2 else n - 1
    walk = ai.copy()
    for _ in range(odd - 1):
        walk = np.minimum(walk @ ai, 1)  # closed-walk existence only
    bipartite = np.einsum("bii->b", walk) == 0 if odd >= 3 else np.ones(b, dtype=bool)
    universal = (deg == n - 1).any(axis=1)
    off = ~np.eye(n, dtype=bool)
    dominated = ((a2 == deg[:, :, None]) & ~a & off).any(axis=(1, 2))
    edges = deg.sum(axis=1) // 2
    star_like = connected & (edges == n - 1) & universal
    return {
        "min_degree": deg.min(axis=1),
        "triangles": triangles,
        "connected": connected,
        "bipartite": bipartite,
        "universal": universal,
        "dominated": dominated,
        "star": star_like,
    }


ENUMERATE_CHECKS = ("triangles", "certificate", "bipartite")


@_timed
def experiment_enumerate(n_max: int, checks=ENUMERATE_CHECKS, chunk: int = 1 << 16, record_cases: bool = False) -> ExperimentReport:
    """Solve every labeled graph with minimum degree >= 1 on 2..n_max vertices.

    Checks: ``triangles`` (no killer-win graph has exactly one or two
    triangles), ``certificate`` (every non-stalemate graph has a universal
    vertex or a dominated non-adjacent pair), ``bipartite`` (a connected
    bipartite graph is cop-win iff it is a star).
    """
    if not 2 <= n_max <= 7:
        raise InvalidParams(f"n_max must lie in 2..7, got {n_max}")
    unknown = set(checks) - set(ENUMERATE_CHECKS)
    if unknown:
        raise InvalidParams(f"unknown checks {sorted(unknown)}")
    per_n = {}
    counterexamples = {name: [] for name in checks}
    cases = []
    killer_win_triangle_free = []
    for n in range(2, n_max + 1):
        everything = all_adjacency(n)
        stats = {"labeled_graphs": len(everything), "excluded_min_degree_0": 0,
                 "cop_win": 0, "killer_win": 0, "stalemate": 0,
                 "killer_win_triangle_histogram": {}}
        for lo in range(0, len(everything), chunk):
            a = everything[lo:lo + chunk]
            props = _batch_properties(a)
            keep = props["min_degree"] >= 1
            stats["excluded_min_degree_0"] += int((~keep).sum())
            a = a[keep]
            props = {k: v[keep] for k, v in props.items()}
            if len(a) == 0:
                continue
            labels, _ = fixpoint_tables(a)
            verdict, _, _ = verdicts_from_labels(labels[:, 0])
            stats["cop_win"] += int((verdict == Label.COP_WIN).sum())
            stats["killer_win"] += int((verdict == Label.KILLER_WIN).sum())
            stats["stalemate"] += int((verdict == Label.STALEMATE).sum())
            kw = verdict == Label.KILLER_WIN
            hist = stats["killer_win_triangle_histogram"]
            for t, cnt in zip(*np.unique(props["triangles"][kw], return_counts=True)):
                hist[int(t)] = hist.get(int(t), 0) + int(cnt)
            bad = {
                "triangles": kw & np.isin(props["triangles"], (1, 2)),
                "certificate": (verdict != Label.STALEMATE) & ~props["universal"] & ~props["dominated"],
                "bipartite": props["connected"] & props["bipartite"] & ((verdict == Label.COP_WIN) != props["star"]),
            }
            for name in checks:
                for idx in np.nonzero(bad[name])[0][:20]:
                    counterexamples[name].append({"n": n, "graph6": emit_graph6(Graph.from_adjacency(a[idx])),
                                                  "verdict": Label(int(verdict[idx])).text})
            tf = np.nonzero(kw & (props["triangles"] == 0))[0]
            if len(tf) and len(killer_win_triangle_free) < 5:
                killer_win_triangle_free.append(emit_graph6(Graph.from_adjacency(a[tf[0]])))
            if record_cases:
                for idx in range(len(a)):
                    cases.append({"n": n, "graph6": emit_graph6(Graph.from_adjacency(a[idx])),
                                  "verdict": Label(int(verdict[idx])).text,
                                  "triangles": int(props["triangles"][idx])})
        stats["solved"] = stats["labeled_graphs"] - stats["excluded_min_degree_0"]
        stats["killer_win_triangle_histogram"] = dict(sorted(stats["killer_win_triangle_histogram"].items()))
        per_n[n] = stats
    aggregates = {
        "per_n": per_n,
        "violations": {name: len(v) for name, v in counterexamples.items()},
        "counterexamples": counterexamples,
        "killer_win_triangle_free_examples": killer_win_triangle_free,
    }
    report_checks = {f"no_{name}_violations": not counterexamples[name] for name in checks}
    return ExperimentReport("enumerate", {"n_max": n_max, "checks": list(checks)}, None, cases, aggregates, report_checks)


# graph products ----------------------------------------------------------------

BASE_GRAPHS = {
    "P2": lambda: path(2),
    "P3": lambda: path(3),
    "P4": lambda: path(4),
    "C3": lambda: cycle(3),
    "C4": lambda: cycle(4),
    "C5": lambda: cycle(5),
    "K4": lambda: complete(4),
    "Star3": lambda: star(3),
}


def predict_product(kind: str, g: Graph, h: Graph, g_verdict: Label, h_verdict: Label) -> Label | None:
    """Verdict predicted for a product of two connected graphs on at least two vertices each."""
    if kind == "cartesian":
        return Label.STALEMATE if not (is_tree(g) and is_tree(h)) else None
    if kind == "tensor":
        return Label.KILLER_WIN if Label.KILLER_WIN in (g_verdict, h_verdict) else Label.STALEMATE
    if kind == "strong":
        both = has_universal_vertex(g) is not None and has_universal_vertex(h) is not None
        return Label.COP_WIN if both else Label.STALEMATE
    raise InvalidParams(f"unknown product {kind!r}")


@_timed
def experiment_products(bases: list[str] | None = None) -> ExperimentReport:
    names = list(bases) if bases else list(BASE_GRAPHS)
    unknown = [b for b in names if b not in BASE_GRAPHS]
    if unknown:
        raise InvalidParams(f"unknown base graphs {unknown}; choose from {list(BASE_GRAPHS)}")
    graphs = {b: BASE_GRAPHS[b]() for b in names}
    verdicts = {b: solve(g).verdict for b, g in graphs.items()}
    cases = []
    for (a, b), kind in product(product(names, names), PRODUCTS):
        g, h = graphs[a], graphs[b]
        prod = PRODUCTS[kind](g, h)
        case = {"left": a, "right": b, "product": kind, "n": prod.n, "graph6": _g6(prod)}
        if min_degree(prod) == 0:
            case.update(skipped=True, verdict=None, predicted=None, agrees=None)
        else:
            got = solve(prod).verdict
            want = predict_product(kind, g, h, verdicts[a], verdicts[b])
            case.update(skipped=False, verdict=got.text, predicted=want.text if want is not None else None,
                        agrees=None if want is None else got == want)
        cases.append(case)
    judged = [c for c in cases if c["agrees"] is not None]
    agree = sum(c["agrees"] for c in judged)
    aggregates = {
        "base_verdicts": {b: v.text for b, v in verdicts.items()},
        "products": len(cases),
        "skipped_min_degree_0": sum(c["skipped"] for c in cases),
        "unpredicted": sum(1 for c in cases if not c["skipped"] and c["predicted"] is None),
        "predicted": len(judged),
        "agreements": agree,
        "agreement_fraction": agree / len(judged) if judged else None,
    }
    checks = {"all_predictions_agree": agree == len(judged)}
    return ExperimentReport("products", {"bases": names}, None, cases, aggregates, checks)


# constructions -----------------------------------------------------------------

def _row(name: str, build, expect: Label, extra=None) -> dict:
    case = {"row": name, "expected": expect.text}
    try:
        g = build()
    except Exception as exc:  # a construction that cannot be built is a failed row
        case.update(ok=False, verdict=None, error=f"{type(exc).__name__}: {exc}")
        return case
    got = solve(g).verdict
    details = extra(g) if extra else {}
    ok = got == expect and all(v for k, v in details.items() if k.startswith("ok_"))
    case.update(n=g.n, edges=g.m, graph6=_g6(g), verdict=got.text, ok=bool(ok), **details)
    return case


@_timed
def experiment_constructions() -> ExperimentReport:
    cases = []
    for m, n in product((1, 2, 3), (4, 5, 6)):
        if (m, n) == (1, 5):
            continue

        def cyc(g, n=n, m=m):
            found = count_cycles(g, n)
            return {"cycle_length": n, "cycles": found, "ok_cycle_count": found == m}

        cases.append(_row(f"petal:{m},{n}", lambda m=m, n=n: petal(m, n), Label.COP_WIN, cyc))
        if n == 4:
            cases.append(_row(f"disjoint-cycles:{m},4", lambda m=m: disjoint_cycles(m, 4), Label.KILLER_WIN, cyc))
        else:
            k = m + n - 3
            cases.append(_row(f"triangle-chain:{k} ({m} C{n})", lambda k=k: triangle_chain(k), Label.KILLER_WIN, cyc))
    for m in (1, 2):
        def odd(g, m=m):
            short = {2 * k + 1: count_cycles(g, 2 * k + 1) for k in range(1, m + 1)}
            girth = count_cycles(g, 2 * m + 3)
            return {
                "short_odd_cycles": short,
                "odd_girth_cycles": girth,
                "ok_no_short_odd_cycle": not any(short.values()),
                "ok_has_odd_girth_cycle": girth > 0,
                "ok_non_bipartite": not is_bipartite(g),
            }

        cases.append(_row(f"odd-girth:{m}", lambda m=m: odd_girth_killer_win(m), Label.KILLER_WIN, odd))
        cases.append(_row(f"circulant-cluster:{4 * m + 6},{m}", lambda m=m: circulant_cluster(4 * m + 6, m), Label.KILLER_WIN))

    def tri(k):
        return lambda g: {"triangles": count_cycles(g, 3), "ok_triangles": count_cycles(g, 3) == k}

    for k in (3, 4, 5, 6):
        cases.append(_row(f"triangle-chain:{k}", lambda k=k: triangle_chain(k), Label.KILLER_WIN, tri(k)))
    cases.append(_row("pentagon-plus", pentagon_plus, Label.KILLER_WIN, tri(3)))
    # retracts: C4 -> P3 and C6 -> P4 change the verdict
    cases.append(_row("retract C4", lambda: cycle(4), Label.KILLER_WIN))
    cases.append(_row("retract P3 of C4", lambda: path(3), Label.COP_WIN))
    cases.append(_row("retract C6", lambda: cycle(6), Label.STALEMATE))
    cases.append(_row("retract P4 of C6", lambda: path(4), Label.KILLER_WIN))
    failed = [c["row"] for c in cases if not c["ok"]]
    aggregates = {"rows": len(cases), "passed": len(cases) - len(failed), "failed_rows": failed}
    checks = {c["row"]: c["ok"] for c in cases}
    return ExperimentReport("constructions", {}, None, cases, aggregates, checks)


# random killer -----------------------------------------------------------------

def connected_graphs(n_min: int, n_max: int) -> list[Graph]:
    """One representative of every connected graph (up to isomorphism) on n_min..n_max vertices."""
    if not 1 <= n_min <= n_max <= 7:
        raise InvalidParams("the graph atlas covers 1..7 vertices")
    import networkx as nx

    out = []
    for h in nx.graph_atlas_g():
        k = h.number_of_nodes()
        if n_min <= k <= n_max and (k == 1 or nx.is_connected(h)):
            out.append(Graph(k, h.edges()))
    return out


@_timed
def experiment_random_killer(n_min: int = 3, n_max: int = 5, config: OptimizerConfig | None = None) -> ExperimentReport:
    """Killer's searched best law against every cop start, on all connected graphs.

    Records, per graph, the cop's best start against the killer's searched
    laws and the win/lose/stalemate triple of the cop's optimal play there
    (cop favoured: win > lose). Per start it records whether the law puts
    positive mass on the cop's start, or else whether zeroing that mass
    leaves the cop no worse off.
    """
    cfg = config or OptimizerConfig()
    cases = []
    for gi, g in enumerate(connected_graphs(n_min, n_max)):
        per_start = []
        for s in range(g.n):
            dist, value = killer_best_distribution(g, s, cfg)
            p = dist.p
            positive = bool(p[s] > 1e-6)
            zeroed_value = None
            if not positive and p.sum() - p[s] > 0:
                q = p.copy()
                q[s] = 0.0
                q /= q.sum()
                zeroed_value = game_value_from_start(g, q, s)
            keeps = positive or zeroed_value is None or zeroed_value >= value - 1e-9
            per_start.append({"start": s, "p": p.tolist(), "value": value, "start_mass": float(p[s]),
                              "zeroed_value": zeroed_value, "start_mass_ok": bool(keeps)})
        best = max(range(g.n), key=lambda s: (per_start[s]["value"], -s))
        p = np.array(per_start[best]["p"])
        policy = cop_value(g, p)
        first = best_first_move(g, policy.values, best)
        win, lose, stale = evaluate_policy(g, p, policy, first)
        cases.append({
            "index": gi, "n": g.n, "graph6": emit_graph6(g), "max_degree": max_degree(g),
            "cop_start": best, "first_move": first, "value": per_start[best]["value"],
            "win": float(win), "lose": float(lose), "stalemate": float(stale),
            "cop_favoured": bool(win > lose), "starts": per_start,
        })
    aggregates = {
        "graphs": len(cases),
        "cop_favoured_violations": sum(not c["cop_favoured"] for c in cases),
        "start_mass_violations": sum(not s["start_mass_ok"] for c in cases for s in c["starts"]),
        "zero_mass_starts": sum(not s["start_mass"] > 1e-6 for c in cases for s in c["starts"]),
        "min_value_minus_bound": min(c["value"] - sqrt_bound(c["max_degree"]) for c in cases) if cases else None,
    }
    checks = {
        "cop_favoured": aggregates["cop_favoured_violations"] == 0,
        "start_mass_positive_or_harmless": aggregates["start_mass_violations"] == 0,
    }
    params = {"n_min": n_min, "n_max": n_max, "restarts": cfg.restarts, "iterations": cfg.iterations}
    return ExperimentReport("random-killer", params, cfg.seed, cases, aggregates, checks)


def random_connected_graph(rng: np.random.Generator, n_lo: int, n_hi: int) -> tuple[Graph, str]:
    while True:
        n = int(rng.integers(n_lo, n_hi + 1))
        p = float(rng.uniform(0.15, 0.9))
        seed = int(rng.integers(0, 2**63))
        g = gnp(n, p, seed)
        if is_connected(g):
            return g, f"gnp:{n},{p!r},{seed}"


def random_distribution(rng: np.random.Generator, n: int) -> np.ndarray:
    """Dirichlet law; half the time some vertices get exactly zero mass."""
    p = rng.dirichlet(np.full(n, float(rng.choice([0.3, 1.0, 3.0]))))
    if rng.random() < 0.5 and n > 1:
        zero = rng.random(n) < 0.3
        if not zero.all():
            p[zero] = 0.0
    return p / p.sum()


@_timed
def experiment_star_bound(graphs: int = 100, dists: int = 10, seed: int = 13, n_max: int = 12) -> ExperimentReport:
    """Cop value from a maximum-degree vertex against the degree bound, plus the tight stars."""
    rng = np.random.default_rng(seed)
    cases = []
    for i in range(graphs):
        g, family = random_connected_graph(rng, 2, n_max)
        d = max_degree(g)
        v = int(np.argmax(g.degrees))
        bound = sqrt_bound(d)
        for j in range(dists):
            p = random_distribution(rng, g.n)
            value = game_value_from_start(g, p, v)
            cases.append({"graph": i, "family": family, "graph6": emit_graph6(g), "start": v, "max_degree": d,
                          "dist": p.tolist(), "value": value, "bound": bound, "ok": value >= bound - 1e-9})
    stars = []
    for d in (2, 3, 4, 9):
        value = game_value_from_start(star(d), star_distribution(d), 0)
        stars.append({"d": d, "value": value, "bound": sqrt_bound(d), "ok": abs(value - sqrt_bound(d)) <= 1e-9})
    aggregates = {"instances": len(cases), "violations": sum(not c["ok"] for c in cases),
                  "min_slack": min(c["value"] - c["bound"] for c in cases) if cases else None,
                  "stars": stars}
    checks = {"bound_holds": aggregates["violations"] == 0, "stars_tight": all(s["ok"] for s in stars)}
    return ExperimentReport("star-bound", {"graphs": graphs, "dists": dists, "n_max": n_max}, seed,
                            cases, aggregates, checks)


EXPERIMENTS = {
    "random-experiment": experiment_random_stalemate,
    "enumerate": experiment_enumerate,
    "products": experiment_products,
    "constructions": experiment_constructions,
    "random-killer": experiment_random_killer,
    "star-bound": experiment_star_bound,
}
