import csv
import io
import json

import numpy as np
import pytest

from copkiller.errors import InvalidParams
from copkiller.experiments import (
    all_adjacency,
    experiment_constructions,
    experiment_enumerate,
    experiment_products,
    experiment_random_stalemate,
    experiment_star_bound,
    predict_product,
)
from copkiller.graphs import (
    cycle,
    dominated_nonadjacent_pair,
    generate,
    has_universal_vertex,
    parse_graph6,
    path,
)
from copkiller.pursuit import Label, solve
from copkiller.random_killer import game_value_from_start, sqrt_bound


def test_all_adjacency_is_every_labeled_graph():
    a = all_adjacency(4)
    assert a.shape == (64, 4, 4)
    assert len({x.tobytes() for x in a}) == 64
    assert (a == a.transpose(0, 2, 1)).all() and not a[:, range(4), range(4)].any()


def test_enumerate_small():
    r = experiment_enumerate(5)
    assert r.passed
    per_n = r.aggregates["per_n"]
    assert per_n[4]["killer_win"] > 0 and per_n[4]["killer_win_triangle_histogram"] == {0: 15}
    # C4 is among the four-vertex killer-win graphs with no triangle
    four = experiment_enumerate(4, record_cases=True)
    c4s = [c for c in four.cases if c["n"] == 4 and c["triangles"] == 0 and c["verdict"] == "KillerWin"
           and set(parse_graph6(c["graph6"]).degrees) == {2}]
    assert len(c4s) == 3  # the three labeled four-cycles
    assert per_n[3] == {"labeled_graphs": 8, "excluded_min_degree_0": 4, "cop_win": 4, "killer_win": 0,
                        "stalemate": 0, "killer_win_triangle_histogram": {}, "solved": 4}
    with pytest.raises(InvalidParams):
        experiment_enumerate(8)
    with pytest.raises(InvalidParams):
        experiment_enumerate(4, checks=("bogus",))


def test_enumerate_counts_match_individual_solves():
    r = experiment_enumerate(4, record_cases=True)
    assert len(r.cases) == sum(s["solved"] for s in r.aggregates["per_n"].values())
    for case in r.cases:
        g = parse_graph6(case["graph6"])
        assert solve(g).verdict.text == case["verdict"]


def test_random_stalemate_reproducible_and_reverifiable():
    a = experiment_random_stalemate(12, 0.5, 15, seed=3)
    b = experiment_random_stalemate(12, 0.5, 15, seed=3)
    assert a.to_json() == b.to_json()
    assert a.to_json() != experiment_random_stalemate(12, 0.5, 15, seed=4).to_json()
    for case in a.cases:
        g = generate(case["family"])
        assert parse_graph6(case["graph6"]) == g
        if not case["excluded"]:
            assert solve(g).verdict.text == case["verdict"]
            cert = has_universal_vertex(g) is None and dominated_nonadjacent_pair(g) is None
            assert cert == case["certificate"]
    lo, hi = a.aggregates["p_range"]
    assert all(lo <= c["p"] <= hi for c in a.cases)
    for bad in [(1, 0.5, 1), (10, 1.0, 1), (10, 0.5, 0)]:
        with pytest.raises(InvalidParams):
            experiment_random_stalemate(*bad, seed=0)


def test_small_n_random_reports_only():
    r = experiment_random_stalemate(4, 0.5, 100, seed=1)
    assert r.aggregates["samples"] == 100
    assert r.aggregates["certificate_violations"] == 0


def test_products_examples():
    r = experiment_products()
    assert r.passed and r.aggregates["agreement_fraction"] == 1.0
    rows = {(c["left"], c["right"], c["product"]): c for c in r.cases}
    assert rows["C3", "P2", "cartesian"]["verdict"] == "Stalemate" == rows["C3", "P2", "cartesian"]["predicted"]
    assert r.aggregates["unpredicted"] == 16  # both factors trees: P2, P3, P4, Star3
    assert all((c["predicted"] is None) == (c["agrees"] is None) for c in r.cases)
    assert rows["C4", "P2", "tensor"]["verdict"] == "KillerWin" == rows["C4", "P2", "tensor"]["predicted"]
    assert rows["Star3", "P2", "strong"]["verdict"] == "CopWin" == rows["Star3", "P2", "strong"]["predicted"]
    assert rows["P2", "P2", "cartesian"]["predicted"] is None  # two trees: no prediction
    with pytest.raises(InvalidParams):
        experiment_products(["P9"])
    with pytest.raises(InvalidParams):
        predict_product("lexicographic", path(2), path(2), Label.COP_WIN, Label.COP_WIN)


def test_constructions_rows():
    r = experiment_constructions()
    rows = {c["row"]: c for c in r.cases}
    assert rows["petal:2,4"]["verdict"] == "CopWin" and rows["petal:2,4"]["cycles"] == 2
    assert rows["disjoint-cycles:3,4"]["verdict"] == "KillerWin"
    assert rows["triangle-chain:5"]["ok"]
    assert rows["pentagon-plus"]["ok"] and rows["odd-girth:2"]["ok"]
    assert "petal:1,5" not in rows
    # a chain of three triangles sharing sides always has a common vertex
    assert not rows["triangle-chain:3"]["ok"] and "InvalidParams" in rows["triangle-chain:3"]["error"]
    assert r.aggregates["failed_rows"] == ["triangle-chain:3"]


def test_star_bound_report():
    r = experiment_star_bound(graphs=10, dists=3, seed=2)
    assert r.passed
    for case in r.cases[:5]:
        g = parse_graph6(case["graph6"])
        assert game_value_from_start(g, np.array(case["dist"]), case["start"]) == case["value"]
        assert case["bound"] == sqrt_bound(case["max_degree"])


def test_report_serialization():
    r = experiment_products(["P2", "C4"])
    doc = json.loads(r.to_json())
    assert doc["schema"] == 1 and doc["command"] == "products"
    assert set(doc) == {"schema", "command", "params", "results"}
    assert "timing" in json.loads(r.to_json(include_timing=True))
    rows = list(csv.DictReader(io.StringIO(r.to_csv())))
    assert len(rows) == len(r.cases) == 12
    assert r.to_json() == experiment_products(["P2", "C4"]).to_json()
