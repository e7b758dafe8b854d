import numpy as np
import pytest

from conftest import connected_atlas, labeled_graphs
from copkiller.errors import IsolatedVertex, StateNotFound
from copkiller.graphs import (
    Graph,
    cartesian_product,
    complete,
    cycle,
    dominated_nonadjacent_pair,
    gnp,
    grid,
    has_universal_vertex,
    is_bipartite,
    is_connected,
    is_star,
    is_tree,
    king,
    min_degree,
    path,
    pentagon_plus,
    star,
    strong_product,
    tensor_product,
    triangle_count,
)
from copkiller.pursuit import (
    Label,
    Turn,
    fixpoint_tables,
    label_states,
    label_states_fixpoint,
    optimal_move,
    solve,
    verdicts_from_labels,
)

CW, KW, ST = Label.COP_WIN, Label.KILLER_WIN, Label.STALEMATE


def naive_labels(g):
    """Plain dictionary iteration of the game rules until nothing changes."""
    lab = {}
    for c in range(g.n):
        for k in range(g.n):
            if c != k:
                for t in Turn:
                    if g.has_edge(c, k):
                        lab[c, k, t] = CW if t == Turn.COP else KW
    changed = True
    while changed:
        changed = False
        for c in range(g.n):
            for k in range(g.n):
                if c == k or g.has_edge(c, k):
                    continue
                for t in Turn:
                    if (c, k, t) in lab:
                        continue
                    if t == Turn.COP:
                        kids = [lab.get((u, k, Turn.KILLER)) for u in g.neighbors(c)]
                        win, loss = CW, KW
                    else:
                        kids = [lab.get((c, w, Turn.COP)) for w in g.neighbors(k)]
                        win, loss = KW, CW
                    if win in kids:
                        lab[c, k, t] = win
                        changed = True
                    elif all(x == loss for x in kids):
                        lab[c, k, t] = loss
                        changed = True
    return lab


def test_examples():
    assert solve(cycle(3)).verdict == CW
    assert solve(cycle(4)).verdict == KW
    assert solve(cycle(5)).verdict == ST
    assert solve(grid(2, 3)).verdict == KW
    assert solve(king(4, 4)).verdict == ST
    assert solve(pentagon_plus()).verdict == KW
    t4 = label_states(cycle(4))
    assert t4.label(0, 2, Turn.COP) == KW
    assert optimal_move(t4, 0, 2, Turn.KILLER) == 1
    t3 = label_states(complete(3))
    for c in range(3):
        for k in range(3):
            if c != k:
                assert t3.label(c, k, Turn.COP) == CW and t3.dist(c, k, Turn.COP) == 1
    assert optimal_move(t3, 0, 1, Turn.COP) == 1
    t6 = label_states(cycle(6))
    assert t6.label(0, 3, Turn.COP) == ST and t6.dist(0, 3, Turn.COP) is None
    mv = optimal_move(t6, 0, 3, Turn.COP)
    assert mv in (1, 5) and t6.label(mv, 3, Turn.KILLER) == ST


def test_errors():
    with pytest.raises(IsolatedVertex):
        solve(Graph(3, [(0, 1)]))
    with pytest.raises(IsolatedVertex):
        solve(Graph(1))
    t = label_states(cycle(4))
    with pytest.raises(StateNotFound):
        t.label(1, 1, Turn.COP)
    with pytest.raises(StateNotFound):
        t.label(0, 4, Turn.COP)


def _check_distances(table):
    g = table.graph
    for t in Turn:
        for c in range(g.n):
            for k in range(g.n):
                if c == k:
                    continue
                lab, d = table.label(c, k, t), table.dist(c, k, t)
                assert (lab == ST) == (d is None)
                if lab == ST or d == 1:
                    continue
                nxt = Turn(1 - t)
                kids = [(u, k) if t == Turn.COP else (c, u) for u in g.neighbors(c if t == Turn.COP else k)]
                mover_wins = lab == (CW if t == Turn.COP else KW)
                ds = [table.dist(*s, nxt) for s in kids if table.label(*s, nxt) == lab]
                assert d == 1 + (min(ds) if mover_wins else max(ds))


def test_three_solvers_agree_on_all_connected_up_to_six():
    for g in connected_atlas(2, 6):
        a, b = label_states(g), label_states_fixpoint(g)
        assert a.same_as(b)
        naive = naive_labels(g)
        for c in range(g.n):
            for k in range(g.n):
                if c != k:
                    for t in Turn:
                        assert a.label(c, k, t) == naive.get((c, k, t), ST)
        _check_distances(a)


def test_solvers_agree_on_random_gnp():
    done = 0
    for seed in range(400):
        g = gnp(10, 0.4, seed)
        if min_degree(g) == 0:
            continue
        assert label_states(g).same_as(label_states_fixpoint(g))
        done += 1
        if done == 100:
            break
    assert done == 100


def test_batched_fixpoint_matches_single():
    gs = [cycle(6), path(6), grid(2, 3), complete(6)]
    labels, dist = fixpoint_tables(np.stack([g.matrix for g in gs]))
    for i, g in enumerate(gs):
        t = label_states(g)
        off = ~np.eye(6, dtype=bool)
        assert (labels[i][:, off] == t.labels[:, off]).all()
        assert (dist[i][:, off] == t.distance[:, off]).all()
    verdict, _, _ = verdicts_from_labels(labels[:, 0])
    assert [Label(int(v)) for v in verdict] == [solve(g).verdict for g in gs]


def test_verdict_is_maximin():
    for g in connected_atlas(2, 5):
        out = solve(g)
        lab = out.table.labels[Turn.COP]
        best = max(min(lab[c, k] for k in range(g.n) if k != c) for c in range(g.n))
        assert out.verdict == best
        assert lab[out.cop_start, out.killer_reply] == best
        assert out.killer_reply != out.cop_start


def test_relabel_invariance():
    rng = np.random.default_rng(1)
    count = 0
    while count < 50:
        g = gnp(int(rng.integers(4, 11)), float(rng.uniform(0.25, 0.7)), int(rng.integers(1 << 30)))
        if min_degree(g) == 0:
            continue
        perm = rng.permutation(g.n)
        assert solve(g.relabel(perm)).verdict == solve(g).verdict
        count += 1


def test_witness_realizes_labels():
    for g in [cycle(4), cycle(6), path(4), pentagon_plus(), star(3)]:
        out = solve(g)
        for (c, k, t), mv in out.witness().items():
            mover = c if t == Turn.COP else k
            assert g.has_edge(mover, mv)
            lab = out.table.label(c, k, t)
            other = k if t == Turn.COP else c
            if mv == other:
                continue
            nxt = (mv, k) if t == Turn.COP else (c, mv)
            assert out.table.label(*nxt, Turn(1 - t)) == lab


def test_retrograde_matches_fixpoint_on_large_graph():
    g = gnp(70, 0.1, 3)
    if min_degree(g) > 0:
        assert solve(g, "retrograde").verdict == solve(g, "fixpoint").verdict == solve(g).verdict


# exhaustive laws over labeled graphs (n <= 6 is covered by the enumeration experiment as well)

@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_structural_laws_exhaustive(n):
    for g in labeled_graphs(n):
        if min_degree(g) == 0:
            continue
        v = solve(g).verdict
        if v != ST:
            assert has_universal_vertex(g) is not None or dominated_nonadjacent_pair(g) is not None
        if v == KW:
            assert triangle_count(g) not in (1, 2)
        if is_connected(g) and is_bipartite(g):
            assert (v == CW) == is_star(g)


BASES = [path(2), path(3), path(4), cycle(3), cycle(4), cycle(5), complete(4), star(3)]


def test_product_laws():
    verdicts = [solve(g).verdict for g in BASES]
    for g, vg in zip(BASES, verdicts):
        for h, vh in zip(BASES, verdicts):
            cart = cartesian_product(g, h)
            if not (is_tree(g) and is_tree(h)):
                assert solve(cart).verdict == ST
            ten = tensor_product(g, h)
            if min_degree(ten) > 0:
                want = KW if KW in (vg, vh) else ST
                assert solve(ten).verdict == want
            both = has_universal_vertex(g) is not None and has_universal_vertex(h) is not None
            assert solve(strong_product(g, h)).verdict == (CW if both else ST)
