from __future__ import annotations

import random
from collections import Counter

import networkx as nx
import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from tubular_jsj.complex import brady_meier_check, euler_characteristic
from tubular_jsj.errors import PreconditionError
from tubular_jsj.fixtures import G2_BOUNDARY, fix_klein, letters
from tubular_jsj.generate import random_complex
from tubular_jsj.opening import build_X_prime, build_Y_prime, dual_tree_at, lift_cycle, open_along
from tubular_jsj.separation import halfspace_labels, splitting_cycle_list
from tubular_jsj.validate import validate_complex

CASES = [("dcomm", "R1", "abAB"), ("d33", "R1", "aaabbb"), ("d33", "R1", "aaa"), ("g2", "S1", G2_BOUNDARY)]


def _tree_ok(tree, K):
    G = tree.graph()
    assert nx.is_tree(G)
    assert nx.is_bipartite(G)
    for r in tree.lines:
        assert G.degree(("b", r)) == K
    for w in tree.whites:
        assert all(n[0] == "b" for n in G[("w", w)])


@pytest.mark.parametrize("name,graph,word", CASES)
def test_opening_keeps_euler_characteristic(request, name, graph, word):
    X = request.getfixturevalue(name)
    Y = open_along(X, graph, letters(word)).complex
    assert euler_characteristic(Y) == euler_characteristic(X)
    assert validate_complex(Y).ok
    assert brady_meier_check(Y)[0]


@pytest.mark.parametrize("name,graph,word", CASES)
def test_dual_trees(request, name, graph, word):
    X = request.getfixturevalue(name)
    w = letters(word)
    K = halfspace_labels(X, graph, w).K
    _tree_ok(dual_tree_at(X, graph, w, ("vertex", "o")), K)
    for e in sorted({t[0] for t in w}):
        _tree_ok(dual_tree_at(X, graph, w, ("edge", e)), K)


def test_single_line_tree_is_a_star(d33):
    tree = dual_tree_at(d33, "R1", letters("aaa"), ("vertex", "o"))
    assert len(tree.lines) == 1 and len(tree.whites) == 3


def test_d33_edge_tree(d33):
    tree = dual_tree_at(d33, "R1", letters("aaabbb"), ("edge", "a"))
    assert len(tree.lines) == 3
    _tree_ok(tree, 2)


def test_dual_tree_off_cycle(d33):
    with pytest.raises(PreconditionError):
        dual_tree_at(d33, "R1", letters("aaa"), ("edge", "b"))


def test_dual_tree_needs_separation(lonely_b):
    with pytest.raises(PreconditionError):
        dual_tree_at(lonely_b, "R", letters("b"), ("vertex", "o"))


def test_y_prime_dcomm(dcomm):
    Y = build_Y_prime(dcomm, "R1", letters("abAB"))
    assert Y.vertices == (("R2", "o"),)
    assert Y.edges == (("R2", "a"), ("R2", "b"))
    # each removed edge leaves one stub per square on it
    assert Counter(s[0] for s in Y.stubs) == {"a": 2, "b": 2}


def test_y_prime_off_cycle_graph_unchanged(d33):
    Y = build_Y_prime(d33, "R1", letters("aaa"))
    assert {e for e in Y.edges if e[0] == "R2"} == {("R2", "a"), ("R2", "b")}
    assert ("R1", "b") in Y.edges and ("R1", "a") not in Y.edges


def test_y_prime_circle_graph():
    from tubular_jsj.fixtures import single_tube_on_a
    X = single_tube_on_a()
    Y = build_Y_prime(X, "C", (("c0e", 1),))
    assert ("C", "c0") not in Y.vertices
    assert Y.stubs == (("c0e", "T", 0, 1),)


def test_k2_opening_duplicates_cycle(dcomm):
    # trivial deck action, K = 2: one circle for the line, two strips to the sides
    w = letters("abAB")
    assert halfspace_labels(dcomm, "R1", w).sigma == (0, 1)
    Y = open_along(dcomm, "R1", w, tag="x").complex
    circles = [g for g in Y.graphs if g.is_circle()]
    assert sorted(len(g.edges) for g in circles) == [4, 4]
    strips = [t for t in Y.tubes if t.name.startswith("xt")]
    assert len(strips) == 2 and all(t.length == 4 for t in strips)
    black = [g.name for g in circles if all(t.end_a.graph == g.name for t in strips)]
    assert len(black) == 1
    # the untouched tube keeps its length
    assert Y.tube_map["T"].length == 4


def test_klein_opening():
    X = fix_klein()
    Y = open_along(X, "R", letters("aa")).complex
    assert euler_characteristic(Y) == euler_characteristic(X) == -1
    assert sum(g.is_circle() for g in Y.graphs) == 1


def test_build_x_prime_empty(d33):
    log = build_X_prime(d33, [])
    assert log.complex is d33 and log.opened == [] and log.skipped == []


def test_build_x_prime_single(dcomm):
    rep = splitting_cycle_list(dcomm, 4)
    first = rep.cycles[0]
    log = build_X_prime(dcomm, [first])
    direct = open_along(dcomm, first.graph, first.word, tag="x0").complex
    assert log.complex == direct
    assert log.opened == [(str(first), first.graph)]


def test_build_x_prime_skips_non_lifting(dcomm):
    rep = splitting_cycle_list(dcomm, 4)
    once = build_X_prime(dcomm, rep.cycles[:1])
    twice = build_X_prime(dcomm, rep.cycles[:1] * 2)
    assert twice.complex == once.complex
    assert len(twice.skipped) == 1


def test_lift_cycle_after_opening(d33):
    op = open_along(d33, "R1", letters("aaa"))
    gname, path = lift_cycle(op.edge_origin, op.complex, "R1", letters("aaa"))
    assert op.complex.graph(gname).is_circle()
    assert len(path) == 3
    assert lift_cycle(op.edge_origin, op.complex, "R2", letters("aaa"))[1] == tuple(letters("aaa"))
    assert lift_cycle(op.edge_origin, op.complex, "R1", letters("ab")) is None


@settings(max_examples=12, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.integers(0, 10_000))
def test_random_openings(seed):
    rng = random.Random(seed)
    X = random_complex(rng, max_squares=10, max_tubes=2)
    if not brady_meier_check(X)[0]:
        return
    rep = splitting_cycle_list(X, 4)
    for C in rep.cycles[:3]:
        K = halfspace_labels(X, C.graph, C.word).K
        Y = open_along(X, C.graph, C.word).complex
        assert euler_characteristic(Y) == euler_characteristic(X)
        g = X.graph(C.graph)
        for v in sorted({g.start(t) for t in C.word}, key=repr):
            _tree_ok(dual_tree_at(X, C.graph, C.word, ("vertex", v)), K)
