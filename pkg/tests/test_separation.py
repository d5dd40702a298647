from __future__ import annotations

import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from tubular_jsj.complex import brady_meier_check, inverse, thickness_of
from tubular_jsj.cycles import enumerate_cycles, normalize_cycle
from tubular_jsj.errors import PreconditionError
from tubular_jsj.fixtures import fix_crossing, fix_d33, fix_dcomm, fix_klein, circle_graph, circle_word, letters
from tubular_jsj.generate import random_complex
from tubular_jsj.separation import (CrossingInstance, crossing_of, crossing_pair, crossing_test, deck_permutation, halfspace_labels,
                                    has_self_crossing, is_splitting_cycle, is_strongly_uc_separating, orbits,
                                    orthogonal_count, orthogonal_count_reference, perm_order, perm_power,
                                    quotient_components, self_crossing_instances, separating_power,
                                    splitting_cycle_list, swap)
from tubular_jsj.spheres import ImmersedPath, direct_sphere, vertex_sphere


def test_permutation_helpers():
    p = (1, 2, 0, 4, 3)
    assert perm_order(p) == 6
    assert perm_power(p, 6) == tuple(range(5))
    assert orbits(perm_power(p, 3)) == [[0], [1], [2], [3, 4]]


def test_dcomm_tube_cycle(dcomm):
    w = letters("abAB")
    H = halfspace_labels(dcomm, "R1", w)
    assert H.K == 2 and H.sigma == (0, 1)
    assert is_strongly_uc_separating(dcomm, "R1", w)
    rec = is_splitting_cycle(dcomm, "R1", w)
    assert rec.splitting and rec.representative.word == rec.cycle.word
    assert separating_power(dcomm, "R1", w)[0] == 1


def test_klein_transposition():
    X = fix_klein()
    a = letters("a")
    assert deck_permutation(X, "R", a) == (1, 0)
    assert quotient_components(X, "R", a) == 1
    assert not is_strongly_uc_separating(X, "R", a)
    assert is_strongly_uc_separating(X, "R", a * 2)
    n, rec = separating_power(X, "R", a)
    assert n == 2 and rec.word == a * 2


def test_three_cycle_on_three_labels(d33):
    a = letters("a")
    H = halfspace_labels(d33, "R1", a)
    assert H.K == 3 and len(orbits(H.sigma)) == 1
    n, _ = separating_power(d33, "R1", a)
    assert n == 3 <= d33.max_thickness


def test_k_one_cycle(d33):
    w = letters("ab")
    H = halfspace_labels(d33, "R1", w)
    assert H.K == 1 and H.sigma == (0,)
    assert not is_strongly_uc_separating(d33, "R1", w)
    assert not is_splitting_cycle(d33, "R1", w).splitting
    with pytest.raises(PreconditionError):
        separating_power(d33, "R1", w)


def _cycles(X, g, n):
    return [r for r in enumerate_cycles(X, g, n)]


@pytest.mark.parametrize("name", ["DCOMM", "D33", "KLEIN"])
def test_counts_non_increasing_and_bounded_by_thickness(name):
    X = {"DCOMM": fix_dcomm, "D33": fix_d33, "KLEIN": fix_klein}[name]()
    g = X.graphs[0].name
    for rec in _cycles(X, g, 5):
        H = halfspace_labels(X, g, rec.word)
        assert all(a >= b for a, b in zip(H.counts, H.counts[1:]))
        thick = min(thickness_of(X, ("v", g, e)) for e, _ in rec.word)
        assert H.K <= thick


def test_quotient_components_equal_orbits(dcomm, d33):
    for X in (dcomm, d33, fix_klein()):
        g = X.graphs[0].name
        for rec in _cycles(X, g, 5):
            H = halfspace_labels(X, g, rec.word)
            if H.K < 2:
                continue
            assert quotient_components(X, g, rec.word) == len(orbits(perm_power(H.sigma, rec.exponent)))


def test_fast_orthogonal_count_matches_reference(d33, dcomm):
    for X in (dcomm, d33, fix_klein(), fix_crossing()):
        g = X.graphs[0].name
        for rec in _cycles(X, g, 4):
            for copies in (1, 2):
                w = rec.root * copies
                assert orthogonal_count(X, g, w) == orthogonal_count_reference(X, g, w)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_fast_count_random(seed):
    X = random_complex(random.Random(seed), max_squares=12)
    if not brady_meier_check(X)[0]:
        return
    for g in X.graphs:
        for rec in _cycles(X, g.name, 3):
            assert orthogonal_count(X, g.name, rec.word) == orthogonal_count_reference(X, g.name, rec.word)


def test_grid_vertex_crossing(grid):
    sphere = vertex_sphere(grid, "col1", "x1y1")
    north_south = (("h", 0, ("v", "v10", 1)), ("h", 0, ("v", "v11", 0)))
    east_west = (("h", 0, ("h", "row0", 1, 1)), ("h", 0, ("h", "row1", 1, 0)))
    inst = CrossingInstance("col1", (), "x1y1", north_south, east_west)
    assert crossing_test(inst, sphere)
    assert crossing_test(swap(inst), sphere)


def test_grid_edge_same_side(grid):
    path = ImmersedPath("col1", (("v11", 1),))
    sphere = direct_sphere(grid, path)
    column = (("h", 0, ("v", "v10", 1)), ("h", 1, ("v", "v12", 0)))
    left = (("h", 0, ("h", "row0", 1, 1)), ("h", 1, ("h", "row0", 2, 1)))
    inst = CrossingInstance("col1", (("v11", 1),), "x1y1", column, left)
    assert not crossing_test(inst, sphere)


def test_crossing_symmetric_on_fixture_instances(dcomm, d33):
    for X in (dcomm, d33, fix_crossing(), fix_klein()):
        g = X.graphs[0].name
        for rec in _cycles(X, g, 4):
            if halfspace_labels(X, g, rec.root).K < 2:
                continue
            for inst in self_crossing_instances(X, g, rec.root):
                assert crossing_of(X, inst) == crossing_of(X, swap(inst))


def test_crossing_pair_matches_graph_test(dcomm):
    for X in (dcomm, fix_crossing()):
        g = X.graphs[0].name
        for rec in _cycles(X, g, 4):
            for inst in self_crossing_instances(X, g, rec.root):
                sphere = direct_sphere(X, inst.path())
                assert crossing_pair(X, inst) == (crossing_test(inst, sphere), crossing_test(swap(inst), sphere))


def test_circle_cycle_never_crosses():
    from tubular_jsj.complex import Tube, TubeEnd, make_complex
    c1, c2 = circle_graph("C1", 3), circle_graph("C2", 3)
    X = make_complex([c1, c2], [Tube("T", 3, TubeEnd("C1", circle_word(c1)), TubeEnd("C2", circle_word(c2)))])
    assert not has_self_crossing(X, "C1", circle_word(c1))


def test_three_sided_lines_never_cross(d33):
    for rec in _cycles(d33, "R1", 8):
        H = halfspace_labels(d33, "R1", rec.word)
        if H.K >= 3:
            assert not has_self_crossing(d33, "R1", rec.word)


def test_crossing_fixture():
    X = fix_crossing()
    w = letters("aaaC")
    assert halfspace_labels(X, "G0", w).K == 2
    assert has_self_crossing(X, "G0", w)
    rec = is_splitting_cycle(X, "G0", w)
    assert rec.self_crossing and not rec.splitting and rec.representative is None


def test_crossing_fixture_in_developed_ball():
    """Two lifts through the base vertex meet in a point, and the second
    leaves on opposite sides of the first."""
    from tubular_jsj.cover import develop_ball, lifts_through, segment_and_sides
    X = fix_crossing()
    w = letters("aaaC")
    ball = develop_ball(X, ("G0", "o"), 2)
    lines = lifts_through(ball, w, ball.base)
    crossing_pairs = []
    for i, L1 in enumerate(lines):
        for L2 in lines[i + 1:]:
            try:
                rep = segment_and_sides(ball, X, L1, L2)
            except PreconditionError:
                continue    # overlap runs past the ball
            if rep.status == "segment" and rep.sides[0] != rep.sides[1]:
                crossing_pairs.append((rep.instance.segment, crossing_of(X, rep.instance)))
    assert crossing_pairs and all(c for _, c in crossing_pairs)
    assert any(seg == () for seg, _ in crossing_pairs)


def test_tube_cycles_split(dcomm, d33, g2):
    for X in (dcomm, d33, g2, fix_klein(), fix_crossing()):
        for t in X.tubes:
            for side in (0, 1):
                end = t.end(side)
                assert is_splitting_cycle(X, end.graph, end.word).splitting, (t.name, side)


def test_splitting_rejects_non_bm(lonely_b):
    with pytest.raises(PreconditionError):
        is_splitting_cycle(lonely_b, "R", letters("a"))


def test_splitting_list_dcomm_contains_tube_cycle(dcomm):
    rep = splitting_cycle_list(dcomm, 4)
    words = {(c.graph, c.word) for c in rep.cycles}
    assert ("R1", normalize_cycle(letters("abAB")).word) in words
    assert rep.truncated


def test_splitting_list_below_all_lengths():
    X = fix_klein()
    rep = splitting_cycle_list(X, 1, graphs=set())
    assert rep.cycles == []
    assert any("no splitting cycles" in w for w in rep.warnings)


def test_splitting_list_thread_independent(d33):
    a = splitting_cycle_list(d33, 6, threads=1)
    b = splitting_cycle_list(d33, 6, threads=3)
    assert a.cycles == b.cycles
