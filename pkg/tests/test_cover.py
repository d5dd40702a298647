from __future__ import annotations

from collections import Counter
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

import tubular_jsj.cover as cover
from tubular_jsj.complex import link_of
from tubular_jsj.cover import ball_link, develop_ball, line_complement_count, lifts_through, segment_and_sides
from tubular_jsj.cycles import enumerate_cycles
from tubular_jsj.errors import PreconditionError, ResourceCapError
from tubular_jsj.fixtures import fix_klein, letters
from tubular_jsj.separation import halfspace_labels


@pytest.fixture(scope="module")
def dcomm_ball(dcomm):
    return develop_ball(dcomm, ("R1", "o"), 4)


def _step(X, nf, word):
    dev = cover._Developer(X, "R1", "o")
    for t in word:
        nf = dev.step_vertical(nf, t)
    return nf


def test_radius_zero_is_a_point(dcomm):
    ball = develop_ball(dcomm, ("R1", "o"), 0)
    assert list(ball.distance) == [ball.base]
    assert ball.graph().number_of_edges() == 0


def test_negative_radius_rejected(dcomm):
    with pytest.raises(PreconditionError):
        develop_ball(dcomm, ("R1", "o"), -1)


def test_grid_ball_is_the_grid(grid):
    small = develop_ball(grid, ("col1", "x1y1"), 1)
    assert (len(small.distance), len(small.edges)) == (9, 12)
    for D in (2, 5):
        ball = develop_ball(grid, ("col1", "x1y1"), D)
        assert len(ball.distance) == grid.vertex_count
        kinds = Counter(ball.edges.values())
        assert kinds == {"V": 12, "H": 12}
        assert sorted(Counter(ball.projection.values()).values()) == [1] * 16


def test_dcomm_unit_ball_counts(dcomm):
    # one centre, one neighbour per link vertex, one diagonal corner per link edge
    ball = develop_ball(dcomm, ("R1", "o"), 1)
    link = link_of(dcomm, ("R1", "o"))
    assert len(ball.distance) == 1 + link.number_of_nodes() + link.number_of_edges() == 17
    assert ball.graph().degree(ball.base) == 8


def test_ball_cap(dcomm):
    with pytest.raises(ResourceCapError):
        develop_ball(dcomm, ("R1", "o"), 4, max_vertices=100)


def test_inner_links_connected(dcomm):
    ball = develop_ball(dcomm, ("R1", "o"), 2)
    inner = [v for v, d in ball.distance.items() if d < 2]
    for v in inner:
        assert nx.is_connected(ball_link(ball, v))


@pytest.mark.parametrize("name,basepoint,D", [("dcomm", ("R1", "o"), 3), ("d33", ("R2", "o"), 2)])
def test_links_match_projection(request, name, basepoint, D):
    X = request.getfixturevalue(name)
    ball = develop_ball(X, basepoint, D)
    for nf, d in ball.distance.items():
        if d < D:
            assert nx.is_isomorphic(ball_link(ball, nf), link_of(X, ball.projection[nf]),
                                    node_match=lambda a, b: a["kind"] == b["kind"])


def test_lifts_once_traversed_cell(dcomm, dcomm_ball):
    nxt = _step(dcomm, dcomm_ball.base, [("b", 1)])
    lines = lifts_through(dcomm_ball, letters("aab"), (dcomm_ball.base, nxt))
    assert len(lines) == 1
    assert dcomm_ball.base in lines[0].vertices and nxt in lines[0].vertices


def test_lifts_d33_edge_a(d33):
    ball = develop_ball(d33, ("R1", "o"), 3)
    nxt = _step(d33, ball.base, [("a", 1)])
    lines = lifts_through(ball, letters("aaabbb"), (ball.base, nxt))
    assert [l.offset for l in lines] == [0, 1, 2]
    assert len({l.vertices for l in lines}) == 3
    at_vertex = lifts_through(ball, letters("aaabbb"), ball.base)
    assert len(at_vertex) == 6


def test_lifts_off_cycle(d33):
    ball = develop_ball(d33, ("R1", "o"), 2)
    nxt = _step(d33, ball.base, [("a", 1)])
    with pytest.raises(PreconditionError):
        lifts_through(ball, letters("bbb"), (ball.base, nxt))


def test_lines_are_geodesic_paths(dcomm, dcomm_ball):
    for line in lifts_through(dcomm_ball, letters("aabAB"), dcomm_ball.base):
        assert len(set(line.vertices)) == len(line.vertices)
        for u, v in zip(line.vertices, line.vertices[1:]):
            assert dcomm_ball.edges[frozenset((u, v))] == "V"


def test_segment_cases(dcomm, dcomm_ball):
    w = letters("abAB")
    lines = lifts_through(dcomm_ball, w, dcomm_ball.base)
    assert segment_and_sides(dcomm_ball, dcomm, lines[0], lines[0]).status == "equal"
    lengths = []
    for l1, l2 in combinations(lines, 2):
        rep = segment_and_sides(dcomm_ball, dcomm, l1, l2)
        assert rep.status == "segment"
        lengths.append(len(rep.instance.segment))
        # the tube lines of a surface never cross: both exits on one side
        assert rep.sides[0] == rep.sides[1]
    assert sorted(lengths) == [0, 0, 1, 1, 1, 1]
    far = _step(dcomm, dcomm_ball.base, [("b", 1)] * 3)
    for other in lifts_through(dcomm_ball, w, far):
        assert segment_and_sides(dcomm_ball, dcomm, lines[0], other).status == "empty"


@pytest.mark.parametrize("name,graph", [("dcomm", "R1"), ("d33", "R1"), ("g2", "S1")])
def test_line_oracle_matches_k(request, name, graph):
    X = request.getfixturevalue(name)
    for rec in enumerate_cycles(X, graph, 4):
        assert line_complement_count(X, graph, rec.word) == halfspace_labels(X, graph, rec.word).K


def test_line_oracle_klein():
    X = fix_klein()
    for w in ("a", "aa", "b", "ab"):
        assert line_complement_count(X, "R", letters(w)) == halfspace_labels(X, "R", letters(w)).K


@settings(max_examples=25, deadline=None)
@given(st.text(alphabet="abAB", min_size=1, max_size=7))
def test_line_oracle_random_words(d33, raw):
    w = letters(raw)
    if any(w[i] == (w[(i + 1) % len(w)][0], -w[(i + 1) % len(w)][1]) for i in range(len(w))):
        return
    assert line_complement_count(d33, "R1", w) == halfspace_labels(d33, "R1", w).K
