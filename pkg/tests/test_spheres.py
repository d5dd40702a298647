from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from tubular_jsj.complex import inverse
from tubular_jsj.errors import PreconditionError
from tubular_jsj.fixtures import fix_d33, fix_dcomm, fix_g2, fix_klein, letters
from tubular_jsj.spheres import (ImmersedPath, count_immersed_paths, cut_point_failure, cycle_sphere,
                                 cycle_sphere_by_self_splice, direct_sphere, immersed_paths, orthogonal_sphere, quotient_sphere, regular_sphere, self_splice,
                                 splice, sphere_condition, trace_components, vertex_sphere)


def _same(A, B) -> bool:
    def edges(G):
        return sorted(tuple(sorted((repr(u), repr(w)))) for u, w in G.edges())
    return set(A.nodes) == set(B.nodes) and edges(A) == edges(B)


def _triangle(tag):
    G = nx.MultiGraph()
    G.add_edges_from([((tag, "v"), (tag, "x")), ((tag, "x"), (tag, "y")), ((tag, "y"), (tag, "v"))])
    return G


def test_splice_two_triangles_is_a_dipole():
    G1, G2 = _triangle(1), _triangle(2)
    S = splice(G1, (1, "v"), [(1, "x"), (1, "y")], G2, (2, "v"), [(2, "x"), (2, "y")])
    assert S.number_of_nodes() == 2 and S.number_of_edges() == 2
    u, w = list(S.nodes)
    assert S.number_of_edges(u, w) == 2


def test_splice_with_star_restores_graph():
    G = nx.MultiGraph([("c", "p"), ("c", "q"), ("c", "r"), ("p", "q"), ("q", "r"), ("r", "p")])
    star = nx.MultiGraph([("s", "l1"), ("s", "l2"), ("s", "l3")])
    S = splice(G, "c", ["p", "q", "r"], star, "s", ["l1", "l2", "l3"])
    assert nx.is_isomorphic(S, nx.MultiGraph(G.subgraph(["p", "q", "r"])))


def test_splice_valence_mismatch():
    G1, G2 = _triangle(1), nx.MultiGraph([("v", "a")])
    with pytest.raises(PreconditionError):
        splice(G1, (1, "v"), [(1, "x"), (1, "y")], G2, "v", ["a"])


def test_splice_preserves_cut_point_freeness(dcomm, d33):
    for X in (dcomm, d33):
        A = vertex_sphere(X, "R1", "o", 0)
        B = vertex_sphere(X, "R2", "o", 1)
        assert cut_point_failure(A) is None and cut_point_failure(B) is None
        S = regular_sphere(X, ImmersedPath("R1", letters("a")))
        assert cut_point_failure(S) is None


def _band(k: int):
    """k paths of length 8 between hubs u and w."""
    G = nx.MultiGraph()
    for j in range(k):
        nodes = ["u"] + [(j, i) for i in range(1, 8)] + ["w"]
        G.add_edges_from(zip(nodes, nodes[1:]))
    return G


@pytest.mark.parametrize("k", [2, 3, 4])
def test_self_splice_band_closes_into_circles(k):
    G = _band(k)
    S = self_splice(G, "u", [(j, 1) for j in range(k)], "w", [(j, 7) for j in range(k)])
    comps = list(nx.connected_components(S))
    assert len(comps) == k
    for c in comps:
        H = S.subgraph(c)
        assert H.number_of_nodes() == 6 and all(d == 2 for _, d in H.degree())


def test_self_splice_rejects_dipole():
    D = nx.MultiGraph([("p", "q")] * 3)
    with pytest.raises(PreconditionError):
        self_splice(D, "p", ["q"] * 3, "q", ["p"] * 3)
    with pytest.raises(PreconditionError):
        self_splice(D, "p", ["q"] * 3, "p", ["q"] * 3)


def test_grid_vertex_sphere_is_octagon(grid):
    S = vertex_sphere(grid, "col1", "x1y1")
    assert S.number_of_nodes() == 8 and nx.is_connected(S) and all(d == 2 for _, d in S.degree())


def test_edge_sphere_is_splice_of_endpoints(d33):
    tok = ("a", 1)
    S = regular_sphere(d33, ImmersedPath("R1", (tok,)))
    assert _same(S, direct_sphere(d33, ImmersedPath("R1", (tok,))))
    # the two endpoint spheres lose one vertex each and glue thickness-many pairs
    V = vertex_sphere(d33, "R1", "o")
    assert S.number_of_nodes() == 2 * V.number_of_nodes() - 2 - 3


def test_non_immersed_path_rejected(d33):
    with pytest.raises(PreconditionError):
        regular_sphere(d33, ImmersedPath("R1", letters("aA")))


WORDS = st.lists(st.sampled_from(letters("abAB")), min_size=1, max_size=9).filter(
    lambda w: all(w[i + 1] != inverse(w[i]) for i in range(len(w) - 1)))


@settings(max_examples=60, deadline=None)
@given(WORDS, st.sampled_from(["DCOMM", "D33"]))
def test_path_spheres_connected_without_cut_points(word, which):
    X = fix_dcomm() if which == "DCOMM" else fix_d33()
    path = ImmersedPath("R1", tuple(word))
    S = regular_sphere(X, path)
    assert _same(S, direct_sphere(X, path))
    assert cut_point_failure(S) is None


@settings(max_examples=30, deadline=None)
@given(st.lists(st.sampled_from(letters("abcdABCD")), min_size=1, max_size=7).filter(
    lambda w: all(w[i + 1] != inverse(w[i]) for i in range(len(w) - 1))))
def test_g2_path_spheres_match(word):
    X = fix_g2()
    path = ImmersedPath("S1", tuple(word))
    assert _same(regular_sphere(X, path), direct_sphere(X, path))


def test_sphere_condition_on_fixtures(dcomm, d33, g2, lonely_b):
    for X in (dcomm, d33, g2):
        assert sphere_condition(X) == (True, None)
    assert not sphere_condition(lonely_b)[0]


def test_orthogonal_sphere_dcomm_two_sides(dcomm):
    O = orthogonal_sphere(dcomm, ImmersedPath("R1", letters("abAB")))
    assert nx.number_connected_components(O) == 2


def test_orthogonal_sphere_d33_three_sides_of_a(d33):
    # a is traversed three times by the only tube, so the a-line has three sides
    O = orthogonal_sphere(d33, ImmersedPath("R1", letters("a")))
    assert nx.number_connected_components(O) == 3


def test_orthogonal_sphere_needs_cyclic_path(grid):
    with pytest.raises(PreconditionError, match="not a cyclic path"):
        orthogonal_sphere(grid, ImmersedPath("col0", (("v00", 1),)))


def test_quotient_sphere_dcomm(dcomm):
    Q = quotient_sphere(dcomm, "R1", letters("abAB"))
    assert nx.number_connected_components(Q) == 2
    assert _same(Q, cycle_sphere(dcomm, "R1", letters("abAB")))


def test_quotient_sphere_klein_power():
    X = fix_klein()
    assert nx.number_connected_components(quotient_sphere(X, "R", letters("a"))) == 1
    assert nx.number_connected_components(quotient_sphere(X, "R", letters("aa"))) == 2


def test_tube_attached_twice_gives_two_sides():
    from tubular_jsj.complex import Tube, TubeEnd, make_complex
    from tubular_jsj.fixtures import rose_graph
    g = rose_graph("R", "ab")
    w = letters("abAB")
    X = make_complex([g], [Tube("T", 4, TubeEnd("R", w), TubeEnd("R", w))])
    assert nx.number_connected_components(quotient_sphere(X, "R", w)) >= 2


@pytest.mark.parametrize("word", ["abAB", "aaabbb", "aB", "abb"])
def test_self_splice_matches_quotient(word, d33):
    w = letters(word)
    A = cycle_sphere_by_self_splice(d33, "R1", w)
    B = quotient_sphere(d33, "R1", w)
    assert nx.is_isomorphic(A, B)
    assert _same(A, cycle_sphere(d33, "R1", w))


def test_trace_identity(d33):
    P = ImmersedPath("R1", letters("aab"))
    S = direct_sphere(d33, P)
    m = trace_components(d33, P, S, P, S, 0)
    assert m == {k: k for k in m} and len(m) == nx.number_connected_components(S)


def test_trace_grid_sides(grid):
    long = ImmersedPath("col1", (("v10", 1), ("v11", 1), ("v12", 1)))
    short = ImmersedPath("col1", (("v11", 1),))
    L = direct_sphere(grid, long)
    S = direct_sphere(grid, short)
    # drop the points where the column continues, leaving the two sides
    S.remove_nodes_from([("h", 0, ("v", "v10", 1)), ("h", 1, ("v", "v12", 0))])
    assert nx.number_connected_components(S) == 2
    assert nx.number_connected_components(L) == 2
    m = trace_components(grid, short, S, long, L, 1)
    assert sorted(m) == [0, 1] and sorted(m.values()) == [0, 1]


def test_trace_doubling_surjective(d33):
    w = letters("aaabbb")
    small = ImmersedPath("R1", w)
    big = ImmersedPath("R1", w * 2)
    So, Bo = orthogonal_sphere(d33, small), orthogonal_sphere(d33, big)
    m = trace_components(d33, small, So, big, Bo, 0)
    assert set(m.values()) == set(range(nx.number_connected_components(Bo)))


def test_immersed_path_counts(dcomm, d33, grid):
    # two roses: 4 starting tokens, then 3 non-backtracking choices per step
    for n in (1, 4, 12):
        assert count_immersed_paths(dcomm, n) == count_immersed_paths(d33, n) == 2 * 4 * 3 ** (n - 1)
    assert sum(1 for _ in immersed_paths(d33, 6)) == 2912
    for n in range(1, 6):
        assert count_immersed_paths(grid, n) == sum(1 for _ in immersed_paths(grid, n, min_len=n))


def test_immersed_paths_shortest_first(dcomm):
    lengths = [len(p) for p in immersed_paths(dcomm, 3)]
    assert lengths == sorted(lengths) and set(lengths) == {1, 2, 3}
    for p in immersed_paths(dcomm, 3, min_len=3):
        assert all(b != inverse(a) for a, b in zip(p.tokens, p.tokens[1:]))
