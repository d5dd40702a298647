from __future__ import annotations

import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from tubular_jsj.complex import (Tube, TubeEnd, brady_meier_check, euler_characteristic, link_of, make_complex,
                                 make_graph, thickness_of)
from tubular_jsj.fixtures import letters, rose_graph
from tubular_jsj.generate import random_complex
from tubular_jsj.subdivision import make_simplicial, refine_vertical, subdivide
from tubular_jsj.validate import validate_complex


def test_fixtures_validate(dcomm, d33, g2):
    for X in (dcomm, d33, g2):
        assert validate_complex(X).ok


def test_grid_reports_only_open_strips(grid):
    assert all(v.startswith("open tube") for v in validate_complex(grid).violations)


def test_length_mismatch_reported():
    g = rose_graph("R", "ab")
    X = make_complex([g], [Tube("T", 4, TubeEnd("R", letters("abAB")), TubeEnd("R", letters("abABa")))])
    assert any("tube length mismatch" in v for v in validate_complex(X).violations)


def test_backtracking_word_reported():
    g1, g2 = rose_graph("R1", "ab"), rose_graph("R2", "ab")
    X = make_complex([g1, g2], [Tube("T", 4, TubeEnd("R1", letters("aAbB")), TubeEnd("R2", letters("abAB")))])
    assert any("not an immersion" in v for v in validate_complex(X).violations)


def test_strict_simplicial_flags_roses(dcomm):
    assert validate_complex(dcomm).ok
    assert not validate_complex(dcomm, strict_simplicial=True).ok
    assert validate_complex(make_simplicial(dcomm), strict_simplicial=True).ok


def test_grid_interior_link_is_square(grid):
    L = link_of(grid, ("col1", "x1y1"))
    assert L.number_of_nodes() == 4 and L.number_of_edges() == 4
    assert all(d == 2 for _, d in L.degree()) and nx.is_connected(L)


def test_dcomm_rose_link_counts(dcomm):
    L = link_of(dcomm, ("R1", "o"))
    kinds = [d["kind"] for _, d in L.nodes(data=True)]
    assert kinds.count("vertical") == 4 and kinds.count("horizontal") == 4
    assert L.number_of_edges() == 8
    assert nx.is_connected(L) and all(d == 2 for _, d in L.degree())


def test_circle_vertex_link_in_single_tube(lonely_b):
    L = link_of(lonely_b, ("C", "c0"))
    # both ends of the loop plus one horizontal half, joined along a path
    assert L.number_of_nodes() == 3 and L.number_of_edges() == 2


def test_unknown_vertex(dcomm):
    with pytest.raises(KeyError):
        link_of(dcomm, ("R1", "zz"))


def test_thickness(dcomm, d33):
    assert thickness_of(dcomm, ("v", "R1", "a")) == 2
    assert thickness_of(d33, ("v", "R1", "a")) == 3
    for j in range(6):
        assert thickness_of(d33, ("h", "T", j)) == 2


def test_brady_meier(dcomm, d33, g2, lonely_b):
    for X in (dcomm, d33, g2):
        assert brady_meier_check(X) == (True, None)
    ok, witness = brady_meier_check(lonely_b)
    assert not ok
    assert witness["reason"] == "isolated link vertex"
    assert witness["vertex"] == ("R", "o") and witness["simplex"] == ("v", "b", 0)


def test_subdivide_counts(grid, dcomm):
    assert subdivide(grid, 1).square_count == 36
    assert subdivide(dcomm, 0) == dcomm
    assert subdivide(dcomm, 1).square_count == 16


def test_euler_characteristic(dcomm, grid):
    assert euler_characteristic(dcomm) == -2
    assert euler_characteristic(grid) == 1
    point = make_complex([make_graph("P", ["p"], [])], [])
    assert euler_characteristic(point) == 1


def test_bm_implies_thickness_two(dcomm, d33, g2):
    for X in (dcomm, d33, g2):
        for g in X.graphs:
            for e, _, _ in g.edges:
                assert thickness_of(X, ("v", g.name, e)) >= 2


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_subdivision_preserves_validity_and_bm(seed):
    X = random_complex(random.Random(seed), max_squares=10)
    Y = subdivide(X, 1)
    assert validate_complex(Y).ok
    assert brady_meier_check(Y)[0] == brady_meier_check(X)[0]
    assert euler_characteristic(Y) == euler_characteristic(X)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_vertical_refinement_preserves_bm_and_chi(seed):
    X = random_complex(random.Random(seed), max_squares=10)
    Y = refine_vertical(X, 2)
    assert brady_meier_check(Y)[0] == brady_meier_check(X)[0]
    assert euler_characteristic(Y) == euler_characteristic(X)
