"""Standard small complexes used by tests, scripts and documentation."""
from __future__ import annotations

from .complex import Tube, TubeEnd, TubularComplex, make_complex, make_graph

G2_BOUNDARY = "abABcdCD"


def letters(word: str) -> tuple:
    """'abAB' -> ((a,+1),(b,+1),(a,-1),(b,-1)); capitals are inverses."""
    return tuple((ch.lower(), 1 if ch.islower() else -1) for ch in word)


def rose_graph(name: str, gens: str, base: str = "o"):
    return make_graph(name, [base], [(g, base, base) for g in gens])


def circle_graph(name: str, n: int, prefix: str = "c"):
    verts = [f"{prefix}{j}" for j in range(n)]
    return make_graph(name, verts, [(f"{prefix}{j}e", verts[j], verts[(j + 1) % n]) for j in range(n)])


def circle_word(g) -> tuple:
    return tuple((e, 1) for e, _, _ in g.edges)


def double_of_rose(gens: str, word: str, names=("R1", "R2")) -> TubularComplex:
    w = letters(word)
    g1, g2 = rose_graph(names[0], gens), rose_graph(names[1], gens)
    return make_complex([g1, g2], [Tube("T", len(w), TubeEnd(names[0], w), TubeEnd(names[1], w))])


def fix_dcomm() -> TubularComplex:
    """Double of rose(a, b) along the commutator: a closed genus-2 surface."""
    return double_of_rose("ab", "abAB")


def fix_d33() -> TubularComplex:
    return double_of_rose("ab", "aaabbb")


def fix_g2() -> TubularComplex:
    """Double of rose(a,b,c,d) along the genus-2 one-boundary word."""
    return double_of_rose("abcd", G2_BOUNDARY, names=("S1", "S2"))


def fix_grid33() -> TubularComplex:
    """3x3 planar grid: four column paths joined by three open strips."""
    graphs, tubes = [], []
    for j in range(4):
        verts = [f"x{j}y{k}" for k in range(4)]
        graphs.append(make_graph(f"col{j}", verts,
                                 [(f"v{j}{k}", verts[k], verts[k + 1]) for k in range(3)]))
    for j in range(3):
        wa = tuple((f"v{j}{k}", 1) for k in range(3))
        wb = tuple((f"v{j + 1}{k}", 1) for k in range(3))
        tubes.append(Tube(f"row{j}", 3, TubeEnd(f"col{j}", wa), TubeEnd(f"col{j + 1}", wb), cyclic=False))
    return make_complex(graphs, tubes)


def single_tube_on_a() -> TubularComplex:
    """rose(a, b) with one tube along a; edge b lies in no square."""
    g1 = rose_graph("R", "ab")
    c = circle_graph("C", 1)
    w = letters("a")
    return make_complex([g1, c], [Tube("T", 1, TubeEnd("R", w), TubeEnd("C", circle_word(c)))])


def fix_klein() -> TubularComplex:
    """rose(a, b) with one tube from ab to aB: a Klein bottle, in which the
    two sides of the a-line are exchanged by a."""
    g = rose_graph("R", "ab")
    return make_complex([g], [Tube("T", 2, TubeEnd("R", letters("ab")), TubeEnd("R", letters("aB")))])


def fix_crossing() -> TubularComplex:
    """rose(a, b, c) with two tubes; the cycle aaaC crosses its own translate
    at a vertex."""
    g = rose_graph("G0", "abc")
    return make_complex([g], [Tube("T0", 3, TubeEnd("G0", letters("ccc")), TubeEnd("G0", letters("bAb"))),
                              Tube("T1", 4, TubeEnd("G0", letters("caaa")), TubeEnd("G0", letters("ABBB")))])


def all_fixtures() -> dict:
    return {"DCOMM": fix_dcomm(), "D33": fix_d33(), "G2": fix_g2(), "GRID33": fix_grid33()}
