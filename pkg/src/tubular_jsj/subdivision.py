"""Cubical subdivision and vertical edge refinement."""
from __future__ import annotations

from .complex import Tube, TubeEnd, TubularComplex, make_complex, make_graph


def _split_token(tok, parts: int) -> list:
    e, s = tok
    pieces = [(f"{e}/{k}", 1) for k in range(parts)]
    if s > 0:
        return pieces
    return [(p, -1) for p, _ in reversed(pieces)]


def _split_graph(g, parts: int):
    verts = list(g.vertices)
    edges = []
    for e, a, b in g.edges:
        mids = [f"{e}/m{k}" for k in range(1, parts)]
        verts.extend(mids)
        chain = [a] + mids + [b]
        edges.extend((f"{e}/{k}", chain[k], chain[k + 1]) for k in range(parts))
    return make_graph(g.name, verts, edges)


def _split_word(word, parts: int) -> tuple:
    return tuple(t for tok in word for t in _split_token(tok, parts))


def refine_vertical(X: TubularComplex, parts: int = 2) -> TubularComplex:
    """Cut every vertical edge into ``parts`` edges and stretch tubes to match."""
    if parts == 1:
        return X
    graphs = [_split_graph(g, parts) for g in X.graphs]
    tubes = []
    for t in X.tubes:
        tubes.append(Tube(t.name, t.length * parts,
                          TubeEnd(t.end_a.graph, _split_word(t.end_a.word, parts)),
                          TubeEnd(t.end_b.graph, _split_word(t.end_b.word, parts)),
                          t.cyclic))
    return make_complex(graphs, tubes, X.notes)


def make_simplicial(X: TubularComplex) -> TubularComplex:
    """Repeat 2-fold vertical refinement until every vertex graph is simplicial."""
    while not all(g.is_simplicial() for g in X.graphs):
        X = refine_vertical(X, 2)
    return X


def _subdivide_once(X: TubularComplex) -> TubularComplex:
    graphs = [_split_graph(g, 2) for g in X.graphs]
    tubes = []
    for t in X.tubes:
        n = 2 * t.length
        mid = f"{t.name}/mid"
        if t.cyclic:
            verts = [f"{mid}{j}" for j in range(n)]
            edges = [(f"{mid}{j}e", verts[j], verts[(j + 1) % n]) for j in range(n)]
        else:
            verts = [f"{mid}{j}" for j in range(n + 1)]
            edges = [(f"{mid}{j}e", verts[j], verts[j + 1]) for j in range(n)]
        graphs.append(make_graph(mid, verts, edges))
        mid_word = tuple((e, 1) for e, _, _ in edges)
        wa = _split_word(t.end_a.word, 2)
        wb = _split_word(t.end_b.word, 2)
        tubes.append(Tube(f"{t.name}/0", n, TubeEnd(t.end_a.graph, wa), TubeEnd(mid, mid_word), t.cyclic))
        tubes.append(Tube(f"{t.name}/1", n, TubeEnd(mid, mid_word), TubeEnd(t.end_b.graph, wb), t.cyclic))
    return make_complex(graphs, tubes, X.notes)


def subdivide(X: TubularComplex, n: int = 1) -> TubularComplex:
    """n-th cubical subdivision: each square becomes four."""
    for _ in range(n):
        X = _subdivide_once(X)
    return X
