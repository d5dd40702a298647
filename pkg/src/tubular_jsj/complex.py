"""Tubular graphs of graphs realised as VH square complexes.

Vertex graphs may carry loops and parallel edges; every local structure is
expressed through half-edges ``(edge, end)`` with end 0 = tail, 1 = head, so
roses need no subdivision.  A tube of length L contributes L squares; square
``(t, i)`` has vertical sides ``end_a.word[i]`` and ``end_b.word[i]`` and
horizontal sides ``(t, i)`` and ``(t, i + 1)``.

Open tubes (``cyclic=False``) model planar strips.  They are only used for
local tests; ``validate_complex`` reports them.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property

import networkx as nx

Token = tuple  # (edge id, +1 | -1)


def inverse(tok: Token) -> Token:
    return (tok[0], -tok[1])


def invert_word(word) -> tuple:
    return tuple(inverse(t) for t in reversed(word))


def out_half(tok: Token) -> tuple:
    """Half-edge by which the token leaves its start vertex."""
    return (tok[0], 0 if tok[1] > 0 else 1)


def in_half(tok: Token) -> tuple:
    """Half-edge by which the token enters its end vertex."""
    return (tok[0], 1 if tok[1] > 0 else 0)


def word_str(word) -> str:
    return " ".join(e if s > 0 else "-" + e for e, s in word)


@dataclass(frozen=True)
class VertexGraph:
    name: str
    vertices: tuple
    edges: tuple  # (edge id, tail, head)

    @cached_property
    def ends(self) -> dict:
        return {e: (a, b) for e, a, b in self.edges}

    def start(self, tok: Token):
        a, b = self.ends[tok[0]]
        return a if tok[1] > 0 else b

    def end(self, tok: Token):
        a, b = self.ends[tok[0]]
        return b if tok[1] > 0 else a

    def half_vertex(self, half) -> object:
        return self.ends[half[0]][half[1]]

    @cached_property
    def halves_at(self) -> dict:
        out = defaultdict(list)
        for e, a, b in self.edges:
            out[a].append((e, 0))
            out[b].append((e, 1))
        return {v: sorted(out.get(v, [])) for v in self.vertices}

    def is_simplicial(self) -> bool:
        seen = set()
        for _, a, b in self.edges:
            if a == b or frozenset((a, b)) in seen:
                return False
            seen.add(frozenset((a, b)))
        return True

    def is_circle(self) -> bool:
        if not self.edges or len(self.edges) != len(self.vertices):
            return False
        deg = Counter()
        for _, a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return all(deg[v] == 2 for v in self.vertices) and self.is_connected()

    def is_connected(self) -> bool:
        g = nx.MultiGraph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from((a, b) for _, a, b in self.edges)
        return len(self.vertices) > 0 and nx.is_connected(g)

    def rank(self) -> int:
        return len(self.edges) - len(self.vertices) + 1

    def word_vertices(self, word) -> list:
        """Vertices visited by a closed word, one per position."""
        return [self.start(t) for t in word]


@dataclass(frozen=True)
class TubeEnd:
    graph: str
    word: tuple


@dataclass(frozen=True)
class Tube:
    name: str
    length: int
    end_a: TubeEnd
    end_b: TubeEnd
    cyclic: bool = True

    def end(self, side: int) -> TubeEnd:
        return self.end_a if side == 0 else self.end_b

    @property
    def horizontal_count(self) -> int:
        return self.length if self.cyclic else self.length + 1


@dataclass(frozen=True)
class TubularComplex:
    graphs: tuple
    tubes: tuple
    notes: tuple = field(default=(), compare=False)

    # ---- lookups -------------------------------------------------------
    @cached_property
    def graph_map(self) -> dict:
        return {g.name: g for g in self.graphs}

    def graph(self, name: str) -> VertexGraph:
        return self.graph_map[name]

    @cached_property
    def tube_map(self) -> dict:
        return {t.name: t for t in self.tubes}

    @property
    def square_count(self) -> int:
        return sum(t.length for t in self.tubes)

    @property
    def vertical_edge_count(self) -> int:
        return sum(len(g.edges) for g in self.graphs)

    @property
    def horizontal_edge_count(self) -> int:
        return sum(t.horizontal_count for t in self.tubes)

    @property
    def vertex_count(self) -> int:
        return sum(len(g.vertices) for g in self.graphs)

    def vertices(self) -> list:
        return [(g.name, v) for g in self.graphs for v in g.vertices]

    def tube_ends_in(self, graph: str) -> list:
        """(tube name, side) pairs attached to ``graph``."""
        return [(t.name, s) for t in self.tubes for s in (0, 1) if t.end(s).graph == graph]

    # ---- corners ---------------------------------------------------------
    def horizontal_vertex(self, tube: Tube, side: int, j: int):
        """Vertex of the side-``side`` graph at horizontal edge ``j``."""
        end = tube.end(side)
        g = self.graph(end.graph)
        if j < tube.length:
            return g.start(end.word[j])
        return g.end(end.word[j - 1])

    def corner_data(self, corner) -> tuple:
        """(graph, vertex, vertical half, horizontal half) of a corner id
        ``(tube, i, side, end)``."""
        tname, i, side, end = corner
        tube = self.tube_map[tname]
        te = tube.end(side)
        g = self.graph(te.graph)
        tok = te.word[i]
        if end == 0:
            vertex, half, j = g.start(tok), out_half(tok), i
        else:
            vertex, half, j = g.end(tok), in_half(tok), i + 1
            if tube.cyclic:
                j %= tube.length
        return te.graph, vertex, ("v",) + half, ("h", tname, j, side)

    @cached_property
    def corners_at(self) -> dict:
        out = defaultdict(list)
        for t in self.tubes:
            for i in range(t.length):
                for side in (0, 1):
                    for end in (0, 1):
                        c = (t.name, i, side, end)
                        g, v, _, _ = self.corner_data(c)
                        out[(g, v)].append(c)
        return {k: sorted(v) for k, v in out.items()}

    @cached_property
    def horizontal_halves_at(self) -> dict:
        out = defaultdict(list)
        for t in self.tubes:
            for side in (0, 1):
                gname = t.end(side).graph
                for j in range(t.horizontal_count):
                    out[(gname, self.horizontal_vertex(t, side, j))].append(("h", t.name, j, side))
        return {k: sorted(v) for k, v in out.items()}

    def halves_at(self, gname: str, v) -> list:
        vert = [("v",) + h for h in self.graph(gname).halves_at.get(v, [])]
        return vert + list(self.horizontal_halves_at.get((gname, v), []))

    @cached_property
    def squares_on_edge(self) -> dict:
        """Vertical edge (graph, e) -> sorted list of (tube, i, side, sign)."""
        out = defaultdict(list)
        for t in self.tubes:
            for i in range(t.length):
                for side in (0, 1):
                    te = t.end(side)
                    e, s = te.word[i]
                    out[(te.graph, e)].append((t.name, i, side, s))
        return {k: sorted(v) for k, v in out.items()}

    @cached_property
    def max_thickness(self) -> int:
        vals = [len(v) for v in self.squares_on_edge.values()]
        return max(vals + [2 if self.tubes else 0])

    def summary(self) -> str:
        return (f"{len(self.graphs)} vertex graphs, {len(self.tubes)} tubes, "
                f"V={self.vertex_count} E={self.vertical_edge_count} F={self.square_count}")


def make_graph(name: str, vertices, edges) -> VertexGraph:
    return VertexGraph(name, tuple(vertices), tuple((e, a, b) for e, a, b in edges))


def make_complex(graphs, tubes, notes=()) -> TubularComplex:
    return TubularComplex(tuple(sorted(graphs, key=lambda g: g.name)), tuple(tubes), tuple(notes))


# ---------------------------------------------------------------------------
# Links, thickness, Brady-Meier
# ---------------------------------------------------------------------------

def link_of(X: TubularComplex, vertex) -> nx.MultiGraph:
    """Link at ``vertex = (graph, v)``: half-edges joined by one edge per corner."""
    gname, v = vertex
    if gname not in X.graph_map or v not in X.graph(gname).vertices:
        raise KeyError(f"unknown vertex {vertex!r}")
    link = nx.MultiGraph()
    for h in X.halves_at(gname, v):
        link.add_node(h, kind="vertical" if h[0] == "v" else "horizontal")
    for c in X.corners_at.get(vertex, []):
        _, _, hv, hh = X.corner_data(c)
        link.add_edge(hv, hh, key=c)
    return link


def thickness_of(X: TubularComplex, edge) -> int:
    """``edge`` is ``("v", graph, e)`` or ``("h", tube, j)``."""
    if edge[0] == "v":
        _, gname, e = edge
        if gname not in X.graph_map or e not in X.graph(gname).ends:
            raise KeyError(f"unknown edge {edge!r}")
        return len(X.squares_on_edge.get((gname, e), []))
    if edge[0] == "h":
        _, tname, j = edge
        tube = X.tube_map.get(tname)
        if tube is None or not 0 <= j < tube.horizontal_count:
            raise KeyError(f"unknown edge {edge!r}")
        if tube.cyclic or 0 < j < tube.length:
            return 2
        return 1
    raise KeyError(f"unknown edge {edge!r}")


def link_failure(link: nx.MultiGraph):
    """Return None when the link is connected and stays connected after
    removing any vertex or edge, else (reason, simplex)."""
    if link.number_of_nodes() == 0:
        return ("empty link", None)
    iso = sorted((n for n in link if link.degree(n) == 0), key=repr)
    if iso:
        return ("isolated link vertex", iso[0])
    if not nx.is_connected(link):
        return ("disconnected link", None)
    if link.number_of_nodes() > 2:
        for n in sorted(link.nodes, key=repr):
            rest = link.copy()
            rest.remove_node(n)
            if not nx.is_connected(rest):
                return ("cut vertex", n)
    for u, w, k in sorted(link.edges(keys=True), key=repr):
        rest = link.copy()
        rest.remove_edge(u, w, key=k)
        if not nx.is_connected(rest):
            return ("bridge", k)
    return None


def brady_meier_check(X: TubularComplex):
    """(True, None) when every link passes, else (False, witness) where the
    witness is ``{"vertex", "reason", "simplex"}``."""
    found = []
    for vertex in X.vertices():
        bad = link_failure(link_of(X, vertex))
        if bad is not None:
            found.append((_SEVERITY.index(bad[0]), {"vertex": vertex, "reason": bad[0], "simplex": bad[1]}))
    if not found:
        return True, None
    # report the most severe failure, e.g. an isolated half-edge before a cut vertex
    return False, min(found, key=lambda f: f[0])[1]


_SEVERITY = ["empty link", "isolated link vertex", "disconnected link", "cut vertex", "bridge"]


def euler_characteristic(X: TubularComplex) -> int:
    return X.vertex_count - X.vertical_edge_count - X.horizontal_edge_count + X.square_count
