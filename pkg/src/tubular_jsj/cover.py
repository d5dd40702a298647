"""Finite pieces of the universal cover.

Two tools live here.  ``line_complement_count`` counts the components of the
cover minus a lifted vertical line by working in the tree of spaces: every
tube lift meeting the line is a strip whose complement glues together the
germs it touches.  ``develop_ball`` builds cubical neighbourhoods from a
normal form for cover vertices (vertical tree paths separated by strip
crossings); lifted lines and their intersections are read off the ball.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import networkx as nx

from .complex import TubularComplex, in_half, inverse, invert_word, out_half
from .cycles import normalize_cycle
from .errors import PreconditionError, ResourceCapError
from .separation import CrossingInstance, halfspace_labels

# ---------------------------------------------------------------------------
# line complement oracle
# ---------------------------------------------------------------------------


def default_radius(X: TubularComplex, word) -> int:
    rec = normalize_cycle(word)
    return len(rec.root) * 2 ** max(X.max_thickness, 1)


def line_complement_count(X: TubularComplex, graph: str, word, radius: int | None = None) -> int:
    """Components of (cover minus the line of ``word``) meeting one period of
    the line, using germs at line vertices within ``radius``."""
    rec = normalize_cycle(word, graph, X)
    R = rec.root
    ell = len(R)
    D = default_radius(X, word) if radius is None else radius
    g = X.graph(graph)

    def tok(p):
        return R[p % ell]

    def vert(p):
        return g.start(tok(p))

    parent = {}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for p in range(-D, D + 1):
        on_line = {("v",) + in_half(tok(p - 1)), ("v",) + out_half(tok(p))}
        for h in X.halves_at(graph, vert(p)):
            if h not in on_line:
                parent[(p, h)] = (p, h)

    for t in X.tubes:
        if not t.cyclic:
            raise PreconditionError("line oracle needs closed tubes")
        for side in (0, 1):
            if t.end(side).graph != graph:
                continue
            W = t.end(side).word
            n = len(W)
            for orient in (1, -1):
                Wo = W if orient == 1 else invert_word(W)

                def windex(j):
                    return j % n if orient == 1 else (-j) % n

                seen = set()
                for p in range(-D, D + 1):
                    for q in range(n):
                        if g.start(Wo[q]) != vert(p):
                            continue
                        f = 0
                        while p + f < D and tok(p + f) == Wo[(q + f) % n]:
                            f += 1
                        b = 0
                        while p - b > -D and tok(p - 1 - b) == Wo[(q - 1 - b) % n]:
                            b += 1
                        x0, x1 = p - b, p + f
                        key = (x0, windex(q - b))
                        if key in seen:
                            continue
                        seen.add(key)
                        germs = [(x, ("h", t.name, windex(q + x - p), side)) for x in range(x0, x1 + 1)]
                        if x0 > -D:
                            germs.append((x0, ("v",) + in_half(Wo[(q - b - 1) % n])))
                        if x1 < D:
                            germs.append((x1, ("v",) + out_half(Wo[(q + f) % n])))
                        if any(z not in parent for z in germs):
                            continue  # runs back along the line; seen in the other orientation
                        for z in germs[1:]:
                            union(germs[0], z)
    central = {find(k) for k in parent if 0 <= k[0] < ell}
    return len(central)


# ---------------------------------------------------------------------------
# normal forms and ball development
# ---------------------------------------------------------------------------
# A cover vertex is a tuple of blocks alternating between tree segments
# (graph, start vertex, tokens) and crossings ("x", tube, from side, index).


class _Developer:
    def __init__(self, X: TubularComplex, graph: str, vertex):
        self.X = X
        self.base = ((graph, vertex, ()),)

    def project(self, nf):
        gname, v0, toks = nf[-1][:3]
        g = self.X.graph(gname)
        return gname, (g.end(toks[-1]) if toks else v0)

    def _tube_word(self, tname, side):
        return self.X.tube_map[tname].end(side).word

    def step_vertical(self, nf, tok):
        gname, v0, toks = nf[-1]
        if toks and toks[-1] == inverse(tok):
            return nf[:-1] + ((gname, v0, toks[:-1]),)
        if not toks and len(nf) > 1:
            # slide across the preceding crossing when tok runs along the strip
            tname, side, i = nf[-2][1:]
            t = self.X.tube_map[tname]
            n = t.length
            near, far = self._tube_word(tname, side), self._tube_word(tname, 1 - side)
            if (t.cyclic or i < n) and tok == far[i % n]:
                moved = self.step_vertical(nf[:-2], near[i % n])
                return self.step_cross(moved, tname, side, (i + 1) % t.horizontal_count)
            if (t.cyclic or i > 0) and tok == inverse(far[(i - 1) % n]):
                moved = self.step_vertical(nf[:-2], inverse(near[(i - 1) % n]))
                return self.step_cross(moved, tname, side, (i - 1) % t.horizontal_count)
        return nf[:-1] + ((gname, v0, toks + (tok,)),)

    def step_cross(self, nf, tname, side, j):
        """Cross tube ``tname`` from ``side`` along horizontal edge ``j``."""
        t = self.X.tube_map[tname]
        gname, v0, toks = nf[-1]
        if not toks and len(nf) > 1 and nf[-2][1:] == (tname, 1 - side, j):
            return nf[:-2]
        other = t.end(1 - side)
        v = self.X.horizontal_vertex(t, 1 - side, j)
        return nf + (("x", tname, side, j), (other.graph, v, ()))

    def neighbours(self, nf):
        """(kind, neighbour) over all edges at a cover vertex."""
        gname, v = self.project(nf)
        g = self.X.graph(gname)
        out = []
        for e, a, b in g.edges:
            if a == v:
                out.append(("V", self.step_vertical(nf, (e, 1))))
            if b == v:
                out.append(("V", self.step_vertical(nf, (e, -1))))
        for h in self.X.horizontal_halves_at.get((gname, v), []):
            _, tname, j, side = h
            out.append(("H", self.step_cross(nf, tname, side, j)))
        return out


@dataclass
class Ball:
    X: TubularComplex
    base: tuple
    radius: int
    distance: dict                 # normal form -> cubical distance from base
    projection: dict               # normal form -> (graph, vertex)
    edges: dict = field(default_factory=dict)   # frozenset pair -> "V" | "H"

    def graph(self) -> nx.Graph:
        if "_graph" in self.__dict__:
            return self.__dict__["_graph"]
        G = self.__dict__["_graph"] = nx.Graph()
        G.add_nodes_from(self.distance)
        for pair, kind in self.edges.items():
            a, b = tuple(pair)
            G.add_edge(a, b, kind=kind)
        return G


def develop_ball(X: TubularComplex, basepoint, D: int, max_vertices: int = 200_000) -> Ball:
    """Cubical D-neighbourhood of a lift of ``basepoint = (graph, vertex)``."""
    if D < 0:
        raise PreconditionError("radius must be non-negative")
    dev = _Developer(X, *basepoint)
    base = dev.base
    cache = {}

    def nbrs(nf):
        if nf not in cache:
            cache[nf] = dev.neighbours(nf)
        return cache[nf]

    dist = {base: 0}
    proj = {base: dev.project(base)}
    queue = deque([base])
    while queue:
        nf = queue.popleft()
        d = dist[nf]
        if d == D:
            continue
        # cubical neighbourhood: edge neighbours and square diagonals
        vert = [m for k, m in nbrs(nf) if k == "V"]
        hor = {m for k, m in nbrs(nf) if k == "H"}
        layer = vert + sorted(hor, key=repr)
        for a in vert:
            for k2, m in nbrs(a):
                if k2 == "H" and any(x in hor for k3, x in nbrs(m) if k3 == "V"):
                    layer.append(m)
        for m in layer:
            if m not in dist:
                dist[m] = d + 1
                proj[m] = dev.project(m)
                if len(dist) > max_vertices:
                    raise ResourceCapError(f"ball exceeds {max_vertices} vertices")
                queue.append(m)
    edges = {}
    for nf in dist:
        for kind, m in nbrs(nf):
            if m in dist:
                edges[frozenset((nf, m))] = kind
    return Ball(X, base, D, dist, proj, edges)


def ball_link(ball: Ball, nf) -> nx.MultiGraph:
    """Link of a ball vertex from the ball alone: neighbours joined along
    4-cycles of alternating vertical and horizontal edges."""
    G = ball.graph()
    link = nx.MultiGraph()
    nbrs = list(G[nf])
    for a in nbrs:
        link.add_node(a, kind="vertical" if G[nf][a]["kind"] == "V" else "horizontal")
    for a in nbrs:
        if G[nf][a]["kind"] != "V":
            continue
        for b in nbrs:
            if G[nf][b]["kind"] != "H":
                continue
            for d in set(G[a]) & set(G[b]):
                if d != nf:
                    link.add_edge(a, b)
    return link


# ---------------------------------------------------------------------------
# lifted lines
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LiftedLine:
    graph: str
    root: tuple
    offset: int          # root position of the anchor vertex
    vertices: tuple      # ball vertices, consecutive along the line
    first_position: int  # root position of vertices[0] (absolute)

    def position_of(self, nf) -> int:
        return self.first_position + self.vertices.index(nf)


def _walk(ball: Ball, dev: _Developer, start, tokens_fn, limit):
    out, cur = [], start
    for k in range(limit):
        nxt = dev.step_vertical(cur, tokens_fn(k))
        if nxt not in ball.distance:
            break
        out.append(nxt)
        cur = nxt
    return out


def lifts_through(ball: Ball, word, cell) -> list:
    """One lifted line per occurrence of the cell's projection in the cycle.
    ``cell`` is a ball vertex or a pair of adjacent ball vertices."""
    rec = normalize_cycle(word)
    R = rec.root
    ell = len(R)
    dev = _Developer(ball.X, *ball.projection[ball.base])
    if isinstance(cell, frozenset) or (isinstance(cell, tuple) and len(cell) == 2 and cell[0] in ball.distance):
        a, b = tuple(cell)
        anchors = []
        for k in range(ell):
            if dev.step_vertical(a, R[k]) == b:
                anchors.append((k, a))
            elif dev.step_vertical(b, R[k]) == a:
                anchors.append((k, b))
    else:
        gname, v = ball.projection[cell]
        g = ball.X.graph(gname)
        anchors = [(k, cell) for k in range(ell) if g.start(R[k]) == v]
    gname = ball.projection[cell if cell in ball.distance else tuple(cell)[0]][0]
    if not anchors:
        raise PreconditionError("cell projection is not on the cycle")
    lines = []
    limit = 4 * ball.radius + 4
    for k, anchor in anchors:
        fwd = _walk(ball, dev, anchor, lambda s: R[(k + s) % ell], limit)
        back = _walk(ball, dev, anchor, lambda s: inverse(R[(k - 1 - s) % ell]), limit)
        verts = tuple(reversed(back)) + (anchor,) + tuple(fwd)
        lines.append(LiftedLine(gname, R, k, verts, k - len(back)))
    return lines


@dataclass(frozen=True)
class SegmentReport:
    status: str                      # "empty" | "equal" | "segment"
    instance: CrossingInstance | None = None
    sides: tuple = ()                # labels of line 2's exits in line 1's half-spaces


def segment_and_sides(ball: Ball, X: TubularComplex, L1: LiftedLine, L2: LiftedLine) -> SegmentReport:
    common = [v for v in L1.vertices if v in set(L2.vertices)]
    if not common:
        return SegmentReport("empty")
    if set(L1.vertices) == set(L2.vertices):
        return SegmentReport("equal")
    i0, i1 = L1.vertices.index(common[0]), L1.vertices.index(common[-1])
    if i1 - i0 + 1 != len(common):
        raise PreconditionError("intersection is not a segment")
    j0, j1 = L2.vertices.index(common[0]), L2.vertices.index(common[-1])
    if i0 == 0 or i1 == len(L1.vertices) - 1 or min(j0, j1) == 0 or max(j0, j1) == len(L2.vertices) - 1:
        raise PreconditionError("intersection reaches the ball boundary; enlarge the radius")
    ell1, ell2 = len(L1.root), len(L2.root)
    p1 = L1.first_position + i0
    seg = tuple(L1.root[(p1 + s) % ell1] for s in range(i1 - i0))
    n = len(seg)
    a_exits = (in_half(L1.root[(p1 - 1) % ell1]), out_half(L1.root[(p1 + n) % ell1]))
    q1 = L2.first_position + j0
    if j1 >= j0:
        b_exits = (in_half(L2.root[(q1 - 1) % ell2]), out_half(L2.root[(q1 + n) % ell2]))
    else:
        b_exits = (out_half(L2.root[q1 % ell2]), in_half(L2.root[(q1 - n - 1) % ell2]))

    def nodes(pair):
        return (("h", 0, ("v",) + pair[0]), ("h", n, ("v",) + pair[1]))

    gname, v0 = ball.projection[common[0]]
    inst = CrossingInstance(gname, seg, v0, nodes(a_exits), nodes(b_exits))
    H = halfspace_labels(X, gname, L1.root)
    sides = ()
    if H.K > 1:
        sides = (H.label_at(p1, ("v",) + b_exits[0]), H.label_at(p1 + n, ("v",) + b_exits[1]))
    return SegmentReport("segment", inst, sides)
