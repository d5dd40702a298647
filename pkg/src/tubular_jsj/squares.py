"""Plain VH square complexes and their conversion to tubular form.

A VH complex here is a bag of cells: vertical edges (tail, head), horizontal
edges (a-end, b-end) and squares.  A square records its two vertical sides as
oriented tokens, ``a`` running along the a-ends of its horizontal sides and
``b`` along the b-ends, from horizontal edge ``h0`` to ``h1``.  Tubes are
recovered by walking squares across shared horizontal edges; vertex graphs
are the components of the vertical 1-skeleton.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .complex import Tube, TubeEnd, TubularComplex, inverse, make_complex, make_graph
from .errors import JSJError


@dataclass
class Square:
    a: tuple
    b: tuple
    h0: object
    h1: object
    hint: str | None = None

    def flipped(self) -> "Square":
        return Square(inverse(self.a), inverse(self.b), self.h1, self.h0, self.hint)


@dataclass
class VHComplex:
    vertices: dict = field(default_factory=dict)   # id -> display name
    vedges: dict = field(default_factory=dict)     # id -> (tail, head)
    vnames: dict = field(default_factory=dict)     # edge id -> display name
    hedges: dict = field(default_factory=dict)     # id -> (a vertex, b vertex)
    squares: list = field(default_factory=list)

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.vedges) - len(self.hedges) + len(self.squares)


def to_tubular(vh: VHComplex, graph_name=None, tube_prefix: str = "T") -> tuple:
    """Return (complex, vertex id -> graph name, vertical edge id -> graph name).
    Horizontal edges on a single square end an open strip."""
    parent = {v: v for v in vh.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in vh.vedges.values():
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    comps = {}
    for v in vh.vertices:
        comps.setdefault(find(v), []).append(v)
    ordered = sorted((sorted(c, key=repr) for c in comps.values()), key=lambda c: repr(c[0]))
    gname_of, used_names = {}, set()
    for k, comp in enumerate(ordered):
        name = graph_name(comp, k) if graph_name else f"G{k}"
        base, n = name, 1
        while name in used_names:
            name = f"{base}.{n}"
            n += 1
        used_names.add(name)
        for v in comp:
            gname_of[v] = name
    edges_by_graph = {}
    for eid, (a, b) in sorted(vh.vedges.items(), key=lambda kv: repr(kv[0])):
        edges_by_graph.setdefault(gname_of[a], []).append((vh.vnames.get(eid, str(eid)), vh.vertices[a],
                                                          vh.vertices[b]))
    graphs = []
    for comp in ordered:
        name = gname_of[comp[0]]
        graphs.append(make_graph(name, [vh.vertices[v] for v in comp], edges_by_graph.get(name, [])))
    edge_graph = {eid: gname_of[a] for eid, (a, _) in vh.vedges.items()}

    incid = {}
    for idx, sq in enumerate(vh.squares):
        incid.setdefault(sq.h0, []).append(idx)
        incid.setdefault(sq.h1, []).append(idx)
    for h in vh.hedges:
        if len(incid.get(h, [])) not in (1, 2):
            raise JSJError(f"horizontal edge {h!r} lies in {len(incid.get(h, []))} squares, expected 1 or 2")

    def token(tok):
        return (vh.vnames.get(tok[0], str(tok[0])), tok[1])

    def other_square(h, idx):
        pair = incid[h]
        if len(pair) == 1:
            return None
        return pair[0] if pair[1] == idx else pair[1]

    done = [False] * len(vh.squares)
    tubes, tube_names = [], set()

    def walk(start, sq, cyclic):
        seq, idx = [], start
        while True:
            done[idx] = True
            seq.append(sq)
            nxt = other_square(sq.h1, idx)
            if nxt is None:
                return seq
            nsq = vh.squares[nxt]
            nsq = nsq if nsq.h0 == sq.h1 else nsq.flipped()
            if nxt == start:
                if not cyclic or nsq.h0 != seq[0].h0:
                    raise JSJError("non-orientable tube")
                return seq
            if done[nxt]:
                raise JSJError("inconsistent square walk")
            idx, sq = nxt, nsq

    def emit(seq, cyclic):
        hint = next((s.hint for s in seq if s.hint), None) or f"{tube_prefix}{len(tubes)}"
        name, n = hint, 1
        while name in tube_names:
            name = f"{hint}.{n}"
            n += 1
        tube_names.add(name)
        ga = edge_graph[seq[0].a[0]]
        gb = edge_graph[seq[0].b[0]]
        tubes.append(Tube(name, len(seq), TubeEnd(ga, tuple(token(s.a) for s in seq)),
                          TubeEnd(gb, tuple(token(s.b) for s in seq)), cyclic))

    # open strips first, walked from their boundary edge with the smaller repr
    ends = sorted((h for h, sqs in incid.items() if len(sqs) == 1), key=repr)
    for h in ends:
        idx = incid[h][0]
        if done[idx]:
            continue
        sq = vh.squares[idx]
        emit(walk(idx, sq if sq.h0 == h else sq.flipped(), False), False)
    for start in range(len(vh.squares)):
        if not done[start]:
            emit(walk(start, vh.squares[start], True), True)
    tubes.sort(key=lambda t: t.name)
    return make_complex(graphs, tubes), gname_of, edge_graph


def from_tubular(X: TubularComplex) -> VHComplex:
    """Cell bag of a tubular complex, with ids built from the original names."""
    vh = VHComplex()
    for g in X.graphs:
        for v in g.vertices:
            vh.vertices[(g.name, v)] = v
        for e, a, b in g.edges:
            vh.vedges[(g.name, e)] = ((g.name, a), (g.name, b))
            vh.vnames[(g.name, e)] = e
    for t in X.tubes:
        for j in range(t.horizontal_count):
            va = X.horizontal_vertex(t, 0, j)
            vb = X.horizontal_vertex(t, 1, j)
            vh.hedges[("h", t.name, j)] = ((t.end_a.graph, va), (t.end_b.graph, vb))
        for i in range(t.length):
            ea, sa = t.end_a.word[i]
            eb, sb = t.end_b.word[i]
            vh.squares.append(Square(((t.end_a.graph, ea), sa), ((t.end_b.graph, eb), sb),
                                     ("h", t.name, i), ("h", t.name, (i + 1) % t.horizontal_count), t.name))
    return vh
