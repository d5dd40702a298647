"""From an opened complex to a graph of cyclic, surface and rigid pieces."""
from __future__ import annotations

from dataclasses import dataclass, field

from .complex import Tube, TubeEnd, TubularComplex, brady_meier_check, inverse, make_complex
from .errors import ClosedSurfaceError, JSJError, PreconditionError


# ---------------------------------------------------------------------------
# removing tubes between circles
# ---------------------------------------------------------------------------

def _is_iso(X: TubularComplex, end: TubeEnd) -> bool:
    g = X.graph(end.graph)
    return g.is_circle() and len(end.word) == len(g.edges)


def _rewrite(word, table):
    return tuple(table[t[0]] if t[1] > 0 else inverse(table[t[0]]) for t in word)


def build_X_doubleprime(X: TubularComplex, absorbed: dict | None = None) -> TubularComplex:
    """Remove every tube joining two distinct circle graphs, folding the
    circle with the bijective attachment onto the other one.  ``absorbed``,
    when given, collects for each surviving graph the graphs folded into it."""
    cur = X
    if absorbed is None:
        absorbed = {}
    while True:
        target = None
        for t in cur.tubes:
            ga, gb = cur.graph(t.end_a.graph), cur.graph(t.end_b.graph)
            if ga.name != gb.name and ga.is_circle() and gb.is_circle():
                target = t
                break
        if target is None:
            return cur
        t = target
        if _is_iso(cur, t.end_a):
            gone, keep = t.end_a, t.end_b
        elif _is_iso(cur, t.end_b):
            gone, keep = t.end_b, t.end_a
        else:
            raise JSJError(f"tube {t.name} joins two circles but neither attachment is bijective")
        absorbed.setdefault(keep.graph, set()).update({gone.graph} | absorbed.pop(gone.graph, set()))
        table = {}
        for tok, img in zip(gone.word, keep.word):
            table[tok[0]] = img if tok[1] > 0 else inverse(img)
        tubes = []
        for u in cur.tubes:
            if u.name == t.name:
                continue
            ends = []
            for side in (0, 1):
                end = u.end(side)
                if end.graph == gone.graph:
                    end = TubeEnd(keep.graph, _rewrite(end.word, table))
                ends.append(end)
            tubes.append(Tube(u.name, u.length, ends[0], ends[1], u.cyclic))
        cur = make_complex([g for g in cur.graphs if g.name != gone.graph], tubes, cur.notes)


# ---------------------------------------------------------------------------
# surface detection
# ---------------------------------------------------------------------------

def double_thickness(X: TubularComplex, gname: str) -> dict:
    """Thickness of each edge of ``gname`` in its double: the number of
    traversals by the attaching cycles of incident tube ends."""
    g = X.graph(gname)
    out = {e: 0 for e, _, _ in g.edges}
    for t in X.tubes:
        for side in (0, 1):
            if t.end(side).graph == gname:
                for e, _ in t.end(side).word:
                    out[e] += 1
    return out


def detect_surface_graph(X: TubularComplex, gname: str) -> bool:
    g = X.graph(gname)
    if g.is_circle() or not g.edges:
        return False
    return all(v == 2 for v in double_thickness(X, gname).values())


# ---------------------------------------------------------------------------
# assembly
# ---------------------------------------------------------------------------

@dataclass
class JVertex:
    id: str
    kind: str                  # "cyclic" | "surface" | "rigid"
    graphs: tuple              # vertex graphs of the complex represented here
    rank: int | None = None    # rank of the free vertex group
    length: int | None = None  # circle length, cyclic vertices only


@dataclass
class JEdge:
    id: str
    cyclic: str
    other: str
    word_cyclic: tuple
    word_other: tuple


@dataclass
class DecompositionGraph:
    vertices: list = field(default_factory=list)
    edges: list = field(default_factory=list)
    stubs: list = field(default_factory=list)   # edges to peripheral vertices left outside

    def vertex(self, vid: str) -> JVertex:
        return next(v for v in self.vertices if v.id == vid)

    def valence(self, vid: str) -> int:
        return sum((e.cyclic == vid) + (e.other == vid) for e in self.edges)

    def kinds(self) -> dict:
        return {v.id: v.kind for v in self.vertices}

    def check(self, X: TubularComplex | None = None) -> list:
        """Invariant violations (empty when the graph is well formed)."""
        problems = []
        kinds = self.kinds()
        for e in self.edges:
            if (kinds[e.cyclic] == "cyclic") == (kinds[e.other] == "cyclic"):
                problems.append(f"edge {e.id} does not have exactly one cyclic end")
        for v in self.vertices:
            if v.kind != "cyclic":
                continue
            inc = [e for e in self.edges if e.cyclic == v.id]
            if len(inc) == 1 and v.length is not None and len(inc[0].word_cyclic) == v.length:
                problems.append(f"cyclic vertex {v.id} has valence 1 with a surjective edge")
            if len(inc) == 2 and all(kinds[e.other] == "surface" for e in inc):
                problems.append(f"cyclic vertex {v.id} sits between two surface vertices")
        return problems


def assemble_jsj(X: TubularComplex) -> DecompositionGraph:
    ok, witness = brady_meier_check(X)
    if not ok:
        raise PreconditionError(f"complex is not Brady-Meier: {witness}")
    D = DecompositionGraph()
    for g in X.graphs:
        if g.is_circle():
            D.vertices.append(JVertex(g.name, "cyclic", (g.name,), 1, len(g.edges)))
        elif detect_surface_graph(X, g.name):
            D.vertices.append(JVertex(g.name, "surface", (g.name,), g.rank()))
        else:
            D.vertices.append(JVertex(g.name, "rigid", (g.name,), g.rank()))
    kinds = D.kinds()
    for t in X.tubes:
        ka, kb = kinds[t.end_a.graph], kinds[t.end_b.graph]
        if ka == "cyclic" and kb == "cyclic":
            raise JSJError(f"tube {t.name} joins two circles; remove such tubes first")
        if ka == "cyclic":
            D.edges.append(JEdge(t.name, t.end_a.graph, t.end_b.graph, t.end_a.word, t.end_b.word))
        elif kb == "cyclic":
            D.edges.append(JEdge(t.name, t.end_b.graph, t.end_a.graph, t.end_b.word, t.end_a.word))
        else:
            cid = f"{t.name}.c"
            circ = tuple((f"c{i}", 1) for i in range(t.length))
            D.vertices.append(JVertex(cid, "cyclic", (), 1, t.length))
            D.edges.append(JEdge(f"{t.name}.a", cid, t.end_a.graph, circ, t.end_a.word))
            D.edges.append(JEdge(f"{t.name}.b", cid, t.end_b.graph, circ, t.end_b.word))
    collapse_surfaces(D)
    if len(D.vertices) == 1 and not D.edges and D.vertices[0].kind == "surface":
        raise ClosedSurfaceError("closed surface group — JSJ undefined")
    D.vertices.sort(key=lambda v: v.id)
    D.edges.sort(key=lambda e: e.id)
    return D


def collapse_surfaces(D: DecompositionGraph) -> None:
    while True:
        kinds = D.kinds()
        hit = None
        for v in sorted(D.vertices, key=lambda v: v.id):
            if v.kind != "cyclic":
                continue
            inc = [e for e in D.edges if e.cyclic == v.id]
            if len(inc) == 2 and all(kinds[e.other] == "surface" for e in inc):
                hit = (v, inc)
                break
        if hit is None:
            return
        v, inc = hit
        for e in inc:
            if len(e.word_cyclic) != v.length:
                raise JSJError(f"cyclic vertex {v.id} attaches with degree > 1; no surface gluing")
        s1, s2 = D.vertex(inc[0].other), D.vertex(inc[1].other)
        members = tuple(sorted(set(s1.graphs + s2.graphs + v.graphs)))
        merged_id = "+".join(sorted({s1.id, s2.id}))
        rank = None if s1.rank is None or s2.rank is None else \
            (s1.rank + s2.rank - 1 if s1.id != s2.id else s1.rank)
        drop = {v.id, s1.id, s2.id}
        D.vertices = [w for w in D.vertices if w.id not in drop] + \
            [JVertex(merged_id, "surface", members, rank)]
        edges = []
        for e in D.edges:
            if e in inc:
                continue
            other = merged_id if e.other in (s1.id, s2.id) else e.other
            edges.append(JEdge(e.id, e.cyclic, other, e.word_cyclic, e.word_other))
        D.edges = edges
