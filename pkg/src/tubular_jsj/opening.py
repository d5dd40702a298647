"""Opening a complex along a splitting cycle.

Every vertex ``u`` and edge ``e`` crossed by the cycle is replaced by the
dual tree of the lifted lines through a lift of it.  Each line has one side
per half-space label; two sides face each other when no third line runs
between them.  Black tree vertices are lines, white ones are regions.  Tree
edges at vertices become horizontal edges and tree edges at vertical edges
become squares; the cell bag is then regrouped into tubular form.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import networkx as nx

from .complex import TubularComplex, brady_meier_check, euler_characteristic, in_half, out_half
from .cycles import _Line, _pair_intersection, normalize_cycle
from .errors import JSJError, PreconditionError
from .separation import halfspace_labels, perm_power
from .squares import Square, VHComplex, to_tubular
from .validate import validate_complex


@dataclass(frozen=True)
class DualTree:
    anchor: tuple          # ("vertex", u) or ("edge", e)
    K: int
    lines: tuple           # occurrence positions of the root, one black vertex each
    whites: tuple          # white vertex ids
    edges: tuple           # (line, label, white)

    def graph(self) -> nx.Graph:
        G = nx.Graph()
        for r in self.lines:
            G.add_node(("b", r), colour="black")
        for w in self.whites:
            G.add_node(("w", w), colour="white")
        for r, _, w in self.edges:
            G.add_edge(("b", r), ("w", w))
        return G


class LocalWalls:
    """Lines of one splitting cycle through a lift of a vertex."""

    def __init__(self, X: TubularComplex, graph: str, root, H, u):
        self.X, self.graph, self.root, self.H, self.u = X, graph, tuple(root), H, u
        g = X.graph(graph)
        ell = len(root)
        self.lines = tuple(r for r in range(ell) if g.start(root[r]) == u)
        if not self.lines:
            raise PreconditionError(f"vertex {u!r} is not on the cycle")
        self.halves = {r: {("v",) + in_half(root[r - 1]), ("v",) + out_half(root[r])} for r in self.lines}
        line = _Line(root)
        self.side = {}
        for r in self.lines:
            for s in self.lines:
                if r == s:
                    continue
                rec = _pair_intersection(g, line, line, r, s)
                if rec is None:
                    raise JSJError("root is not primitive")
                k0 = H.label_at(r + rec.shift, ("v",) + tuple(rec.exits_b[0]))
                k1 = H.label_at(r + rec.shift + rec.length, ("v",) + tuple(rec.exits_b[1]))
                if k0 != k1:
                    raise PreconditionError("cycle crosses one of its translates")
                self.side[(r, s)] = k0

    def classes(self, lines=None) -> dict:
        """(line, label) -> white id for the family restricted to ``lines``."""
        lines = self.lines if lines is None else tuple(lines)
        parent = {(r, k): (r, k) for r in lines for k in range(self.H.K)}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for r in lines:
            for s in lines:
                if r >= s:
                    continue
                if any(self.side[(t, r)] != self.side[(t, s)] for t in lines if t not in (r, s)):
                    continue
                a, b = find((r, self.side[(r, s)])), find((s, self.side[(s, r)]))
                if a != b:
                    parent[a] = b
        roots = sorted({find(x) for x in parent})
        ids = {root: k for k, root in enumerate(roots)}
        out = {x: ids[find(x)] for x in parent}
        if len(roots) != len(lines) * (self.H.K - 1) + 1:
            raise JSJError(f"wall family at {self.u!r} is not laminar")
        return out

    def region(self, z, classes=None) -> int:
        """White vertex holding a germ that lies on none of the lines."""
        classes = self.classes() if classes is None else classes
        found = set()
        for r in self.lines:
            if z in self.halves[r]:
                raise PreconditionError(f"germ {z!r} lies on a line")
            lab = self.H.label_at(r, z)
            if all(self.H.label_at(t, z) == self.side[(t, r)] for t in self.lines if t != r):
                found.add(classes[(r, lab)])
        if len(found) != 1:
            raise JSJError(f"germ {z!r} has no consistent region")
        return found.pop()

    def tree(self, lines=None) -> DualTree:
        cl = self.classes(lines)
        lines = self.lines if lines is None else tuple(lines)
        edges = tuple((r, k, cl[(r, k)]) for r in lines for k in range(self.H.K))
        return DualTree(("vertex", self.u), self.H.K, lines, tuple(sorted(set(cl.values()))), edges)


def _edge_lines(X, graph, root, e):
    """For each occurrence of ``e`` in the root: (tail occurrence, head
    occurrence, deck shift from the tail parametrisation to the head one)."""
    ell = len(root)
    out = []
    for k, (ek, s) in enumerate(root):
        if ek != e:
            continue
        r_t = k if s > 0 else (k + 1) % ell
        p_h = r_t + 1 if s > 0 else r_t - 1
        r_h = p_h % ell
        out.append((r_t, r_h, (p_h - r_h) // ell))
    return out


@dataclass
class CycleContext:
    X: TubularComplex
    graph: str
    root: tuple
    H: object
    walls: dict = field(default_factory=dict)

    def at(self, u) -> LocalWalls:
        if u not in self.walls:
            self.walls[u] = LocalWalls(self.X, self.graph, self.root, self.H, u)
        return self.walls[u]


def _context(X, graph, word) -> CycleContext:
    rec = normalize_cycle(word, graph, X)
    H = halfspace_labels(X, graph, rec.word)
    if H.K < 2:
        raise PreconditionError("cycle is not UC-separating")
    return CycleContext(X, graph, rec.root, H)


def dual_tree_at(X: TubularComplex, graph: str, word, cell) -> DualTree:
    """``cell`` is ("vertex", u) or ("edge", e)."""
    ctx = _context(X, graph, word)
    kind, name = cell
    if kind == "vertex":
        return ctx.at(name).tree()
    g = X.graph(graph)
    lines = _edge_lines(X, graph, ctx.root, name)
    if not lines:
        raise PreconditionError(f"edge {name!r} is not on the cycle")
    walls = ctx.at(g.ends[name][0])
    t = walls.tree([r for r, _, _ in lines])
    return DualTree(("edge", name), t.K, t.lines, t.whites, t.edges)


@dataclass(frozen=True)
class YPrime:
    """Cells of X off the cycle image, with one stub per square side along
    a removed edge."""
    vertices: tuple
    edges: tuple
    stubs: tuple           # (removed edge, tube, square index, side)


def build_Y_prime(X: TubularComplex, graph: str, word) -> YPrime:
    rec = normalize_cycle(word, graph, X)
    g = X.graph(graph)
    on_v = {g.start(t) for t in rec.root}
    on_e = {t[0] for t in rec.root}
    verts = tuple((h.name, v) for h in X.graphs for v in h.vertices if h.name != graph or v not in on_v)
    edges = tuple((h.name, e) for h in X.graphs for e, _, _ in h.edges if h.name != graph or e not in on_e)
    stubs = tuple((e, t, i, side) for e in sorted(on_e)
                  for t, i, side, _ in X.squares_on_edge.get((graph, e), []))
    return YPrime(verts, edges, stubs)


@dataclass
class Opening:
    complex: TubularComplex
    edge_origin: dict       # (graph, edge) in the result -> (graph, edge) in the input
    graph_origin: dict      # result graph -> input graph


def open_along(X: TubularComplex, graph: str, word, tag: str = "x") -> Opening:
    ctx = _context(X, graph, word)
    g = X.graph(graph)
    R = ctx.root
    K = ctx.H.K
    on_v = sorted({g.start(t) for t in R}, key=repr)
    on_e = sorted({t[0] for t in R})
    classes = {u: ctx.at(u).classes() for u in on_v}

    vh = VHComplex()
    origin_vertex = {}

    def old_vertex(gname, v):
        return ("old", gname, v)

    for h in X.graphs:
        for v in h.vertices:
            if h.name == graph and v in on_v:
                continue
            vh.vertices[old_vertex(h.name, v)] = v
            origin_vertex[old_vertex(h.name, v)] = h.name
    for u in on_v:
        for r in ctx.at(u).lines:
            vid = ("B", graph, u, r)
            vh.vertices[vid] = f"{u}#{tag}b{r}"
            origin_vertex[vid] = graph
        for c in sorted(set(classes[u].values())):
            vid = ("W", graph, u, c)
            vh.vertices[vid] = f"{u}#{tag}w{c}"
            origin_vertex[vid] = graph

    def germ_vertex(gname, v, z):
        if gname == graph and v in classes:
            return ("W", graph, v, ctx.at(v).region(z, classes[v]))
        return old_vertex(gname, v)

    edge_origin = {}
    for h in X.graphs:
        for e, a, b in h.edges:
            if h.name == graph and e in on_e:
                continue
            eid = ("old", h.name, e)
            vh.vedges[eid] = (germ_vertex(h.name, a, ("v", e, 0)), germ_vertex(h.name, b, ("v", e, 1)))
            vh.vnames[eid] = e
            edge_origin[eid] = (h.name, e)

    # trees over the cycle's edges
    edge_white = {}     # (e, tail white id) -> T(e) white id
    for e in on_e:
        tail, head = g.ends[e]
        lines = _edge_lines(X, graph, R, e)
        wt, wh = ctx.at(tail), ctx.at(head)
        cl_e = wt.classes([r for r, _, _ in lines])
        head_of = {r_t: (r_h, d) for r_t, r_h, d in lines}
        # consistency with the head parametrisation
        cl_h = wh.classes([r_h for _, r_h, _ in lines])
        for (r_t, k), c in cl_e.items():
            r_h, d = head_of[r_t]
            for (s_t, j), c2 in cl_e.items():
                s_h, d2 = head_of[s_t]
                same_e = c == c2
                same_h = cl_h[(r_h, perm_power(ctx.H.sigma, -d % _order(ctx.H.sigma))[k])] == \
                    cl_h[(s_h, perm_power(ctx.H.sigma, -d2 % _order(ctx.H.sigma))[j])]
                if same_e != same_h:
                    raise JSJError(f"edge tree of {e!r} differs at its two ends")
        whites = {}
        for (r_t, k), c in sorted(cl_e.items()):
            whites.setdefault(c, (r_t, k))
        for r_t, r_h, d in lines:
            eid = ("E", graph, e, ("b", r_t))
            vh.vedges[eid] = (("B", graph, tail, r_t), ("B", graph, head, r_h))
            vh.vnames[eid] = f"{e}#{tag}b{r_t}"
            edge_origin[eid] = (graph, e)
        for c, (r_t, k) in sorted(whites.items()):
            r_h, d = head_of[r_t]
            kh = perm_power(ctx.H.sigma, -d % _order(ctx.H.sigma))[k]
            eid = ("E", graph, e, ("w", c))
            vh.vedges[eid] = (("W", graph, tail, classes[tail][(r_t, k)]),
                              ("W", graph, head, classes[head][(r_h, kh)]))
            vh.vnames[eid] = f"{e}#{tag}w{c}"
            edge_origin[eid] = (graph, e)
            edge_white[(e, classes[tail][(r_t, k)])] = c
        for r_t, r_h, d in lines:
            for k in range(K):
                kh = perm_power(ctx.H.sigma, -d % _order(ctx.H.sigma))[k]
                vh.squares.append(Square((("E", graph, e, ("b", r_t)), 1),
                                         (("E", graph, e, ("w", cl_e[(r_t, k)])), 1),
                                         ("N", graph, tail, r_t, k), ("N", graph, head, r_h, kh)))
    for u in on_v:
        for r in ctx.at(u).lines:
            for k in range(K):
                vh.hedges[("N", graph, u, r, k)] = (("B", graph, u, r), ("W", graph, u, classes[u][(r, k)]))

    # old horizontal edges and squares
    for t in X.tubes:
        for j in range(t.horizontal_count):
            ends = []
            for side in (0, 1):
                gname = t.end(side).graph
                v = X.horizontal_vertex(t, side, j)
                ends.append(germ_vertex(gname, v, ("h", t.name, j, side)))
            vh.hedges[("h", t.name, j)] = tuple(ends)
        for i in range(t.length):
            toks = []
            for side in (0, 1):
                te = t.end(side)
                e, s = te.word[i]
                if te.graph == graph and e in on_e:
                    tail = g.ends[e][0]
                    j = i if s > 0 else (i + 1) % t.length
                    c_tail = ctx.at(tail).region(("h", t.name, j, side), classes[tail])
                    if (e, c_tail) not in edge_white:
                        raise JSJError(f"square ({t.name}, {i}) meets no region of {e!r}")
                    toks.append((("E", graph, e, ("w", edge_white[(e, c_tail)])), s))
                else:
                    toks.append((("old", te.graph, e), s))
            vh.squares.append(Square(toks[0], toks[1], ("h", t.name, i), ("h", t.name, (i + 1) % t.length),
                                     t.name))

    chi = euler_characteristic(X)
    if vh.euler_characteristic() != chi:
        raise JSJError(f"opening changed the Euler characteristic ({chi} -> {vh.euler_characteristic()})")
    Y, gname_of, edge_graph = to_tubular(vh, graph_name=lambda comp, k: origin_vertex[comp[0]],
                                         tube_prefix=f"{tag}t")
    rep = validate_complex(Y)
    if not rep.ok:
        raise JSJError("opened complex is invalid: " + "; ".join(rep.violations[:5]))
    origin = {(edge_graph[eid], vh.vnames[eid]): src for eid, src in edge_origin.items()}
    gorigin = {gname_of[v]: origin_vertex[v] for v in vh.vertices}
    return Opening(Y, origin, gorigin)


def _order(p) -> int:
    from .separation import perm_order
    return perm_order(p)


# ---------------------------------------------------------------------------
# iterated opening
# ---------------------------------------------------------------------------

def lift_cycle(op_origin: dict, Y: TubularComplex, graph: str, word):
    """A closed immersed path in ``Y`` projecting to ``word`` in ``graph``,
    or None."""
    word = tuple(word)
    for h in Y.graphs:
        by_start = {}
        for e, a, b in h.edges:
            src = op_origin.get((h.name, e))
            if src is None or src[0] != graph:
                continue
            by_start.setdefault(a, []).append(((e, 1), src[1], 1, b))
            by_start.setdefault(b, []).append(((e, -1), src[1], -1, a))
        for v0 in h.vertices:
            stack = [(v0, ())]
            while stack:
                v, path = stack.pop()
                k = len(path)
                if k == len(word):
                    if v == v0:
                        return h.name, path
                    continue
                want = word[k]
                for tok, oe, s, w in by_start.get(v, []):
                    if (oe, s) == want:
                        stack.append((w, path + (tok,)))
    return None


@dataclass
class OpeningLog:
    complex: TubularComplex
    opened: list            # (cycle word as str, graph in the current complex)
    skipped: list
    origin: dict            # edge of the result -> edge of the input
    graph_origin: dict      # graph of the result -> graph of the input


def build_X_prime(X: TubularComplex, cycles) -> OpeningLog:
    """Open along each listed cycle that still lifts to a vertical cycle."""
    cur = X
    origin = {(h.name, e): (h.name, e) for h in X.graphs for e, _, _ in h.edges}
    gorigin = {h.name: h.name for h in X.graphs}
    opened, skipped = [], []
    for step, C in enumerate(cycles):
        lifted = lift_cycle(origin, cur, C.graph, C.word)
        if lifted is None:
            skipped.append((str(C), C.graph))
            continue
        gname, path = lifted
        h = cur.graph(gname)
        if h.is_circle() and len(path) == len(h.edges):
            # already a cyclic piece; opening would only add circle-to-circle strips
            skipped.append((str(C), C.graph))
            continue
        if halfspace_labels(cur, gname, path).K < 2:
            skipped.append((str(C), C.graph))
            continue
        op = open_along(cur, gname, path, tag=f"x{step}")
        origin = {k: origin[v] for k, v in op.edge_origin.items()}
        gorigin = {k: gorigin[v] for k, v in op.graph_origin.items()}
        cur = op.complex
        opened.append((str(C), gname))
        ok, witness = brady_meier_check(cur)
        if not ok:
            raise JSJError(f"opening along {C} broke the Brady-Meier condition at {witness}")
    return OpeningLog(cur, opened, skipped, origin, gorigin)
