"""Regular spheres of immersed vertical paths and cycles.

Sphere vertices carry provenance names:

* ``("h", i, half)``: a half-edge at path index ``i`` not used by the path;
* ``("c", i, corner)``: a square corner at index ``i`` whose vertical
  half-edge is not used by the path;
* ``("strip", k, (tube, i, side))``: the square side running along the
  ``k``-th path edge; it joins the horizontal half-edges at both ends;
* ``("stub", i, corner)``: leaves left behind when an end marker is removed
  from an orthogonal sphere.

Everything is computed from local data of X.
"""
from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from .complex import TubularComplex, in_half, inverse, out_half
from .errors import PreconditionError
from .validate import word_problems


@dataclass(frozen=True)
class ImmersedPath:
    graph: str
    tokens: tuple
    start: object = None
    cyclic: bool = False

    def __len__(self) -> int:
        return len(self.tokens)


def path_vertices(X: TubularComplex, path: ImmersedPath) -> list:
    g = X.graph(path.graph)
    if not path.tokens:
        return [path.start]
    vs = [g.start(path.tokens[0])] + [g.end(t) for t in path.tokens]
    return vs[:-1] if path.cyclic else vs


def _vh(half) -> tuple:
    return ("v",) + tuple(half)


def used_halves(path: ImmersedPath, i: int) -> set:
    toks, n = path.tokens, len(path.tokens)
    used = set()
    if path.cyclic:
        used.add(_vh(in_half(toks[(i - 1) % n])))
        used.add(_vh(out_half(toks[i % n])))
        return used
    if i >= 1:
        used.add(_vh(in_half(toks[i - 1])))
    if i < n:
        used.add(_vh(out_half(toks[i])))
    return used


def check_immersed(X: TubularComplex, path: ImmersedPath) -> None:
    if not path.tokens:
        if path.start not in X.graph(path.graph).vertices:
            raise PreconditionError(f"unknown vertex {path.start!r}")
        return
    probs = word_problems(X, path.graph, path.tokens, cyclic=path.cyclic)
    if probs:
        raise PreconditionError("; ".join(probs))


def strip_corners(X: TubularComplex, gname: str, tok) -> list:
    """For each square side along ``tok``: (side id, corner at start, corner at end)."""
    out = []
    for t, i, side, s in X.squares_on_edge.get((gname, tok[0]), []):
        first = 0 if s == tok[1] else 1
        out.append(((t, i, side), (t, i, side, first), (t, i, side, 1 - first)))
    return out


def sphere_cells(X: TubularComplex, path: ImmersedPath):
    """Nodes and edges of the sphere, straight from the definition."""
    verts = path_vertices(X, path)
    n = len(path.tokens)
    nodes, edges = [], []
    for i, x in enumerate(verts):
        used = used_halves(path, i)
        for h in X.halves_at(path.graph, x):
            if h not in used:
                nodes.append(("h", i, h))
        for c in X.corners_at.get((path.graph, x), []):
            _, _, hv, hh = X.corner_data(c)
            if hv in used:
                continue
            node = ("c", i, c)
            nodes.append(node)
            edges.append((node, ("h", i, hv)))
            edges.append((node, ("h", i, hh)))
    m = len(verts)
    for k in range(1, n + 1):
        for ss, c0, c1 in strip_corners(X, path.graph, path.tokens[k - 1]):
            node = ("strip", k, ss)
            nodes.append(node)
            edges.append((node, ("h", k - 1, X.corner_data(c0)[3])))
            edges.append((node, ("h", k % m if path.cyclic else k, X.corner_data(c1)[3])))
    return nodes, edges


def _to_graph(nodes, edges) -> nx.MultiGraph:
    G = nx.MultiGraph()
    G.add_nodes_from(nodes)
    G.add_edges_from(edges)
    return G


def direct_sphere(X: TubularComplex, path: ImmersedPath) -> nx.MultiGraph:
    check_immersed(X, path)
    return _to_graph(*sphere_cells(X, path))


def vertex_sphere(X: TubularComplex, gname: str, v, index: int = 0) -> nx.MultiGraph:
    """First barycentric subdivision of the link, tagged with ``index``."""
    return direct_sphere(X, ImmersedPath(gname, (), v)) if index == 0 else \
        nx.relabel_nodes(direct_sphere(X, ImmersedPath(gname, (), v)), lambda n: (n[0], index, n[2]))


# ---------------------------------------------------------------------------
# splicing
# ---------------------------------------------------------------------------

def _neighbour_multiset(G, v) -> list:
    return sorted((w for _, w in G.edges(v)), key=repr)


def _check_labels(G, v, phi) -> None:
    if v not in G:
        raise PreconditionError(f"splice vertex {v!r} not in graph")
    if sorted(phi, key=repr) != _neighbour_multiset(G, v):
        raise PreconditionError(f"labelling of {v!r} does not list its neighbours")


def _glue(G: nx.MultiGraph, drop, pairs, merge_name) -> nx.MultiGraph:
    rename = {}
    for j, (a, b) in enumerate(pairs):
        new = merge_name(j, a, b) if merge_name else a
        rename[a] = new
        rename[b] = new
    H = nx.MultiGraph()
    for n in G.nodes:
        if n not in drop:
            H.add_node(rename.get(n, n))
    for u, w in G.edges():
        if u in drop or w in drop:
            continue
        H.add_edge(rename.get(u, u), rename.get(w, w))
    return H


def splice(G1, v1, phi1, G2, v2, phi2, merge_name=None) -> nx.MultiGraph:
    """Remove the open stars of ``v1`` and ``v2`` and glue ``phi1[j]`` to ``phi2[j]``.

    Node names of the two graphs must be disjoint; otherwise they are tagged
    with 0 / 1 first.
    """
    if G1.degree(v1) != G2.degree(v2) or len(phi1) != len(phi2):
        raise PreconditionError("valence mismatch")
    _check_labels(G1, v1, phi1)
    _check_labels(G2, v2, phi2)
    if set(G1.nodes) & set(G2.nodes):
        G1 = nx.relabel_nodes(G1, lambda n: (0, n))
        G2 = nx.relabel_nodes(G2, lambda n: (1, n))
        v1, v2 = (0, v1), (1, v2)
        phi1 = [(0, a) for a in phi1]
        phi2 = [(1, b) for b in phi2]
    U = nx.union(G1, G2)
    return _glue(U, {v1, v2}, list(zip(phi1, phi2)), merge_name)


def self_splice(G, v1, phi1, v2, phi2, merge_name=None) -> nx.MultiGraph:
    if v1 == v2:
        raise PreconditionError("self-splice needs two distinct vertices")
    if G.degree(v1) != G.degree(v2) or len(phi1) != len(phi2):
        raise PreconditionError("valence mismatch")
    _check_labels(G, v1, phi1)
    _check_labels(G, v2, phi2)
    if G.has_edge(v1, v2):
        raise PreconditionError("self-splice vertices are adjacent; stars overlap")
    return _glue(G, {v1, v2}, list(zip(phi1, phi2)), merge_name)


def _edge_splice_data(X, path, k):
    """Labellings for gluing along the k-th edge (1-based)."""
    tok = path.tokens[k - 1]
    data = strip_corners(X, path.graph, tok)
    phi1 = [("c", k - 1, c0) for _, c0, _ in data]
    phi2 = [("c", k, c1) for _, _, c1 in data]
    names = [("strip", k, ss) for ss, _, _ in data]
    return tok, phi1, phi2, names


def regular_sphere(X: TubularComplex, path: ImmersedPath) -> nx.MultiGraph:
    """Sphere of a non-cyclic immersed path, spliced vertex by vertex."""
    if path.cyclic:
        raise PreconditionError("regular_sphere expects a non-cyclic path")
    check_immersed(X, path)
    verts = path_vertices(X, path)
    S = vertex_sphere(X, path.graph, verts[0], 0)
    for k in range(1, len(path.tokens) + 1):
        V = vertex_sphere(X, path.graph, verts[k], k)
        tok, phi1, phi2, names = _edge_splice_data(X, path, k)
        S = splice(S, ("h", k - 1, _vh(out_half(tok))), phi1,
                   V, ("h", k, _vh(in_half(tok))), phi2,
                   merge_name=lambda j, a, b, names=names: names[j])
    return S


def _successors(g) -> dict:
    toks = [(e, s) for e, _, _ in g.edges for s in (1, -1)]
    return {t: [u for u in toks if g.end(t) == g.start(u) and u != inverse(t)] for t in toks}


def immersed_paths(X: TubularComplex, max_len: int, min_len: int = 1):
    """Every immersed path of length min_len..max_len, shortest first."""
    for n in range(min_len, max_len + 1):
        for g in X.graphs:
            nxt = _successors(g)
            layer = [(t,) for t in nxt]
            for _ in range(n - 1):
                layer = [p + (u,) for p in layer for u in nxt[p[-1]]]
            for p in layer:
                yield ImmersedPath(g.name, p)


def count_immersed_paths(X: TubularComplex, n: int) -> int:
    """Number of immersed paths of length exactly n, without listing them."""
    total = 0
    for g in X.graphs:
        nxt = _successors(g)
        ways = {t: 1 for t in nxt}
        for _ in range(n - 1):
            step = dict.fromkeys(nxt, 0)
            for t, k in ways.items():
                for u in nxt[t]:
                    step[u] += k
            ways = step
        total += sum(ways.values())
    return total


def same_sphere(A: nx.MultiGraph, B: nx.MultiGraph) -> bool:
    """Equal as labelled multigraphs (same node names, same edge multiset)."""
    def edges(G):
        return sorted(tuple(sorted((repr(u), repr(w)))) for u, w in G.edges())
    return set(A.nodes) == set(B.nodes) and edges(A) == edges(B)


def cycle_sphere_by_self_splice(X: TubularComplex, gname: str, word) -> nx.MultiGraph:
    """Sphere of a cycle: sphere of the open path, closed up by a self-splice."""
    n = len(word)
    cyc = ImmersedPath(gname, tuple(word), cyclic=True)
    check_immersed(X, cyc)
    g = X.graph(gname)
    open_path = ImmersedPath(gname, tuple(word[:-1]), g.start(word[0]))
    S = regular_sphere(X, open_path)
    last = word[-1]
    data = strip_corners(X, gname, last)
    phi1 = [("c", n - 1, c0) for _, c0, _ in data]
    phi2 = [("c", 0, c1) for _, _, c1 in data]
    names = [("strip", n, ss) for ss, _, _ in data]
    return self_splice(S, ("h", n - 1, _vh(out_half(last))), phi1,
                       ("h", 0, _vh(in_half(last))), phi2,
                       merge_name=lambda j, a, b: names[j])


# ---------------------------------------------------------------------------
# orthogonal and quotient spheres
# ---------------------------------------------------------------------------

def end_markers(path: ImmersedPath) -> tuple:
    """(b_u, a_v): where the carrier line continues past each end."""
    toks, n = path.tokens, len(path.tokens)
    return ("h", 0, _vh(in_half(toks[-1]))), ("h", n, _vh(out_half(toks[0])))


def check_cyclic_path(X: TubularComplex, path: ImmersedPath) -> None:
    toks = path.tokens
    if len(toks) < 1:
        raise PreconditionError("not a cyclic path")
    g = X.graph(path.graph)
    if g.start(toks[0]) != g.end(toks[-1]) or in_half(toks[-1]) == out_half(toks[0]):
        raise PreconditionError("not a cyclic path")
    check_immersed(X, ImmersedPath(path.graph, toks))


def orthogonal_cells(X: TubularComplex, path: ImmersedPath):
    nodes, edges = sphere_cells(X, ImmersedPath(path.graph, path.tokens))
    drop = set(end_markers(path))
    nodes = [n for n in nodes if n not in drop]
    new_edges = []
    for a, b in edges:
        if b in drop:
            stub = ("stub", b[1], a[2])
            nodes.append(stub)
            new_edges.append((a, stub))
        elif a not in drop:
            new_edges.append((a, b))
    return nodes, new_edges


def orthogonal_sphere(X: TubularComplex, path: ImmersedPath) -> nx.MultiGraph:
    check_cyclic_path(X, path)
    G = _to_graph(*orthogonal_cells(X, path))
    G.graph["markers"] = end_markers(path)
    return G


def quotient_sphere(X: TubularComplex, gname: str, word) -> nx.MultiGraph:
    """Sphere of the cycle, obtained by gluing the two ends of the orthogonal
    sphere of its fundamental domain."""
    word = tuple(word)
    n = len(word)
    path = ImmersedPath(gname, word)
    check_cyclic_path(X, path)
    O = orthogonal_sphere(X, path)
    first_out = _vh(out_half(word[0]))
    last_in = _vh(in_half(word[-1]))
    first_strips = {c0: ("strip", 1, ss) for ss, c0, _ in strip_corners(X, gname, word[0])}
    last_strips = {c1: ("strip", n, ss) for ss, _, c1 in strip_corners(X, gname, word[-1])}

    def image(node):
        kind, i, obj = node
        if kind == "stub":
            return None
        if kind == "h" and i == n:
            return ("h", 0, obj)
        if kind == "c":
            hv = X.corner_data(obj)[2]
            if i == n:
                return first_strips[obj] if hv == first_out else ("c", 0, obj)
            if i == 0 and hv == last_in:
                return last_strips[obj]
        return node

    Q = nx.MultiGraph()
    for node in O.nodes:
        im = image(node)
        if im is not None:
            Q.add_node(im)
    for a, b in O.edges():
        # a corner folded into a strip repeats an edge the strip already has
        if _folded(X, a, n, first_out, last_in) or _folded(X, b, n, first_out, last_in):
            continue
        ia, ib = image(a), image(b)
        if ia is None or ib is None:
            continue
        Q.add_edge(ia, ib)
    return Q


def _folded(X, node, n, first_out, last_in) -> bool:
    if node[0] != "c":
        return False
    hv = X.corner_data(node[2])[2]
    # every corner at the far end duplicates one at index 0 or inside a strip
    return node[1] == n or (node[1] == 0 and hv == last_in)


def cycle_sphere(X: TubularComplex, gname: str, word) -> nx.MultiGraph:
    return direct_sphere(X, ImmersedPath(gname, tuple(word), cyclic=True))


# ---------------------------------------------------------------------------
# components and tracing
# ---------------------------------------------------------------------------

def component_map(G: nx.Graph) -> dict:
    """node -> component index, indices ordered by the smallest node repr."""
    comps = sorted((sorted(c, key=repr) for c in nx.connected_components(G)), key=lambda c: repr(c[0]))
    return {n: k for k, c in enumerate(comps) for n in c}


def count_components(nodes, edges) -> int:
    parent = {n: n for n in nodes}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    count = len(parent)
    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            count -= 1
    return count


def _full_name(X, full_path: ImmersedPath, node, offset: int, full_nodes):
    kind, i, obj = node
    j = i + offset
    if kind == "strip":
        cand = [("strip", j, obj)]
    elif kind == "h":
        cand = [("h", j, obj)]
    else:
        c = obj
        hv = X.corner_data(c)[2]
        toks = full_path.tokens
        cand = []
        if 1 <= j <= len(toks) and hv == _vh(in_half(toks[j - 1])):
            cand.append(("strip", j, (c[0], c[1], c[2])))
        if j < len(toks) and hv == _vh(out_half(toks[j])):
            cand.append(("strip", j + 1, (c[0], c[1], c[2])))
        cand.append(("c", j, c))
    for nm in cand:
        if nm in full_nodes:
            return nm
    return None


def trace_components(X: TubularComplex, sub_path: ImmersedPath, sub_sphere, full_path: ImmersedPath,
                     full_sphere, offset: int) -> dict:
    """Map component indices of ``sub_sphere`` to those of ``full_sphere``.

    ``sub_path`` must occur in ``full_path`` starting at vertex index ``offset``.
    """
    if full_path.tokens[offset:offset + len(sub_path.tokens)] != sub_path.tokens:
        raise PreconditionError("not a subpath")
    sub_c = component_map(sub_sphere)
    full_c = component_map(full_sphere)
    full_nodes = full_sphere
    out = {}
    for node, comp in sub_c.items():
        if node[0] == "stub":
            continue
        im = _full_name(X, full_path, node, offset, full_nodes)
        if im is None:
            continue
        target = full_c[im]
        if out.setdefault(comp, target) != target:
            raise PreconditionError("inclusion does not respect components")
    return out


# ---------------------------------------------------------------------------
# the sphere form of the link condition
# ---------------------------------------------------------------------------

def cut_point_failure(G: nx.MultiGraph):
    """None when G, viewed as a topological graph, is non-empty, connected
    and has no cut point; otherwise a short reason."""
    if G.number_of_nodes() == 0:
        return "empty"
    if any(G.degree(n) == 0 for n in G):
        return "isolated point"
    if not nx.is_connected(G):
        return "disconnected"
    simple = nx.Graph(G)
    simple.remove_edges_from(list(nx.selfloop_edges(simple)))
    if next(nx.articulation_points(simple), None) is not None:
        return "cut vertex"
    for u, w in nx.bridges(simple):
        if G.number_of_edges(u, w) == 1:
            return "cut point inside an edge"
    return None


def sphere_condition(X: TubularComplex):
    """(True, None) when the regular sphere of every vertex and of every
    vertical edge midpoint is connected without cut points."""
    for g in X.graphs:
        for v in g.vertices:
            bad = cut_point_failure(direct_sphere(X, ImmersedPath(g.name, (), v)))
            if bad:
                return False, ("vertex", g.name, v, bad)
        for e, _, _ in g.edges:
            bad = cut_point_failure(regular_sphere(X, ImmersedPath(g.name, ((e, 1),))))
            if bad:
                return False, ("edge", g.name, e, bad)
    return True, None
