"""Half-spaces of vertical lines, crossing, and the splitting-cycle test."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

import networkx as nx

from .complex import TubularComplex, brady_meier_check, in_half, out_half
from .cycles import (CycleRecord, canonical_word, enumerate_cycles, line_intersections, normalize_cycle,
                     primitive_period, repetitive_length_bound)
from .errors import PreconditionError, ResourceCapError
from .spheres import (ImmersedPath, check_immersed, component_map, count_components, direct_sphere, orthogonal_cells,
                      sphere_cells, strip_corners)


# ---------------------------------------------------------------------------
# permutations
# ---------------------------------------------------------------------------

def perm_power(p: tuple, k: int) -> tuple:
    out = tuple(range(len(p)))
    base = tuple(p)
    while k > 0:
        if k & 1:
            out = tuple(base[i] for i in out)
        base = tuple(base[i] for i in base)
        k >>= 1
    return out


def orbits(p: tuple) -> list:
    seen, out = set(), []
    for s in range(len(p)):
        if s in seen:
            continue
        orb, x = [], s
        while x not in seen:
            seen.add(x)
            orb.append(x)
            x = p[x]
        out.append(sorted(orb))
    return out


def perm_order(p: tuple) -> int:
    from math import lcm
    return lcm(*[len(o) for o in orbits(p)]) if p else 1


def subset_period(p: tuple, subset: frozenset) -> int:
    """Least d >= 1 with p^d(subset) = subset."""
    cur, d = subset, 0
    while True:
        cur = frozenset(p[i] for i in cur)
        d += 1
        if cur == subset:
            return d


# ---------------------------------------------------------------------------
# half-space labels
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HalfspaceLabeling:
    graph: str
    root: tuple
    exponent: int
    K: int
    sigma: tuple                 # deck permutation on labels (one root period)
    counts: tuple                # component counts for powers 1, 2, 4, ...
    power: int                   # power of the root whose sphere gave the labels
    germ_labels: dict = field(compare=False, hash=False, default_factory=dict)
    strip_labels: dict = field(compare=False, hash=False, default_factory=dict)

    def label_at(self, position: int, half) -> int:
        """Label of a half-edge (vertical ``("v", e, end)`` or horizontal) at
        an absolute vertex position of the root line."""
        ell = len(self.root)
        q, r = divmod(position - 1, ell)
        base = self.germ_labels[(r + 1, half)]
        return perm_power(self.sigma, q % perm_order(self.sigma))[base]

    def strip_label(self, edge_position: int, side_id) -> int:
        """Label of a square side along the edge entering vertex ``edge_position``."""
        ell = len(self.root)
        q, r = divmod(edge_position - 1, ell)
        base = self.strip_labels[(r + 1, side_id)]
        order = perm_order(self.sigma)
        return perm_power(self.sigma, q % order)[base]


def orthogonal_count_reference(X: TubularComplex, graph: str, tokens) -> int:
    return count_components(*orthogonal_cells(X, ImmersedPath(graph, tuple(tokens))))


@lru_cache(maxsize=64)
def _local_tables(X: TubularComplex, graph: str):
    """Per vertex: half index map and corner (vertical, horizontal) pairs;
    per token: strip endpoints as horizontal halves at both ends."""
    g = X.graph(graph)
    halves, corners = {}, {}
    for v in g.vertices:
        hs = X.halves_at(graph, v)
        halves[v] = {h: k for k, h in enumerate(hs)}
        corners[v] = [(X.corner_data(c)[2], X.corner_data(c)[3]) for c in X.corners_at.get((graph, v), [])]
    strips = {}
    for e, _, _ in g.edges:
        for s in (1, -1):
            tok = (e, s)
            strips[tok] = [(X.corner_data(c0)[3], X.corner_data(c1)[3])
                           for _, c0, c1 in strip_corners(X, graph, tok)]
    width = max((len(m) for m in halves.values()), default=1)
    return g, halves, corners, strips, width


def orthogonal_count(X: TubularComplex, graph: str, tokens) -> int:
    """Components of the orthogonal sphere of a cyclic path, by union-find
    over half-edge nodes; corners and strips act as edges."""
    tokens = tuple(tokens)
    g, halves, corners, strips, width = _local_tables(X, graph)
    n = len(tokens)
    verts = [g.start(tokens[0])] + [g.end(t) for t in tokens]
    parent = {}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    count = 0
    for i, v in enumerate(verts):
        blocked = set()
        blocked.add(("v",) + in_half(tokens[i - 1] if i >= 1 else tokens[-1]))
        blocked.add(("v",) + out_half(tokens[i] if i < n else tokens[0]))
        hidx = halves[v]
        base = i * width
        for h, k in hidx.items():
            if h not in blocked:
                parent[base + k] = base + k
                count += 1
        for hv, hh in corners[v]:
            if hv in blocked:
                continue
            a, b = find(base + hidx[hv]), find(base + hidx[hh])
            if a != b:
                parent[a] = b
                count -= 1
    for k in range(1, n + 1):
        h0, h1 = halves[verts[k - 1]], halves[verts[k]]
        for hh0, hh1 in strips[tokens[k - 1]]:
            a, b = find((k - 1) * width + h0[hh0]), find(k * width + h1[hh1])
            if a != b:
                parent[a] = b
                count -= 1
    return count


def _labels_from(X, graph, root, copies):
    ell = len(root)
    path = ImmersedPath(graph, tuple(root) * copies)
    nodes, edges = orthogonal_cells(X, path)
    G = nx.MultiGraph()
    G.add_nodes_from(nodes)
    G.add_edges_from(edges)
    comp = component_map(G)
    germ0, germ1 = {}, {}
    for node, c in comp.items():
        if node[0] != "h":
            continue
        i = node[1]
        if 1 <= i <= ell:
            germ0[(i, node[2])] = c
        elif ell + 1 <= i <= 2 * ell:
            germ1[(i - ell, node[2])] = c
    strips = {}
    for node, c in comp.items():
        if node[0] == "strip" and 1 <= node[1] <= ell:
            strips[(node[1], node[2])] = c
    used = sorted(set(germ0.values()) | set(strips.values()))
    mapping = {}
    for key, c in germ0.items():
        tgt = germ1[key]
        if mapping.setdefault(c, tgt) != tgt:
            return None
    if sorted(mapping) != used or sorted(set(mapping.values())) != used:
        return None
    relabel = {c: k for k, c in enumerate(used)}
    sigma = tuple(relabel[mapping[c]] for c in used)
    germ = {k: relabel[c] for k, c in germ0.items()}
    strip = {k: relabel[c] for k, c in strips.items()}
    return len(used), sigma, germ, strip


def sphere_size_bound(X: TubularComplex, ell: int) -> int:
    """Worst-case cell count of the largest sphere built for a root of length ell."""
    N = max(X.max_thickness, 1)
    return 2 ** (N + 4) * ell * 8 * N


def halfspace_labels(X: TubularComplex, graph: str, word, max_cells: int | None = None) -> HalfspaceLabeling:
    """Count half-spaces from doubled fundamental domains, then read off
    stable labels and the deck permutation."""
    rec = normalize_cycle(word, graph, X)
    return _halfspace_labels(X, graph, rec.root, rec.exponent, max_cells)


@lru_cache(maxsize=4096)
def _halfspace_labels(X, graph, root, exponent, max_cells):
    ell = len(root)
    N = max(X.max_thickness, 1)
    counts = []
    k = 0
    while True:
        copies = 2 ** k
        if max_cells is not None and copies * ell * 8 * N > max_cells:
            raise ResourceCapError("sphere too large for the cell cap")
        counts.append(orthogonal_count(X, graph, root * copies))
        if (k > 0 and counts[-1] == counts[-2]) or k >= N:
            break
        k += 1
    K = counts[-1]
    if K == 1:
        return HalfspaceLabeling(graph, root, exponent, 1, (0,), tuple(counts), 2 ** k)
    copies = max(4, 2 ** (k + 1))
    for _ in range(4):
        got = _labels_from(X, graph, root, copies)
        if got is not None and got[0] == K:
            break
        copies *= 2
    else:
        raise PreconditionError(f"half-space labels did not stabilise for {root}")
    _, sigma, germ, strip = got
    return HalfspaceLabeling(graph, root, exponent, K, sigma, tuple(counts), copies, germ, strip)


def deck_permutation(X: TubularComplex, graph: str, word) -> tuple:
    return halfspace_labels(X, graph, word).sigma


def quotient_components(X: TubularComplex, graph: str, word) -> int:
    return count_components(*sphere_cells(X, ImmersedPath(graph, tuple(word), cyclic=True)))


def is_strongly_uc_separating(X: TubularComplex, graph: str, word) -> bool:
    rec = normalize_cycle(word, graph, X)
    return quotient_components(X, graph, rec.word) > 1


def separating_power(X: TubularComplex, graph: str, word):
    """(n, n-th power record) for the least n <= N whose power is strongly
    separating, or None."""
    H = halfspace_labels(X, graph, word)
    if H.K < 2:
        raise PreconditionError("cycle is not UC-separating")
    rec = normalize_cycle(word, graph, X)
    for n in range(1, max(X.max_thickness, 1) + 1):
        if len(orbits(perm_power(H.sigma, H.exponent * n))) >= 2:
            return n, CycleRecord(graph, rec.word * n, rec.root, rec.exponent * n, rec.domain * n)
    return None


def stabilises_subset(H: HalfspaceLabeling, exponent: int) -> bool:
    """Whether some nonempty proper label set has stabiliser exactly the
    subgroup generated by root^exponent."""
    labels = range(H.K)
    for size in range(1, H.K):
        for A in combinations(labels, size):
            if subset_period(H.sigma, frozenset(A)) == exponent:
                return True
    return False


# ---------------------------------------------------------------------------
# crossing
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CrossingInstance:
    graph: str
    segment: tuple
    start_vertex: object
    exits_a: tuple   # sphere nodes
    exits_b: tuple

    def path(self) -> ImmersedPath:
        return ImmersedPath(self.graph, self.segment, self.start_vertex)


def instance_from_intersection(graph: str, rec) -> CrossingInstance:
    n = rec.length

    def nodes(pair):
        return (("h", 0, ("v",) + tuple(pair[0])), ("h", n, ("v",) + tuple(pair[1])))

    return CrossingInstance(graph, rec.segment, rec.start_vertex, nodes(rec.exits_a), nodes(rec.exits_b))


def crossing_test(inst: CrossingInstance, sphere: nx.Graph) -> bool:
    """True iff the exits of line B fall in different components of the sphere
    with line A's exits removed."""
    for node in inst.exits_a + inst.exits_b:
        if node not in sphere:
            raise PreconditionError(f"exit {node!r} is not on the sphere")
    b0, b1 = inst.exits_b
    if b0 in inst.exits_a or b1 in inst.exits_a:
        return False
    return not nx.has_path(nx.restricted_view(sphere, inst.exits_a, []), b0, b1)


def _separated(nodes: set, edges, cut, pair) -> bool:
    if pair[0] in cut or pair[1] in cut:
        return False
    parent = {n: n for n in nodes if n not in cut}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in edges:
        if a in parent and b in parent:
            parent[find(a)] = find(b)
    return find(pair[0]) != find(pair[1])


def crossing_pair(X: TubularComplex, inst: CrossingInstance) -> tuple:
    """(B crosses A, A crosses B) from one sphere, without building a graph."""
    check_immersed(X, inst.path())
    nodes, edges = sphere_cells(X, inst.path())
    nodes = set(nodes)
    for node in inst.exits_a + inst.exits_b:
        if node not in nodes:
            raise PreconditionError(f"exit {node!r} is not on the sphere")
    return (_separated(nodes, edges, inst.exits_a, inst.exits_b),
            _separated(nodes, edges, inst.exits_b, inst.exits_a))


def crossing_of(X: TubularComplex, inst: CrossingInstance) -> bool:
    return crossing_pair(X, inst)[0]


def swap(inst: CrossingInstance) -> CrossingInstance:
    return CrossingInstance(inst.graph, inst.segment, inst.start_vertex, inst.exits_b, inst.exits_a)


def self_crossing_instances(X: TubularComplex, graph: str, root) -> list:
    return [instance_from_intersection(graph, r) for r in line_intersections(X, graph, root)]


def has_self_crossing(X: TubularComplex, graph: str, word) -> bool:
    rec = normalize_cycle(word, graph, X)
    return any(crossing_of(X, inst) for inst in self_crossing_instances(X, graph, rec.root))


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

@lru_cache(maxsize=64)
def _is_brady_meier(X: TubularComplex) -> bool:
    return brady_meier_check(X)[0]


@dataclass(frozen=True)
class ClassificationRecord:
    cycle: CycleRecord
    K: int
    sigma: tuple
    strongly_separating: bool
    stabiliser_condition: bool
    self_crossing: bool
    representative: CycleRecord | None

    @property
    def splitting(self) -> bool:
        return self.strongly_separating and self.stabiliser_condition and not self.self_crossing


def is_splitting_cycle(X: TubularComplex, graph: str, word, max_cells: int | None = None) -> ClassificationRecord:
    if not _is_brady_meier(X):
        raise PreconditionError("complex is not Brady-Meier")
    rec = normalize_cycle(word, graph, X)
    H = halfspace_labels(X, graph, rec.word, max_cells)
    m = rec.exponent
    strongly = H.K >= 2 and len(orbits(perm_power(H.sigma, m))) >= 2
    cond2 = H.K >= 2 and stabilises_subset(H, m)
    crossing = H.K >= 2 and has_self_crossing(X, graph, rec.root)
    rep = None
    if H.K >= 2 and not crossing:
        for j in range(1, perm_order(H.sigma) + 1):
            if len(orbits(perm_power(H.sigma, j))) >= 2 and stabilises_subset(H, j):
                rep = CycleRecord(graph, rec.root * j, rec.root, j, rec.root * j)
                break
    return ClassificationRecord(rec, H.K, H.sigma, strongly, cond2, crossing, rep)


@dataclass
class SplittingReport:
    cycles: list
    max_len: int
    theoretical_cap: int | None
    truncated: bool
    warnings: list


def theoretical_cap(X: TubularComplex) -> int | None:
    try:
        return repetitive_length_bound(max(X.vertical_edge_count, 1), max(X.square_count, 1), 1).cap
    except ResourceCapError:
        return None


def splitting_cycle_list(X: TubularComplex, max_len: int | None = None, threads: int = 1,
                         max_cycles: int | None = None, clamp: int = 8, graphs=None,
                         max_cells: int | None = None) -> SplittingReport:
    """Splitting cycles up to ``max_len`` in the listed graphs (all by
    default), plus the tube attaching cycles within the length bound, one per
    primitive root."""
    if not _is_brady_meier(X):
        raise PreconditionError("complex is not Brady-Meier")
    cap = theoretical_cap(X)
    warnings = []
    if max_len is None:
        max_len = clamp if cap is None else min(cap, clamp)
        if cap is None or cap > clamp:
            warnings.append(f"theoretical length cap {'beyond machine range' if cap is None else cap} "
                            f"clamped to {max_len}")
    truncated = cap is None or max_len < cap
    candidates = {}
    for g in X.graphs:
        if graphs is not None and g.name not in graphs:
            continue
        for rec in enumerate_cycles(X, g.name, max_len, limit=max_cycles):
            candidates.setdefault((g.name, rec.root), None)
    for t in X.tubes:
        for side in (0, 1):
            end = t.end(side)
            rec = normalize_cycle(end.word, end.graph, X)
            if len(rec.root) <= max_len:
                candidates.setdefault((end.graph, rec.root), None)
    keys = sorted(candidates, key=lambda k: (k[0], len(k[1]), canonical_word(k[1])))

    def classify(key):
        gname, root = key
        if max_cells is not None and sphere_size_bound(X, len(root)) > max_cells:
            raise ResourceCapError(f"sphere for a length-{len(root)} cycle may exceed {max_cells} cells")
        if _halfspace_labels(X, gname, root, 1, None).K < 2:
            return None
        return is_splitting_cycle(X, gname, root).representative

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(classify, keys))
    else:
        results = [classify(k) for k in keys]
    found = [r for r in results if r is not None]
    if not found:
        warnings.append("no splitting cycles found up to the length limit")
    return SplittingReport(found, max_len, cap, truncated, warnings)


def repetition_classes(X: TubularComplex, graph: str, domain) -> list:
    """Group positions of the fundamental domain by edge and by the component
    pattern of the square pre-images around them."""
    path = ImmersedPath(graph, tuple(domain))
    nodes, edges = orthogonal_cells(X, path)
    G = nx.MultiGraph()
    G.add_nodes_from(nodes)
    G.add_edges_from(edges)
    comp = component_map(G)
    groups = {}
    for k, tok in enumerate(domain, start=1):
        pattern = tuple(comp[("strip", k, ss)] for ss, _, _ in strip_corners(X, graph, tok))
        groups.setdefault((tok[0], pattern), []).append(k)
    return list(groups.values())
