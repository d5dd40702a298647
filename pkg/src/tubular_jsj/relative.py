"""JSJ of a free group relative to cyclic words, and of graphs of free groups.

The relative complex has the rose of the free group in the centre, one circle
per word joined to the rose along that word, and two genus-two surface graphs
hung off each circle.  The surfaces make every word's cyclic group a
three-valent junction, so its peripheral structure survives the pipeline;
afterwards everything that did not come from the rose is dropped again.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import gcd, lcm

from .complex import Tube, TubeEnd, TubularComplex, inverse, make_complex
from .config import PipelineConfig
from .cycles import canonical_word, primitive_period
from .decomposition import DecompositionGraph, JEdge, JVertex, collapse_surfaces
from .errors import ClosedSurfaceError, JSJError, PreconditionError, ValidationError
from .fixtures import G2_BOUNDARY, circle_graph, circle_word, letters, rose_graph
from .pipeline import run_jsj
from .subdivision import _split_graph, _split_word

ALPHABET = "abcdefghijklmnopqrstuvwxyz"


# ---------------------------------------------------------------------------
# words
# ---------------------------------------------------------------------------

def parse_word(text: str, rank: int | None = None) -> tuple:
    """'abAB' -> tokens; capitals are inverses."""
    word = letters(text)
    if rank is not None:
        allowed = set(ALPHABET[:rank])
        bad = sorted({e for e, _ in word if e not in allowed})
        if bad:
            raise ValidationError(f"letters {''.join(bad)} exceed rank {rank}")
    return word


def word_text(word) -> str:
    return "".join(e if s > 0 else e.upper() for e, s in word)


def free_reduce(word) -> tuple:
    out = []
    for t in word:
        if out and out[-1] == inverse(t):
            out.pop()
        else:
            out.append(t)
    return tuple(out)


def cyclic_reduce(word) -> tuple:
    w = list(free_reduce(word))
    while len(w) >= 2 and w[0] == inverse(w[-1]):
        w = w[1:-1]
    return tuple(w)


@dataclass(frozen=True)
class FreeGroupFamily:
    rank: int
    words: tuple            # canonical primitive cyclic words

    def text(self) -> list:
        return [word_text(w) for w in self.words]


@dataclass
class NormalizationReport:
    non_maximal: list = field(default_factory=list)   # (input, root, exponent)
    merged: list = field(default_factory=list)        # inputs equal to an earlier class


def normalize_family(words, rank: int) -> tuple:
    """Cyclically reduce, pass to primitive roots, and keep one word per
    conjugacy class up to inversion."""
    report = NormalizationReport()
    seen, out = set(), []
    for raw in words:
        w = parse_word(raw, rank) if isinstance(raw, str) else tuple(raw)
        w = cyclic_reduce(w)
        if not w:
            raise ValidationError(f"word {raw!r} is trivial after reduction")
        canon = canonical_word(w)
        p = primitive_period(canon)
        root = canon[:p]
        if p < len(canon):
            report.non_maximal.append((word_text(w), word_text(root), len(canon) // p))
        if root in seen:
            report.merged.append(word_text(w))
            continue
        seen.add(root)
        out.append(root)
    return FreeGroupFamily(rank, tuple(out)), report


# ---------------------------------------------------------------------------
# Whitehead moves
# ---------------------------------------------------------------------------

def _whitehead_image(rank: int, subset: frozenset, mult) -> dict:
    """Images of generators under the Whitehead automorphism (subset, mult)."""
    inv_mult = inverse(mult)
    images = {}
    for x in ALPHABET[:rank]:
        if x == mult[0]:
            images[x] = ((x, 1),)
            continue
        xp, xm = (x, 1) in subset, (x, -1) in subset
        img = ((x, 1),)
        if xp:
            img = img + (mult,)
        if xm:
            img = (inv_mult,) + img
        images[x] = img
    return images


def _apply(images: dict, word) -> tuple:
    out = []
    for e, s in word:
        img = images[e]
        out.extend(img if s > 0 else tuple(inverse(t) for t in reversed(img)))
    return cyclic_reduce(out)


def whitehead_reduce(family: FreeGroupFamily) -> FreeGroupFamily:
    """Apply length-reducing Whitehead automorphisms until none exists."""
    rank = family.rank
    words = [cyclic_reduce(w) for w in family.words]
    letters_all = [(x, s) for x in ALPHABET[:rank] for s in (1, -1)]
    while True:
        total = sum(len(w) for w in words)
        best = None
        for mult in letters_all:
            others = [t for t in letters_all if t[0] != mult[0]]
            for bits in product((0, 1), repeat=len(others)):
                subset = frozenset(t for t, b in zip(others, bits) if b)
                images = _whitehead_image(rank, subset, mult)
                new = [_apply(images, w) for w in words]
                n = sum(len(w) for w in new)
                if n < total and (best is None or n < best[0]):
                    best = (n, new)
        if best is None:
            break
        words = best[1]
    fam, _ = normalize_family(words, rank)
    return fam


# ---------------------------------------------------------------------------
# relative complex
# ---------------------------------------------------------------------------

CENTRAL = "F"


def subdivision_factor(family: FreeGroupFamily) -> int:
    return lcm(*[8 // gcd(8, len(w)) for w in family.words])


def build_relative_complex(family: FreeGroupFamily) -> TubularComplex:
    if family.rank < 1 or not family.words:
        raise PreconditionError("need rank >= 1 and at least one word")
    s = subdivision_factor(family)
    central = _split_graph(rose_graph(CENTRAL, ALPHABET[:family.rank]), s)
    graphs, tubes = [central], []
    g2_word = letters(G2_BOUNDARY)
    for i, w in enumerate(family.words):
        n = s * len(w)
        circ = circle_graph(f"H{i}", n)
        graphs.append(circ)
        cw = circle_word(circ)
        tubes.append(Tube(f"P{i}", n, TubeEnd(CENTRAL, _split_word(w, s)), TubeEnd(circ.name, cw)))
        for k in (0, 1):
            surf = _split_graph(rose_graph(f"S{i}.{k}", "abcd"), n // 8)
            graphs.append(surf)
            tubes.append(Tube(f"Q{i}.{k}", n, TubeEnd(circ.name, cw),
                              TubeEnd(surf.name, _split_word(g2_word, n // 8))))
    return make_complex(graphs, tubes)


@dataclass
class RelativeResult:
    decomposition: DecompositionGraph     # central part; stubs carry the peripheral words
    family: FreeGroupFamily
    report: NormalizationReport
    peripheral_of: dict                   # word index -> central vertex id
    whitehead_used: bool = False


def _restrict(result, family: FreeGroupFamily) -> tuple:
    D = result.decomposition
    origins = result.origins

    def vertex_origins(v):
        return set().union(*(set(origins.get(g, (g,))) for g in v.graphs)) if v.graphs else set()

    central = {v.id for v in D.vertices if v.graphs and vertex_origins(v) <= {CENTRAL}}
    for v in D.vertices:
        if not v.graphs:
            nbrs = {e.other for e in D.edges if e.cyclic == v.id}
            if nbrs and nbrs <= central:
                central.add(v.id)
    peripheral = {}
    for v in D.vertices:
        for i in range(len(family.words)):
            if f"H{i}" in vertex_origins(v):
                peripheral[v.id] = i
    out = DecompositionGraph([v for v in D.vertices if v.id in central], [], [])
    carrier = {}
    for e in D.edges:
        ends = {e.cyclic, e.other}
        if ends <= central:
            out.edges.append(e)
        elif ends & central:
            inner = (ends & central).pop()
            outer = (ends - central).pop()
            if outer in peripheral:
                out.stubs.append(e)
                carrier.setdefault(peripheral[outer], inner)
    return out, carrier


def _surjects(family: FreeGroupFamily) -> bool:
    return family.rank == 1 and any(len(w) == 1 for w in family.words)


def relative_jsj(words, rank: int, config: PipelineConfig = PipelineConfig(),
                 whitehead: bool = True) -> RelativeResult:
    family, report = normalize_family(words, rank)
    if _surjects(family):
        raise PreconditionError("no JSJ: peripheral word surjects")
    candidates = [(family, False)]
    if whitehead:
        reduced = whitehead_reduce(family)
        if reduced != family:
            candidates.append((reduced, True))
    last = None
    for fam, used in candidates:
        X = build_relative_complex(fam)
        try:
            res = run_jsj(X, config, graphs={CENTRAL}, len_scale=subdivision_factor(fam))
        except ClosedSurfaceError as exc:
            raise JSJError("relative complex is a closed surface; this cannot happen") from exc
        except PreconditionError as exc:
            last = exc
            continue
        D, carrier = _restrict(res, fam)
        missing = [i for i in range(len(fam.words)) if i not in carrier]
        if missing:
            raise JSJError(f"peripheral words {missing} found no carrier vertex")
        return RelativeResult(D, fam, report, carrier, used)
    raise PreconditionError(f"cannot certify one-endedness relative to the family ({last})")


# ---------------------------------------------------------------------------
# graphs of free groups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GogEdge:
    name: str
    a: str
    word_a: tuple
    b: str
    word_b: tuple


@dataclass(frozen=True)
class GraphOfFreeGroups:
    ranks: tuple            # (vertex name, rank)
    edges: tuple            # GogEdge

    def rank_of(self, v: str) -> int:
        return dict(self.ranks)[v]


def general_jsj(gog: GraphOfFreeGroups, config: PipelineConfig = PipelineConfig()) -> DecompositionGraph:
    names = [v for v, _ in gog.ranks]
    if not gog.edges:
        if len(names) == 1:
            raise PreconditionError("freely decomposable / no one-ended certificate")
        raise ValidationError("graph of groups is disconnected")
    # peripheral families per vertex; each edge end records its class and exponent
    fam_words = {v: [] for v in names}
    ends = {}
    for e in gog.edges:
        for side, v, w in (("a", e.a, e.word_a), ("b", e.b, e.word_b)):
            w = cyclic_reduce(w)
            if not w:
                raise ValidationError(f"edge {e.name} has a trivial word")
            canon = canonical_word(w)
            p = primitive_period(canon)
            root = canon[:p]
            if root not in fam_words[v]:
                fam_words[v].append(root)
            ends[(e.name, side)] = (v, fam_words[v].index(root), len(canon) // p, len(canon))
    for e in gog.edges:
        if ends[(e.name, "a")][2] > 1 and ends[(e.name, "b")][2] > 1:
            raise PreconditionError(f"edge {e.name}: both attaching words are proper powers")

    D = DecompositionGraph()
    carriers = {}
    for v in names:
        if gog.rank_of(v) == 1:
            # an infinite cyclic vertex group is its own JSJ
            D.vertices.append(JVertex(v, "cyclic", (v,), 1, 1))
            for i, _ in enumerate(fam_words[v]):
                carriers[(v, i)] = (v, ())
            continue
        rel = relative_jsj(fam_words[v], gog.rank_of(v), config, whitehead=False)
        idmap = {w.id: f"{v}/{w.id}" for w in rel.decomposition.vertices}
        for w in rel.decomposition.vertices:
            D.vertices.append(JVertex(idmap[w.id], w.kind, tuple(f"{v}/{g}" for g in w.graphs), w.rank, w.length))
        for e in rel.decomposition.edges:
            D.edges.append(JEdge(f"{v}/{e.id}", idmap[e.cyclic], idmap[e.other], e.word_cyclic, e.word_other))
        stub_word = {}
        for s in rel.decomposition.stubs:
            inner = s.other if s.other in idmap else s.cyclic
            stub_word[inner] = s.word_other if s.other in idmap else s.word_cyclic
        # the relative family is listed in normalized order; map back by word
        order = {w: i for i, w in enumerate(rel.family.words)}
        for i, root in enumerate(fam_words[v]):
            j = order[canonical_word(root)]
            inner = rel.peripheral_of[j]
            carriers[(v, i)] = (idmap[inner], stub_word.get(inner, ()))

    for e in gog.edges:
        va, ia, ka, la = ends[(e.name, "a")]
        vb, ib, kb, lb = ends[(e.name, "b")]
        ca, wa = carriers[(va, ia)]
        cb, wb = carriers[(vb, ib)]
        # a proper-power end makes the edge vertex the maximal cyclic group of its root
        top = max(ka, kb)
        length = la // ka if ka > 1 else lb // kb
        cid = f"e:{e.name}"
        circle = tuple((f"c{i}", 1) for i in range(length))
        D.vertices.append(JVertex(cid, "cyclic", (), 1, length))
        for tag, carrier, word, k in (("a", ca, wa, ka), ("b", cb, wb, kb)):
            degree = 1 if k > 1 or top == 1 else top
            D.edges.append(JEdge(f"{cid}.{tag}", cid, carrier, circle * degree, word))
    _merge_cyclic_pairs(D)
    collapse_surfaces(D)
    if len(D.vertices) == 1 and not D.edges and D.vertices[0].kind == "surface":
        raise ClosedSurfaceError("closed surface group — JSJ undefined")
    D.vertices.sort(key=lambda v: v.id)
    D.edges.sort(key=lambda e: e.id)
    return D


def _merge_cyclic_pairs(D: DecompositionGraph) -> None:
    """Fold edges joining two cyclic vertices into one cyclic vertex."""
    while True:
        kinds = {v.id: v.kind for v in D.vertices}
        hit = next((e for e in D.edges if kinds[e.cyclic] == "cyclic" and kinds[e.other] == "cyclic"), None)
        if hit is None:
            return
        keep, gone = sorted((hit.cyclic, hit.other))
        D.edges = [e for e in D.edges if e is not hit]
        edges = []
        for e in D.edges:
            c = keep if e.cyclic == gone else e.cyclic
            o = keep if e.other == gone else e.other
            edges.append(JEdge(e.id, c, o, e.word_cyclic, e.word_other))
        D.edges = edges
        D.vertices = [v for v in D.vertices if v.id != gone]


def shape(D: DecompositionGraph) -> tuple:
    """Name-free summary: per vertex its kind, rank and the sorted list of
    (neighbour kind, attaching degree at the cyclic end)."""
    kinds = {v.id: v for v in D.vertices}
    out = []
    for v in D.vertices:
        nbrs = []
        for e in D.edges:
            if v.id not in (e.cyclic, e.other):
                continue
            c = kinds[e.cyclic]
            degree = len(e.word_cyclic) // c.length if c.length else 1
            other = kinds[e.other] if e.cyclic == v.id else c
            nbrs.append((other.kind, degree))
        out.append((v.kind, v.rank, tuple(sorted(nbrs))))
    return tuple(sorted(out, key=repr))
