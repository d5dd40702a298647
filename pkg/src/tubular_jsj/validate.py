"""Invariant checks for tubular complexes."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import networkx as nx

from .complex import TubularComplex, in_half, link_of, out_half


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, msg: str) -> None:
        self.violations.append(msg)


def word_problems(X: TubularComplex, gname: str, word, cyclic: bool = True) -> list:
    """Problems with a word in one vertex graph, without reference to tubes."""
    out = []
    if gname not in X.graph_map:
        return [f"unknown vertex graph {gname}"]
    g = X.graph(gname)
    for e, _ in word:
        if e not in g.ends:
            return [f"unknown edge {e} in {gname}"]
    n = len(word)
    if n == 0:
        return ["empty word"]
    pairs = range(n) if cyclic else range(n - 1)
    for i in pairs:
        a, b = word[i], word[(i + 1) % n]
        if g.end(a) != g.start(b):
            out.append(f"word in {gname} is not a closed edge path at position {i}")
            return out
    for i in pairs:
        a, b = word[i], word[(i + 1) % n]
        if in_half(a) == out_half(b):
            out.append(f"not an immersion: backtracking at position {i} in {gname}")
            break
    return out


def validate_complex(X: TubularComplex, strict_simplicial: bool = False) -> ValidationReport:
    """List every violated invariant; an empty report means a valid NPC
    tubular complex.  Loops and parallel edges are reported only with
    ``strict_simplicial`` since the half-edge model handles them."""
    rep = ValidationReport()
    words_ok = True
    for g in X.graphs:
        vs = set(g.vertices)
        if len(vs) != len(g.vertices):
            rep.add(f"duplicate vertex in {g.name}")
        ids = [e for e, _, _ in g.edges]
        if len(set(ids)) != len(ids):
            rep.add(f"duplicate edge id in {g.name}")
        for e, a, b in g.edges:
            if a not in vs or b not in vs:
                rep.add(f"edge {e} of {g.name} has unknown endpoint")
                words_ok = False
        if strict_simplicial and not g.is_simplicial():
            rep.add(f"non-simplicial graph {g.name}")
        if words_ok and not g.is_connected():
            rep.add(f"vertex graph {g.name} is disconnected")
    names = Counter(t.name for t in X.tubes)
    for n, c in names.items():
        if c > 1:
            rep.add(f"duplicate tube name {n}")
    for t in X.tubes:
        if not t.cyclic:
            rep.add(f"open tube {t.name}")
        la, lb = len(t.end_a.word), len(t.end_b.word)
        if la != lb:
            rep.add(f"tube length mismatch in {t.name}: {la} vs {lb}")
            words_ok = False
        elif la != t.length:
            rep.add(f"tube length mismatch in {t.name}: declared {t.length}, words {la}")
            words_ok = False
        if t.length <= 0:
            rep.add(f"tube {t.name} has non-positive length")
            words_ok = False
        for end in (t.end_a, t.end_b):
            probs = word_problems(X, end.graph, end.word, cyclic=t.cyclic)
            if probs:
                words_ok = False
                rep.violations.extend(f"tube {t.name}: {p}" for p in probs)
    if not words_ok:
        return rep
    for vertex in X.vertices():
        link = link_of(X, vertex)
        seen = Counter()
        for u, w, _ in link.edges(keys=True):
            seen[frozenset((u, w))] += 1
        if any(c > 1 for c in seen.values()):
            rep.add(f"bigon in link at {vertex}")
    under = nx.MultiGraph()
    under.add_nodes_from(g.name for g in X.graphs)
    under.add_edges_from((t.end_a.graph, t.end_b.graph) for t in X.tubes)
    if X.graphs and not nx.is_connected(under):
        rep.add("disconnected underlying graph")
    return rep
