"""Vertical cycles: canonical forms, powers, enumeration, self-intersections."""
from __future__ import annotations

from dataclasses import dataclass

from .complex import TubularComplex, in_half, inverse, invert_word, out_half
from .errors import PreconditionError, ResourceCapError
from .validate import word_problems

MACHINE_MAX = 2**63 - 1


def _key(tok) -> tuple:
    return (tok[0], 0 if tok[1] > 0 else 1)


def least_rotation(word) -> int:
    """Booth's algorithm on token keys; index of the least rotation."""
    s = [_key(t) for t in word] * 2
    n = len(word)
    f = [-1] * len(s)
    k = 0
    for j in range(1, len(s)):
        sj = s[j]
        i = f[j - k - 1]
        while i != -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != s[k + i + 1]:
            if sj < s[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k % n if n else 0


def rotate(word, k: int) -> tuple:
    word = tuple(word)
    return word[k:] + word[:k]


def canonical_word(word) -> tuple:
    """Least rotation among the word and its inverse."""
    word = tuple(word)
    if not word:
        return word
    a = rotate(word, least_rotation(word))
    inv = invert_word(word)
    b = rotate(inv, least_rotation(inv))
    return min(a, b, key=lambda w: [_key(t) for t in w])


def primitive_period(word) -> int:
    n = len(word)
    for p in range(1, n + 1):
        if n % p == 0 and tuple(word[p:]) + tuple(word[:p]) == tuple(word):
            return p
    return n


def cyclically_backtracks(word) -> bool:
    n = len(word)
    return any(word[(i + 1) % n] == inverse(word[i]) for i in range(n))


@dataclass(frozen=True)
class CycleRecord:
    graph: str
    word: tuple          # canonical representative
    root: tuple
    exponent: int
    domain: tuple        # fundamental domain P_C as a token sequence

    @property
    def length(self) -> int:
        return len(self.word)

    def __str__(self) -> str:
        return "".join(e if s > 0 else e.upper() if len(e) == 1 else "-" + e for e, s in self.word)


def normalize_cycle(word, graph: str = "", X: TubularComplex | None = None) -> CycleRecord:
    word = tuple(word)
    if not word:
        raise PreconditionError("empty cycle")
    if X is not None:
        probs = word_problems(X, graph, word, cyclic=True)
        if probs:
            raise PreconditionError("; ".join(probs))
    elif cyclically_backtracks(word):
        raise PreconditionError("not an immersion: backtracking")
    canon = canonical_word(word)
    p = primitive_period(canon)
    return CycleRecord(graph, canon, canon[:p], len(canon) // p, canon)


def power_of(C: CycleRecord, n: int) -> CycleRecord:
    if n < 1:
        raise PreconditionError("power must be positive")
    return CycleRecord(C.graph, C.word * n, C.root, C.exponent * n, C.domain * n)


def with_domain(C: CycleRecord, rotation: int) -> CycleRecord:
    """Same cycle, fundamental domain starting at another position."""
    return CycleRecord(C.graph, C.word, C.root, C.exponent, rotate(C.word, rotation % C.length))


def root_record(C: CycleRecord) -> CycleRecord:
    return CycleRecord(C.graph, C.root, C.root, 1, C.root)


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def enumerate_cycles(X: TubularComplex, graph: str, max_len: int, limit: int | None = None):
    """Yield every immersed cycle of length <= max_len once, as canonical
    records in order of (length, canonical word)."""
    g = X.graph(graph)
    tokens = sorted([(e, 1) for e, _, _ in g.edges] + [(e, -1) for e, _, _ in g.edges], key=_key)
    out_of = {v: [t for t in tokens if g.start(t) == v] for v in g.vertices}
    count = 0
    for n in range(1, max_len + 1):
        found = []
        for first in tokens:
            fk = _key(first)
            if _key(inverse(first)) < fk:
                continue
            start = g.start(first)
            stack = [(first,)]
            while stack:
                w = stack.pop()
                if len(w) == n:
                    if g.end(w[-1]) == start and in_half(w[-1]) != out_half(w[0]) \
                            and canonical_word(w) == w:
                        found.append(w)
                    continue
                last = w[-1]
                for t in reversed(out_of[g.end(last)]):
                    if t == inverse(last):
                        continue
                    if _key(t) < fk or _key(inverse(t)) < fk:
                        continue
                    stack.append(w + (t,))
        found.sort(key=lambda w: [_key(t) for t in w])
        for w in found:
            count += 1
            if limit is not None and count > limit:
                raise ResourceCapError(f"cycle enumeration exceeded {limit} classes")
            p = primitive_period(w)
            yield CycleRecord(graph, w, w[:p], n // p, w)


def brute_force_cycle_classes(X: TubularComplex, graph: str, max_len: int) -> set:
    """Reference implementation: all closed non-backtracking walks, reduced
    to canonical form.  Exponential; for tests only."""
    g = X.graph(graph)
    toks = [(e, s) for e, _, _ in g.edges for s in (1, -1)]
    classes = set()

    def grow(w):
        if len(w) and g.end(w[-1]) == g.start(w[0]) and not cyclically_backtracks(w):
            classes.add(canonical_word(w))
        if len(w) == max_len:
            return
        for t in toks:
            if w and (g.start(t) != g.end(w[-1]) or t == inverse(w[-1])):
                continue
            grow(w + (t,))

    grow(())
    return classes


# ---------------------------------------------------------------------------
# bounds
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LengthBounds:
    threshold: int   # length forcing k-repetitivity
    M: int
    cap: int         # F * M, enumeration length cap


def repetitive_length_bound(E: int, F: int, k: int) -> LengthBounds:
    if E < 1 or F < 1 or k < 1:
        raise PreconditionError("E, F and k must be positive")
    power = 2 ** (F * (F + 1) // 2)
    threshold = E * (k - 1) * power + 1
    M = 2 * E * power
    cap = F * M
    if max(threshold, cap) > MACHINE_MAX:
        raise ResourceCapError("bound exceeds machine range; use --max-cycle-len")
    return LengthBounds(threshold, M, cap)


# ---------------------------------------------------------------------------
# self-intersections
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SelfIntersection:
    start_vertex: object
    segment: tuple          # tokens along the first line
    pos_a: int              # vertex position of the segment start on the first line
    pos_b: int              # vertex position of the same point on the second line
    same_direction: bool
    exits_a: tuple          # (half at start, half at end), vertical halves
    exits_b: tuple
    shift: int = 0          # segment start minus the queried position on the first line

    @property
    def length(self) -> int:
        return len(self.segment)


class _Line:
    def __init__(self, root):
        self.root = tuple(root)
        self.n = len(root)

    def __call__(self, t: int):
        return self.root[t % self.n]


def line_intersections(X: TubularComplex, graph: str, root_a, root_b=None) -> list:
    """Common segments of a lift of the root_a line with lifts of the root_b
    line (root_b defaults to root_a, excluding the line itself)."""
    g = X.graph(graph)
    own = root_b is None
    root_b = root_a if own else root_b
    la, lb = len(root_a), len(root_b)
    A, B = _Line(root_a), _Line(root_b)
    va = [g.start(A(t)) for t in range(la)]
    vb = [g.start(B(t)) for t in range(lb)]
    seen, out = set(), []
    for i in range(la):
        for j in range(lb):
            if va[i] != vb[j] or (own and i == j):
                continue
            rec = _pair_intersection(g, A, B, i, j)
            if rec is None:
                continue
            key = (rec.pos_a, rec.pos_b, rec.same_direction, rec.length)
            if key in seen:
                continue
            seen.add(key)
            out.append(rec)
    return sorted(out, key=lambda r: (r.length, r.pos_a, r.pos_b, r.same_direction))


def _pair_intersection(g, A: _Line, B: _Line, i: int, j: int):
    """Maximal common segment of the A-line through vertex position i and
    the B-line through position j; None when the two lines coincide."""
    if A(i) == B(j) or A(i - 1) == B(j - 1):
        same = True
    elif A(i) == inverse(B(j - 1)) or A(i - 1) == inverse(B(j)):
        same = False
    else:
        return SelfIntersection(g.start(A(i)), (), i % A.n, j % B.n, True,
                                (in_half(A(i - 1)), out_half(A(i))),
                                (in_half(B(j - 1)), out_half(B(j))))
    if same:
        def other(t):
            return B(j + t)
    else:
        def other(t):
            return inverse(B(j - t - 1))
    cap = A.n + B.n
    fwd = 0
    while fwd <= cap and A(i + fwd) == other(fwd):
        fwd += 1
    back = 0
    while back <= cap and A(i - 1 - back) == other(-1 - back):
        back += 1
    if fwd + back >= cap:
        return None  # the two lines coincide
    a0, length = i - back, fwd + back
    seg = tuple(A(a0 + t) for t in range(length))
    if same:
        b0 = j - back
        exits_b = (in_half(B(b0 - 1)), out_half(B(b0 + length)))
    else:
        b0 = j + back
        exits_b = (out_half(B(b0)), in_half(B(b0 - length - 1)))
    exits_a = (in_half(A(a0 - 1)), out_half(A(a0 + length)))
    return SelfIntersection(g.start(seg[0]), seg, a0 % A.n, b0 % B.n, same, exits_a, exits_b, a0 - i)


def self_intersection_components(X: TubularComplex, C: CycleRecord) -> list:
    """Maximal common segments of two distinct lifts of the root line."""
    return line_intersections(X, C.graph, C.root)


def is_k_repetitive(X: TubularComplex, C: CycleRecord, k: int, scan_all: bool = False) -> bool:
    from .separation import halfspace_labels, repetition_classes

    if halfspace_labels(X, C.graph, C.word).K < 2:
        raise PreconditionError("cycle is not UC-separating")
    domains = range(C.length) if scan_all else [None]
    for rot in domains:
        D = C if rot is None else with_domain(C, rot)
        if any(len(cls) >= k for cls in repetition_classes(X, C.graph, D.domain)):
            return True
    return False
