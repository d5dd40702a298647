"""Random small tubular complexes for property tests and corpus checks."""
from __future__ import annotations

import random

from .complex import Tube, TubeEnd, TubularComplex, make_complex, make_graph
from .cycles import enumerate_cycles, rotate
from .complex import invert_word
from .fixtures import circle_graph, rose_graph
from .validate import validate_complex


def _theta(name: str):
    return make_graph(name, ["p", "q"], [("x", "p", "q"), ("y", "p", "q"), ("z", "p", "q")])


def _square_with_diagonal(name: str):
    vs = ["p", "q", "r", "s"]
    return make_graph(name, vs, [("x", "p", "q"), ("y", "q", "r"), ("z", "r", "s"), ("w", "s", "p"),
                                 ("d", "p", "r")])


def random_graph(rng: random.Random, name: str):
    kind = rng.choice(["rose", "rose", "circle", "theta", "square"])
    if kind == "rose":
        return rose_graph(name, "abc"[:rng.randint(1, 3)])
    if kind == "circle":
        return circle_graph(name, rng.randint(1, 4))
    if kind == "theta":
        return _theta(name)
    return _square_with_diagonal(name)


def _cycles_by_length(g, max_len: int) -> dict:
    X = make_complex([g], [])
    out = {}
    for rec in enumerate_cycles(X, g.name, max_len):
        out.setdefault(rec.length, []).append(rec.word)
    return out


def random_complex(rng: random.Random, max_squares: int = 20, max_tubes: int = 3,
                   require_valid: bool = True, attempts: int = 200) -> TubularComplex:
    """A random tubular complex with at most ``max_squares`` squares; every
    tube joins random immersed cycles of equal length, placed at a random
    rotation and orientation."""
    for _ in range(attempts):
        graphs = [random_graph(rng, f"G{i}") for i in range(rng.randint(1, 3))]
        cycles = {g.name: _cycles_by_length(g, 6) for g in graphs}
        tubes, budget = [], max_squares
        for t in range(rng.randint(1, max_tubes)):
            a, b = rng.choice(graphs), rng.choice(graphs)
            common = sorted(set(cycles[a.name]) & set(cycles[b.name]))
            common = [n for n in common if n <= budget]
            if not common:
                continue
            n = rng.choice(common)
            wa = rotate(rng.choice(cycles[a.name][n]), rng.randrange(n))
            wb = rotate(rng.choice(cycles[b.name][n]), rng.randrange(n))
            if rng.random() < 0.5:
                wb = invert_word(wb)
            tubes.append(Tube(f"T{t}", n, TubeEnd(a.name, wa), TubeEnd(b.name, wb)))
            budget -= n
        if not tubes:
            continue
        X = make_complex(graphs, tubes)
        if not require_valid or validate_complex(X).ok:
            return X
    raise RuntimeError("could not generate a valid complex")


def random_double(rng: random.Random, max_len: int = 8) -> TubularComplex:
    """Two copies of a rose glued along one random cycle, plus an optional
    second tube; these are Brady-Meier more often than arbitrary samples."""
    g1, g2 = rose_graph("R1", "ab"), rose_graph("R2", "ab")
    cyc = _cycles_by_length(g1, max_len)
    n = rng.choice([k for k in cyc if k >= 2])
    w = rng.choice(cyc[n])
    tubes = [Tube("T0", n, TubeEnd("R1", w), TubeEnd("R2", w))]
    if rng.random() < 0.5 and n <= 10:
        m = rng.choice([k for k in cyc if k <= 20 - n])
        u = rng.choice(cyc[m])
        tubes.append(Tube("T1", m, TubeEnd("R1", u), TubeEnd("R2", rotate(u, rng.randrange(m)))))
    return make_complex([g1, g2], tubes)
