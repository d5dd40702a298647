"""Text formats: `.tgg` complexes, `.gog` graphs of free groups, result
documents and DOT rendering."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .complex import Tube, TubeEnd, TubularComplex, make_complex, make_graph
from .decomposition import DecompositionGraph, JEdge, JVertex
from .errors import ParseError, ValidationError
from .fixtures import letters
from .relative import ALPHABET, GogEdge, GraphOfFreeGroups
from .subdivision import make_simplicial
from .validate import validate_complex

_NAME = re.compile(r"[^\s,:#-][^\s,:]*")
_COMMENT = re.compile(r"(^|\s)#.*$")


# ---------------------------------------------------------------------------
# tokenising
# ---------------------------------------------------------------------------

def _lines(text: str):
    """(line number, [(column, token), ...]) for every non-blank line.  A
    comment starts at a ``#`` that begins a word, so ids may contain ``#``."""
    for no, raw in enumerate(text.splitlines(), start=1):
        body = _COMMENT.sub("", raw)
        toks = [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", body)]
        if toks:
            yield no, toks


def _name(tok, no) -> str:
    col, text = tok
    if not _NAME.fullmatch(text):
        raise ParseError(f"bad identifier {text!r}", no, col)
    return text


def _int(tok, no, what: str) -> int:
    col, text = tok
    try:
        val = int(text)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {text!r}", no, col) from None
    if val < 1:
        raise ParseError(f"{what} must be positive", no, col)
    return val


def detect_format(text: str) -> str:
    for _, toks in _lines(text):
        head = toks[0][1]
        if head in ("vgraph", "tube", "assert"):
            return "tgg"
        if head == "v" and len(toks) >= 3 and toks[2][1] == "rank":
            return "gog"
        if head == "e" and len(toks) in (3, 4) and ":" in toks[-1][1]:
            return "gog"
        break
    raise ParseError("cannot tell whether input is .tgg or .gog", 1, 1)


# ---------------------------------------------------------------------------
# .tgg
# ---------------------------------------------------------------------------

def parse_tgg(text: str, simplicial: bool = False, validate: bool = True) -> TubularComplex:
    graphs, tubes, notes = [], [], []
    edge_ids = {}
    graph = tube = None
    for no, toks in _lines(text):
        head = toks[0][1]
        if graph is not None:
            if head == "v":
                graph["vertices"].extend(_name(t, no) for t in toks[1:])
            elif head == "e":
                if len(toks) != 4:
                    raise ParseError("edge line needs: e <id> <v1> <v2>", no, toks[0][0])
                eid, a, b = (_name(t, no) for t in toks[1:])
                known = set(graph["vertices"])
                for col_tok, v in zip(toks[2:], (a, b)):
                    if v not in known:
                        raise ParseError(f"unknown vertex {v!r} in {graph['name']}", no, col_tok[0])
                if eid in graph["edges"]:
                    raise ParseError(f"duplicate edge {eid!r} in {graph['name']}", no, toks[1][0])
                graph["edges"][eid] = (a, b)
            elif head == "endvgraph":
                g = make_graph(graph["name"], graph["vertices"], [(e, a, b) for e, (a, b) in graph["edges"].items()])
                graphs.append(g)
                edge_ids[g.name] = set(graph["edges"])
                graph = None
            else:
                raise ParseError(f"unexpected {head!r} inside vgraph", no, toks[0][0])
            continue
        if tube is not None:
            if head == "end":
                if len(toks) < 3:
                    raise ParseError("end line needs: end <vgraph> <tok>...", no, toks[0][0])
                gname = toks[1][1]
                if gname not in edge_ids:
                    raise ParseError(f"unknown vertex graph {gname!r}", no, toks[1][0])
                word = []
                for col, t in toks[2:]:
                    sign = -1 if t.startswith("-") else 1
                    eid = t[1:] if sign < 0 else t
                    if eid not in edge_ids[gname]:
                        raise ParseError(f"unknown edge {eid!r} in {gname}", no, col)
                    word.append((eid, sign))
                if len(tube["ends"]) == 2:
                    raise ParseError("a tube has exactly two ends", no, toks[0][0])
                tube["ends"].append(TubeEnd(gname, tuple(word)))
            elif head == "endtube":
                if len(tube["ends"]) != 2:
                    raise ParseError(f"tube {tube['name']} needs two end lines", no, toks[0][0])
                a, b = tube["ends"]
                for end in (a, b):
                    if len(end.word) != tube["length"]:
                        raise ParseError(f"tube {tube['name']}: word length {len(end.word)} "
                                         f"differs from declared length {tube['length']}", no, toks[0][0])
                tubes.append(Tube(tube["name"], tube["length"], a, b, tube["cyclic"]))
                tube = None
            else:
                raise ParseError(f"unexpected {head!r} inside tube", no, toks[0][0])
            continue
        if head == "vgraph":
            if len(toks) != 2:
                raise ParseError("vgraph line needs a name", no, toks[0][0])
            name = _name(toks[1], no)
            if name in edge_ids:
                raise ParseError(f"duplicate vertex graph {name!r}", no, toks[1][0])
            graph = {"name": name, "vertices": [], "edges": {}}
        elif head == "tube":
            if len(toks) not in (3, 4) or (len(toks) == 4 and toks[3][1] != "open"):
                raise ParseError("tube line needs: tube <name> <len> [open]", no, toks[0][0])
            tube = {"name": _name(toks[1], no), "length": _int(toks[2], no, "tube length"), "ends": [],
                    "cyclic": len(toks) == 3}
        elif head == "assert":
            if [t for _, t in toks[1:]] != ["hyperbolic"]:
                raise ParseError("only 'assert hyperbolic' is understood", no, toks[0][0])
            notes.append("hyperbolic")
        else:
            raise ParseError(f"unexpected {head!r}", no, toks[0][0])
    if graph is not None:
        raise ParseError(f"vgraph {graph['name']} is not closed")
    if tube is not None:
        raise ParseError(f"tube {tube['name']} is not closed")
    X = make_complex(graphs, tubes, tuple(notes))
    if simplicial:
        X = make_simplicial(X)
    if validate:
        rep = validate_complex(X)
        if not rep.ok:
            raise ValidationError("invalid complex: " + "; ".join(rep.violations), rep.violations)
    return X


def _tok(t) -> str:
    return t[0] if t[1] > 0 else "-" + t[0]


def emit_tgg(X: TubularComplex) -> str:
    out = []
    if "hyperbolic" in X.notes:
        out.append("assert hyperbolic")
    for g in X.graphs:
        out.append(f"vgraph {g.name}")
        out.append("v " + " ".join(str(v) for v in g.vertices))
        for e, a, b in g.edges:
            out.append(f"e {e} {a} {b}")
        out.append("endvgraph")
    for t in X.tubes:
        out.append(f"tube {t.name} {t.length}" + ("" if t.cyclic else " open"))
        for end in (t.end_a, t.end_b):
            out.append(f"end {end.graph} " + " ".join(_tok(x) for x in end.word))
        out.append("endtube")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# .gog
# ---------------------------------------------------------------------------

def parse_gog(text: str) -> GraphOfFreeGroups:
    ranks, edges, seen_edges = {}, [], set()
    for no, toks in _lines(text):
        head = toks[0][1]
        if head == "v":
            if len(toks) != 4 or toks[2][1] != "rank":
                raise ParseError("vertex line needs: v <name> rank <r>", no, toks[0][0])
            name = _name(toks[1], no)
            if name in ranks:
                raise ParseError(f"duplicate vertex {name!r}", no, toks[1][0])
            r = _int(toks[3], no, "rank")
            if r > len(ALPHABET):
                raise ParseError(f"rank above {len(ALPHABET)} is not supported", no, toks[3][0])
            ranks[name] = r
        elif head == "e":
            if len(toks) not in (3, 4):
                raise ParseError("edge line needs: e [<name>] <vA>:<wordA> <vB>:<wordB>", no, toks[0][0])
            if len(toks) == 4:
                name = _name(toks[1], no)
            else:
                name = f"e{len(edges)}"
                while name in seen_edges:
                    name += "'"
            if name in seen_edges:
                raise ParseError(f"duplicate edge {name!r}", no, toks[1][0])
            seen_edges.add(name)
            parts = []
            for col, t in toks[-2:]:
                if t.count(":") != 1:
                    raise ParseError(f"expected <vertex>:<word>, got {t!r}", no, col)
                v, w = t.split(":")
                if v not in ranks:
                    raise ParseError(f"unknown vertex {v!r}", no, col)
                if not w or not re.fullmatch(r"[a-zA-Z]+", w):
                    raise ParseError(f"bad word {w!r}", no, col + len(v) + 1)
                bad = sorted({c for c in w.lower() if c not in ALPHABET[:ranks[v]]})
                if bad:
                    raise ParseError(f"letters {''.join(bad)} exceed rank {ranks[v]} of {v}", no, col + len(v) + 1)
                parts.append((v, letters(w)))
            edges.append(GogEdge(name, parts[0][0], parts[0][1], parts[1][0], parts[1][1]))
        else:
            raise ParseError(f"unexpected {head!r}", no, toks[0][0])
    if not ranks:
        raise ParseError("no vertices")
    return GraphOfFreeGroups(tuple(ranks.items()), tuple(edges))


def parse_input(text: str, simplicial: bool = False):
    """A TubularComplex for `.tgg` text, a GraphOfFreeGroups for `.gog`."""
    if detect_format(text) == "gog":
        return parse_gog(text)
    return parse_tgg(text, simplicial=simplicial)


def load(path, simplicial: bool = False):
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"{p} is not UTF-8 text") from exc
    if p.suffix == ".gog":
        return parse_gog(text)
    if p.suffix == ".tgg":
        return parse_tgg(text, simplicial=simplicial)
    return parse_input(text, simplicial=simplicial)


def parse_word_arg(text: str, edges=None) -> tuple:
    """Command-line word: tokens separated by spaces or commas (``a -b``),
    or a compact letter string (``aB``) when every edge id is one letter."""
    parts = [p for p in re.split(r"[\s,]+", text.strip()) if p]
    if len(parts) == 1 and (edges is None or all(len(e) == 1 for e in edges)) and parts[0].isalpha():
        return letters(parts[0])
    return tuple((p[1:], -1) if p.startswith("-") else (p, 1) for p in parts)


# ---------------------------------------------------------------------------
# result documents
# ---------------------------------------------------------------------------

@dataclass
class ClassificationRow:
    graph: str
    word: tuple
    K: int
    sigma: tuple
    strongly_separating: bool
    stabiliser_condition: bool
    self_crossing: bool
    representative: tuple | None

    @property
    def splitting(self) -> bool:
        return self.strongly_separating and self.stabiliser_condition and not self.self_crossing


@dataclass
class OutputDocument:
    command: str
    version: str = __version__
    max_cycle_len: int | None = None
    truncated: bool = False
    warnings: list = field(default_factory=list)
    cycles: list = field(default_factory=list)            # (graph, word)
    classifications: list = field(default_factory=list)   # ClassificationRow
    decomposition: DecompositionGraph | None = None
    peripheral: list = field(default_factory=list)        # (index, word, carrier vertex)


def _word_out(word) -> str:
    return ",".join(_tok(t) for t in word) if word else "~"


def _word_in(text: str) -> tuple:
    if text == "~":
        return ()
    return tuple((t[1:], -1) if t.startswith("-") else (t, 1) for t in text.split(","))


def _opt(v) -> str:
    return "-" if v is None else str(v)


def _yn(b: bool) -> str:
    return "yes" if b else "no"


HEADER = "tubular-jsj-output 1"


def emit_output(doc: OutputDocument) -> str:
    out = [HEADER, f"command {doc.command}", f"version {doc.version}",
           f"max-cycle-len {_opt(doc.max_cycle_len)}", f"truncated {_yn(doc.truncated)}"]
    out += [f"warning {w}" for w in doc.warnings]
    out += [f"cycle {g} {_word_out(w)}" for g, w in doc.cycles]
    for r in doc.classifications:
        rep = "-" if r.representative is None else _word_out(r.representative)
        out.append(f"classification {r.graph} {_word_out(r.word)} K {r.K} "
                   f"sigma {','.join(map(str, r.sigma))} strong {_yn(r.strongly_separating)} "
                   f"stabiliser {_yn(r.stabiliser_condition)} crossing {_yn(r.self_crossing)} "
                   f"splitting {_yn(r.splitting)} representative {rep}")
    D = doc.decomposition
    if D is not None:
        out.append("decomposition")
        for v in D.vertices:
            graphs = ",".join(v.graphs) if v.graphs else "-"
            out.append(f"vertex {v.id} {v.kind} rank {_opt(v.rank)} length {_opt(v.length)} graphs {graphs}")
        for kw, edges in (("edge", D.edges), ("stub", D.stubs)):
            for e in edges:
                out.append(f"{kw} {e.id} {e.cyclic} {e.other} {_word_out(e.word_cyclic)} {_word_out(e.word_other)}")
    out += [f"peripheral {i} {_word_out(w)} {c}" for i, w, c in doc.peripheral]
    out.append("end")
    return "\n".join(out) + "\n"


def parse_output(text: str) -> OutputDocument:
    lines = text.splitlines()
    if not lines or lines[0] != HEADER:
        raise ParseError("missing output header", 1, 1)
    doc = OutputDocument(command="")
    ended = False

    def opt_int(s):
        return None if s == "-" else int(s)

    for no, line in enumerate(lines[1:], start=2):
        if ended:
            raise ParseError("content after end", no, 1)
        key, _, rest = line.partition(" ")
        f = rest.split(" ")
        try:
            if key == "command":
                doc.command = rest
            elif key == "version":
                doc.version = rest
            elif key == "max-cycle-len":
                doc.max_cycle_len = opt_int(rest)
            elif key == "truncated":
                doc.truncated = rest == "yes"
            elif key == "warning":
                doc.warnings.append(rest)
            elif key == "cycle":
                doc.cycles.append((f[0], _word_in(f[1])))
            elif key == "classification":
                kv = dict(zip(f[2::2], f[3::2]))
                rep = kv["representative"]
                doc.classifications.append(ClassificationRow(
                    f[0], _word_in(f[1]), int(kv["K"]), tuple(int(x) for x in kv["sigma"].split(",")),
                    kv["strong"] == "yes", kv["stabiliser"] == "yes", kv["crossing"] == "yes",
                    None if rep == "-" else _word_in(rep)))
            elif key == "decomposition":
                doc.decomposition = DecompositionGraph()
            elif key == "vertex":
                graphs = () if f[7] == "-" else tuple(f[7].split(","))
                doc.decomposition.vertices.append(JVertex(f[0], f[1], graphs, opt_int(f[3]), opt_int(f[5])))
            elif key in ("edge", "stub"):
                e = JEdge(f[0], f[1], f[2], _word_in(f[3]), _word_in(f[4]))
                (doc.decomposition.edges if key == "edge" else doc.decomposition.stubs).append(e)
            elif key == "peripheral":
                doc.peripheral.append((int(f[0]), _word_in(f[1]), f[2]))
            elif key == "end":
                ended = True
            else:
                raise ParseError(f"unknown record {key!r}", no, 1)
        except (IndexError, KeyError, ValueError, AttributeError) as exc:
            raise ParseError(f"malformed {key} record", no, 1) from exc
    if not ended:
        raise ParseError("missing end line", len(lines), 1)
    return doc


# ---------------------------------------------------------------------------
# DOT
# ---------------------------------------------------------------------------

SHAPES = {"cyclic": "circle", "surface": "doublecircle", "rigid": "box"}


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def render_dot(D: DecompositionGraph, name: str = "jsj") -> str:
    lines = [f"graph {_q(name)} {{"]
    lengths = {v.id: v.length for v in D.vertices}
    for v in D.vertices:
        label = v.kind if v.rank is None else f"{v.kind} r{v.rank}"
        lines.append(f"  {_q(v.id)} [shape={SHAPES[v.kind]}, label={_q(v.id + chr(10) + label)}];")
    for e in D.edges:
        n = lengths.get(e.cyclic)
        deg = len(e.word_cyclic) // n if n else 1
        lines.append(f"  {_q(e.cyclic)} -- {_q(e.other)} [label={_q(str(deg))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# documents from results
# ---------------------------------------------------------------------------

def row_from_record(rec) -> ClassificationRow:
    rep = None if rec.representative is None else rec.representative.word
    return ClassificationRow(rec.cycle.graph, rec.cycle.word, rec.K, tuple(rec.sigma), rec.strongly_separating,
                             rec.stabiliser_condition, rec.self_crossing, rep)


def document_from_jsj(result, command: str = "jsj") -> OutputDocument:
    return OutputDocument(command, max_cycle_len=result.max_len, truncated=result.truncated,
                          warnings=list(result.warnings), cycles=list(result.cycles),
                          decomposition=result.decomposition)


def document_from_relative(result) -> OutputDocument:
    per = [(i, w, result.peripheral_of[i]) for i, w in enumerate(result.family.words)]
    warnings = [f"{src} is the power {root}^{k}; using its root" for src, root, k in result.report.non_maximal]
    warnings += [f"{w} repeats an earlier conjugacy class" for w in result.report.merged]
    if result.whitehead_used:
        warnings.append("family replaced by a Whitehead-minimal image")
    return OutputDocument("relative-jsj", warnings=warnings, decomposition=result.decomposition, peripheral=per)


def document_from_decomposition(D: DecompositionGraph, command: str) -> OutputDocument:
    return OutputDocument(command, decomposition=D)
