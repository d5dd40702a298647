from __future__ import annotations

from pathlib import Path

import pytest

from tubular_jsj.cli import main
from tubular_jsj.io import parse_output, parse_tgg

INPUTS = Path(__file__).resolve().parent.parent / "examples" / "inputs"
D33 = str(INPUTS / "d33.tgg")
DCOMM = str(INPUTS / "dcomm.tgg")


def _run(capsys, *args):
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


def test_validate_and_bm(capsys):
    code, out, _ = _run(capsys, "validate", DCOMM)
    assert code == 0 and out.startswith("ok: 2 vertex graphs, 1 tubes")
    code, out, _ = _run(capsys, "validate", str(INPUTS / "d33.gog"))
    assert code == 0 and "graph of free groups" in out
    assert _run(capsys, "bm", D33)[:2] == (0, "brady-meier: yes\n")


def test_bm_failure_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.tgg"
    bad.write_text("vgraph G\nv p\ne a p p\ne b p p\nendvgraph\ntube T 1\nend G a\nend G b\nendtube\n")
    code, _, err = _run(capsys, "bm", str(bad))
    assert code == 3 and "brady-meier: no" in err


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.tgg"
    bad.write_text("vgraph G\nv p\ne a p p\nendvgraph\ntube T 1\nend G z\nend G a\nendtube\n")
    code, _, err = _run(capsys, "validate", str(bad))
    assert code == 2 and "line 6, column 7" in err


def test_usage_error_exit_code(capsys):
    assert _run(capsys, "cycles", D33)[0] == 2
    assert _run(capsys, "--threads", "0", "validate", D33)[0] == 2
    assert _run(capsys, "classify", D33, "--graph", "nope", "--word", "a")[0] == 2


def test_cycles_document(capsys):
    code, out, _ = _run(capsys, "cycles", D33, "--graph", "R1", "--max-len", "4")
    assert code == 0
    doc = parse_output(out)
    assert doc.command == "cycles" and doc.max_cycle_len == 4 and doc.truncated
    assert [w for _, w in doc.cycles] == [(("a", 1),) * 3, (("b", 1),) * 3]


def test_cycles_below_all_lengths(capsys):
    # after subdivision every cycle has length at least 3
    code, out, _ = _run(capsys, "--simplicial", "cycles", D33, "--graph", "R1", "--max-len", "2")
    doc = parse_output(out)
    assert code == 0 and doc.cycles == [] and doc.truncated
    assert doc.warnings == ["no splitting cycles found up to the length limit"]


def test_classify_document(capsys):
    code, out, _ = _run(capsys, "classify", D33, "--graph", "R1", "--word", "aaa")
    (row,) = parse_output(out).classifications
    assert code == 0 and row.K == 3 and row.splitting
    code, out, _ = _run(capsys, "classify", D33, "--graph", "R1", "--word", "a,a,a,b,b,b")
    (row,) = parse_output(out).classifications
    assert row.K == 2 and row.splitting


def test_open_command(tmp_path, capsys):
    target = tmp_path / "opened.tgg"
    code, out, _ = _run(capsys, "open", D33, "--graph", "R1", "--word", "aaa", "-o", str(target))
    assert code == 0 and out.startswith("opened:")
    Y = parse_tgg(target.read_text())
    assert len(Y.graphs) == 3
    code, _, err = _run(capsys, "open", D33, "--graph", "R1", "--word", "ab", "-o", str(target))
    assert code == 3 and "not a splitting cycle" in err


def test_closed_surface_exit_code(capsys):
    code, _, err = _run(capsys, "jsj", DCOMM)
    assert code == 4 and "closed surface group — JSJ undefined" in err


def test_jsj_with_dot(tmp_path, capsys):
    out_file, dot_file = tmp_path / "d33.out", tmp_path / "d33.dot"
    code, _, _ = _run(capsys, "jsj", D33, "--max-cycle-len", "6", "-o", str(out_file), "--dot", str(dot_file))
    assert code == 0
    doc = parse_output(out_file.read_text())
    assert doc.decomposition is not None and doc.decomposition.check() == []
    assert dot_file.read_text().startswith('graph "jsj"')


def test_thread_count_does_not_change_output(tmp_path, capsys):
    texts = []
    for n in ("1", "3"):
        target = tmp_path / f"t{n}.out"
        assert _run(capsys, "--threads", n, "jsj", D33, "--max-cycle-len", "6", "-o", str(target))[0] == 0
        texts.append(target.read_text())
    assert texts[0] == texts[1]


def test_relative_commands(capsys):
    code, _, err = _run(capsys, "relative-jsj", "--rank", "1", "--word", "a")
    assert code == 3 and "surjects" in err


def test_general_command(capsys):
    code, out, _ = _run(capsys, "general-jsj", str(INPUTS / "d33.gog"))
    assert code == 0
    kinds = sorted(v.kind for v in parse_output(out).decomposition.vertices)
    assert kinds == ["cyclic"] * 4 + ["surface"]
    assert _run(capsys, "general-jsj", D33)[0] == 2


def test_resource_caps(monkeypatch, capsys):
    assert _run(capsys, "--max-cells", "10", "classify", D33, "--graph", "R1", "--word", "aaa")[0] == 5
    monkeypatch.setenv("TUBULAR_JSJ_MAX_CYCLES", "2")
    code, _, err = _run(capsys, "cycles", D33, "--graph", "R1", "--max-len", "6")
    assert code == 5 and "exceeded" in err
    # the flag wins over the environment
    assert _run(capsys, "--max-cycles", "1000", "cycles", D33, "--graph", "R1", "--max-len", "4")[0] == 0


def test_version(capsys):
    code, out, _ = _run(capsys, "--version")
    assert code == 0 and "0.1.0" in out
