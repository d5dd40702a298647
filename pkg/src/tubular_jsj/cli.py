"""Command-line interface."""
from __future__ import annotations

import sys
from dataclasses import replace
from pathlib import Path

import click

from .complex import TubularComplex, brady_meier_check
from .config import Limits, PipelineConfig
from .errors import JSJError, PreconditionError, ValidationError
from .io import (OutputDocument, document_from_decomposition, document_from_jsj, document_from_relative,
                 emit_output, emit_tgg, load, parse_word_arg, render_dot, row_from_record)
from .opening import open_along
from .pipeline import certify, run_jsj
from .relative import GraphOfFreeGroups, general_jsj, relative_jsj
from .separation import is_splitting_cycle, splitting_cycle_list
from .validate import validate_complex


def _write(text: str, path) -> None:
    if path is None or str(path) == "-":
        click.echo(text, nl=False)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _complex(ctx, path) -> TubularComplex:
    X = load(path, simplicial=ctx.obj["simplicial"])
    if not isinstance(X, TubularComplex):
        raise ValidationError(f"{path} is a graph of free groups; this command needs a .tgg complex")
    return X


def _graph(X: TubularComplex, name: str) -> None:
    if name not in X.graph_map:
        raise ValidationError(f"no vertex graph named {name}")


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--threads", type=click.IntRange(1), default=1, show_default=True,
              help="Worker count for parallel stages.")
@click.option("--max-cells", type=click.IntRange(1), default=None,
              help="Cap on sphere sizes (env TUBULAR_JSJ_MAX_CELLS).")
@click.option("--max-cycles", type=click.IntRange(1), default=None,
              help="Cap on enumerated cycles (env TUBULAR_JSJ_MAX_CYCLES).")
@click.option("--simplicial", is_flag=True, help="Subdivide loops and parallel edges on load.")
@click.version_option(package_name="tubular-jsj")
@click.pass_context
def cli(ctx, threads, max_cells, max_cycles, simplicial):
    """JSJ decompositions of tubular graphs of graphs."""
    limits = Limits.from_env(max_cells=max_cells, max_cycles=max_cycles)
    ctx.obj = {"config": PipelineConfig(threads=threads, limits=limits), "simplicial": simplicial}


@cli.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def validate(ctx, file):
    """Parse and check the structural invariants."""
    X = load(file, simplicial=ctx.obj["simplicial"])
    if isinstance(X, GraphOfFreeGroups):
        click.echo(f"ok: graph of free groups, {len(X.ranks)} vertices, {len(X.edges)} edges")
        return
    rep = validate_complex(X)
    if not rep.ok:
        raise ValidationError("invalid complex", rep.violations)
    click.echo(f"ok: {X.summary()}")


@cli.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def bm(ctx, file):
    """Check the Brady-Meier link condition."""
    X = _complex(ctx, file)
    ok, witness = brady_meier_check(X)
    if ok:
        click.echo("brady-meier: yes")
        return
    raise PreconditionError(f"brady-meier: no ({witness['reason']} at {witness['vertex']})")


@cli.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--graph", "graph", required=True, help="Vertex graph to search.")
@click.option("--max-len", type=click.IntRange(1), required=True, help="Longest cycle considered.")
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None)
@click.pass_context
def cycles(ctx, file, graph, max_len, output):
    """List splitting cycles of one vertex graph."""
    X = _complex(ctx, file)
    _graph(X, graph)
    certify(X)
    cfg = ctx.obj["config"]
    rep = splitting_cycle_list(X, max_len, threads=cfg.threads, max_cycles=cfg.limits.max_cycles,
                               graphs={graph}, max_cells=cfg.limits.max_cells)
    found = [(c.graph, c.word) for c in rep.cycles if c.graph == graph]
    warnings = list(rep.warnings)
    if not found and not any("no splitting" in w for w in warnings):
        warnings.append("no splitting cycles found up to the length limit")
    doc = OutputDocument("cycles", max_cycle_len=rep.max_len, truncated=rep.truncated, warnings=warnings,
                         cycles=found)
    _write(emit_output(doc), output)


@cli.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--graph", "graph", required=True)
@click.option("--word", required=True, help="Cycle as 'a -b c' or compact letters 'aB'.")
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None)
@click.pass_context
def classify(ctx, file, graph, word, output):
    """Classify one cycle: half-spaces, separation, crossing."""
    X = _complex(ctx, file)
    _graph(X, graph)
    certify(X)
    rec = is_splitting_cycle(X, graph, parse_word_arg(word, X.graph(graph).ends),
                             max_cells=ctx.obj["config"].limits.max_cells)
    _write(emit_output(OutputDocument("classify", classifications=[row_from_record(rec)])), output)


@cli.command("open")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--graph", "graph", required=True)
@click.option("--word", required=True)
@click.option("-o", "--output", type=click.Path(dir_okay=False), required=True)
@click.pass_context
def open_cmd(ctx, file, graph, word, output):
    """Open the complex along a splitting cycle and write the result as .tgg."""
    X = _complex(ctx, file)
    _graph(X, graph)
    certify(X)
    w = parse_word_arg(word, X.graph(graph).ends)
    rec = is_splitting_cycle(X, graph, w)
    if not rec.splitting:
        raise PreconditionError(f"{word} is not a splitting cycle in {graph}")
    res = open_along(X, graph, rec.cycle.word)
    _write(emit_tgg(res.complex), output)
    click.echo(f"opened: {res.complex.summary()}")


@cli.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--max-cycle-len", type=click.IntRange(1), default=None,
              help="Length bound for the splitting-cycle search.")
@click.option("--dot", "dot", type=click.Path(dir_okay=False), default=None, help="Also write a DOT rendering.")
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None)
@click.pass_context
def jsj(ctx, file, max_cycle_len, dot, output):
    """Full JSJ decomposition of a tubular complex."""
    X = _complex(ctx, file)
    cfg = replace(ctx.obj["config"], max_cycle_len=max_cycle_len)
    res = run_jsj(X, cfg)
    _write(emit_output(document_from_jsj(res)), output)
    if dot:
        _write(render_dot(res.decomposition), dot)


@cli.command("relative-jsj")
@click.option("--rank", type=click.IntRange(1, 26), required=True)
@click.option("--word", "words", multiple=True, required=True, help="Peripheral word; repeat for a family.")
@click.option("--dot", "dot", type=click.Path(dir_okay=False), default=None)
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None)
@click.pass_context
def relative_cmd(ctx, rank, words, dot, output):
    """JSJ of a free group relative to a family of cyclic words."""
    res = relative_jsj(list(words), rank, ctx.obj["config"])
    _write(emit_output(document_from_relative(res)), output)
    if dot:
        _write(render_dot(res.decomposition), dot)


@cli.command("general-jsj")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--dot", "dot", type=click.Path(dir_okay=False), default=None)
@click.option("-o", "--output", type=click.Path(dir_okay=False), default=None)
@click.pass_context
def general_cmd(ctx, file, dot, output):
    """JSJ of a graph of free groups with cyclic edge groups (.gog)."""
    G = load(file)
    if not isinstance(G, GraphOfFreeGroups):
        raise ValidationError(f"{file} is a tubular complex; use 'jsj'")
    D = general_jsj(G, ctx.obj["config"])
    _write(emit_output(document_from_decomposition(D, "general-jsj")), output)
    if dot:
        _write(render_dot(D), dot)


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return 1
    except click.ClickException as exc:
        exc.show()
        return 2
    except JSJError as exc:
        click.echo(f"error: {exc}", err=True)
        for v in getattr(exc, "violations", []):
            click.echo(f"  - {v}", err=True)
        return exc.exit_code
    return 0


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
