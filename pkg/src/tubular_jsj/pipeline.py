"""End-to-end decomposition of a tubular complex."""
from __future__ import annotations

from dataclasses import dataclass, field

from .complex import TubularComplex, brady_meier_check
from .config import PipelineConfig
from .decomposition import DecompositionGraph, assemble_jsj, build_X_doubleprime
from .errors import PreconditionError, ValidationError
from .opening import build_X_prime
from .separation import splitting_cycle_list
from .validate import validate_complex


@dataclass
class JSJResult:
    decomposition: DecompositionGraph
    cycles: list                    # (graph, word) of the splitting list
    opened: list
    skipped: list
    max_len: int
    truncated: bool
    warnings: list = field(default_factory=list)
    origins: dict = field(default_factory=dict)   # final graph -> input graphs it came from


def certify(X: TubularComplex) -> None:
    rep = validate_complex(X)
    if not rep.ok:
        raise ValidationError("invalid complex", rep.violations)
    ok, witness = brady_meier_check(X)
    if not ok:
        raise PreconditionError(f"not Brady-Meier: {witness['reason']} at {witness['vertex']}")


def run_jsj(X: TubularComplex, config: PipelineConfig = PipelineConfig(), graphs=None,
            len_scale: int = 1) -> JSJResult:
    """Splitting list, iterated opening, circle folding and assembly.
    ``graphs`` restricts the cycle enumeration (tube attaching cycles within
    the length bound are kept in every graph); ``len_scale`` multiplies the
    default length clamp."""
    certify(X)
    report = splitting_cycle_list(X, config.max_cycle_len, threads=config.threads,
                                  max_cycles=config.limits.max_cycles,
                                  clamp=config.default_len_clamp * len_scale, graphs=graphs,
                                  max_cells=config.limits.max_cells)
    log = build_X_prime(X, report.cycles)
    absorbed = {}
    X2 = build_X_doubleprime(log.complex, absorbed)
    origins = {}
    for g in X2.graphs:
        names = {g.name} | absorbed.get(g.name, set())
        origins[g.name] = tuple(sorted({log.graph_origin[n] for n in names}))
    D = assemble_jsj(X2)
    return JSJResult(D, [(c.graph, c.word) for c in report.cycles], log.opened, log.skipped,
                     report.max_len, report.truncated, report.warnings, origins)
