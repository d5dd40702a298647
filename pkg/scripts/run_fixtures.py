"""Run the decomposition on the bundled fixtures and print a summary."""
from __future__ import annotations

import argparse
import time

from tubular_jsj.config import PipelineConfig
from tubular_jsj.errors import JSJError
from tubular_jsj.fixtures import fix_d33, fix_dcomm, fix_g2, fix_klein
from tubular_jsj.pipeline import run_jsj
from tubular_jsj.relative import relative_jsj, shape

FIXTURES = {"DCOMM": fix_dcomm, "D33": fix_d33, "G2": fix_g2, "KLEIN": fix_klein}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-len", type=int, default=6)
    # G2 has hundreds of splitting cycles past length 4; ask for it explicitly
    ap.add_argument("--fixtures", nargs="+", default=["DCOMM", "D33", "KLEIN"], choices=list(FIXTURES))
    ap.add_argument("--relative", nargs="*", default=["abAB", "aaabbb"],
                    help="rank-2 words for relative runs")
    args = ap.parse_args()
    cfg = PipelineConfig(max_cycle_len=args.max_len)
    for name in args.fixtures:
        start = time.perf_counter()
        try:
            res = run_jsj(FIXTURES[name](), cfg)
            summary = f"{len(res.cycles)} splitting cycles, shape {shape(res.decomposition)}"
        except JSJError as exc:
            summary = f"{type(exc).__name__}: {exc}"
        print(f"{name}: {summary} ({time.perf_counter() - start:.1f} s)")
    for word in args.relative:
        start = time.perf_counter()
        D = relative_jsj([word], 2).decomposition
        print(f"relative {word}: shape {shape(D)}, {len(D.stubs)} stubs ({time.perf_counter() - start:.1f} s)")


if __name__ == "__main__":
    main()
