"""Half-space counts from spheres against the cover-window count, per cycle."""
from __future__ import annotations

import argparse
import time

from tubular_jsj.complex import word_str
from tubular_jsj.cover import line_complement_count
from tubular_jsj.cycles import enumerate_cycles
from tubular_jsj.fixtures import fix_crossing, fix_d33, fix_dcomm, fix_g2, fix_klein
from tubular_jsj.separation import halfspace_labels

FIXTURES = {"DCOMM": fix_dcomm, "D33": fix_d33, "G2": fix_g2, "KLEIN": fix_klein, "CROSS": fix_crossing}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-len", type=int, default=8)
    ap.add_argument("--fixtures", nargs="+", default=["DCOMM", "D33"], choices=list(FIXTURES))
    ap.add_argument("--show", action="store_true", help="print every cycle with K >= 2")
    args = ap.parse_args()
    for name in args.fixtures:
        X = FIXTURES[name]()
        start = time.perf_counter()
        checked, bad, by_k = 0, 0, {}
        for g in X.graphs:
            for rec in enumerate_cycles(X, g.name, args.max_len):
                K = halfspace_labels(X, g.name, rec.word).K
                got = line_complement_count(X, g.name, rec.word)
                checked += 1
                by_k[K] = by_k.get(K, 0) + 1
                if got != K:
                    bad += 1
                    print(f"  mismatch {g.name} {word_str(rec.word)}: K={K}, oracle={got}")
                elif args.show and K >= 2:
                    print(f"  {g.name} {word_str(rec.word)}: K={K}")
        print(f"{name}: {checked} cycles, K histogram {dict(sorted(by_k.items()))}, {bad} mismatches, "
              f"{time.perf_counter() - start:.1f} s")


if __name__ == "__main__":
    main()
