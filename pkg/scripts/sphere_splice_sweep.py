"""Compare spliced and directly built regular spheres over all immersed paths.

Paths are visited shortest first; with a time budget the sweep stops early and
reports how far it got.
"""
from __future__ import annotations

import argparse
import time
from collections import Counter

from tubular_jsj.fixtures import fix_d33, fix_dcomm, fix_grid33
from tubular_jsj.spheres import count_immersed_paths, direct_sphere, immersed_paths, regular_sphere, same_sphere

FIXTURES = {"DCOMM": fix_dcomm, "D33": fix_d33, "GRID33": fix_grid33}


def sweep(names, max_len, budget=None):
    start = time.perf_counter()
    done, total, bad = Counter(), Counter(), []
    for name in names:
        X = FIXTURES[name]()
        for n in range(1, max_len + 1):
            total[(name, n)] = count_immersed_paths(X, n)
    for name in names:
        X = FIXTURES[name]()
        for p in immersed_paths(X, max_len):
            if budget is not None and time.perf_counter() - start > budget:
                return done, total, bad, time.perf_counter() - start
            if not same_sphere(regular_sphere(X, p), direct_sphere(X, p)):
                bad.append((name, p))
            done[(name, len(p))] += 1
    return done, total, bad, time.perf_counter() - start


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-len", type=int, default=12)
    ap.add_argument("--budget", type=float, default=None, help="seconds")
    ap.add_argument("--fixtures", nargs="+", default=list(FIXTURES), choices=list(FIXTURES))
    args = ap.parse_args()
    done, total, bad, elapsed = sweep(args.fixtures, args.max_len, args.budget)
    for key in sorted(total):
        print(f"{key[0]:7s} len {key[1]:2d}: {done[key]:8d} / {total[key]:8d}")
    print(f"checked {sum(done.values())} of {sum(total.values())} paths in {elapsed:.1f} s; mismatches {len(bad)}")
    for name, p in bad[:10]:
        print("  mismatch", name, p)


if __name__ == "__main__":
    main()
