"""How often does k-repetitivity depend on the chosen fundamental domain?

For every separating cycle up to ``--max-len`` in the listed fixtures, compare
the verdict on the canonical domain with the verdict over all rotations.
"""
from __future__ import annotations

import argparse
from collections import Counter

from tubular_jsj.complex import word_str
from tubular_jsj.cycles import enumerate_cycles, is_k_repetitive
from tubular_jsj.fixtures import fix_crossing, fix_d33, fix_dcomm, fix_klein
from tubular_jsj.separation import halfspace_labels

FIXTURES = {"DCOMM": fix_dcomm, "D33": fix_d33, "KLEIN": fix_klein, "CROSS": fix_crossing}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-len", type=int, default=6)
    ap.add_argument("-k", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--fixtures", nargs="+", default=list(FIXTURES), choices=list(FIXTURES))
    args = ap.parse_args()
    for name in args.fixtures:
        X = FIXTURES[name]()
        tally = Counter()
        examples = []
        for g in X.graphs:
            for rec in enumerate_cycles(X, g.name, args.max_len):
                if halfspace_labels(X, g.name, rec.word).K < 2:
                    continue
                for k in args.k:
                    one = is_k_repetitive(X, rec, k)
                    every = is_k_repetitive(X, rec, k, scan_all=True)
                    tally[(k, one, every)] += 1
                    if one != every and len(examples) < 5:
                        examples.append((g.name, word_str(rec.word), k))
        for k in args.k:
            same = tally[(k, True, True)] + tally[(k, False, False)]
            differ = tally[(k, False, True)] + tally[(k, True, False)]
            print(f"{name:6s} k={k}: {same} agree, {differ} depend on the domain")
        for ex in examples:
            print("   domain-dependent:", *ex)


if __name__ == "__main__":
    main()
