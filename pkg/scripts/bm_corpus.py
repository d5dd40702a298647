"""Compare the link test with the sphere test on seeded random complexes."""
from __future__ import annotations

import argparse
import random
import time
from collections import Counter

from tubular_jsj.complex import brady_meier_check
from tubular_jsj.generate import random_complex, random_double
from tubular_jsj.spheres import sphere_condition


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-n", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-squares", type=int, default=20)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    tally = Counter()
    start = time.perf_counter()
    for i in range(args.n):
        X = random_double(rng) if i % 2 == 0 else random_complex(rng, max_squares=args.max_squares)
        bm, why = brady_meier_check(X)
        sph, where = sphere_condition(X)
        tally[(bm, sph)] += 1
        if bm != sph:
            print("disagreement:", why, where)
    print(f"{args.n} complexes in {time.perf_counter() - start:.1f} s")
    for (bm, sph), k in sorted(tally.items()):
        print(f"  links {'ok ' if bm else 'bad'}  spheres {'ok ' if sph else 'bad'}: {k}")


if __name__ == "__main__":
    main()
