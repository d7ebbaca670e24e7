"""Exact Sturm/Cauchy degree against the winding oracle and the particle word on random maps."""

import argparse
import collections
import random
import time

from realloops.config import DEGREE_SIGN, component_degree_m1
from realloops.fixtures import random_rp1_map
from realloops.ratmap import degree_rp1, to_config, winding_oracle


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--maps", type=int, default=1000)
    ap.add_argument("--max-degree", type=int, default=8)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    hist = collections.Counter()
    winding_bad = word_bad = 0
    t0 = time.perf_counter()
    for i in range(args.maps):
        n = 1 + i % args.max_degree
        f = random_rp1_map(rng, n)
        d = degree_rp1(f)
        hist[(n, d)] += 1
        winding_bad += d != winding_oracle(*f.polys)
        word_bad += component_degree_m1(to_config(f)) != DEGREE_SIGN * d
    print(f"{args.maps} maps in {time.perf_counter() - t0:.1f} s")
    print(f"winding oracle mismatches: {winding_bad}")
    print(f"particle word mismatches (sign {DEGREE_SIGN:+d}): {word_bad}")
    for n in range(1, args.max_degree + 1):
        row = {d: c for (m, d), c in sorted(hist.items()) if m == n}
        print(f"  n={n}: {row}")


if __name__ == "__main__":
    main()
