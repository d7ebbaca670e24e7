"""Compare the three ornament degree methods on the fixtures and random ornaments."""

import argparse
import random
import time

from realloops.fixtures import disjoint_ornament, double_ornament, random_ornament, venn_mirror, venn_ornament
from realloops.loops import sweep_loop_degree
from realloops.ornament import integral_degree_oracle, kronecker_degree, sweep_ornament


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--random", type=int, default=20)
    ap.add_argument("--mesh", type=int, nargs="+", default=[64, 128, 256])
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    cases = [("venn", venn_ornament()), ("venn-mirror", venn_mirror()),
             ("double", double_ornament()), ("disjoint", disjoint_ornament())]
    cases += [(f"random-{i}", random_ornament(rng)) for i in range(args.random)]
    print(f"{'ornament':<12} {'kron':>5} {'sweep':>6} " + " ".join(f"{'int@' + str(m):>10}" for m in args.mesh))
    t0 = time.perf_counter()
    for name, o in cases:
        k = kronecker_degree(o)
        s = sweep_loop_degree(sweep_ornament(o)[0])
        vals = [integral_degree_oracle(o, m) for m in args.mesh]
        flag = "" if k == s == round(vals[-1]) else "  MISMATCH"
        print(f"{name:<12} {k:>5} {s:>6} " + " ".join(f"{v:>10.4f}" for v in vals) + flag)
    print(f"{time.perf_counter() - t0:.1f} s")


if __name__ == "__main__":
    main()
