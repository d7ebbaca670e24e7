"""Sup error of the rational approximation against the trigonometric degree N."""

import argparse

from realloops.approx import approximate_loop
from realloops.fixtures import approximation_loops
from realloops.ratmap import degree_rp1


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--degrees", type=int, nargs="+", default=[1, 2, 4, 8, 16, 32])
    args = ap.parse_args()
    for name, samples in approximation_loops().items():
        print(name)
        for N in args.degrees:
            f, err = approximate_loop(samples, N)
            deg = f" degree {degree_rp1(f):+d}" if f.m == 1 else ""
            print(f"  N={N:<3} n={f.n:<3} sup_error {err:.3e}{deg}")


if __name__ == "__main__":
    main()
