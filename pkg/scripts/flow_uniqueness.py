"""Run the particle flow from many random starts per component and report the spread.

Repeats the experiment for several friction constants to show how (or whether)
the equilibria depend on them.
"""

import argparse
import random

import numpy as np

from realloops.config import config_from_word, enumerate_components_m1, reduce_word
from realloops.fixtures import random_word_in_component
from realloops.flow import FlowParams, equilibrium_oracle, simulate_to_equilibrium


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--budget", type=int, default=4)
    ap.add_argument("--runs", type=int, default=30)
    ap.add_argument("--friction", type=float, nargs="+", default=[0.5, 1.0, 4.0])
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    for c in args.friction:
        params = FlowParams(friction=c)
        print(f"friction {c}")
        for degree in sorted(enumerate_components_m1(args.budget)):
            finals, times, events = [], [], 0
            for _ in range(args.runs):
                word = random_word_in_component(rng, args.budget, degree)
                xs = sorted(rng.sample(range(-3000, 3000), len(word)))
                cfg = config_from_word(word, args.budget, positions=[x / 1000 for x in xs])
                res = simulate_to_equilibrium(cfg, params)
                finals.append(res.positions)
                times.append(res.time)
                events += len(res.events)
            target = reduce_word(random_word_in_component(rng, args.budget, degree))
            oracle = equilibrium_oracle(target) if target else np.zeros(0)
            spread = max((np.max(np.abs(f - oracle)) for f in finals if len(f)), default=0.0)
            word = "".join(map(str, target)) or "(empty)"
            print(f"  degree {degree:+d} word {word:<6} max |x - oracle| {spread:.2e} "
                  f"mean time {np.mean(times):6.1f} annihilations {events}")


if __name__ == "__main__":
    main()
