"""Command-line interface: ``realloops <command> [options]``.

Results go to stdout as JSON.  Exit status 2 means malformed input, 3 means
the input is well formed but violates an invariant (a non-generic ornament,
a map with a common real root, an impossible configuration).
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
from fractions import Fraction

from realloops import fixtures
from realloops.approx import ApproximationError, approximate_loop, crossing_config
from realloops.config import (
    InvalidConfigError, Mod2Config, Particle, component_degree_m1, reduce_word,
)
from realloops.flow import FlowError, FlowParams, simulate_to_equilibrium
from realloops.loops import ConfigLoop, InvalidLoopError, sweep_loop_degree
from realloops.ornament import (
    NonGenericOrnamentError, Ornament, integral_degree_oracle, kronecker_degree,
    sweep_ornament, validate_generic,
)
from realloops.ratmap import InvalidMapError, RationalMap, degree_rp1, to_config, validate, winding_oracle
from realloops.svg import loop_svg, ornament_svg, trajectory_svg

log = logging.getLogger("realloops")

EXIT_MALFORMED = 2
EXIT_INVARIANT = 3


class Malformed(Exception):
    pass


class Violation(Exception):
    pass


def _load(path: str | None):
    try:
        if path is None or path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise Malformed(f"cannot read JSON from {path or 'stdin'}: {e}") from e


def _parse(builder, data):
    """Build a domain object; structural problems are malformed input, invariant failures are not."""
    try:
        return builder(data)
    except (InvalidConfigError, InvalidLoopError, InvalidMapError) as e:
        raise Violation(str(e)) from e
    except (KeyError, TypeError, ValueError, ZeroDivisionError, IndexError) as e:
        raise Malformed(f"{type(e).__name__}: {e}") from e


def _emit(obj, out: str | None = None) -> None:
    text = json.dumps(obj, indent=2, default=_default)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _default(o):
    if isinstance(o, Fraction):
        return f"{o.numerator}/{o.denominator}"
    if hasattr(o, "tolist"):
        return o.tolist()
    raise TypeError(f"cannot serialize {type(o).__name__}")


# -- commands -------------------------------------------------------------------

def cmd_degree_map(args) -> dict:
    f = _parse(RationalMap.from_json, _load(args.input))
    v = validate(f)
    if not v:
        raise Violation(v.diagnostic)
    out = {"m": f.m, "n": f.n}
    if f.m == 1:
        out["degree"] = degree_rp1(f)
        out["winding_oracle"] = winding_oracle(*f.polys)
        cfg = to_config(f)
        out["component_degree"] = component_degree_m1(cfg)
        out["config"] = cfg.to_json()
    else:
        # for m > 1 only the parity of the class is a homotopy invariant
        out["parity"] = f.n % 2
        out["config"] = to_config(f).to_json()
    return out


def _config_from_json(data) -> Mod2Config:
    if "word" in data:
        word = [int(k) for k in str(data["word"])]
        m = int(data.get("m", 1))
        budget = int(data["budget"])
        pos = [Fraction(i + 1) for i in range(len(word))]
        return Mod2Config(m, budget, tuple(Particle(p, k) for p, k in zip(pos, word)))
    return Mod2Config.from_json(data)


def cmd_classify_config(args) -> dict:
    cfg = _parse(_config_from_json, _load(args.input))
    if cfg.m != 1:
        raise Violation("classify-config handles m = 1 configurations")
    try:
        deg = component_degree_m1(cfg)
    except InvalidConfigError as e:
        raise Violation(str(e)) from e
    return {"degree": deg, "reduced_word": "".join(map(str, reduce_word(cfg.word))),
            "budget": cfg.budget}


def cmd_ornament_degree(args) -> dict:
    o = _parse(Ornament.from_json, _load(args.input))
    rep = validate_generic(o)
    if not rep:
        raise Violation("; ".join(rep.problems))
    if args.method == "kronecker":
        return {"method": "kronecker", "degree": kronecker_degree(o)}
    if args.method == "integral":
        val = integral_degree_oracle(o, args.mesh)
        return {"method": "integral", "mesh": args.mesh, "value": val, "degree": round(val)}
    try:
        loop, eps = sweep_ornament(o)
    except NonGenericOrnamentError as e:
        raise Violation(str(e)) from e
    return {"method": "sweep", "shear": eps, "degree": sweep_loop_degree(loop),
            "events": len(loop.events())}


def cmd_flow_sim(args) -> dict:
    rng = random.Random(args.seed)
    if args.input:
        cfg = _parse(_config_from_json, _load(args.input))
    else:
        cfg = fixtures.random_config_m1(rng, args.budget)
    params = FlowParams()
    try:
        res = simulate_to_equilibrium(cfg, params, record=bool(args.out))
    except FlowError as e:
        raise Violation(str(e)) from e
    summary = {
        "initial": cfg.to_json(),
        "initial_degree": component_degree_m1(cfg),
        "positions": [float(x) for x in res.positions],
        "word": "".join(map(str, res.kinds)),
        "events": res.events,
        "time": res.time,
    }
    if args.out:
        _emit(res.to_json(), args.out)
        summary["trajectory"] = args.out
    return summary


def _samples_from_json(data):
    pts = data["samples"] if isinstance(data, dict) else data
    return [[float(v) for v in p] for p in pts]


def cmd_approximate(args) -> dict:
    samples = _parse(_samples_from_json, _load(args.input))
    try:
        f, err = approximate_loop(samples, args.degree)
    except ApproximationError as e:
        raise Violation(str(e)) from e
    out = {"map": f.to_json(), "sup_error": err}
    if f.m == 1:
        out["degree"] = degree_rp1(f)
    out["crossings"] = [crossing_config(samples, k) for k in range(f.m + 1)]
    return out


GENERATORS = {
    "venn": lambda rng: fixtures.venn_ornament().to_json(),
    "venn-mirror": lambda rng: fixtures.venn_mirror().to_json(),
    "double": lambda rng: fixtures.double_ornament().to_json(),
    "disjoint": lambda rng: fixtures.disjoint_ornament().to_json(),
    "random-ornament": lambda rng: fixtures.random_ornament(rng).to_json(),
    "random-map": lambda rng: fixtures.random_rp1_map(rng, rng.randint(1, 8)).to_json(),
    "random-config": lambda rng: fixtures.random_config_m1(rng, 4).to_json(),
    "generator-loop": lambda rng: fixtures.generator_loop().to_json(),
    "venn-loop": lambda rng: fixtures.venn_loop().to_json(),
    "circle-loop": lambda rng: {"samples": fixtures.circle_loop(1, 0.5).tolist()},
    "sphere-loop": lambda rng: {"samples": fixtures.sphere_loop_even().tolist()},
}


def cmd_gen(args) -> dict:
    return GENERATORS[args.kind](random.Random(args.seed))


def cmd_plot(args) -> dict:
    data = _load(args.input)
    if isinstance(data, dict) and "curves" in data:
        svg = ornament_svg(_parse(Ornament.from_json, data))
        what = "ornament"
    elif isinstance(data, dict) and "segments" in data:
        svg = loop_svg(_parse(ConfigLoop.from_json, data))
        what = "loop"
    elif isinstance(data, dict) and "trajectory" in data:
        svg = trajectory_svg(data["trajectory"])
        what = "trajectory"
    else:
        raise Malformed("plot expects an ornament, a loop or a flow trajectory")
    out = args.out or "plot.svg"
    with open(out, "w") as fh:
        fh.write(svg)
    return {"plot": what, "svg": out}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="realloops", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(fn=fn)
        sp.add_argument("--input", "-i", help="input JSON file (default: stdin)")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", "-o", help="write the main output to this file")
        return sp

    add("degree-map", cmd_degree_map, "degree of an m = 1 rational map")
    add("classify-config", cmd_classify_config, "component of an m = 1 configuration")
    sp = add("ornament-degree", cmd_ornament_degree, "degree of a 3-ornament")
    sp.add_argument("--method", choices=("kronecker", "integral", "sweep"), default="kronecker")
    sp.add_argument("--mesh", type=int, default=256)
    sp = add("flow-sim", cmd_flow_sim, "run the particle flow to equilibrium")
    sp.add_argument("--config", dest="input", help="alias of --input")
    sp.add_argument("--budget", type=int, default=4)
    sp = add("approximate", cmd_approximate, "rational approximation of a sampled loop")
    sp.add_argument("--degree", "-N", type=int, default=8)
    sp = add("gen", cmd_gen, "emit a fixture as JSON")
    sp.add_argument("kind", choices=sorted(GENERATORS))
    add("plot", cmd_plot, "render an ornament, loop or trajectory as SVG")
    return p


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=os.environ.get("REALLOOPS_LOG", "WARNING").upper(),
                        format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        result = args.fn(args)
    except Malformed as e:
        _emit({"error": "malformed input", "detail": str(e)})
        return EXIT_MALFORMED
    except (Violation, NonGenericOrnamentError, InvalidMapError, InvalidConfigError) as e:
        _emit({"error": "invariant violation", "detail": str(e)})
        return EXIT_INVARIANT
    if args.command == "gen" and args.out:
        _emit(result, args.out)
        result = {"written": args.out}
    _emit(result)
    return 0


if __name__ == "__main__":
    sys.exit(main())
