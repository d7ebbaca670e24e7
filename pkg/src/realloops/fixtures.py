"""Reference objects shared by tests, scripts and the CLI."""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Sequence

import numpy as np

from realloops.config import Mod2Config, Particle

from realloops.loops import ConfigLoop, loop_from_tracks
from realloops.ornament import Ornament, integral_degree_oracle, validate_generic
from realloops.poly import Polynomial, X
from realloops.ratmap import RationalMap


def _rational_circle(cx, cy, r, k: int, phase: float = 0.1) -> tuple:
    """k rational points on the circle, via the rational parametrisation."""
    pts = []
    for j in range(k):
        th = phase + 2 * math.pi * j / k
        u = Fraction(math.tan(th / 2)).limit_denominator(200) if abs(math.cos(th / 2)) > 1e-9 else None
        if u is None:
            c, s = Fraction(-1), Fraction(0)
        else:
            c, s = (1 - u * u) / (1 + u * u), 2 * u / (1 + u * u)
        pts.append((Fraction(cx) + Fraction(r) * c, Fraction(cy) + Fraction(r) * s))
    return tuple(pts)


def venn_ornament(k: int = 24) -> Ornament:
    """Three mutually overlapping circles; the generator of degree +1."""
    centers = [(Fraction(0), Fraction(3, 5)), (Fraction(-13, 25), Fraction(-3, 10)),
               (Fraction(13, 25), Fraction(-3, 10))]
    o = Ornament(tuple(_rational_circle(cx, cy, 1, k, 0.1 + 0.05 * i)
                       for i, (cx, cy) in enumerate(centers)))
    # orient so that the exact degree is +1 (checked in the tests)
    return o.mirrored()


def venn_mirror(k: int = 24) -> Ornament:
    return venn_ornament(k).mirrored()


def double_ornament() -> Ornament:
    """A wide and a tall ellipse, with a diagonal band around two of their crossings."""
    wide = _rational_circle(0, 0, 1, 28, 0.13)
    wide = tuple((2 * x, y) for x, y in wide)
    tall = _rational_circle(0, 0, 1, 28, 0.21)
    tall = tuple((x, 2 * y) for x, y in tall)
    band = ((Fraction(3, 2), Fraction(11, 10)), (Fraction(11, 10), Fraction(3, 2)),
            (Fraction(-3, 2), Fraction(-11, 10)), (Fraction(-11, 10), Fraction(-3, 2)))
    return Ornament((wide, tall, band))


def disjoint_ornament() -> Ornament:
    """Three circles with no common overlap; degree 0."""
    return Ornament(tuple(_rational_circle(3 * i, 0, 1, 12) for i in range(3)))


def random_ornament(rng: random.Random, max_vertices: int = 10, spread: float = 1.2,
                    margin: float = 0.04, attempts: int = 200) -> Ornament:
    """A random generic ornament whose features are well resolved by a 256 mesh.

    Curves are star-shaped polygons (sometimes with shuffled vertices, giving
    self-crossings) with coordinates on a 1/64 grid.  Crossing points keep a
    distance of at least ``margin`` from the third curve.
    """
    for _ in range(attempts):
        curves = []
        for _ in range(3):
            n = rng.randint(3, max_vertices)
            cx, cy = rng.uniform(-spread, spread) / 2, rng.uniform(-spread, spread) / 2
            angs = sorted(rng.uniform(0, 2 * math.pi) for _ in range(n))
            pts = [(cx + rng.uniform(0.4, 1.2) * math.cos(a), cy + rng.uniform(0.4, 1.2) * math.sin(a))
                   for a in angs]
            if rng.random() < 0.2:
                rng.shuffle(pts)
            curves.append(tuple((Fraction(round(x * 64), 64), Fraction(round(y * 64), 64)) for x, y in pts))
        try:
            o = Ornament(tuple(curves))
        except ValueError:
            continue
        rep = validate_generic(o)
        if rep and _well_separated(o, rep.crossings, margin):
            return o
    raise RuntimeError("no generic ornament found")


def _dist_to_curve(p, curve) -> float:
    px, py = float(p[0]), float(p[1])
    best = math.inf
    n = len(curve)
    for k in range(n):
        ax, ay = (float(v) for v in curve[k])
        bx, by = (float(v) for v in curve[(k + 1) % n])
        ex, ey = bx - ax, by - ay
        t = max(0.0, min(1.0, ((px - ax) * ex + (py - ay) * ey) / (ex * ex + ey * ey)))
        best = min(best, math.hypot(px - ax - t * ex, py - ay - t * ey))
    return best


def _well_separated(o: Ornament, crossings, margin: float) -> bool:
    for x in crossings:
        i, j = x.curves
        if i == j:
            continue
        if _dist_to_curve(x.point, o.curves[3 - i - j]) < margin:
            return False
    pts = [x.point for x in crossings]
    for a in range(len(pts)):
        for b in range(a + 1, len(pts)):
            if math.hypot(float(pts[a][0] - pts[b][0]), float(pts[a][1] - pts[b][1])) < margin / 2:
                return False
    return True


def generator_loop(samples: int = 16) -> ConfigLoop:
    """Real roots of the D(1, 2) generator (x + cos t, x + sin t, x), sampled at rational times.

    Kind 0 sits at -cos t, kind 1 at -sin t and kind 2 at the origin.
    """
    times = [Fraction(j, samples) for j in range(samples + 1)]
    pts0, pts1 = [], []
    for j in range(samples + 1):
        th = 2 * math.pi * j / samples + 0.1
        pts0.append(Fraction(-math.cos(th)).limit_denominator(10**6))
        pts1.append(Fraction(-math.sin(th)).limit_denominator(10**6))
    pts0[-1], pts1[-1] = pts0[0], pts1[0]
    return loop_from_tracks(times, [(0, pts0), (1, pts1), (2, [Fraction(0)] * (samples + 1))])


def venn_loop() -> ConfigLoop:
    """The sweep of the Venn generator: a generator of the fundamental group of T(2, 2)."""
    from realloops.ornament import sweep_ornament
    return sweep_ornament(venn_ornament())[0]


def random_config_m1(rng: random.Random, budget: int, word: Sequence[int] | None = None,
                     spread: float = 3.0) -> Mod2Config:
    """Random m = 1 configuration of the given budget (or with the given word)."""
    if word is None:
        while True:
            word = [rng.randint(0, 1) for _ in range(rng.randint(0, 2 * budget))]
            c0, c1 = word.count(0), word.count(1)
            if c0 <= budget and c1 <= budget and (budget - c0) % 2 == 0 and (budget - c1) % 2 == 0:
                break
    xs = sorted(Fraction(rng.uniform(-spread, spread)).limit_denominator(10**6) for _ in word)
    if len(set(xs)) != len(xs):
        return random_config_m1(rng, budget, word, spread)
    return Mod2Config(1, budget, tuple(Particle(x, k) for x, k in zip(xs, word)))


def random_word_in_component(rng: random.Random, budget: int, degree: int) -> list[int]:
    """Random kind word of T(budget, 1) whose reduced word has the given signed degree."""
    k = abs(degree)
    first = 0 if degree >= 0 else 1
    word = [(first + i) % 2 for i in range(2 * k)]
    counts = [k, k]
    # insert cancelling same-kind pairs at random places while the budget allows
    for _ in range(rng.randint(0, budget)):
        kind = rng.randint(0, 1)
        if counts[kind] + 2 > budget:
            continue
        at = rng.randint(0, len(word))
        word[at:at] = [kind, kind]
        counts[kind] += 2
    # the remaining deficit (budget - count, even) stands for complex roots
    return word


def random_rp1_map(rng: random.Random, n: int, max_coeff: int = 6) -> RationalMap:
    """Random monic pair of degree n without common real roots."""
    from realloops.ratmap import validate
    while True:
        polys = []
        for _ in range(2):
            cs = [Fraction(rng.randint(-max_coeff, max_coeff), rng.randint(1, 3)) for _ in range(n)]
            polys.append(Polynomial(tuple(cs) + (Fraction(1),)))
        f = RationalMap(1, n, tuple(polys))
        if validate(f).ok:
            return f


def _sphere(v: np.ndarray) -> np.ndarray:
    return math.sqrt(v.shape[1]) * v / np.linalg.norm(v, axis=1, keepdims=True)


def circle_loop(d: int, amp: float, K: int = 256) -> np.ndarray:
    """Loop in RP^1 of degree d: the lifted angle turns by d pi, plus a smooth wobble."""
    al = math.pi + 2 * math.pi * np.arange(K) / K
    phi = math.pi / 4 + d * (al - math.pi) / 2 + amp * np.sin(al) / (1.25 - np.cos(al))
    return _sphere(np.stack([np.cos(phi), np.sin(phi)], axis=1))


_B = np.ones(3) / math.sqrt(3)
_E1 = np.array([1.0, -1.0, 0.0]) / math.sqrt(2)
_E2 = np.cross(_B, _E1)


def sphere_loop_even(K: int = 256) -> np.ndarray:
    """A contractible loop on S^2 through the basepoint."""
    al = math.pi + 2 * math.pi * np.arange(K) / K
    v = (_B[None] + 1.2 * ((1 + np.cos(al))[:, None] * _E1 + np.sin(al)[:, None] * _E2)
         + 0.4 * (np.sin(2 * al) / (1.3 - np.cos(al)))[:, None] * _B)
    return _sphere(v)


def sphere_loop_odd(K: int = 256) -> np.ndarray:
    """Half a great circle from the basepoint to its antipode, wobbling sideways."""
    al = math.pi + 2 * math.pi * np.arange(K) / K
    h = (al - math.pi) / 2
    wob = 0.5 * np.sin(al / 2) * np.sin(al) / (1.3 - np.cos(al))
    v = _B[None] * np.cos(h)[:, None] + _E1[None] * np.sin(h)[:, None] + wob[:, None] * _E2
    return _sphere(v)


def approximation_loops() -> dict[str, np.ndarray]:
    return {
        "circle_degree_1": circle_loop(1, 0.5),
        "circle_degree_2": circle_loop(2, 0.4),
        "circle_degree_0": circle_loop(0, 0.6),
        "sphere_even": sphere_loop_even(),
        "sphere_odd": sphere_loop_odd(),
    }


def map_samples(f: RationalMap, K: int = 256) -> np.ndarray:
    """Samples of f at x = tan(alpha/2) on the sphere of radius sqrt(m+1), basepoint first."""
    from realloops.approx import evaluate_on_angles, sample_angles
    return _sphere(evaluate_on_angles(f, sample_angles(K)))


def _q(v: float) -> Fraction:
    return Fraction(v).limit_denominator(10**9)


def d12_generator(samples: int = 256) -> list[RationalMap]:
    """The loop t -> (x + cos t, x + sin t, x) in D(1, 2), sampled."""
    out = []
    for j in range(samples):
        t = 2 * math.pi * j / samples
        out.append(RationalMap(2, 1, (X + _q(math.cos(t)), X + _q(math.sin(t)), X)))
    return out


def d22_generator(samples: int = 256) -> list[RationalMap]:
    """The loop t -> (x^2 + x + cos t + sin t / 2, x^2 + x + cos t - sin t / 2, x^2 - x + cos t)."""
    out = []
    for j in range(samples):
        t = 2 * math.pi * j / samples
        c, s = math.cos(t), math.sin(t)
        out.append(RationalMap(2, 2, (X * X + X + _q(c + s / 2), X * X + X + _q(c - s / 2),
                                      X * X - X + _q(c))))
    return out


def figure_one_map() -> RationalMap:
    """x^2 - 1 and x^2 - 4: a degree-0 element of T(2, 1) whose word is 0110."""
    return RationalMap(1, 2, (X * X - 1, X * X - 4))


__all__ = [
    "approximation_loops", "circle_loop", "d12_generator", "d22_generator", "random_config_m1", "random_word_in_component", "disjoint_ornament", "double_ornament", "map_samples", "figure_one_map", "generator_loop",
    "integral_degree_oracle", "random_ornament", "random_rp1_map", "venn_loop", "venn_mirror", "venn_ornament",
]
