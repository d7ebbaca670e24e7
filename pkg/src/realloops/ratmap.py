"""Basepoint-preserving real rational maps RP^1 -> RP^m.

A map is a tuple of m+1 monic polynomials of one common degree n; the
point at infinity goes to [1 : ... : 1].  The family may share complex
conjugate roots (that is what makes rat(n, m) closed) but never a real root.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from realloops.config import Mod2Config, Particle, infinity_points
from realloops.poly import (
    CommonRealRootError,
    Polynomial,
    _int_primitive,
    RootInterval,
    cauchy_index,
    gcd_many,
    isolate_real_roots,
    refine,
    square_free_part,
    sturm_root_count,
)


class InvalidMapError(ValueError):
    pass


class TangentialCrossingError(ValueError):
    pass


@dataclass(frozen=True)
class RationalMap:
    m: int
    n: int
    polys: tuple[Polynomial, ...]

    def __post_init__(self):
        polys = tuple(p if isinstance(p, Polynomial) else Polynomial(p) for p in self.polys)
        object.__setattr__(self, "polys", polys)
        if self.m < 1:
            raise InvalidMapError("m must be positive")
        if len(polys) != self.m + 1:
            raise InvalidMapError(f"expected {self.m + 1} polynomials, got {len(polys)}")
        for i, p in enumerate(polys):
            if p.degree != self.n:
                raise InvalidMapError(f"poly {i} has degree {p.degree}, expected {self.n}")
            if not p.is_monic():
                raise InvalidMapError(f"poly {i} is not monic (leading coefficient {p.lc})")

    @classmethod
    def of(cls, *polys: Polynomial) -> "RationalMap":
        return cls(len(polys) - 1, polys[0].degree, tuple(polys))

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "polys": [p.to_json() for p in self.polys]}

    @classmethod
    def from_json(cls, data: dict) -> "RationalMap":
        return cls(int(data["m"]), int(data["n"]),
                   tuple(Polynomial.from_json(p) for p in data["polys"]))


@dataclass(frozen=True)
class Validation:
    ok: bool
    common_factor: Polynomial
    root: RootInterval | None = None

    def __bool__(self) -> bool:
        return self.ok

    @property
    def diagnostic(self) -> str:
        if self.ok:
            return "ok"
        return f"common real root in [{self.root.lo}, {self.root.hi}]"


def validate(f: RationalMap) -> Validation:
    """True iff the polynomials of ``f`` have no common real root."""
    g = gcd_many(f.polys)
    roots = isolate_real_roots(g) if g.degree > 0 else []
    if roots:
        return Validation(False, g, roots[0])
    return Validation(True, g)


def _require_valid(f: RationalMap) -> None:
    v = validate(f)
    if not v:
        raise InvalidMapError(v.diagnostic)


def _normalize_point(values: Sequence[Fraction]) -> tuple[Fraction, ...]:
    for v in values:
        if v != 0:
            return tuple(c / v for c in values)
    raise InvalidMapError("map vanishes at a real point")


def evaluate(f: RationalMap, x) -> tuple[Fraction, ...]:
    """Homogeneous coordinates of f(x), scaled so the first nonzero one is 1.

    ``x`` may be rational or ``math.inf`` / ``None`` for the point at infinity.
    """
    if x is None or (isinstance(x, float) and math.isinf(x)):
        return tuple(Fraction(1) for _ in f.polys)
    x = Fraction(x)
    return _normalize_point([p(x) for p in f.polys])


def reduce(f: RationalMap) -> RationalMap:
    """Cancel the common factor (conjugate root pairs) of the family."""
    _require_valid(f)
    g = gcd_many(f.polys)
    if g.degree == 0:
        return f
    polys = tuple(p // g for p in f.polys)
    return RationalMap(f.m, f.n - g.degree, polys)


def degree_rp1(f: RationalMap) -> int:
    """Topological degree of an m = 1 map, via the Cauchy index."""
    if f.m != 1:
        raise InvalidMapError("degree_rp1 needs m = 1")
    _require_valid(f)
    r = reduce(f)
    return cauchy_index(r.polys[0], r.polys[1])


# -- numerical winding oracle -------------------------------------------------

def winding_oracle(p: Polynomial, q: Polynomial, max_steps: int = 200_000) -> int:
    """Degree of x -> [p(x) : q(x)] by tracking an angle around the circle.

    With x = tan(a/2) and a running over [-pi, pi], the homogenized vector
    (q, p) never vanishes; its total turning divided by pi is the degree.
    The angle is measured from the q axis towards the p axis, so (x, 1)
    has degree +1.
    """
    if p.is_zero() and q.is_zero():
        raise CommonRealRootError("both polynomials vanish")
    d = max(p.degree, q.degree, 0)

    def angle(a: float) -> float:
        s, c = math.sin(a / 2), math.cos(a / 2)
        pv = p.homogeneous_evalf(s, c, d) if not p.is_zero() else 0.0
        qv = q.homogeneous_evalf(s, c, d) if not q.is_zero() else 0.0
        if pv == 0.0 and qv == 0.0:
            raise CommonRealRootError(f"vector vanishes at angle {a}")
        return math.atan2(pv, qv)

    def wrap(u: float) -> float:
        return (u + math.pi) % (2 * math.pi) - math.pi

    limit = math.pi / 4
    grid = [float(a) for a in np.linspace(-math.pi, math.pi, 65)]
    thetas = [angle(a) for a in grid]
    stack = list(zip(grid[:-1], grid[1:], thetas[:-1], thetas[1:]))[::-1]
    total = 0.0
    steps = 0
    while stack:
        a, b, ta, tb = stack.pop()
        steps += 1
        if steps > max_steps:
            raise RuntimeError("winding oracle exceeded its refinement budget")
        mid = 0.5 * (a + b)
        tm = angle(mid)
        d1, d2 = wrap(tm - ta), wrap(tb - tm)
        whole = wrap(tb - ta)
        if abs(d1) < limit and abs(d2) < limit and abs(d1 + d2 - whole) < 1e-9:
            total += d1 + d2
        else:
            stack.append((mid, b, tm, tb))
            stack.append((a, mid, ta, tm))
    k = total / math.pi
    r = round(k)
    if abs(k - r) > 1e-6:
        raise RuntimeError(f"total turning {k} pi is not an integer multiple of pi")
    return int(r)


# -- configurations ------------------------------------------------------------

def _real_root_table(f: RationalMap) -> list[tuple[Fraction, list[int]]]:
    """Distinct real roots of the whole family with per-polynomial multiplicity."""
    sqf = Polynomial((1,))
    decomps = [square_free_part(p) for p in f.polys]
    for dec in decomps:
        for g, _ in dec:
            sqf = sqf * g
    ivs = [refine(sqf, iv, Fraction(1, 2**52)) for iv in isolate_real_roots(sqf)]
    table = []
    for idx, iv in enumerate(ivs):
        mults = []
        for dec in decomps:
            mult = 0
            for g, k in dec:
                if iv.is_exact():
                    if g(iv.lo) == 0:
                        mult = k
                elif g.sign_at(iv.lo) != g.sign_at(iv.hi):
                    mult = k
            mults.append(mult)
        below = ivs[idx - 1].hi if idx else None
        above = ivs[idx + 1].lo if idx + 1 < len(ivs) else None
        table.append((_canonical_point(sqf, iv, below, above), mults))
    return table


_CELL = 2**48


def _canonical_point(sqf: Polynomial, iv, below, above) -> Fraction:
    """A representative of the root that depends only on the root itself.

    Rational roots with small denominators are returned exactly; otherwise the
    centre of the dyadic cell of width 2^-48 containing the root, unless that
    cell also holds a neighbouring root (then the interval midpoint).
    """
    if iv.is_exact():
        return iv.lo
    lc = abs(_int_primitive(sqf)[-1])
    cand = iv.mid.limit_denominator(max(lc, 1))
    if iv.lo <= cand <= iv.hi and sqf(cand) == 0:
        return cand
    j = math.floor(iv.lo * _CELL)
    edge = Fraction(j + 1, _CELL)
    if iv.hi > edge:
        s = sqf.sign_at(edge)
        if s == 0:
            return edge
        if s == sqf.sign_at(iv.lo):
            j += 1
    lo, hi = Fraction(j, _CELL), Fraction(j + 1, _CELL)
    if (below is not None and below >= lo) or (above is not None and above <= hi):
        return iv.mid
    return Fraction(2 * j + 1, 2 * _CELL)


def to_config(f: RationalMap) -> Mod2Config:
    """Real roots of every polynomial, multiplicities reduced mod 2.

    Irrational roots are placed at a rational point of an isolating interval
    that separates them from all other roots of the family, so the order of
    particles (and any coincidences) is exact.
    """
    _require_valid(f)
    particles = []
    for pos, mults in _real_root_table(f):
        for kind, mult in enumerate(mults):
            if mult % 2:
                particles.append(Particle(pos, kind))
    return Mod2Config(f.m, f.n, tuple(particles))


# -- stabilization ------------------------------------------------------------

def include_conjugate_pair(f: RationalMap, re, im) -> RationalMap:
    """Multiply every polynomial by (x - re)^2 + im^2."""
    re, im = Fraction(re), Fraction(im)
    if im == 0:
        raise InvalidMapError("the added root must not be real")
    quad = Polynomial((re * re + im * im, -2 * re, 1))
    return RationalMap(f.m, f.n + 2, tuple(p * quad for p in f.polys))


def include_points_at_infinity(f: RationalMap) -> RationalMap:
    """Add the real point n + (i+1)/(m+2) to the i-th divisor."""
    _require_valid(f)
    n = f.n
    for p in to_config(f).particles:
        if not -n < p.pos < n:
            raise InvalidMapError(
                f"particle of kind {p.kind} at {float(p.pos):.6g} lies outside (-{n}, {n})"
            )
    xs = infinity_points(f.m, n)
    polys = tuple(p * Polynomial((-x, 1)) for p, x in zip(f.polys, xs))
    return RationalMap(f.m, n + 1, polys)


# -- the alternating-sum invariant for m = 2 -----------------------------------

def _pole_rotation() -> np.ndarray:
    """Rotation in the plane of (1,1,1)/sqrt(3) and e3 taking the former to the latter."""
    a = np.ones(3) / math.sqrt(3)
    b = np.array([0.0, 0.0, 1.0])
    v = np.cross(a, b)
    s = np.linalg.norm(v)
    c = float(a @ b)
    vx = np.array([[0, -v[2], v[1]], [v[2], 0, -v[0]], [-v[1], v[0], 0]])
    return np.eye(3) + vx + vx @ vx * ((1 - c) / s**2)


_ROT = _pole_rotation()


def equator_crossings(f: RationalMap) -> list[float]:
    """Equator angles b_1, b_2, ... met by the lifted image path, in order.

    The lift starts at the north pole at x = -inf and runs to x = +inf; the
    equator is the plane where the coordinates sum to zero, so the crossing
    parameters are the real roots of the coordinate sum.
    """
    if f.m != 2:
        raise InvalidMapError("equator crossings need m = 2")
    s = f.polys[0] + f.polys[1] + f.polys[2]
    sign = -1.0 if f.n % 2 else 1.0
    angles = []
    for iv in isolate_real_roots(s):
        if iv.multiplicity > 1:
            raise TangentialCrossingError(f"tangential equator contact near x={float(iv.mid):.6g}")
        iv = refine(s, iv, Fraction(1, 10**15) * max(1, abs(iv.mid)))
        x = iv.mid
        v = np.array([float(p(x)) for p in f.polys]) * sign
        w = _ROT @ v
        angles.append(math.atan2(w[1], w[0]))
    return angles


def alternating_sum(angles: Sequence[float]) -> float:
    total = 0.0
    for i, b in enumerate(angles):
        total += b if i % 2 == 0 else -b
    return total


def _max_coeff_step(f: RationalMap, g: RationalMap) -> float:
    out = 0.0
    for p, q in zip(f.polys, g.polys):
        diff = p - q
        out = max(out, max((abs(float(c)) for c in diff.coeffs), default=0.0))
    return out


def equator_alternating_sum(loop: Sequence[RationalMap], max_step: float | None = None) -> int:
    """Winding number of the alternating sum b_1 - b_2 + b_3 - ... along a loop of maps.

    ``loop`` is a closed sequence of samples (the last one connects back to
    the first).  Consecutive samples must be close: if ``max_step`` is given
    it bounds every coefficient change, and in any case the alternating sum
    may move by less than pi/2 per step.
    """
    if not loop:
        raise ValueError("empty loop")
    n = loop[0].n
    sums = []
    for k, f in enumerate(loop):
        if f.m != 2 or f.n != n:
            raise InvalidMapError(f"sample {k} is not in rat({n}, 2)")
        v = validate(f)
        if not v:
            raise InvalidMapError(f"sample {k}: {v.diagnostic}")
        try:
            sums.append(alternating_sum(equator_crossings(f)))
        except TangentialCrossingError as exc:
            raise TangentialCrossingError(f"sample {k}: {exc}") from None
    total = 0.0
    K = len(loop)
    for k in range(K):
        if max_step is not None and _max_coeff_step(loop[k], loop[(k + 1) % K]) > max_step:
            raise ValueError(f"samples {k} and {(k + 1) % K} are further apart than {max_step}")
        d = (sums[(k + 1) % K] - sums[k] + math.pi) % (2 * math.pi) - math.pi
        if abs(d) >= math.pi / 2:
            raise ValueError(f"alternating sum jumps by {d:.3f} between samples {k} and {k + 1}")
        total += d
    w = total / (2 * math.pi)
    r = round(w)
    if abs(w - r) > 1e-6:
        raise RuntimeError(f"winding {w} is not an integer")
    return int(r)


def concat_loops(*loops: Sequence[RationalMap]) -> list[RationalMap]:
    """Concatenate sampled loops sharing their first sample (the loop basepoint)."""
    out: list[RationalMap] = []
    for lp in loops:
        out.extend(lp)
    return out


__all__ = [
    "InvalidMapError", "RationalMap", "TangentialCrossingError", "Validation",
    "alternating_sum", "concat_loops", "degree_rp1", "equator_alternating_sum",
    "equator_crossings", "evaluate", "include_conjugate_pair",
    "include_points_at_infinity", "reduce", "sturm_root_count", "to_config",
    "validate", "winding_oracle",
]
