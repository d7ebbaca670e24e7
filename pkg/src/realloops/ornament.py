"""Piecewise-linear 3-ornaments and their degree.

An ornament is three closed polylines in the plane with no point common to
all three.  Each curve i is the zero set of an implicit function f_i that
tends to +1 at infinity and changes sign across the curve, so the sign of
f_i at a point is the crossing parity of any ray to infinity.  The degree of
the ornament is the degree of (f_1, f_2, f_3)/|.| : S^2 -> S^2, computed here
three ways:

* :func:`kronecker_degree` - exact signed count over the intersections of
  curves 1 and 2 at which f_3 > 0;
* :func:`integral_degree_oracle` - total signed spherical area of the image of
  a triangulated plane (floating point, independent of the exact code);
* :func:`sweep_ornament` + :func:`realloops.loops.sweep_loop_degree` - the
  class of the loop in T(ev, 2) traced by a descending horizontal line.

The degree does not depend on how the curves are traversed: at each point
the positive side of curve i is fixed by f_i, not by the vertex order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Sequence

import numpy as np

from realloops.loops import ConfigLoop, Segment

Point = tuple[Fraction, Fraction]


class NonGenericOrnamentError(ValueError):
    pass


class PointOnCurveError(ValueError):
    pass


def _pt(p) -> Point:
    return (Fraction(str(p[0])) if isinstance(p[0], str) else Fraction(p[0]),
            Fraction(str(p[1])) if isinstance(p[1], str) else Fraction(p[1]))


def _cross(ax, ay, bx, by) -> Fraction:
    return ax * by - ay * bx


def _orient(a: Point, b: Point, c: Point) -> Fraction:
    return _cross(b[0] - a[0], b[1] - a[1], c[0] - a[0], c[1] - a[1])


def _sgn(v) -> int:
    return (v > 0) - (v < 0)


def _on_segment(p: Point, a: Point, b: Point) -> bool:
    """p collinear with a, b assumed; is it within the closed segment?"""
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


@dataclass(frozen=True)
class Ornament:
    curves: tuple[tuple[Point, ...], tuple[Point, ...], tuple[Point, ...]]

    def __post_init__(self):
        if len(self.curves) != 3:
            raise ValueError("a 3-ornament has exactly three curves")
        cs = tuple(tuple(_pt(p) for p in c) for c in self.curves)
        for i, c in enumerate(cs):
            if len(c) < 3:
                raise ValueError(f"curve {i + 1} needs at least three vertices")
        object.__setattr__(self, "curves", cs)

    def edges(self, i: int) -> list[tuple[Point, Point]]:
        c = self.curves[i]
        return [(c[k], c[(k + 1) % len(c)]) for k in range(len(c))]

    def transformed(self, a, b, c, d, e=0, f=0) -> "Ornament":
        """Apply (x, y) -> (a x + b y + e, c x + d y + f)."""
        a, b, c, d, e, f = (Fraction(v) for v in (a, b, c, d, e, f))
        return Ornament(tuple(
            tuple((a * x + b * y + e, c * x + d * y + f) for x, y in cur)
            for cur in self.curves))

    def mirrored(self) -> "Ornament":
        return self.transformed(-1, 0, 0, 1)

    def reversed_curve(self, i: int) -> "Ornament":
        cs = list(self.curves)
        cs[i] = tuple(reversed(cs[i]))
        return Ornament(tuple(cs))

    def subdivided(self) -> "Ornament":
        out = []
        for i in range(3):
            pts = []
            for a, b in self.edges(i):
                pts.append(a)
                pts.append(((a[0] + b[0]) / 2, (a[1] + b[1]) / 2))
            out.append(tuple(pts))
        return Ornament(tuple(out))

    def bbox(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        xs = [p[0] for c in self.curves for p in c]
        ys = [p[1] for c in self.curves for p in c]
        return min(xs), min(ys), max(xs), max(ys)

    def to_json(self) -> dict:
        return {"curves": [[[f"{x.numerator}/{x.denominator}", f"{y.numerator}/{y.denominator}"]
                            for x, y in c] for c in self.curves]}

    @classmethod
    def from_json(cls, data: dict) -> "Ornament":
        return cls(tuple(tuple(_pt(p) for p in c) for c in data["curves"]))


def permute_components(o: Ornament, perm: Sequence[int]) -> Ornament:
    """Relabel curves: curve i (0-based) becomes curve ``perm[i]``."""
    if sorted(perm) != [0, 1, 2]:
        raise ValueError(f"{perm} is not a permutation of 0, 1, 2")
    out = [None, None, None]
    for i, j in enumerate(perm):
        out[j] = o.curves[i]
    return Ornament(tuple(out))


# -- exact segment geometry ------------------------------------------------------

@dataclass(frozen=True)
class Intersection:
    point: Point
    curves: tuple[int, int]
    edges: tuple[int, int]


def _proper_crossing(a: Point, b: Point, c: Point, d: Point):
    """Classify segments ab, cd: None (disjoint), a Point (proper crossing) or 'touch'."""
    if (max(a[0], b[0]) < min(c[0], d[0]) or max(c[0], d[0]) < min(a[0], b[0])
            or max(a[1], b[1]) < min(c[1], d[1]) or max(c[1], d[1]) < min(a[1], b[1])):
        return None
    o1, o2 = _orient(a, b, c), _orient(a, b, d)
    o3, o4 = _orient(c, d, a), _orient(c, d, b)
    if o1 == 0 and _on_segment(c, a, b) or o2 == 0 and _on_segment(d, a, b):
        return "touch"
    if o3 == 0 and _on_segment(a, c, d) or o4 == 0 and _on_segment(b, c, d):
        return "touch"
    if _sgn(o1) * _sgn(o2) < 0 and _sgn(o3) * _sgn(o4) < 0:
        s = o3 / (o3 - o4)
        return (a[0] + (b[0] - a[0]) * s, a[1] + (b[1] - a[1]) * s)
    return None


def _all_edges(o: Ornament) -> list[tuple[int, int, Point, Point]]:
    return [(i, k, a, b) for i in range(3) for k, (a, b) in enumerate(o.edges(i))]


@dataclass
class GenericityReport:
    ok: bool
    problems: list[str] = field(default_factory=list)
    crossings: list[Intersection] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def validate_generic(o: Ornament) -> GenericityReport:
    """Check every genericity condition; the report lists each violation."""
    problems = []
    for i, c in enumerate(o.curves):
        n = len(c)
        for k in range(n):
            a, b, nxt = c[k], c[(k + 1) % n], c[(k + 2) % n]
            if a == b:
                problems.append(f"curve {i + 1}: repeated vertex {k}")
            elif _orient(a, b, nxt) == 0 and b != nxt:
                # collinear turn: fine if it continues, degenerate if it folds back
                if (b[0] - a[0]) * (nxt[0] - b[0]) + (b[1] - a[1]) * (nxt[1] - b[1]) < 0:
                    problems.append(f"curve {i + 1}: edge folds back at vertex {(k + 1) % n}")
    if problems:
        return GenericityReport(False, problems)
    edges = _all_edges(o)
    crossings: list[Intersection] = []
    for (i, k, a, b), (j, l, c, d) in combinations(edges, 2):
        if i == j:
            n = len(o.curves[i])
            if abs(k - l) == 1 or abs(k - l) == n - 1:
                continue
        r = _proper_crossing(a, b, c, d)
        if r is None:
            continue
        if r == "touch":
            problems.append(
                f"curve {i + 1} edge {k} and curve {j + 1} edge {l} touch non-transversally"
            )
            continue
        crossings.append(Intersection(r, (i, j), (k, l)))
    seen: dict[Point, Intersection] = {}
    for x in crossings:
        if x.point in seen:
            y = seen[x.point]
            kinds = set(x.curves) | set(y.curves)
            what = "triple point of all three curves" if len(kinds) == 3 else "coincident crossings"
            problems.append(f"{what} at ({float(x.point[0]):.6g}, {float(x.point[1]):.6g})")
        seen[x.point] = x
    return GenericityReport(not problems, problems, crossings)


def intersections(o: Ornament, i: int, j: int) -> list[Intersection]:
    """Transversal crossings of curve i with curve j (0-based), exact."""
    out = []
    for k, (a, b) in enumerate(o.edges(i)):
        for l, (c, d) in enumerate(o.edges(j)):
            r = _proper_crossing(a, b, c, d)
            if r is None:
                continue
            if r == "touch":
                raise NonGenericOrnamentError(f"curves {i + 1} and {j + 1} touch")
            out.append(Intersection(r, (i, j), (k, l)))
    return out


# -- parity signs ----------------------------------------------------------------

def _ray_count(p: Point, d: Point, edges, skip: int | None = None) -> int | None:
    """Crossings of the ray p + s d (s > 0) with edges; None if the ray is not generic."""
    count = 0
    for idx, (a, b) in enumerate(edges):
        if idx == skip:
            continue
        oa = _cross(d[0], d[1], a[0] - p[0], a[1] - p[1])
        ob = _cross(d[0], d[1], b[0] - p[0], b[1] - p[1])
        if oa == 0 and ob == 0:
            ahead_a = d[0] * (a[0] - p[0]) + d[1] * (a[1] - p[1])
            ahead_b = d[0] * (b[0] - p[0]) + d[1] * (b[1] - p[1])
            if ahead_a == 0 or ahead_b == 0 or (ahead_a > 0) != (ahead_b > 0):
                raise PointOnCurveError(f"point {p} lies on the curve")
            if ahead_a > 0:
                return None
            continue
        for v, ov in ((a, oa), (b, ob)):
            if ov == 0:
                ahead = d[0] * (v[0] - p[0]) + d[1] * (v[1] - p[1])
                if ahead == 0:
                    raise PointOnCurveError(f"point {p} is a vertex of the curve")
                if ahead > 0:
                    return None
        if (oa > 0) == (ob > 0) or oa == 0 or ob == 0:
            continue
        ex, ey = b[0] - a[0], b[1] - a[1]
        s = _cross(a[0] - p[0], a[1] - p[1], ex, ey) / _cross(d[0], d[1], ex, ey)
        if s == 0:
            raise PointOnCurveError(f"point {p} lies on the curve")
        if s > 0:
            count += 1
    return count


def crossing_parity_sign(p, curve: Sequence) -> int:
    """+1 if a ray from p to infinity crosses ``curve`` an even number of times."""
    p = _pt(p)
    pts = [_pt(q) for q in curve]
    edges = [(pts[k], pts[(k + 1) % len(pts)]) for k in range(len(pts))]
    for a, b in edges:
        if _orient(a, b, p) == 0 and _on_segment(p, a, b):
            raise PointOnCurveError(f"point {p} lies on the curve")
    k = 0
    while True:
        d = (Fraction(1), Fraction(0)) if k == 0 else (Fraction(k), Fraction(1))
        n = _ray_count(p, d, edges)
        if n is not None:
            return 1 if n % 2 == 0 else -1
        k += 1


def positive_side(curve: Sequence[Point], edge: int, p: Point) -> int:
    """+1 if f is positive just to the right of ``edge`` (walked in vertex order) at p."""
    n = len(curve)
    edges = [(curve[k], curve[(k + 1) % n]) for k in range(n)]
    a, b = edges[edge]
    t = (b[0] - a[0], b[1] - a[1])
    right = (t[1], -t[0])
    k = 1
    while True:
        for sgn in (0, 1, -1):
            if k > 1 and sgn == 0:
                continue
            d = (right[0] + sgn * t[0] / (k + 1), right[1] + sgn * t[1] / (k + 1))
            c = _ray_count(p, d, edges, skip=edge)
            if c is not None:
                return 1 if c % 2 == 0 else -1
        k += 1


# -- the Kronecker characteristic --------------------------------------------------

def kronecker_terms(o: Ornament, i: int = 0, j: int = 1,
                    orientation: str = "parity") -> list[tuple[Intersection, int]]:
    """Local contributions of each crossing of curves i and j.

    With ``orientation="parity"`` each curve is oriented so that its positive
    side lies on the right; ``"vertex"`` uses the raw vertex order, which
    agrees with the former only when the curves happen to be oriented that way.
    """
    if orientation not in ("parity", "vertex"):
        raise ValueError(f"unknown orientation {orientation!r}")
    third = 3 - i - j
    out = []
    for x in intersections(o, i, j):
        if crossing_parity_sign(x.point, o.curves[third]) < 0:
            out.append((x, 0))
            continue
        (a1, b1), (a2, b2) = o.edges(i)[x.edges[0]], o.edges(j)[x.edges[1]]
        d1 = (b1[0] - a1[0], b1[1] - a1[1])
        d2 = (b2[0] - a2[0], b2[1] - a2[1])
        if orientation == "parity":
            s1 = positive_side(o.curves[i], x.edges[0], x.point)
            s2 = positive_side(o.curves[j], x.edges[1], x.point)
        else:
            s1 = s2 = 1
        out.append((x, s1 * s2 * _sgn(_cross(d1[0], d1[1], d2[0], d2[1]))))
    return out


def kronecker_degree(o: Ornament, check: bool = True, orientation: str = "parity") -> int:
    if check:
        rep = validate_generic(o)
        if not rep:
            raise NonGenericOrnamentError("; ".join(rep.problems))
    return sum(v for _, v in kronecker_terms(o, orientation=orientation))


# -- the spherical-area oracle -------------------------------------------------------

def _float_edges(curve) -> tuple[np.ndarray, np.ndarray]:
    pts = np.array([[float(x), float(y)] for x, y in curve])
    return pts, np.roll(pts, -1, axis=0)


def _signed_distance_field(curve, px: np.ndarray, py: np.ndarray) -> np.ndarray:
    a, b = _float_edges(curve)
    dist = np.full(px.shape, np.inf)
    inside = np.zeros(px.shape, dtype=bool)
    for (ax, ay), (bx, by) in zip(a, b):
        ex, ey = bx - ax, by - ay
        L2 = ex * ex + ey * ey
        t = np.clip(((px - ax) * ex + (py - ay) * ey) / L2, 0.0, 1.0)
        dist = np.minimum(dist, np.hypot(px - ax - t * ex, py - ay - t * ey))
        # even-odd rule with a horizontal ray to the right
        straddle = (ay > py) != (by > py)
        with np.errstate(divide="ignore", invalid="ignore"):
            xint = ax + (py - ay) * ex / ey
        inside ^= straddle & (px < xint)
    return np.where(inside, -dist, dist)


def _solid_angles(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    num = np.einsum("ij,ij->i", a, np.cross(b, c))
    den = 1.0 + np.einsum("ij,ij->i", a, b) + np.einsum("ij,ij->i", b, c) + np.einsum("ij,ij->i", c, a)
    return 2.0 * np.arctan2(num, den)


def sphere_map(o: Ornament, px: np.ndarray, py: np.ndarray) -> np.ndarray:
    """u = (s_1 d_1, s_2 d_2, s_3 d_3)/|.| evaluated on arrays of points."""
    v = np.stack([_signed_distance_field(c, px, py) for c in o.curves], axis=-1)
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def integral_degree_oracle(o: Ornament, mesh: int = 128, pad: float = 3.0) -> float:
    """Degree as (total signed area of the image of a triangulated sphere) / 4 pi.

    The square around the ornament is split into 2 mesh^2 triangles; the
    rest of the plane is a fan to the point at infinity, which goes to the
    constant direction (1, 1, 1)/sqrt(3).
    """
    x0, y0, x1, y1 = (float(v) for v in o.bbox())
    cx, cy = (x0 + x1) / 2, (y0 + y1) / 2
    R = pad * max(x1 - x0, y1 - y0) / 2
    xs = np.linspace(cx - R, cx + R, mesh + 1)
    ys = np.linspace(cy - R, cy + R, mesh + 1)
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    u = sphere_map(o, gx, gy)  # shape (mesh+1, mesh+1, 3)
    a = u[:-1, :-1].reshape(-1, 3)
    b = u[1:, :-1].reshape(-1, 3)
    c = u[1:, 1:].reshape(-1, 3)
    d = u[:-1, 1:].reshape(-1, 3)
    total = _solid_angles(a, b, c).sum() + _solid_angles(a, c, d).sum()
    # boundary of the square, counter-clockwise
    ring = np.concatenate([u[:, 0], u[-1, 1:], u[-2::-1, -1], u[0, -2:0:-1]])
    nxt = np.roll(ring, -1, axis=0)
    pole = np.tile(np.ones(3) / math.sqrt(3), (len(ring), 1))
    total += _solid_angles(nxt, ring, pole).sum()
    return float(total / (4 * math.pi))


# -- sweeping with a horizontal line ---------------------------------------------------

_SHEARS = [Fraction(0)] + [Fraction(1, k) for k in (7, 11, 13, 17, 19, 23, 29, 31, 37, 41)] + \
    [Fraction(k, 97) for k in range(1, 60)]


def _heights_generic(o: Ornament, crossings: list[Intersection]) -> bool:
    ys = [p[1] for c in o.curves for p in c]
    if len(set(ys)) != len(ys):
        return False
    cy = [x.point[1] for x in crossings]
    if len(set(cy)) != len(cy):
        return False
    return not set(cy) & set(ys)


def sweep_ornament(o: Ornament) -> tuple[ConfigLoop, Fraction]:
    """Loop in T(ev, 2) traced by a horizontal line moving down; returns (loop, shear).

    If heights are degenerate the plane is first sheared by
    (x, y) -> (x, y + eps x), an orientation-preserving linear map, with the
    first eps from a fixed list that separates all heights.
    """
    rep = validate_generic(o)
    if not rep:
        raise NonGenericOrnamentError("; ".join(rep.problems))
    for eps in _SHEARS:
        oo = o if eps == 0 else o.transformed(1, 0, eps, 1)
        crossings = rep.crossings if eps == 0 else validate_generic(oo).crossings
        if _heights_generic(oo, crossings):
            break
    else:
        raise NonGenericOrnamentError("no shear separates the heights")
    segs = []
    strand = 0
    for i, c in enumerate(oo.curves):
        n = len(c)
        # strands run between height extrema; start counting at an extremum
        ext = [k for k in range(n) if (c[k - 1][1] - c[k][1]) * (c[(k + 1) % n][1] - c[k][1]) > 0]
        start = ext[0]
        for step in range(n):
            k = (start + step) % n
            if step and k in ext:
                strand += 1
            a, b = c[k], c[(k + 1) % n]
            top, bot = (a, b) if a[1] > b[1] else (b, a)
            segs.append(Segment(i, strand, -top[1], top[0], -bot[1], bot[0]))
        strand += 1
    _, ymin, _, ymax = oo.bbox()
    return ConfigLoop(tuple(segs), -ymax - 1, -ymin + 1), eps


def iter_crossing_points(o: Ornament) -> Iterator[Intersection]:
    for i, j in ((0, 1), (0, 2), (1, 2)):
        yield from intersections(o, i, j)
