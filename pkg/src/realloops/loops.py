"""Piecewise-linear loops in T(n, 2) drawn as braid diagrams.

A loop is a set of straight worldline segments in the strip
``R x [t_start, t_end]``; the two ends of the time interval are identified.
Particles move along segments, same-kind pairs are born at a common segment
start and die at a common segment end.

The degree of a loop counts crossings of a kind-0 and a kind-1 worldline.
At such a crossing the particles of every kind strictly to the right fix
the signs of the three implicit functions at the crossing point (each
function is positive at +infinity and flips sign at every particle of its
kind).  Crossings where the kind-2 function is negative contribute nothing;
the others contribute the local orientation sign.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Sequence


class InvalidLoopError(ValueError):
    pass


def _q(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(str(v)) if isinstance(v, str) else Fraction(v)


def _s(v: Fraction) -> str:
    return f"{v.numerator}/{v.denominator}"


@dataclass(frozen=True)
class Segment:
    kind: int
    strand: int
    t0: Fraction
    x0: Fraction
    t1: Fraction
    x1: Fraction

    def __post_init__(self):
        for name in ("t0", "x0", "t1", "x1"):
            object.__setattr__(self, name, _q(getattr(self, name)))
        if not self.t0 < self.t1:
            raise InvalidLoopError(f"segment of strand {self.strand} does not move forward in time")

    def at(self, t: Fraction) -> Fraction:
        return self.x0 + (self.x1 - self.x0) * (t - self.t0) / (self.t1 - self.t0)

    @property
    def slope(self) -> Fraction:
        return (self.x1 - self.x0) / (self.t1 - self.t0)


@dataclass(frozen=True)
class Crossing:
    t: Fraction
    x: Fraction
    a: Segment
    b: Segment


@dataclass(frozen=True)
class ConfigLoop:
    segments: tuple[Segment, ...]
    t_start: Fraction
    t_end: Fraction
    m: int = 2
    _crossings: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "t_start", _q(self.t_start))
        object.__setattr__(self, "t_end", _q(self.t_end))
        object.__setattr__(self, "segments", tuple(self.segments))
        if self.m != 2:
            raise InvalidLoopError("loops are only supported in T(n, 2)")
        if not self.t_start < self.t_end:
            raise InvalidLoopError("empty time interval")
        for s in self.segments:
            if not 0 <= s.kind <= 2:
                raise InvalidLoopError(f"kind {s.kind} outside [0, 2]")
            if s.t0 < self.t_start or s.t1 > self.t_end:
                raise InvalidLoopError(f"segment of strand {s.strand} leaves the time interval")
        self._check_vertices()
        object.__setattr__(self, "_crossings", tuple(self._find_crossings()))

    # -- validation -------------------------------------------------------
    def _check_vertices(self) -> None:
        ends: dict[tuple, list[int]] = defaultdict(lambda: [0, 0])
        for s in self.segments:
            ends[(s.kind, s.t0, s.x0)][1] += 1
            ends[(s.kind, s.t1, s.x1)][0] += 1
        for (kind, t, x), (n_end, n_start) in ends.items():
            if t in (self.t_start, self.t_end):
                continue
            if (n_end, n_start) not in ((1, 1), (0, 2), (2, 0)):
                raise InvalidLoopError(
                    f"kind-{kind} worldlines do not join up at t={t}, x={x}"
                )
        for k in range(3):
            if sorted(self.initial_positions(k)) != sorted(self.final_positions(k)):
                raise InvalidLoopError(f"kind-{k} configuration differs at the two ends")

    def _find_crossings(self) -> list[Crossing]:
        segs = sorted(self.segments, key=lambda s: s.t0)
        out = []
        for i, a in enumerate(segs):
            for b in segs[i + 1:]:
                if b.t0 >= a.t1:
                    break
                lo, hi = max(a.t0, b.t0), min(a.t1, b.t1)
                da = a.at(lo) - b.at(lo)
                db = a.at(hi) - b.at(hi)
                if da == 0 and db == 0:
                    raise InvalidLoopError(
                        f"worldlines of strands {a.strand} and {b.strand} overlap"
                    )
                if a.kind == b.kind:
                    continue
                if (da > 0 and db > 0) or (da < 0 and db < 0):
                    continue
                if da == 0 or db == 0:
                    t = lo if da == 0 else hi
                    if (t in (a.t0, a.t1)) and (t in (b.t0, b.t1)):
                        # shared endpoint of two different kinds
                        raise InvalidLoopError(f"kinds {a.kind}, {b.kind} meet at a breakpoint t={t}")
                    raise InvalidLoopError(
                        f"crossing of strands {a.strand}, {b.strand} at a breakpoint t={t}"
                    )
                t = lo + (hi - lo) * da / (da - db)
                out.append(Crossing(t, a.at(t), a, b))
        out.sort(key=lambda c: c.t)
        times = [c.t for c in out]
        if len(set(times)) != len(times):
            raise InvalidLoopError("simultaneous crossings")
        turning = {t for t in self._turning_times()}
        for c in out:
            if c.t in turning:
                raise InvalidLoopError(f"crossing at t={c.t} coincides with a birth or death")
            third = 3 - c.a.kind - c.b.kind
            if c.x in self.positions_at(c.t, third):
                raise InvalidLoopError(f"three kinds meet at t={c.t}, x={c.x}")
        turn_list = self._turning_times()
        if len(set(turn_list)) != len(turn_list):
            raise InvalidLoopError("simultaneous births/deaths")
        return out

    def _turning_times(self) -> list[Fraction]:
        starts: dict[tuple, int] = defaultdict(int)
        stops: dict[tuple, int] = defaultdict(int)
        for s in self.segments:
            starts[(s.kind, s.t0, s.x0)] += 1
            stops[(s.kind, s.t1, s.x1)] += 1
        out = [key[1] for key, n in starts.items() if n == 2 and key[1] != self.t_start]
        out += [key[1] for key, n in stops.items() if n == 2 and key[1] != self.t_end]
        return out

    # -- queries ----------------------------------------------------------
    def positions_at(self, t: Fraction, kind: int) -> list[Fraction]:
        """Kind-``kind`` particle positions at time t (births counted twice)."""
        return [s.at(t) for s in self.segments if s.kind == kind and s.t0 <= t < s.t1]

    def initial_positions(self, kind: int) -> list[Fraction]:
        return [s.x0 for s in self.segments if s.kind == kind and s.t0 == self.t_start]

    def final_positions(self, kind: int) -> list[Fraction]:
        return [s.x1 for s in self.segments if s.kind == kind and s.t1 == self.t_end]

    @property
    def crossings(self) -> tuple[Crossing, ...]:
        return self._crossings

    def events(self) -> list[dict]:
        """Pair births and deaths plus crossings, in time order, for inspection and export."""
        starts: dict[tuple, int] = defaultdict(int)
        stops: dict[tuple, int] = defaultdict(int)
        for s in self.segments:
            starts[(s.kind, s.t0, s.x0)] += 1
            stops[(s.kind, s.t1, s.x1)] += 1
        ev = []
        for (k, t, x), n in starts.items():
            if n == 2 and t != self.t_start:
                ev.append({"type": "birth", "time": t, "pos": x, "kinds": [k]})
        for (k, t, x), n in stops.items():
            if n == 2 and t != self.t_end:
                ev.append({"type": "death", "time": t, "pos": x, "kinds": [k]})
        for c in self.crossings:
            ev.append({"type": "crossing", "time": c.t, "pos": c.x,
                       "kinds": sorted((c.a.kind, c.b.kind)),
                       "strands": [c.a.strand, c.b.strand]})
        ev.sort(key=lambda e: e["time"])
        return ev

    # -- operations -------------------------------------------------------
    def reversed(self) -> "ConfigLoop":
        T = self.t_start + self.t_end
        segs = [replace(s, t0=T - s.t1, x0=s.x1, t1=T - s.t0, x1=s.x0) for s in self.segments]
        return ConfigLoop(tuple(segs), self.t_start, self.t_end)

    def shifted(self, dt: Fraction) -> "ConfigLoop":
        segs = [replace(s, t0=s.t0 + dt, t1=s.t1 + dt) for s in self.segments]
        return ConfigLoop(tuple(segs), self.t_start + dt, self.t_end + dt)

    def concat(self, other: "ConfigLoop") -> "ConfigLoop":
        """Run ``self`` then ``other``; the end of one must match the start of the other."""
        for k in range(3):
            if sorted(self.final_positions(k)) != sorted(other.initial_positions(k)):
                raise InvalidLoopError("loops cannot be concatenated: endpoints differ")
        sh = other.shifted(self.t_end - other.t_start)
        offset = 1 + max((s.strand for s in self.segments), default=-1)
        segs = list(self.segments) + [replace(s, strand=s.strand + offset) for s in sh.segments]
        return ConfigLoop(tuple(segs), self.t_start, sh.t_end)

    def subdivided(self) -> "ConfigLoop":
        """Split every segment at its time midpoint; the loop is unchanged as a set."""
        segs = []
        for s in self.segments:
            tm = (s.t0 + s.t1) / 2
            segs.append(replace(s, t1=tm, x1=s.at(tm)))
            segs.append(replace(s, t0=tm, x0=s.at(tm)))
        return ConfigLoop(tuple(segs), self.t_start, self.t_end)

    def to_json(self) -> dict:
        return {
            "m": 2,
            "period": [_s(self.t_start), _s(self.t_end)],
            "segments": [
                {"kind": s.kind, "strand": s.strand,
                 "start": [_s(s.t0), _s(s.x0)], "end": [_s(s.t1), _s(s.x1)]}
                for s in self.segments
            ],
            "events": [
                {**e, "time": _s(e["time"]), "pos": _s(e["pos"])} for e in self.events()
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ConfigLoop":
        if int(data.get("m", 2)) != 2:
            raise InvalidLoopError("only m = 2 loops are supported")
        segs = [
            Segment(int(s["kind"]), int(s.get("strand", i)), _q(s["start"][0]), _q(s["start"][1]),
                    _q(s["end"][0]), _q(s["end"][1]))
            for i, s in enumerate(data["segments"])
        ]
        t0, t1 = data["period"]
        return cls(tuple(segs), _q(t0), _q(t1))


def crossing_contribution(loop: ConfigLoop, c: Crossing) -> int:
    a, b = (c.a, c.b) if c.a.kind < c.b.kind else (c.b, c.a)
    if (a.kind, b.kind) != (0, 1):
        return 0
    right = [sum(1 for x in loop.positions_at(c.t, k) if x > c.x) for k in range(3)]
    if right[2] % 2:
        return 0
    # kind 0 passing from the left of kind 1 to its right
    orient = 1 if a.slope > b.slope else -1
    eps = -1 if (right[0] + right[1]) % 2 else 1
    return -eps * orient


def sweep_loop_degree(loop: ConfigLoop) -> int:
    """Integer class of the loop in pi_1 T(ev, 2) (or T(odd, 2))."""
    return sum(crossing_contribution(loop, c) for c in loop.crossings)


def loop_from_tracks(times: Sequence, tracks: Iterable[tuple[int, Sequence]]) -> ConfigLoop:
    """Build a loop from strands sampled at common times (each strand closes up).

    ``tracks`` yields ``(kind, positions)`` with one position per time; the
    first and last positions of a strand must agree as sets across strands.
    """
    times = [_q(t) for t in times]
    segs = []
    for sid, (kind, xs) in enumerate(tracks):
        xs = [_q(x) for x in xs]
        if len(xs) != len(times):
            raise InvalidLoopError("track length differs from the time grid")
        for i in range(len(times) - 1):
            segs.append(Segment(kind, sid, times[i], xs[i], times[i + 1], xs[i + 1]))
    return ConfigLoop(tuple(segs), times[0], times[-1])


__all__ = [
    "ConfigLoop", "Crossing", "InvalidLoopError", "Segment",
    "crossing_contribution", "loop_from_tracks", "sweep_loop_degree",
]
