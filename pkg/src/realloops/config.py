"""Mod-2 particle configurations on the real line.

A configuration in T(n, m) is a finite set of particles of m+1 kinds.  Two
particles of one kind at one place annihilate, and a point may never host
all m+1 kinds at once.  For m = 1 the signed half-length of the reduced kind
word is a complete invariant of the connected component.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

# component_degree_m1(to_config(f)) == DEGREE_SIGN * degree_rp1(f); see
# tests/test_ratmap.py::test_component_degree_matches_map_degree.
DEGREE_SIGN = -1


class InvalidConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Particle:
    pos: Fraction
    kind: int

    def __lt__(self, other: "Particle") -> bool:
        return (self.pos, self.kind) < (other.pos, other.kind)


@dataclass(frozen=True)
class Mod2Config:
    m: int
    budget: int
    particles: tuple[Particle, ...] = field(default=())

    def __post_init__(self):
        if self.m < 1:
            raise InvalidConfigError("m must be positive")
        if self.budget < 0:
            raise InvalidConfigError("budget must be non-negative")
        ps = tuple(sorted(Particle(Fraction(p.pos), int(p.kind)) for p in self.particles))
        object.__setattr__(self, "particles", ps)
        # particles are sorted, so coincidences are adjacent (hashing Fractions is slow)
        counts = [0] * (self.m + 1)
        run: set[int] = set()
        prev = None
        for p in ps:
            if not 0 <= p.kind <= self.m:
                raise InvalidConfigError(f"kind {p.kind} outside [0, {self.m}]")
            if prev is None or p.pos != prev.pos:
                run = set()
            elif p.kind == prev.kind:
                raise InvalidConfigError(f"two kind-{p.kind} particles at {p.pos}")
            run.add(p.kind)
            if len(run) == self.m + 1:
                raise InvalidConfigError(f"all {self.m + 1} kinds collide at {p.pos}")
            counts[p.kind] += 1
            prev = p
        for k, c in enumerate(counts):
            if c > self.budget or (c - self.budget) % 2:
                raise InvalidConfigError(
                    f"{c} particles of kind {k} incompatible with budget {self.budget}"
                )

    @property
    def word(self) -> tuple[int, ...]:
        return tuple(p.kind for p in self.particles)

    def positions(self, kind: int) -> list[Fraction]:
        return [p.pos for p in self.particles if p.kind == kind]

    def with_budget(self, budget: int) -> "Mod2Config":
        return Mod2Config(self.m, budget, self.particles)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "budget": self.budget,
            "particles": [
                {"pos": f"{p.pos.numerator}/{p.pos.denominator}", "kind": p.kind}
                for p in self.particles
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Mod2Config":
        return cls(
            int(data["m"]),
            int(data["budget"]),
            tuple(Particle(Fraction(str(p["pos"])), int(p["kind"])) for p in data["particles"]),
        )


def normalize(raw: Iterable[tuple], m: int, budget: int) -> Mod2Config:
    """Reduce a raw multiset of (position, kind, multiplicity) modulo 2.

    Each kind's total multiplicity must not exceed ``budget`` and must have
    the parity of ``budget``; the deficit stands for non-real roots.
    """
    totals = [0] * (m + 1)
    parity: dict[tuple[int, int, int], int] = defaultdict(int)
    for pos, kind, mult in raw:
        kind, mult = int(kind), int(mult)
        if not 0 <= kind <= m:
            raise InvalidConfigError(f"kind {kind} outside [0, {m}]")
        if mult < 0:
            raise InvalidConfigError("negative multiplicity")
        totals[kind] += mult
        q = Fraction(pos)
        parity[(q.numerator, q.denominator, kind)] ^= mult & 1
    for k, t in enumerate(totals):
        if t > budget or (budget - t) % 2:
            raise InvalidConfigError(f"kind {k} has total multiplicity {t}, budget {budget}")
    particles = [Particle(Fraction(a, b), kind) for (a, b, kind), odd in parity.items() if odd]
    return Mod2Config(m, budget, tuple(particles))


def reduce_word(word: Sequence[int]) -> tuple[int, ...]:
    """Cancel adjacent equal letters until the word alternates."""
    stack: list[int] = []
    for k in word:
        if stack and stack[-1] == k:
            stack.pop()
        else:
            stack.append(k)
    return tuple(stack)


def word_degree(word: Sequence[int]) -> int:
    """Signed half-length of the reduced word; positive when it starts with 0."""
    red = reduce_word(word)
    if not red:
        return 0
    if len(red) % 2:
        raise InvalidConfigError(f"reduced word {red} has odd length")
    half = len(red) // 2
    return half if red[0] == 0 else -half


def component_degree_m1(config: Mod2Config) -> int:
    """The component of T(n, 1) containing ``config``, as an integer in [-n, n]."""
    if config.m != 1:
        raise InvalidConfigError("component_degree_m1 needs m = 1")
    return word_degree(config.word)


def enumerate_components_m1(n: int) -> set[int]:
    """All component degrees of T(n, 1), found by enumerating reduced words."""
    if n < 0:
        raise ValueError("n must be non-negative")
    out = set()
    # reduced words are alternating with k letters of each kind, k = n mod 2
    for k in range(n % 2, n + 1, 2):
        for first in (0, 1):
            word = [(first + i) % 2 for i in range(2 * k)]
            out.add(word_degree(word))
    return out


def minimal_budget(word: Sequence[int], m: int = 1) -> int:
    """Smallest budget for which ``word`` is a valid configuration."""
    counts = [sum(1 for k in word if k == i) for i in range(m + 1)]
    if len({c % 2 for c in counts}) > 1:
        raise InvalidConfigError(f"kind counts {counts} have mixed parity")
    return max(counts)


def config_from_word(word: Sequence[int], budget: int | None = None, m: int = 1,
                     positions: Sequence[Fraction] | None = None) -> Mod2Config:
    """Place the letters of ``word`` at ``positions`` (default: evenly inside (-budget, budget))."""
    if budget is None:
        budget = minimal_budget(word, m)
    if positions is None:
        L = len(word)
        span = Fraction(max(budget, 1))
        positions = [-span + 2 * span * (i + 1) / (L + 1) for i in range(L)]
    return Mod2Config(m, budget, tuple(Particle(Fraction(x), k) for x, k in zip(positions, word)))


def infinity_points(m: int, n: int) -> list[Fraction]:
    """Positions n < x_0 < ... < x_m < n + 1 used to add real points at infinity."""
    return [n + Fraction(i + 1, m + 2) for i in range(m + 1)]


def stabilize(config: Mod2Config, mode: str) -> Mod2Config:
    if mode == "conjugate_pair":
        return config.with_budget(config.budget + 2)
    if mode == "infinity_points":
        n = config.budget
        for p in config.particles:
            if not -n < p.pos < n:
                raise InvalidConfigError(f"particle at {p.pos} outside (-{n}, {n})")
        new = [Particle(x, i) for i, x in enumerate(infinity_points(config.m, n))]
        return Mod2Config(config.m, n + 1, config.particles + tuple(new))
    raise ValueError(f"unknown stabilization mode {mode!r}")
