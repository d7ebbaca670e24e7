import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import all_words, half_length_degree, reduce_by_rewriting
from realloops.config import (
    InvalidConfigError, Mod2Config, Particle, component_degree_m1, config_from_word,
    enumerate_components_m1, minimal_budget, normalize, reduce_word, stabilize, word_degree,
)


def w(s: str) -> tuple[int, ...]:
    return tuple(int(c) for c in s)


def test_normalize_pair_cancellation():
    cfg = normalize([(0, 0, 2), (1, 0, 1), (2, 1, 3)], 1, 3)
    assert cfg.particles == (Particle(Fraction(1), 0), Particle(Fraction(2), 1))


def test_normalize_forbidden_triple():
    with pytest.raises(InvalidConfigError):
        normalize([(0, 0, 1), (0, 1, 1), (0, 2, 1)], 2, 1)


def test_normalize_two_kinds_may_share_a_point():
    # budget 1 needs one particle of every kind; kind 2 sits elsewhere
    cfg = normalize([(0, 0, 1), (0, 1, 1), (5, 2, 1)], 2, 1)
    assert [p.kind for p in cfg.particles] == [0, 1, 2]
    assert cfg.positions(0) == cfg.positions(1) == [0]


def test_normalize_budget_errors():
    with pytest.raises(InvalidConfigError):
        normalize([(0, 0, 3)], 1, 2)
    with pytest.raises(InvalidConfigError):
        normalize([(0, 0, 1)], 1, 2)


def test_config_invariants():
    with pytest.raises(InvalidConfigError):
        Mod2Config(1, 2, (Particle(Fraction(0), 0), Particle(Fraction(0), 0)))
    with pytest.raises(InvalidConfigError):
        Mod2Config(1, 1, (Particle(Fraction(0), 0), Particle(Fraction(0), 1)))
    with pytest.raises(InvalidConfigError):
        Mod2Config(1, 2, (Particle(Fraction(0), 0),))
    with pytest.raises(InvalidConfigError):
        Mod2Config(1, 1, (Particle(Fraction(0), 2), Particle(Fraction(1), 0)))


def test_json_roundtrip():
    cfg = config_from_word(w("0110"), 2)
    assert Mod2Config.from_json(cfg.to_json()) == cfg


def test_component_degree_examples():
    assert component_degree_m1(config_from_word(w("0110"))) == 0
    # half-length convention: alternating "0101" has two letters of each kind
    assert component_degree_m1(config_from_word(w("0101"))) == 2
    assert component_degree_m1(config_from_word(w("10"))) == -1
    assert component_degree_m1(Mod2Config(1, 2)) == 0


def test_budget_two_components():
    assert enumerate_components_m1(2) == {-2, 0, 2}
    reduced = {reduce_by_rewriting(s) for s in all_words(2)}
    assert reduced == {"", "0101", "1010"}


@pytest.mark.parametrize("n,expected", [(0, {0}), (1, {-1, 1}), (4, {-4, -2, 0, 2, 4})])
def test_enumerate_examples(n, expected):
    assert enumerate_components_m1(n) == expected


@pytest.mark.parametrize("n", range(0, 7))
def test_enumeration_matches_exhaustive_words(n):
    seen = {half_length_degree(s) for s in all_words(n)}
    assert enumerate_components_m1(n) == seen
    assert len(seen) == n + 1


@given(st.text(alphabet="01", max_size=30))
def test_reduction_matches_rewriting(s):
    assert "".join(map(str, reduce_word(w(s)))) == reduce_by_rewriting(s)


@given(st.text(alphabet="01", max_size=20), st.integers(0, 20), st.sampled_from(["00", "11"]))
def test_degree_invariant_under_pair_insertion(s, i, pair):
    i = min(i, len(s))
    t = s[:i] + pair + s[i:]
    if len(reduce_by_rewriting(s)) % 2 == 0:
        assert word_degree(w(t)) == word_degree(w(s))


@given(st.integers(0, 10**6), st.integers(0, 7))
def test_degree_bounds_and_parity(seed, n):
    from realloops.fixtures import random_config_m1
    cfg = random_config_m1(random.Random(seed), n)
    d = component_degree_m1(cfg)
    assert abs(d) <= n and (d - n) % 2 == 0


@given(st.integers(0, 10**6))
def test_degree_ignores_positions(seed):
    rng = random.Random(seed)
    word = w("".join(rng.choice("01") for _ in range(2 * rng.randint(0, 4))))
    try:
        budget = minimal_budget(word)
    except InvalidConfigError:
        return
    xs = sorted({Fraction(rng.randint(-1000, 1000), 7) for _ in range(40)})[:len(word)]
    if len(xs) < len(word):
        return
    a = config_from_word(word, budget)
    b = config_from_word(word, budget, positions=xs)
    assert component_degree_m1(a) == component_degree_m1(b)


def test_stabilize_conjugate_pair():
    cfg = config_from_word(w("0110"), 2)
    s = stabilize(cfg, "conjugate_pair")
    assert s.particles == cfg.particles and s.budget == 4


def test_stabilize_infinity_points_formula():
    s = stabilize(Mod2Config(1, 0), "infinity_points")
    assert s.word == (0, 1)
    assert [p.pos for p in s.particles] == [Fraction(1, 3), Fraction(2, 3)]
    assert s.budget == 1
    s = stabilize(Mod2Config(2, 0), "infinity_points")
    assert [p.pos for p in s.particles] == [Fraction(1, 4), Fraction(2, 4), Fraction(3, 4)]


def test_stabilize_infinity_points_precondition():
    cfg = Mod2Config(1, 1, (Particle(Fraction(1), 0), Particle(Fraction(0), 1)))
    with pytest.raises(InvalidConfigError):
        stabilize(cfg, "infinity_points")
    with pytest.raises(ValueError):
        stabilize(cfg, "sideways")


@pytest.mark.parametrize("n", range(0, 7))
def test_infinity_points_twice_vs_conjugate_pair(n):
    # the components differ in general; parity agrees and they are at most 2 apart
    for d in enumerate_components_m1(n):
        k = abs(d)
        word = tuple((i + (0 if d >= 0 else 1)) % 2 for i in range(2 * k))
        cfg = config_from_word(word, n)
        twice = stabilize(stabilize(cfg, "infinity_points"), "infinity_points")
        once = stabilize(cfg, "conjugate_pair")
        a, b = component_degree_m1(twice), component_degree_m1(once)
        assert (a - b) % 2 == 0 and abs(a - b) <= 2
