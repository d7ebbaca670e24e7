from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from realloops.fixtures import generator_loop, venn_loop
from realloops.loops import ConfigLoop, InvalidLoopError, Segment, loop_from_tracks, sweep_loop_degree


def test_generator_values():
    g = generator_loop()
    assert sweep_loop_degree(g) == 1
    assert sweep_loop_degree(g.reversed()) == -1
    assert sweep_loop_degree(g.concat(g)) == 2
    assert sweep_loop_degree(g.concat(g.reversed())) == 0


def test_venn_sweep_is_a_generator():
    v = venn_loop()
    assert sweep_loop_degree(v) == 1
    assert sweep_loop_degree(v.reversed()) == -1


def test_subdivision_invariance():
    g = generator_loop()
    assert sweep_loop_degree(g.subdivided()) == 1
    assert sweep_loop_degree(g.subdivided().subdivided()) == 1


@given(st.integers(8, 40), st.integers(0, 10**6))
def test_sampling_and_time_perturbation(samples, seed):
    import random
    rng = random.Random(seed)
    g = generator_loop(samples)
    # monotone reparametrisation of time keeps event order
    times = sorted({s.t0 for s in g.segments} | {g.t_end})
    new = [Fraction(0)]
    for _ in times[1:]:
        new.append(new[-1] + Fraction(rng.randint(1, 9), 7))
    remap = dict(zip(times, new))
    segs = [Segment(s.kind, s.strand, remap[s.t0], s.x0, remap[s.t1], s.x1) for s in g.segments]
    assert sweep_loop_degree(ConfigLoop(tuple(segs), new[0], new[-1])) == 1


def test_json_roundtrip():
    g = generator_loop()
    h = ConfigLoop.from_json(g.to_json())
    assert h.segments == g.segments and sweep_loop_degree(h) == 1


def test_constant_loop_is_zero():
    loop = loop_from_tracks([0, 1, 2], [(0, [0, 0, 0]), (1, [1, 1, 1]), (2, [2, 2, 2])])
    assert sweep_loop_degree(loop) == 0


def test_validation_errors():
    with pytest.raises(InvalidLoopError):
        Segment(0, 0, 1, 0, 1, 0)
    with pytest.raises(InvalidLoopError):
        loop_from_tracks([0, 1], [(0, [0, 1])])
    with pytest.raises(InvalidLoopError):
        loop_from_tracks([0, 1], [(3, [0, 0])])
    # three kinds through one point at once
    with pytest.raises(InvalidLoopError):
        loop_from_tracks([0, 1, 2], [(0, [-1, 1, -1]), (1, [1, -1, 1]), (2, [0, 0, 0])])
    # strand that ends in mid-air
    with pytest.raises(InvalidLoopError):
        ConfigLoop((Segment(0, 0, 0, 0, 1, 0), Segment(0, 0, 1, 0, 2, 1)), 0, 3)
