import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from realloops.config import component_degree_m1, config_from_word, reduce_word
from realloops.fixtures import random_config_m1
from realloops.flow import (
    ContactGuardError, FlowState, _segment, acceleration, energy,
    equilibrium_oracle, simulate_particles, simulate_to_equilibrium,
)


def state(xs, kinds, vs=None):
    vs = [0.0] * len(xs) if vs is None else vs
    return FlowState(xs, vs, kinds)


def test_acceleration_examples():
    assert acceleration(state([1.0], [0])) == pytest.approx([-2.0])
    assert acceleration(state([-1.0, 1.0], [0, 0])) == pytest.approx([2.5, -2.5])
    assert acceleration(state([-0.5, 0.5], [0, 1])) == pytest.approx([0.0, 0.0], abs=1e-15)
    assert acceleration(state([0.0], [1], [3.0])) == pytest.approx([-3.0])


def test_only_neighbours_interact():
    a = acceleration(state([-1.0, 0.0, 1.0], [0, 1, 0]))
    # the outer pair feels gravity and one repulsion each, not each other
    assert a == pytest.approx([2 - 1, 0, -2 + 1])


def test_state_validation():
    with pytest.raises(ValueError):
        state([1.0, 0.0], [0, 1])
    with pytest.raises(ValueError):
        FlowState([0.0], [0.0, 1.0], [0])


def test_pair_equilibrium():
    for xs in ([-3.0, 2.0], [0.1, 0.2], [1.0, 5.0]):
        cfg = config_from_word((0, 1), positions=[xs[0], xs[1]])
        res = simulate_to_equilibrium(cfg)
        assert res.kinds == (0, 1)
        assert res.positions == pytest.approx([-0.5, 0.5], abs=1e-6)


def test_same_kind_pair_annihilates():
    res = simulate_to_equilibrium(config_from_word((0, 0), positions=[-1, 2]))
    assert res.kinds == () and len(res.events) == 1
    assert res.events[0]["type"] == "annihilation" and res.events[0]["reduced_word"] == ""


def test_single_particle_rests_at_origin():
    for k in (0, 1):
        st_, events, _ = simulate_particles([2.5], [k])
        assert st_.x == pytest.approx([0.0], abs=1e-6) and not events


def test_oracle_examples():
    assert equilibrium_oracle((0, 1)) == pytest.approx([-0.5, 0.5], abs=1e-12)
    assert equilibrium_oracle((0,)) == pytest.approx([0.0])
    x = equilibrium_oracle((0, 1, 0, 1))
    assert x == pytest.approx(-x[::-1], abs=1e-12)
    with pytest.raises(ValueError):
        equilibrium_oracle((0, 0))


def test_oracle_residual_vanishes():
    for word in ((0, 1, 0), (1, 0, 1, 0, 1, 0)):
        x = equilibrium_oracle(word)
        st_ = state(list(x), word)
        assert np.max(np.abs(acceleration(st_))) < 1e-10


def test_simulation_matches_oracle_0101():
    cfg = config_from_word((0, 1, 0, 1), positions=[-2, -1, 1, 3])
    res = simulate_to_equilibrium(cfg)
    assert res.positions == pytest.approx(equilibrium_oracle((0, 1, 0, 1)), abs=1e-6)


@settings(max_examples=25)
@given(st.integers(0, 10**6), st.integers(0, 4))
def test_component_preserved(seed, budget):
    cfg = random_config_m1(random.Random(seed), budget)
    res = simulate_to_equilibrium(cfg)
    assert res.kinds == reduce_word(cfg.word)
    assert component_degree_m1(res.final_config) == component_degree_m1(cfg)
    for ev in res.events:
        assert ev["reduced_word"] == "".join(map(str, reduce_word(cfg.word)))
    assert res.positions == pytest.approx(equilibrium_oracle(res.kinds), abs=1e-6)


def test_distinct_components_distinct_equilibria():
    seen = set()
    for word in ((), (0, 1), (1, 0), (0, 1, 0, 1), (1, 0, 1, 0)):
        x = equilibrium_oracle(word) if word else np.zeros(0)
        seen.add((word, tuple(np.round(x, 9))))
    assert len(seen) == 5


def test_energy_non_increasing_between_events():
    st_ = state([-2.0, -0.3, 0.4, 2.5], [0, 1, 0, 1])
    sol, hit = _segment(st_, 10.0, record=True)
    assert hit is None
    n = 4
    es = [energy(FlowState(y[:n], y[n:], st_.kinds)) for y in sol.y.T]
    assert all(b <= a + 1e-8 for a, b in zip(es, es[1:]))


def test_guard_trips_on_forced_contact():
    # an absurd starting velocity drives opposite kinds into each other
    with pytest.raises(ContactGuardError):
        simulate_particles([0.0, 1e-3], [0, 1], velocities=[1e6, -1e6])
