"""Damped charged-particle dynamics on T(n, 1).

Particles feel gravity from the potential x^2, friction -c v, and a 1/r force
from each immediate neighbour: attraction towards a neighbour of the same
kind, repulsion from one of the other kind.  Two same-kind particles that
come within ``delta`` annihilate.  Every run from rest ends at the unique
equilibrium of its component.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.integrate import solve_ivp

from realloops.config import Mod2Config, Particle, reduce_word, word_degree

log = logging.getLogger(__name__)


class FlowError(RuntimeError):
    pass


class ContactGuardError(FlowError):
    """Two particles of different kinds came closer than delta / 10."""


class ComponentViolation(FlowError):
    pass


@dataclass(frozen=True)
class FlowParams:
    friction: float = 1.0
    delta: float = 1e-6
    r_min: float = 1e-9
    tol: float = 1e-10
    rtol: float = 1e-10
    atol: float = 1e-12
    chunk: float = 20.0
    max_time: float = 2000.0


@dataclass
class FlowState:
    x: np.ndarray
    v: np.ndarray
    kinds: tuple[int, ...]
    time: float = 0.0
    params: FlowParams = field(default_factory=FlowParams)

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=float)
        self.v = np.asarray(self.v, dtype=float)
        self.kinds = tuple(int(k) for k in self.kinds)
        if not (len(self.x) == len(self.v) == len(self.kinds)):
            raise ValueError("positions, velocities and kinds differ in length")
        if np.any(np.diff(self.x) <= 0):
            raise ValueError("positions must be strictly increasing")

    @property
    def degree(self) -> int:
        return word_degree(self.kinds)


def _same(kinds: Sequence[int]) -> np.ndarray:
    k = np.asarray(kinds)
    return k[1:] == k[:-1]


def _accel(x, v, same, c, r_min):
    a = -2.0 * x - c * v
    if len(x) > 1:
        r = np.maximum(np.diff(x), r_min)
        # force on the left particle of each gap: +1/r towards the right if attracted
        f = np.where(same, 1.0 / r, -1.0 / r)
        a[:-1] += f
        a[1:] -= f
    return a


def acceleration(state: FlowState) -> np.ndarray:
    p = state.params
    return _accel(state.x, state.v, _same(state.kinds), p.friction, p.r_min)


def _log_soft(r, r_min):
    return np.where(r >= r_min, np.log(np.maximum(r, r_min)), math.log(r_min) + (r - r_min) / r_min)


def energy(state: FlowState) -> float:
    """Kinetic + gravitational + interaction energy; non-increasing between events."""
    x, v = state.x, state.v
    e = 0.5 * float(v @ v) + float(x @ x)
    if len(x) > 1:
        u = _log_soft(np.diff(x), state.params.r_min)
        e += float(np.sum(np.where(_same(state.kinds), u, -u)))
    return e


@dataclass
class FlowResult:
    positions: np.ndarray
    kinds: tuple[int, ...]
    events: list[dict]
    final_config: Mod2Config
    time: float
    trajectory: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "positions": [float(v) for v in self.positions],
            "kinds": list(self.kinds),
            "time": self.time,
            "events": self.events,
            "final_config": self.final_config.to_json(),
            "trajectory": self.trajectory,
        }


def _segment(state: FlowState, t_end: float, record: bool):
    p = state.params
    n = len(state.kinds)
    same = _same(state.kinds)
    c, r_min = p.friction, p.r_min

    def rhs(_t, y):
        x, v = y[:n], y[n:]
        return np.concatenate([v, _accel(x, v, same, c, r_min)])

    events = []
    for i in range(n - 1):
        if same[i]:
            def ev(_t, y, i=i):
                return y[i + 1] - y[i] - p.delta
            ev.direction = -1
        else:
            def ev(_t, y, i=i):
                return y[i + 1] - y[i] - p.delta / 10
        ev.terminal = True
        events.append(ev)
    y0 = np.concatenate([state.x, state.v])
    sol = solve_ivp(rhs, (state.time, t_end), y0, method="DOP853", rtol=p.rtol, atol=p.atol,
                    events=events or None, dense_output=False,
                    t_eval=np.linspace(state.time, t_end, 41) if record else None)
    if sol.status == -1:
        raise FlowError(f"integration failed: {sol.message}")
    hit = None
    if sol.status == 1:
        for i, te in enumerate(sol.t_events):
            if len(te):
                hit = i
                break
    return sol, hit


def _to_config(x: np.ndarray, kinds: Sequence[int], budget: int) -> Mod2Config:
    return Mod2Config(1, budget, tuple(
        Particle(Fraction(float(xi)).limit_denominator(10**12), k) for xi, k in zip(x, kinds)))


def simulate_particles(positions: Sequence[float], kinds: Sequence[int],
                       params: FlowParams | None = None, record: bool = False,
                       velocities: Sequence[float] | None = None):
    """Run the flow on raw particles (from rest by default); returns (state, events, trajectory).

    Unlike :func:`simulate_to_equilibrium` this does not require the kind
    counts to have a common parity, so e.g. a lone particle can be studied.
    """
    params = params or FlowParams()
    x = np.asarray(positions, dtype=float)
    v = np.zeros_like(x) if velocities is None else np.asarray(velocities, dtype=float)
    state = FlowState(x, v, tuple(kinds), 0.0, params)
    degree = reduce_word(state.kinds)
    log_events: list[dict] = []
    traj: list[dict] = []
    while True:
        n = len(state.kinds)
        if n == 0:
            break
        a = acceleration(state)
        if np.max(np.abs(state.v)) < params.tol and np.max(np.abs(a)) < params.tol:
            break
        if state.time >= params.max_time:
            raise FlowError(f"no equilibrium reached by t = {params.max_time}")
        sol, hit = _segment(state, min(state.time + params.chunk, params.max_time), record)
        if record:
            traj += [{"t": float(t), "x": [float(v) for v in y[:n]], "kinds": list(state.kinds)}
                     for t, y in zip(sol.t, sol.y.T)]
        if hit is None:
            y = sol.y[:, -1]
            state = FlowState(y[:n], y[n:], state.kinds, float(sol.t[-1]), params)
            continue
        t_ev = float(sol.t_events[hit][0])
        y = sol.y_events[hit][0]
        if state.kinds[hit] != state.kinds[hit + 1]:
            raise ContactGuardError(f"kinds {state.kinds[hit]}, {state.kinds[hit + 1]} "
                                    f"came within delta/10 at t = {t_ev}")
        x, v, kinds = y[:n], y[n:], state.kinds
        pair = hit
        while pair is not None:
            keep = [j for j in range(len(kinds)) if j not in (pair, pair + 1)]
            ev = {"type": "annihilation", "time": t_ev, "pos": float((x[pair] + x[pair + 1]) / 2),
                  "kind": kinds[pair]}
            x, v, kinds = x[keep], v[keep], tuple(kinds[j] for j in keep)
            ev["reduced_word"] = "".join(map(str, reduce_word(kinds)))
            log_events.append(ev)
            log.debug("annihilation %s", ev)
            # the reduced word is the component invariant (its signed half-length is the degree)
            if reduce_word(kinds) != degree:
                raise ComponentViolation(f"component changed at t = {t_ev}")
            # symmetric starts can bring several pairs to contact at the same instant
            pair = next((j for j in range(len(kinds) - 1)
                         if kinds[j] == kinds[j + 1] and x[j + 1] - x[j] <= 2 * params.delta
                         and v[j] > v[j + 1]), None)
        state = FlowState(x, v, kinds, t_ev, params)
    if state.kinds != degree:
        raise ComponentViolation(f"final word {state.kinds} is not reduced")
    return state, log_events, traj


def simulate_to_equilibrium(initial: Mod2Config, params: FlowParams | None = None,
                            record: bool = False) -> FlowResult:
    """Release the particles of ``initial`` at rest and follow the flow to equilibrium."""
    if initial.m != 1:
        raise ValueError("the flow is defined for m = 1")
    state, events, traj = simulate_particles(
        [float(p.pos) for p in initial.particles], initial.word, params, record)
    return FlowResult(state.x.copy(), state.kinds, events,
                      _to_config(state.x, state.kinds, initial.budget), state.time, traj)


def equilibrium_oracle(word: Sequence[int], tol: float = 1e-12, max_iter: int = 200) -> np.ndarray:
    """Static balance -2 x_i + (repulsion from both neighbours) = 0, by damped Newton.

    The balance is the gradient of the strictly concave -(sum x^2 - sum log gaps),
    so the solution is unique and Newton with backtracking converges.
    """
    word = tuple(word)
    if reduce_word(word) != word:
        raise ValueError(f"word {word} is not alternating")
    n = len(word)
    if n == 0:
        return np.zeros(0)
    x = np.linspace(-(n - 1) / 2, (n - 1) / 2, n) if n > 1 else np.zeros(1)

    def resid(x):
        F = -2.0 * x
        if n > 1:
            inv = 1.0 / np.diff(x)
            F[1:] += inv
            F[:-1] -= inv
        return F

    def phi(x):
        return float(x @ x) - float(np.sum(np.log(np.diff(x)))) if n > 1 else float(x @ x)

    for _ in range(max_iter):
        F = resid(x)
        if np.max(np.abs(F)) < tol:
            return x
        J = np.diag(np.full(n, -2.0))
        if n > 1:
            w = 1.0 / np.diff(x) ** 2
            J[np.arange(n - 1), np.arange(n - 1)] -= w
            J[np.arange(1, n), np.arange(1, n)] -= w
            J[np.arange(n - 1), np.arange(1, n)] += w
            J[np.arange(1, n), np.arange(n - 1)] += w
        step = np.linalg.solve(J, -F)
        s, f0 = 1.0, phi(x)
        while s > 1e-12:
            xn = x + s * step
            if (n == 1 or np.all(np.diff(xn) > 0)) and phi(xn) <= f0:
                break
            s /= 2
        x = xn
    raise FlowError(f"equilibrium oracle did not converge for {word}")


__all__ = [
    "ComponentViolation", "ContactGuardError", "FlowError", "FlowParams", "FlowResult", "FlowState",
    "acceleration", "energy", "equilibrium_oracle", "simulate_particles", "simulate_to_equilibrium",
]
