import itertools
import math

import numpy as np
import pytest

from scfgame.dynamics import (
    IntegrationConfig,
    IntegrationError,
    detect_convergence,
    integrate,
    step_rk4,
)
from scfgame.equilibria import enumerate_equilibria
from scfgame.field import replicator_field
from scfgame.model import BASELINE, StrategyState

from oracles import euler_terminal, random_params

VERTICES = list(itertools.product((0.0, 1.0), repeat=3))

# Euler oracle (dt = 1e-4, horizon 20) from (0.5, 0.5, 0.5) at baseline;
# recomputed live in test_acceptance.
BASELINE_ATTRACTOR = (0.42565482, 0.67896232, 1.0)


def test_config_defaults():
    cfg = IntegrationConfig()
    assert (cfg.dt, cfg.horizon, cfg.record_every, cfg.n_steps) == (0.01, 20.0, 10, 2000)


@pytest.mark.parametrize("kwargs", [
    {"dt": 0}, {"dt": -0.1}, {"horizon": 0}, {"record_every": 0}, {"record_every": 1.5},
    {"dt": 0.3, "horizon": 1.0}, {"dt": 2.0, "horizon": 1.0},
])
def test_config_rejects(kwargs):
    with pytest.raises(ValueError):
        IntegrationConfig(**kwargs)


@pytest.mark.parametrize("vertex", VERTICES)
def test_vertices_fixed_under_step(vertex):
    rng = np.random.default_rng(0)
    for _ in range(5):
        p = random_params(rng)
        assert step_rk4(p, vertex, float(rng.uniform(0.001, 0.1))).astuple() == vertex


def test_step_direction(baseline):
    s = step_rk4(baseline, (0.5, 0.5, 0.5), 0.01)
    assert s.z > 0.5 and s.x < 0.5 and s.y > 0.5


def test_step_halving_local_error(baseline):
    full = step_rk4(baseline, (0.5, 0.5, 0.5), 0.01)
    half = step_rk4(baseline, step_rk4(baseline, (0.5, 0.5, 0.5), 0.005), 0.005)
    assert np.max(np.abs(np.subtract(full.astuple(), half.astuple()))) <= 1e-8


def test_step_error_when_dt_too_large():
    p = BASELINE.replace(I=20.0, m=0.0, C_bf=0.0)
    with pytest.raises(IntegrationError):
        s = (0.5, 0.5, 0.5)
        for _ in range(10):
            s = step_rk4(p, s, 2.0)


def test_step_rejects_nonpositive_dt(baseline):
    with pytest.raises(ValueError):
        step_rk4(baseline, (0.5, 0.5, 0.5), 0.0)


def test_baseline_attractor_matches_euler_oracle(baseline):
    traj = integrate(baseline, (0.5, 0.5, 0.5))
    assert traj.states[-1] == pytest.approx(BASELINE_ATTRACTOR, abs=1e-3)


def test_trajectory_layout(baseline):
    traj = integrate(baseline, (0.5, 0.5, 0.5))
    assert len(traj) == 201
    assert traj.times[0] == 0.0 and traj.times[-1] == 20.0
    assert np.all(np.diff(traj.times) > 0)
    assert traj.samples[0] == (0.0, StrategyState(0.5, 0.5, 0.5))
    assert np.all((traj.states >= 0) & (traj.states <= 1))
    with pytest.raises(ValueError):
        traj.states[0, 0] = 0.1


def test_final_step_recorded_when_stride_does_not_divide(baseline):
    traj = integrate(baseline, (0.5, 0.5, 0.5), IntegrationConfig(dt=0.01, horizon=1.0, record_every=30))
    assert traj.times.tolist()[-2:] == pytest.approx([0.9, 1.0])
    assert traj.times[-1] == 1.0


@pytest.mark.parametrize("vertex", VERTICES)
def test_vertex_trajectory_constant(vertex):
    traj = integrate(random_params(np.random.default_rng(7)), vertex, IntegrationConfig(horizon=2.0))
    assert np.all(traj.states == np.array(vertex))


def test_deterministic(baseline):
    a = integrate(baseline, (0.3, 0.6, 0.2))
    b = integrate(baseline, (0.3, 0.6, 0.2))
    assert a.states.tobytes() == b.states.tobytes()
    assert a.times.tobytes() == b.times.tobytes()


def test_step_halving_global(baseline):
    a = integrate(baseline, (0.5, 0.5, 0.5), IntegrationConfig(dt=0.01))
    b = integrate(baseline, (0.5, 0.5, 0.5), IntegrationConfig(dt=0.005, record_every=20))
    assert np.max(np.abs(a.states[-1] - b.states[-1])) <= 1e-6


def test_fourth_order_convergence():
    # smooth interior trajectory: short horizon so no coordinate saturates
    p = BASELINE.replace(C_g=1.3)
    s0 = (0.4, 0.3, 0.2)
    ref = integrate(p, s0, IntegrationConfig(dt=0.00125, horizon=2.0, record_every=1600)).states[-1]
    e1 = np.max(np.abs(integrate(p, s0, IntegrationConfig(dt=0.02, horizon=2.0, record_every=100)).states[-1] - ref))
    e2 = np.max(np.abs(integrate(p, s0, IntegrationConfig(dt=0.01, horizon=2.0, record_every=200)).states[-1] - ref))
    assert e1 / e2 >= 8.0


def test_cube_invariance_random():
    rng = np.random.default_rng(11)
    for _ in range(20):
        p = random_params(rng)
        traj = integrate(p, tuple(rng.uniform(size=3)))
        assert traj.max_drift <= 1e-9
        assert np.all((traj.states >= 0) & (traj.states <= 1))


def test_convergence_constant_trajectory(baseline):
    traj = integrate(baseline, (0.0, 1.0, 0.0), IntegrationConfig(horizon=1.0))
    rep = detect_convergence(traj)
    assert rep.converged
    assert rep.nearest_equilibrium == "E3" and rep.distance == 0.0


def test_convergence_baseline_run(baseline):
    rep = detect_convergence(integrate(baseline, (0.5, 0.5, 0.5)))
    assert rep.converged
    assert rep.terminal_speed < 1e-6
    # the attractor lies on the z = 1 rest face, not at an enumerated point
    assert rep.nearest_equilibrium == "E7"
    assert rep.distance == pytest.approx(math.dist(BASELINE_ATTRACTOR, (0.6, 1.0, 1.0)), abs=2e-3)


def test_single_sample_not_converged(baseline):
    traj = integrate(baseline, (0.5, 0.5, 0.5), IntegrationConfig(dt=0.01, horizon=0.01))
    single = type(traj)(traj.times[:1], traj.states[:1], traj.params, traj.config)
    rep = detect_convergence(single)
    assert not rep.converged
    assert rep.terminal_speed == pytest.approx(0.725, abs=1e-12)


def test_custom_candidates(baseline):
    traj = integrate(baseline, (0.0, 0.0, 1.0), IntegrationConfig(horizon=0.1))
    cands = [pt for pt in enumerate_equilibria(baseline) if pt.label in ("E1", "E2")]
    rep = detect_convergence(traj, eq_candidates=cands)
    assert rep.nearest_equilibrium == "E1" and rep.distance == 1.0


def test_euler_oracle_is_independent_of_kernels(baseline):
    # one Euler step agrees with the kernel field to first order
    s = np.array([0.2, 0.7, 0.4])
    got = euler_terminal(baseline, s, 1e-4, 1e-4)
    want = s + 1e-4 * np.array(replicator_field(baseline, s).astuple())
    assert got == pytest.approx(want, abs=1e-15)
