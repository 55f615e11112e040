"""Fixed-step RK4 integration of the replicator dynamics."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from scfgame import kernels
from scfgame.equilibria import EquilibriumPoint, enumerate_equilibria
from scfgame.field import replicator_field
from scfgame.model import GameParameters, StrategyState, as_triple

CLAMP_TOL = 1e-12
DEFAULT_SPEED_TOL = 1e-6


class IntegrationError(RuntimeError):
    """A step left the unit cube by more than the clamping tolerance or went non-finite."""


@dataclass(frozen=True)
class IntegrationConfig:
    dt: float = 0.01
    horizon: float = 20.0
    record_every: int = 10

    def __post_init__(self):
        if not (isinstance(self.dt, (int, float)) and math.isfinite(self.dt) and self.dt > 0):
            raise ValueError(f"dt must be positive, got {self.dt!r}")
        if not (isinstance(self.horizon, (int, float)) and math.isfinite(self.horizon) and self.horizon > 0):
            raise ValueError(f"horizon must be positive, got {self.horizon!r}")
        if isinstance(self.record_every, bool) or not isinstance(self.record_every, int) or self.record_every < 1:
            raise ValueError(f"record_every must be an integer >= 1, got {self.record_every!r}")
        object.__setattr__(self, "dt", float(self.dt))
        object.__setattr__(self, "horizon", float(self.horizon))
        n = round(self.horizon / self.dt)
        if n < 1 or abs(n * self.dt - self.horizon) > 1e-9 * max(1.0, self.horizon):
            raise ValueError(f"horizon {self.horizon!r} is not a whole number of steps of dt {self.dt!r}")

    @property
    def n_steps(self) -> int:
        return round(self.horizon / self.dt)


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Recorded samples of one integration run.

    ``times`` has shape ``(n,)`` and ``states`` shape ``(n, 3)``; both are
    read-only. ``max_drift`` is the largest clamping correction applied.
    """

    times: np.ndarray
    states: np.ndarray
    params: GameParameters
    config: IntegrationConfig
    max_drift: float = 0.0

    def __len__(self):
        return len(self.times)

    @property
    def samples(self) -> list[tuple[float, StrategyState]]:
        return [(float(t), StrategyState(*row)) for t, row in zip(self.times, self.states)]

    @property
    def terminal(self) -> StrategyState:
        return StrategyState(*self.states[-1])


def step_rk4(p: GameParameters, s, dt: float) -> StrategyState:
    """One RK4 step, clamped back into the cube (tolerance ``CLAMP_TOL``)."""
    if not dt > 0:
        raise ValueError("dt must be positive")
    raw = kernels.rk4_step(p.astuple(), *as_triple(s), float(dt))
    try:
        x, y, z, _ = kernels.clamp_state(*raw, CLAMP_TOL, 1)
    except ValueError as exc:
        raise IntegrationError(str(exc)) from None
    return StrategyState(x, y, z)


def integrate(p: GameParameters, s0, cfg: IntegrationConfig | None = None) -> Trajectory:
    """Integrate from ``s0`` for ``cfg.horizon`` time units.

    Samples every ``cfg.record_every`` steps plus the final step. Output is
    deterministic and identical across kernel backends.
    """
    cfg = cfg or IntegrationConfig()
    s0 = StrategyState(*as_triple(s0))
    n = cfg.n_steps
    try:
        steps, states, drift = kernels.integrate(
            p.astuple(), s0.x, s0.y, s0.z, cfg.dt, n, cfg.record_every, CLAMP_TOL
        )
    except ValueError as exc:
        raise IntegrationError(str(exc)) from None
    # exact endpoints: t = 0 and t = horizon
    times = steps * cfg.horizon / n
    times.flags.writeable = False
    states.flags.writeable = False
    return Trajectory(times, states, p, cfg, float(drift))


@dataclass(frozen=True)
class ConvergenceReport:
    converged: bool
    terminal_state: StrategyState
    terminal_speed: float
    nearest_equilibrium: str | None = None
    distance: float | None = None


def detect_convergence(
    traj: Trajectory,
    speed_tol: float = DEFAULT_SPEED_TOL,
    eq_candidates: list[EquilibriumPoint] | None = None,
) -> ConvergenceReport:
    """Check whether the last sample is (numerically) at rest.

    ``eq_candidates`` defaults to the valid enumerated equilibria; the
    nearest one is reported with its Euclidean distance.
    """
    if len(traj) == 0:
        raise ValueError("empty trajectory")
    terminal = traj.terminal
    speed = replicator_field(traj.params, terminal).max_norm()
    if eq_candidates is None:
        eq_candidates = [pt for pt in enumerate_equilibria(traj.params) if pt.valid]
    best, best_d = None, None
    for pt in eq_candidates:
        if pt.coords is None:
            continue
        d = math.dist(terminal.astuple(), pt.coords)
        if best_d is None or d < best_d:
            best, best_d = pt.label, d
    return ConvergenceReport(speed < speed_tol, terminal, speed, best, best_d)

