"""One-parameter sweep experiments and the qualitative claims attached to them."""
from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from scfgame.dynamics import (
    DEFAULT_SPEED_TOL,
    ConvergenceReport,
    IntegrationConfig,
    IntegrationError,
    Trajectory,
    detect_convergence,
    integrate,
)
from scfgame.field import parameter_gradient, parameter_gradient_fd
from scfgame.model import BASELINE, CONFIG_KEYS, PARAM_NAMES, GameParameters, StrategyState, as_triple

SWEPT = ("C_g", "m", "e", "C_m", "I")
LATTICE = (0.25, 0.5, 0.75)
REFERENCE_STATE = StrategyState(0.5, 0.5, 0.5)


def default_initial_states() -> tuple[StrategyState, ...]:
    lattice = [StrategyState(*xyz) for xyz in itertools.product(LATTICE, repeat=3)]
    return tuple(lattice) + (REFERENCE_STATE,)


def interior_grid() -> tuple[tuple[float, float, float], ...]:
    return tuple(itertools.product(LATTICE, repeat=3))


@dataclass(frozen=True)
class SweepSpec:
    base: GameParameters
    parameter: str
    values: tuple[float, ...]
    initial_states: tuple[StrategyState, ...] = field(default_factory=default_initial_states)
    integration: IntegrationConfig = field(default_factory=IntegrationConfig)

    def __post_init__(self):
        name = CONFIG_KEYS.get(self.parameter, self.parameter)
        if name not in PARAM_NAMES:
            raise ValueError(f"unknown sweep parameter {self.parameter!r}")
        object.__setattr__(self, "parameter", name)
        values = tuple(float(v) for v in self.values)
        if not values:
            raise ValueError("sweep needs at least one value")
        if any(b <= a for a, b in zip(values, values[1:])):
            raise ValueError("sweep values must be strictly increasing")
        object.__setattr__(self, "values", values)
        states = tuple(StrategyState(*as_triple(s)) for s in self.initial_states)
        if not states:
            raise ValueError("sweep needs at least one initial state")
        object.__setattr__(self, "initial_states", states)
        for v in values:
            self.params_for(v)  # raises ParameterError on invalid values

    def params_for(self, value: float) -> GameParameters:
        return self.base.replace(**{self.parameter: value})


def builtin_experiments() -> list[SweepSpec]:
    """The baseline-anchored sweeps over C_g, m, e, C_m and I."""
    grids = {
        "C_g": (1.0, 1.5, 2.0),
        "m": (0.20, 0.25, 0.30),
        "e": (0.25, 0.30, 0.35),
        "C_m": (1.5, 2.0, 2.5),
        "I": (10.0, 12.0, 14.0),
    }
    return [SweepSpec(BASELINE, name, grids[name]) for name in SWEPT]


@dataclass(frozen=True, eq=False)
class SweepCell:
    value_index: int
    value: float
    initial_index: int
    initial: StrategyState
    trajectory: Trajectory
    convergence: ConvergenceReport

    @property
    def means(self) -> tuple[float, float, float]:
        """Time-average of each coordinate over the recorded samples."""
        return tuple(float(v) for v in self.trajectory.states.mean(axis=0))


@dataclass(frozen=True)
class ClaimResult:
    """A checked qualitative statement.

    ``gating`` claims must pass; the others are reported only. ``passed`` is
    None for claims that are reported without any sign expectation.
    """

    name: str
    passed: bool | None
    gating: bool
    numbers: tuple = ()


@dataclass(frozen=True, eq=False)
class SweepResult:
    spec: SweepSpec
    cells: tuple[SweepCell, ...]
    claims: tuple[ClaimResult, ...]

    def cells_for(self, initial_index: int) -> list[SweepCell]:
        return [c for c in self.cells if c.initial_index == initial_index]


# (claim name, parameter, field component, sign, strictness condition on (p, x, y, z))
_FIELD_CLAIMS = (
    ("dfx/dC_g < 0", "C_g", 0, -1, lambda p, x, y, z: 0 < x < 1),
    ("dfz/dm < 0", "m", 2, -1, lambda p, x, y, z: 0 < z < 1 and p.w > 0),
    ("dfz/de >= 0", "e", 2, +1, lambda p, x, y, z: 0 < z < 1 and y > 0),
    ("dfy/de >= 0", "e", 1, +1, lambda p, x, y, z: 0 < y < 1 and z < 1 and p.v > 0),
    ("dfy/dC_m >= 0", "C_m", 1, +1, lambda p, x, y, z: 0 < y < 1 and z < 1),
    ("dfz/dC_m >= 0", "C_m", 2, +1, lambda p, x, y, z: 0 < z < 1 and y > 0),
)

FD_AGREEMENT_TOL = 1e-6


def evaluate_field_claims(p: GameParameters, states=None, h: float = 1e-6) -> list[ClaimResult]:
    """Check the sign of field sensitivities to the swept parameters.

    Each claim is checked on the analytic derivative and on a central
    difference, at every state in ``states`` (default: the interior
    lattice). Signs must be strict where the relevant factors are interior
    and non-strict elsewhere. ``dfz/dI`` is reported only: its sign flips
    with ``y``.
    """
    states = interior_grid() if states is None else [as_triple(s) for s in states]
    results = []
    for name, param, comp, sign, strict_when in _FIELD_CLAIMS:
        ok = True
        lo, hi, fd_err = np.inf, -np.inf, 0.0
        for x, y, z in states:
            a = parameter_gradient(p, (x, y, z))[param][comp]
            d = parameter_gradient_fd(p, (x, y, z), param, h)[comp]
            fd_err = max(fd_err, abs(a - d))
            lo, hi = min(lo, a), max(hi, a)
            for val in (a, d):
                signed = sign * val
                ok &= signed > 0 if strict_when(p, x, y, z) else signed >= -FD_AGREEMENT_TOL
        ok &= fd_err <= FD_AGREEMENT_TOL
        results.append(ClaimResult(name, bool(ok), True, (("min", lo), ("max", hi), ("fd_err", fd_err))))
    vals = [parameter_gradient(p, s)["I"][2] for s in states]
    results.append(ClaimResult("dfz/dI sign", None, False, (("min", min(vals)), ("max", max(vals)))))
    return results


# Trajectory-level statements for each swept parameter: (coordinate, direction).
# Reported, never gating: the curves depend on unpublished initial conditions.
TRAJECTORY_CLAIMS = {
    "C_g": (("x", -1), ("y", +1), ("z", -1)),
    "m": (("z", -1), ("y", +1)),
    "e": (("z", +1), ("y", +1)),
    "C_m": (("z", +1), ("x", +1), ("y", +1)),
    "I": (("x", +1), ("y", +1), ("z", +1)),
}
_AXIS = {"x": 0, "y": 1, "z": 2}


def _trajectory_claims(spec: SweepSpec, cells) -> list[ClaimResult]:
    ref = next((i for i, s in enumerate(spec.initial_states) if s == REFERENCE_STATE), 0)
    means = [c.means for c in cells if c.initial_index == ref]
    out = []
    for coord, direction in TRAJECTORY_CLAIMS.get(spec.parameter, ()):
        series = tuple(m[_AXIS[coord]] for m in means)
        if direction > 0:
            ok = all(b >= a for a, b in zip(series, series[1:]))
            word = "non-decreasing"
        else:
            ok = all(b <= a for a, b in zip(series, series[1:]))
            word = "non-increasing"
        name = f"mean {coord} {word} in {spec.parameter}"
        out.append(ClaimResult(name, ok, False, tuple(zip(spec.values, series))))
    return out


def _run_cell(spec: SweepSpec, vi: int, ii: int, speed_tol: float) -> SweepCell:
    value = spec.values[vi]
    s0 = spec.initial_states[ii]
    p = spec.params_for(value)
    try:
        traj = integrate(p, s0, spec.integration)
    except IntegrationError as exc:
        raise IntegrationError(f"cell {spec.parameter}={value!r}, initial #{ii} {s0.astuple()}: {exc}") from None
    return SweepCell(vi, value, ii, s0, traj, detect_convergence(traj, speed_tol))


def run_sweep(spec: SweepSpec, speed_tol: float = DEFAULT_SPEED_TOL, workers: int = 1) -> SweepResult:
    """Integrate every (value, initial state) cell and evaluate the claims.

    With ``workers > 1`` cells run on a thread pool (the compiled kernel
    releases the GIL); cell order is the same either way.
    """
    jobs = [(vi, ii) for vi in range(len(spec.values)) for ii in range(len(spec.initial_states))]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            cells = list(pool.map(lambda job: _run_cell(spec, *job, speed_tol), jobs))
    else:
        cells = [_run_cell(spec, vi, ii, speed_tol) for vi, ii in jobs]

    claims = []
    for value in spec.values:
        for claim in evaluate_field_claims(spec.params_for(value)):
            claims.append(replace(claim, name=f"{claim.name} @ {spec.parameter}={value!r}"))
    claims.extend(_trajectory_claims(spec, cells))
    return SweepResult(spec, tuple(cells), tuple(claims))
