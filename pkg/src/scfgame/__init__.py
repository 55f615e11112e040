"""Replicator-dynamics engine for the bank / core enterprise / SME supply chain finance game."""
from scfgame.dynamics import (
    ConvergenceReport,
    IntegrationConfig,
    IntegrationError,
    Trajectory,
    detect_convergence,
    integrate,
    step_rk4,
)
from scfgame.eigen import eigenvalues3
from scfgame.equilibria import (
    EquilibriumPoint,
    ScenarioReport,
    StabilityVerdict,
    classify,
    enumerate_equilibria,
    jacobian,
    jacobian_fd,
    scenario_report,
)
from scfgame.field import Velocity, replicator_field
from scfgame.kernels import BACKEND
from scfgame.model import BASELINE, GameParameters, ParameterError, StrategyState, validate_parameters
from scfgame.payoffs import ExpectedPayoffs, PayoffTable, expected_payoffs, outcome_payoffs, replicator_field_expanded
from scfgame.sweeps import SweepResult, SweepSpec, builtin_experiments, evaluate_field_claims, run_sweep

__version__ = "0.1.0"
