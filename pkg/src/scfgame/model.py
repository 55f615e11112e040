"""Parameters and strategy state of the bank / Enterprise A / Enterprise B game."""
from __future__ import annotations

import math
from dataclasses import astuple, dataclass, fields, replace
from typing import Mapping

# Attribute names in table order; kernels receive parameters in this order.
PARAM_NAMES = ("I", "R_gf", "C_g", "C_gf", "m", "e", "C_m", "C_af", "C_bf", "u", "v", "w")

# Config-file spelling -> attribute name.
CONFIG_KEYS = {
    "I": "I",
    "Rgf": "R_gf",
    "Cg": "C_g",
    "Cgf": "C_gf",
    "m": "m",
    "e": "e",
    "Cm": "C_m",
    "Caf": "C_af",
    "Cbf": "C_bf",
    "u": "u",
    "v": "v",
    "w": "w",
}
ATTR_TO_CONFIG = {attr: key for key, attr in CONFIG_KEYS.items()}

_PROBABILITIES = ("u", "v", "w")
_RATES = ("m", "e")


class ParameterError(ValueError):
    """Raised when one or more parameter constraints are violated.

    ``violations`` lists one message per failed constraint.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


def parameter_problem(name: str, val) -> str | None:
    """Why ``val`` is not acceptable for parameter ``name``, or None."""
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        return f"{name} must be a number, got {val!r}"
    if not math.isfinite(val):
        return f"{name} must be finite"
    if name == "I":
        return "I must be positive" if val <= 0 else None
    if name in _PROBABILITIES:
        return None if 0.0 <= val <= 1.0 else f"{name} out of [0,1]"
    if name in _RATES:
        return None if 0.0 <= val < 1.0 else f"{name} out of [0,1)"
    return f"{name} must be non-negative" if val < 0 else None


def _violations(values: Mapping[str, float]) -> list[str]:
    problems = (parameter_problem(name, values[name]) for name in PARAM_NAMES)
    return [msg for msg in problems if msg]


@dataclass(frozen=True)
class GameParameters:
    """The twelve scalars of the three-party model.

    Attributes
    ----------
    I : financing amount Enterprise B needs (> 0)
    R_gf : initial bank revenue
    C_g : bank's fintech investment cost
    C_gf : bank's loan cost before upgrading its fintech
    m : bank loan interest rate, in [0, 1)
    e : Enterprise A's financing interest rate, in [0, 1)
    C_m : mediation fee charged by Enterprise A
    C_af : Enterprise A's borrowing cost
    C_bf : B's credit-guarantee cost at a non-upgraded bank
    u, v : probabilities B repays the bank / Enterprise A
    w : probability the bank approves B's loan
    """

    I: float
    R_gf: float
    C_g: float
    C_gf: float
    m: float
    e: float
    C_m: float
    C_af: float
    C_bf: float
    u: float
    v: float
    w: float

    def __post_init__(self):
        problems = _violations({f.name: getattr(self, f.name) for f in fields(self)})
        if problems:
            raise ParameterError(problems)
        for f in fields(self):
            object.__setattr__(self, f.name, float(getattr(self, f.name)))

    def astuple(self) -> tuple:
        return astuple(self)

    def replace(self, **changes) -> "GameParameters":
        return replace(self, **changes)

    def to_config(self) -> dict:
        return {ATTR_TO_CONFIG[name]: getattr(self, name) for name in PARAM_NAMES}


def validate_parameters(raw: Mapping[str, float] | None = None, **kwargs) -> GameParameters:
    """Build a :class:`GameParameters`, reporting every violated constraint at once.

    Accepts attribute names (``C_g``) or config spellings (``Cg``).
    """
    merged = dict(raw or {})
    merged.update(kwargs)
    values = {}
    problems = []
    for key, val in merged.items():
        name = CONFIG_KEYS.get(key, key)
        if name not in PARAM_NAMES:
            problems.append(f"unknown parameter {key!r}")
        elif name in values:
            problems.append(f"parameter {name} given twice")
        else:
            values[name] = val
    missing = [name for name in PARAM_NAMES if name not in values]
    problems.extend(f"missing parameter {name}" for name in missing)
    if not missing:
        problems.extend(_violations(values))
    if problems:
        raise ParameterError(problems)
    return GameParameters(**values)


BASELINE = GameParameters(
    I=10.0, R_gf=0.0, C_g=1.0, C_gf=1.0, m=0.2, e=0.25,
    C_m=1.5, C_af=1.0, C_bf=1.0, u=0.85, v=0.8, w=0.8,
)


@dataclass(frozen=True)
class StrategyState:
    """Mixed-strategy point in the unit cube.

    ``x``: bank improves its fintech; ``y``: Enterprise A provides commercial
    credit; ``z``: Enterprise B chooses bank financing.
    """

    x: float
    y: float
    z: float

    def __post_init__(self):
        for name in ("x", "y", "z"):
            val = getattr(self, name)
            if not (isinstance(val, (int, float)) and 0.0 <= val <= 1.0):
                raise ValueError(f"{name}={val!r} outside [0,1]")
            object.__setattr__(self, name, float(val))

    def astuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)

    def __iter__(self):
        return iter(self.astuple())


def as_triple(s) -> tuple[float, float, float]:
    """Coordinates of a StrategyState or any 3-sequence, as floats."""
    x, y, z = s
    return float(x), float(y), float(z)
