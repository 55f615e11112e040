"""Equilibrium enumeration, Jacobians and local stability classification."""
from __future__ import annotations

import math
from dataclasses import dataclass

from scfgame import kernels
from scfgame.eigen import eigenvalues3
from scfgame.field import replicator_field
from scfgame.model import GameParameters, as_triple

# Real parts within this distance of zero count as zero.
HYPERBOLIC_TOL = 1e-9

STABLE = "stable"
UNSTABLE = "unstable"
SADDLE = "saddle"
NON_HYPERBOLIC = "non-hyperbolic"

VERTICES = {
    "E1": (0.0, 0.0, 0.0),
    "E2": (1.0, 0.0, 0.0),
    "E3": (0.0, 1.0, 0.0),
    "E4": (1.0, 1.0, 0.0),
    "E5": (0.0, 0.0, 1.0),
    "E6": (1.0, 0.0, 1.0),
}


@dataclass(frozen=True)
class EquilibriumPoint:
    """A candidate rest point.

    ``coords`` is None when the point is undefined (E7/E8 with C_bf = 0 or
    C_gf = 0). ``valid`` means defined and inside the unit cube.
    ``residual`` is the field max-norm at the point (nan when undefined).
    """

    label: str
    coords: tuple[float, float, float] | None
    valid: bool
    residual: float

    @property
    def defined(self) -> bool:
        return self.coords is not None


def _point(p: GameParameters, label: str, coords) -> EquilibriumPoint:
    if coords is None:
        return EquilibriumPoint(label, None, False, math.nan)
    coords = as_triple(coords)
    valid = all(0.0 <= c <= 1.0 for c in coords)
    residual = replicator_field(p, coords).max_norm()
    return EquilibriumPoint(label, coords, valid, residual)


def mixed_equilibria(p: GameParameters):
    """Coordinates of E7 and E8, or None where a denominator vanishes."""
    if p.C_bf == 0.0 or p.C_gf == 0.0:
        return None, None
    I, e, m, w = p.I, p.e, p.m, p.w
    z = p.C_g / p.C_gf
    e7 = ((p.C_bf - p.C_m + I - I * e - I * w + I * m * w) / p.C_bf, 1.0, z)
    e8 = ((p.C_bf - I * w + I * m * w) / p.C_bf, 0.0, z)
    return e7, e8


def enumerate_equilibria(p: GameParameters) -> list[EquilibriumPoint]:
    """E1..E6 (cube vertices) followed by the mixed points E7 and E8."""
    points = [_point(p, label, xyz) for label, xyz in VERTICES.items()]
    e7, e8 = mixed_equilibria(p)
    points.append(_point(p, "E7", e7))
    points.append(_point(p, "E8", e8))
    return points


def jacobian(p: GameParameters, s) -> tuple[tuple[float, ...], ...]:
    """Analytic Jacobian of the replicator field at any finite point."""
    x, y, z = as_triple(s)
    a_margin = p.C_m - p.C_af + p.I * p.e * p.v
    a_net = p.I - p.C_m - p.e * p.I
    gz = p.w * p.I * (1.0 - p.m) - (1.0 - x) * p.C_bf - y * a_net
    X = x * (1.0 - x)
    Y = y * (1.0 - y)
    Z = z * (1.0 - z)
    return (
        ((1.0 - 2.0 * x) * (z * p.C_gf - p.C_g), 0.0, X * p.C_gf),
        (0.0, (1.0 - 2.0 * y) * (1.0 - z) * a_margin, -Y * a_margin),
        (Z * p.C_bf, -Z * a_net, (1.0 - 2.0 * z) * gz),
    )


def jacobian_fd(p: GameParameters, s, h: float = 1e-5) -> tuple[tuple[float, ...], ...]:
    """Central-difference Jacobian of the replicator field (test oracle)."""
    if not h > 0:
        raise ValueError("step h must be positive")
    base = list(as_triple(s))
    pt = p.astuple()
    cols = []
    for j in range(3):
        hi = list(base)
        lo = list(base)
        hi[j] += h
        lo[j] -= h
        f_hi = kernels.field(pt, *hi)
        f_lo = kernels.field(pt, *lo)
        cols.append([(a - b) / (2.0 * h) for a, b in zip(f_hi, f_lo)])
    return tuple(tuple(cols[j][i] for j in range(3)) for i in range(3))


@dataclass(frozen=True)
class StabilityVerdict:
    eigenvalues: tuple[complex, complex, complex]
    classification: str


def classify_eigenvalues(eigs, tol: float = HYPERBOLIC_TOL) -> str:
    reals = [lam.real for lam in eigs]
    if any(abs(r) <= tol for r in reals):
        return NON_HYPERBOLIC
    if all(r < -tol for r in reals):
        return STABLE
    if all(r > tol for r in reals):
        return UNSTABLE
    return SADDLE


def classify(p: GameParameters, point) -> StabilityVerdict:
    """Linearised stability at an equilibrium (or any finite point)."""
    coords = point.coords if isinstance(point, EquilibriumPoint) else point
    if coords is None:
        raise ValueError(f"equilibrium {point.label} is undefined for these parameters")
    eigs = eigenvalues3(jacobian(p, coords))
    return StabilityVerdict(eigs, classify_eigenvalues(eigs))


@dataclass(frozen=True)
class ScenarioCondition:
    """One stable-point scenario: operand expressions, their values, and the verdict.

    ``holds`` is true when every operand is negative beyond the hyperbolicity
    tolerance; exact ties report false.
    """

    name: str
    point: str
    operands: tuple[tuple[str, float], ...]
    holds: bool


@dataclass(frozen=True)
class ScenarioReport:
    scenario1: ScenarioCondition
    scenario2: ScenarioCondition
    scenario3: ScenarioCondition
    scenario4: ScenarioCondition

    def __iter__(self):
        return iter((self.scenario1, self.scenario2, self.scenario3, self.scenario4))


def _condition(name, point, operands):
    return ScenarioCondition(name, point, tuple(operands), all(v < -HYPERBOLIC_TOL for _, v in operands))


def scenario_report(p: GameParameters) -> ScenarioReport:
    """Evaluate the four stable-point conditions (E1, E3, E5, E6).

    The structural zero eigenvalue at E5 and E6 is not an operand, so
    scenarios 3 and 4 can hold while those points stay non-hyperbolic.
    """
    I, e, v, w, m = p.I, p.e, p.v, p.w, p.m
    C_g, C_gf, C_m, C_af, C_bf = p.C_g, p.C_gf, p.C_m, p.C_af, p.C_bf
    return ScenarioReport(
        _condition("scenario1", "E1", [
            ("Cm-Caf+I*e*v", C_m - C_af + I * e * v),
            ("I*w-Cbf-I*m*w", I * w - C_bf - I * m * w),
        ]),
        _condition("scenario2", "E3", [
            ("Caf-Cm-I*e*v", C_af - C_m - I * e * v),
            ("Cm-Cbf-I+I*e+I*w-I*m*w", C_m - C_bf - I + I * e + I * w - I * m * w),
        ]),
        _condition("scenario3", "E5", [
            ("Cgf-Cg", C_gf - C_g),
            ("Cbf-I*w+I*m*w", C_bf - I * w + I * m * w),
        ]),
        _condition("scenario4", "E6", [
            ("Cg-Cgf", C_g - C_gf),
            ("I*m*w-I*w", I * m * w - I * w),
        ]),
    )


def stability_table(p: GameParameters) -> dict[str, tuple[float, float, float]]:
    """Closed-form eigenvalues at E1..E6, in (x, y, z) diagonal order."""
    I, e, v, w, m = p.I, p.e, p.v, p.w, p.m
    C_g, C_gf, C_m, C_af, C_bf = p.C_g, p.C_gf, p.C_m, p.C_af, p.C_bf
    return {
        "E1": (-C_g, C_m - C_af + I * e * v, I * w - C_bf - I * m * w),
        "E2": (C_g, C_m - C_af + I * e * v, I * w - I * m * w),
        "E3": (-C_g, C_af - C_m - I * e * v, C_m - C_bf - I + I * e + I * w - I * m * w),
        "E4": (C_g, C_af - C_m - I * e * v, C_m - I + I * e + I * w - I * m * w),
        "E5": (C_gf - C_g, 0.0, C_bf - I * w + I * m * w),
        "E6": (C_g - C_gf, 0.0, I * m * w - I * w),
    }
