"""Closed-form replicator vector field and its parameter sensitivities."""
from __future__ import annotations

from dataclasses import dataclass

from scfgame import kernels
from scfgame.model import PARAM_NAMES, GameParameters, as_triple


@dataclass(frozen=True)
class Velocity:
    fx: float
    fy: float
    fz: float

    def astuple(self) -> tuple[float, float, float]:
        return (self.fx, self.fy, self.fz)

    def __iter__(self):
        return iter(self.astuple())

    def max_norm(self) -> float:
        return max(abs(self.fx), abs(self.fy), abs(self.fz))


def replicator_field(p: GameParameters, s) -> Velocity:
    """Time derivative of ``(x, y, z)`` under the replicator dynamics.

    fx = x(1-x)(z*C_gf - C_g)
    fy = y(1-y)(1-z)(C_m - C_af + I*e*v)
    fz = z(1-z)(w*I*(1-m) - (1-x)*C_bf - y*(I - C_m - e*I))

    ``s`` need not lie in the unit cube (mixed equilibria can fall outside).
    """
    return Velocity(*kernels.field(p.astuple(), *as_triple(s)))


def parameter_gradient(p: GameParameters, s) -> dict[str, tuple[float, float, float]]:
    """Analytic ``d(fx, fy, fz)/d(param)`` for all twelve parameters."""
    x, y, z = as_triple(s)
    X = x * (1.0 - x)
    Y = y * (1.0 - y) * (1.0 - z)
    Z = z * (1.0 - z)
    I, m, e, v, w = p.I, p.m, p.e, p.v, p.w
    grad = {name: (0.0, 0.0, 0.0) for name in PARAM_NAMES}
    grad.update(
        I=(0.0, Y * e * v, Z * (w * (1.0 - m) - y * (1.0 - e))),
        C_g=(-X, 0.0, 0.0),
        C_gf=(X * z, 0.0, 0.0),
        m=(0.0, 0.0, -Z * w * I),
        e=(0.0, Y * I * v, Z * y * I),
        C_m=(0.0, Y, Z * y),
        C_af=(0.0, -Y, 0.0),
        C_bf=(0.0, 0.0, -Z * (1.0 - x)),
        v=(0.0, Y * I * e, 0.0),
        w=(0.0, 0.0, Z * I * (1.0 - m)),
    )
    return grad


def parameter_gradient_fd(p: GameParameters, s, name: str, h: float = 1e-6) -> tuple[float, float, float]:
    """Central-difference ``d(fx, fy, fz)/d(name)``; test oracle.

    Bypasses parameter validation so boundary values (e.g. ``C_g = 0``) can
    be differenced.
    """
    if h <= 0:
        raise ValueError("h must be positive")
    base = list(p.astuple())
    i = PARAM_NAMES.index(name)
    xyz = as_triple(s)
    hi = list(base)
    lo = list(base)
    hi[i] += h
    lo[i] -= h
    f_hi = kernels.field(tuple(hi), *xyz)
    f_lo = kernels.field(tuple(lo), *xyz)
    return tuple((a - b) / (2.0 * h) for a, b in zip(f_hi, f_lo))
