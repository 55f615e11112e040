"""Pure-Python replicator kernels.

Mirrors ``_kernels.pyx`` operation for operation so that both backends
produce bit-identical trajectories. Parameter tuples use the field order of
:class:`scfgame.model.GameParameters`:
``(I, R_gf, C_g, C_gf, m, e, C_m, C_af, C_bf, u, v, w)``.
"""
import math

import numpy as np

NAME = "python"


def _constants(p):
    I, _R_gf, C_g, C_gf, m, e, C_m, C_af, C_bf, _u, v, w = p
    a_margin = C_m - C_af + I * e * v
    bank_net = w * I * (1.0 - m)
    a_net = I - C_m - e * I
    return C_g, C_gf, C_bf, a_margin, bank_net, a_net


def field(p, x, y, z):
    """Closed-form replicator velocity ``(fx, fy, fz)`` at ``(x, y, z)``."""
    C_g, C_gf, C_bf, a_margin, bank_net, a_net = _constants(p)
    fx = x * (1.0 - x) * (z * C_gf - C_g)
    fy = y * (1.0 - y) * (1.0 - z) * a_margin
    fz = z * (1.0 - z) * (bank_net - (1.0 - x) * C_bf - y * a_net)
    return fx, fy, fz


def rk4_step(p, x, y, z, dt):
    """One classical RK4 step, unclamped."""
    C_g, C_gf, C_bf, a_margin, bank_net, a_net = _constants(p)
    return _rk4(C_g, C_gf, C_bf, a_margin, bank_net, a_net, x, y, z, dt)


def _rk4(C_g, C_gf, C_bf, a_margin, bank_net, a_net, x, y, z, dt):
    h2 = 0.5 * dt

    k1x = x * (1.0 - x) * (z * C_gf - C_g)
    k1y = y * (1.0 - y) * (1.0 - z) * a_margin
    k1z = z * (1.0 - z) * (bank_net - (1.0 - x) * C_bf - y * a_net)

    sx = x + h2 * k1x
    sy = y + h2 * k1y
    sz = z + h2 * k1z
    k2x = sx * (1.0 - sx) * (sz * C_gf - C_g)
    k2y = sy * (1.0 - sy) * (1.0 - sz) * a_margin
    k2z = sz * (1.0 - sz) * (bank_net - (1.0 - sx) * C_bf - sy * a_net)

    sx = x + h2 * k2x
    sy = y + h2 * k2y
    sz = z + h2 * k2z
    k3x = sx * (1.0 - sx) * (sz * C_gf - C_g)
    k3y = sy * (1.0 - sy) * (1.0 - sz) * a_margin
    k3z = sz * (1.0 - sz) * (bank_net - (1.0 - sx) * C_bf - sy * a_net)

    sx = x + dt * k3x
    sy = y + dt * k3y
    sz = z + dt * k3z
    k4x = sx * (1.0 - sx) * (sz * C_gf - C_g)
    k4y = sy * (1.0 - sy) * (1.0 - sz) * a_margin
    k4z = sz * (1.0 - sz) * (bank_net - (1.0 - sx) * C_bf - sy * a_net)

    h6 = dt / 6.0
    return (
        x + h6 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x),
        y + h6 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y),
        z + h6 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z),
    )


def _clamp(v, tol, step, axis):
    if not math.isfinite(v):
        raise ValueError(f"step {step}: non-finite {axis} ({v!r}); dt too large?")
    if v < 0.0:
        d = -v
        if d > tol:
            raise ValueError(f"step {step}: {axis}={v!r} left the unit cube by {d:.3e}; dt too large?")
        return 0.0, d
    if v > 1.0:
        d = v - 1.0
        if d > tol:
            raise ValueError(f"step {step}: {axis}={v!r} left the unit cube by {d:.3e}; dt too large?")
        return 1.0, d
    return v, 0.0


def clamp_state(x, y, z, tol, step=0):
    """Clamp a post-step state into the cube; returns ``(x, y, z, drift)``."""
    x, dx = _clamp(x, tol, step, "x")
    y, dy = _clamp(y, tol, step, "y")
    z, dz = _clamp(z, tol, step, "z")
    return x, y, z, max(dx, dy, dz)


def integrate(p, x, y, z, dt, n_steps, record_every, clamp_tol):
    """Run ``n_steps`` RK4 steps from ``(x, y, z)``.

    Returns ``(steps, states, max_drift)``: the recorded step indices
    (every ``record_every`` steps plus the last), an ``(k, 3)`` array of
    states at those steps, and the largest clamping correction applied.
    """
    C_g, C_gf, C_bf, a_margin, bank_net, a_net = _constants(p)
    n_rec = n_steps // record_every + 1
    if n_steps % record_every:
        n_rec += 1
    steps = np.empty(n_rec, dtype=np.int64)
    states = np.empty((n_rec, 3), dtype=np.float64)
    steps[0] = 0
    states[0] = (x, y, z)
    j = 1
    max_drift = 0.0
    for k in range(1, n_steps + 1):
        x, y, z = _rk4(C_g, C_gf, C_bf, a_margin, bank_net, a_net, x, y, z, dt)
        x, y, z, d = clamp_state(x, y, z, clamp_tol, k)
        if d > max_drift:
            max_drift = d
        if k % record_every == 0 or k == n_steps:
            steps[j] = k
            states[j, 0] = x
            states[j, 1] = y
            states[j, 2] = z
            j += 1
    return steps, states, max_drift
