# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled replicator kernels; same contract as ``scfgame._pykernels``."""
from libc.math cimport isfinite

import numpy as np

from scfgame import _pykernels

NAME = "cython"


cdef struct Consts:
    double C_g
    double C_gf
    double C_bf
    double a_margin
    double bank_net
    double a_net


cdef Consts _constants(tuple p):
    cdef double I = p[0], C_g = p[2], C_gf = p[3], m = p[4], e = p[5]
    cdef double C_m = p[6], C_af = p[7], C_bf = p[8], v = p[10], w = p[11]
    cdef Consts c
    c.C_g = C_g
    c.C_gf = C_gf
    c.C_bf = C_bf
    c.a_margin = C_m - C_af + I * e * v
    c.bank_net = w * I * (1.0 - m)
    c.a_net = I - C_m - e * I
    return c


cdef inline void _field(const Consts* c, double x, double y, double z,
                        double* fx, double* fy, double* fz) noexcept nogil:
    fx[0] = x * (1.0 - x) * (z * c.C_gf - c.C_g)
    fy[0] = y * (1.0 - y) * (1.0 - z) * c.a_margin
    fz[0] = z * (1.0 - z) * (c.bank_net - (1.0 - x) * c.C_bf - y * c.a_net)


cdef inline void _rk4(const Consts* c, double* s, double dt) noexcept nogil:
    cdef double x = s[0], y = s[1], z = s[2]
    cdef double h2 = 0.5 * dt
    cdef double k1x, k1y, k1z, k2x, k2y, k2z, k3x, k3y, k3z, k4x, k4y, k4z
    _field(c, x, y, z, &k1x, &k1y, &k1z)
    _field(c, x + h2 * k1x, y + h2 * k1y, z + h2 * k1z, &k2x, &k2y, &k2z)
    _field(c, x + h2 * k2x, y + h2 * k2y, z + h2 * k2z, &k3x, &k3y, &k3z)
    _field(c, x + dt * k3x, y + dt * k3y, z + dt * k3z, &k4x, &k4y, &k4z)
    cdef double h6 = dt / 6.0
    s[0] = x + h6 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
    s[1] = y + h6 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y)
    s[2] = z + h6 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z)


cdef inline int _clamp(double* s, double tol, double* drift) noexcept nogil:
    """0 on success, 1 when a coordinate is non-finite or too far outside."""
    cdef int i
    cdef double d
    for i in range(3):
        if not isfinite(s[i]):
            return 1
        if s[i] < 0.0:
            d = -s[i]
            if d > tol:
                return 1
            s[i] = 0.0
        elif s[i] > 1.0:
            d = s[i] - 1.0
            if d > tol:
                return 1
            s[i] = 1.0
        else:
            d = 0.0
        if d > drift[0]:
            drift[0] = d
    return 0


def field(tuple p, double x, double y, double z):
    cdef Consts c = _constants(p)
    cdef double fx, fy, fz
    _field(&c, x, y, z, &fx, &fy, &fz)
    return fx, fy, fz


def rk4_step(tuple p, double x, double y, double z, double dt):
    cdef Consts c = _constants(p)
    cdef double s[3]
    s[0] = x
    s[1] = y
    s[2] = z
    _rk4(&c, s, dt)
    return s[0], s[1], s[2]


def clamp_state(x, y, z, tol, step=0):
    return _pykernels.clamp_state(x, y, z, tol, step)


def integrate(tuple p, double x, double y, double z, double dt,
              Py_ssize_t n_steps, Py_ssize_t record_every, double clamp_tol):
    cdef Consts c = _constants(p)
    cdef Py_ssize_t n_rec = n_steps // record_every + 1
    if n_steps % record_every:
        n_rec += 1
    steps_arr = np.empty(n_rec, dtype=np.int64)
    states_arr = np.empty((n_rec, 3), dtype=np.float64)
    cdef long long[::1] steps = steps_arr
    cdef double[:, ::1] states = states_arr
    cdef double s[3]
    cdef double raw[3]
    cdef double max_drift = 0.0
    cdef Py_ssize_t k, j = 1, failed = 0
    s[0] = x
    s[1] = y
    s[2] = z
    steps[0] = 0
    states[0, 0] = x
    states[0, 1] = y
    states[0, 2] = z
    with nogil:
        for k in range(1, n_steps + 1):
            _rk4(&c, s, dt)
            raw[0] = s[0]
            raw[1] = s[1]
            raw[2] = s[2]
            if _clamp(s, clamp_tol, &max_drift):
                failed = k
                break
            if k % record_every == 0 or k == n_steps:
                steps[j] = k
                states[j, 0] = s[0]
                states[j, 1] = s[1]
                states[j, 2] = s[2]
                j += 1
    if failed:
        # re-run the Python clamp on the raw values for an identical message
        _pykernels.clamp_state(raw[0], raw[1], raw[2], clamp_tol, failed)
    return steps_arr, states_arr, max_drift
