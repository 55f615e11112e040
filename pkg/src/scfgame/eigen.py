"""Eigenvalues of 3x3 real matrices via the characteristic cubic.

Fixed-size, dependency-free and deterministic: a trigonometric solution when
the depressed cubic has three real roots, Cardano otherwise, then one
guarded Newton step per root.
"""
from __future__ import annotations

import math


def char_poly(a) -> tuple[float, float, float]:
    """Coefficients ``(c2, c1, c0)`` of ``det(lambda*I - A) = lambda^3 + c2 lambda^2 + c1 lambda + c0``."""
    trace = a[0][0] + a[1][1] + a[2][2]
    minors = (
        a[0][0] * a[1][1] - a[0][1] * a[1][0]
        + a[0][0] * a[2][2] - a[0][2] * a[2][0]
        + a[1][1] * a[2][2] - a[1][2] * a[2][1]
    )
    det = (
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    )
    return -trace, minors, -det


def _poly(c2, c1, c0, lam):
    return ((lam + c2) * lam + c1) * lam + c0


def _dpoly(c2, c1, lam):
    return (3.0 * lam + 2.0 * c2) * lam + c1


def _newton(c2, c1, c0, lam):
    d = _dpoly(c2, c1, lam)
    if d == 0:
        return lam
    cand = lam - _poly(c2, c1, c0, lam) / d
    # near a repeated root the step can overshoot; keep it only if it helps
    if abs(_poly(c2, c1, c0, cand)) < abs(_poly(c2, c1, c0, lam)):
        return cand
    return lam


def _cubic_roots(c2, c1, c0) -> list[complex]:
    shift = -c2 / 3.0
    p = c1 - c2 * c2 / 3.0
    q = 2.0 * c2 ** 3 / 27.0 - c2 * c1 / 3.0 + c0
    if p == 0.0 and q == 0.0:
        return [complex(shift)] * 3
    disc = (q / 2.0) ** 2 + (p / 3.0) ** 3
    if disc < 0.0:
        # three distinct real roots; p < 0 here
        r = 2.0 * math.sqrt(-p / 3.0)
        arg = 3.0 * q / (p * r)
        phi = math.acos(max(-1.0, min(1.0, arg))) / 3.0
        roots = [r * math.cos(phi - 2.0 * math.pi * k / 3.0) + shift for k in range(3)]
        return [complex(_newton(c2, c1, c0, t)) for t in roots]
    # one real root and a conjugate pair (or a repeated real root)
    sq = math.sqrt(disc)
    big = -q / 2.0 - math.copysign(sq, q)  # avoids cancellation
    u = math.copysign(abs(big) ** (1.0 / 3.0), big)
    v = -p / (3.0 * u) if u != 0.0 else 0.0
    real = _newton(c2, c1, c0, u + v + shift)
    pair = complex(-(u + v) / 2.0 + shift, math.sqrt(3.0) / 2.0 * abs(u - v))
    pair = _newton(c2, c1, c0, pair)
    if pair.imag == 0.0:
        return [complex(real), pair, pair]
    return [complex(real), pair, pair.conjugate()]


def _sort_key(lam: complex):
    return (lam.real, lam.imag)


def eigenvalues3(mat) -> tuple[complex, complex, complex]:
    """The three eigenvalues of a real 3x3 matrix, sorted by (real, imag).

    Diagonal (and triangular) input returns its diagonal exactly.

    >>> eigenvalues3([[0, -1, 0], [1, 0, 0], [0, 0, 2]])
    (-1j, 1j, (2+0j))
    """
    if len(mat) != 3 or any(len(row) != 3 for row in mat):
        raise ValueError("expected a 3x3 matrix")
    a = [[float(mat[i][j]) for j in range(3)] for i in range(3)]
    if not all(math.isfinite(v) for row in a for v in row):
        raise ValueError("matrix has non-finite entries")
    upper = a[1][0] == 0.0 and a[2][0] == 0.0 and a[2][1] == 0.0
    lower = a[0][1] == 0.0 and a[0][2] == 0.0 and a[1][2] == 0.0
    if upper or lower:
        roots = [complex(a[i][i]) for i in range(3)]
    else:
        roots = _cubic_roots(*char_poly(a))
    # normalise -0.0 so sorting and printing are platform-stable
    roots = [complex(r.real + 0.0, r.imag + 0.0) for r in roots]
    return tuple(sorted(roots, key=_sort_key))


def char_poly_residual(mat, lam: complex) -> float:
    """``|det(lam*I - A)|`` evaluated through the characteristic polynomial."""
    c2, c1, c0 = char_poly(mat)
    return abs(_poly(c2, c1, c0, complex(lam)))

