"""Correction polynomials for the Riemann-Siegel remainder.

The remainder at height t is built from

    F(z) = (exp(pi i (z^2/2 + 3/8)) - i sqrt(2) cos(pi z / 2)) / (2 cos(pi z))

and a triangular table ``d[n][l]`` (Arias de Reyna's recurrence at
sigma = 1/2).  For each order n the combination

    P_n(p) = sum_l d[n][l] F^(3n-2l)(p) / (pi^(2n-l) (2i)^l)

is an entire function of p; we store its Taylor polynomial on |p| <= 1,
split into real and imaginary parts, highest degree first.  Everything is
computed once in 260-digit arithmetic (the division by cos(pi z) cancels
roughly 2^degree, so lower precision leaves noise in the high coefficients); the coefficients are small (the l1 norm
of P_n is below 1 for every n), so float64 Horner evaluation is stable.
"""
from __future__ import annotations

from functools import lru_cache

import mpmath
import numpy as np

_DEGREE = 150
_DROP = 1e-20

_mp = mpmath.MPContext()
_mp.dps = 260


def _f_taylor(deg: int) -> list:
    mp = _mp
    e38 = mp.expjpi(mp.mpf(3) / 8)
    num = [mp.mpc(0)] * (deg + 1)
    den = [mp.mpf(0)] * (deg + 1)
    for j in range(deg // 2 + 1):
        num[2 * j] += e38 * (1j * mp.pi / 2) ** j / mp.factorial(j)
        num[2 * j] -= 1j * mp.sqrt(2) * (-1) ** j * (mp.pi / 2) ** (2 * j) / mp.factorial(2 * j)
        den[2 * j] = 2 * (-1) ** j * mp.pi ** (2 * j) / mp.factorial(2 * j)
    c = [mp.mpc(0)] * (deg + 1)
    for n in range(deg + 1):
        acc = num[n]
        for i in range(n):
            acc -= c[i] * den[n - i]
        c[n] = acc / den[0]
    return c


def _d_table(orders: int) -> dict:
    mp = _mp
    d = {(0, 0): mp.mpf(1)}
    get = lambda n, k: d.get((n, k), 0)  # noqa: E731
    for n in range(1, orders):
        for k in range(3 * n // 2 + 1):
            m = 3 * n - 2 * k
            if m:
                d[n, k] = -(m + 1) * get(n - 1, k - 2) + get(n - 1, k) / (4 * m)
            else:
                d[n, k] = -mp.fsum(
                    (-1) ** (k - r) * mp.factorial(2 * k - 2 * r) / mp.factorial(k - r) * d[n, r]
                    for r in range(k)
                )
    return d


@lru_cache(maxsize=None)
def correction_polynomials(orders: int) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
    """(real, imag) coefficient arrays of P_0 .. P_{orders-1}, highest degree first."""
    mp = _mp
    c = _f_taylor(_DEGREE)
    d = _d_table(orders)
    out = []
    for n in range(orders):
        e = [mp.mpc(0)] * (_DEGREE + 1)
        for l in range(3 * n // 2 + 1):
            m = 3 * n - 2 * l
            w = d[n, l] / (mp.pi ** (2 * n - l) * (2j) ** l)
            if w == 0:
                continue
            for j in range(_DEGREE + 1 - m):
                e[j] += w * c[j + m] * mp.ff(j + m, m)
        last = max(j for j, v in enumerate(e) if abs(v) > _DROP)
        e = e[: last + 1]
        re = np.array([float(v.real) for v in reversed(e)])
        im = np.array([float(v.imag) for v in reversed(e)])
        out.append((re, im))
    return tuple(out)
