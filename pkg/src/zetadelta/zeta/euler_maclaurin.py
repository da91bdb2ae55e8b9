"""Euler-Maclaurin evaluation of zeta(1/2 + it): slow, but accurate to a target.

    zeta(s) = sum_{n<N} n^-s + N^(1-s)/(s-1) + N^-s/2
              + sum_{k=1}^{K} B_2k/(2k)! s(s+1)...(s+2k-2) N^(-s-2k+1) + R_K

With N = ceil(t/2) the ratio of consecutive tail terms is about 1/pi^2, so
K grows only logarithmically in 1/target.  The remainder is bounded by
|T_{K+1}| |s + 2K + 1| / (sigma + 2K + 1).

Two arithmetic backends share the formula: float64/numpy when the target is
well above the phase roundoff (~1e-16 * t log N) and 40-digit mpmath
otherwise.
"""
from __future__ import annotations

import math
from functools import lru_cache

import mpmath
import numpy as np

from ..errors import NumericError, OutOfRangeError

T_MAX = 1e4
MIN_TARGET = 1e-12
MAX_TAIL_TERMS = 120

_mp = mpmath.MPContext()
_mp.dps = 40


@lru_cache(maxsize=None)
def _bernoulli_ratios(count: int) -> tuple:
    """B_2k / (2k)! for k = 1..count, as mpf."""
    return tuple(_mp.bernoulli(2 * k) / _mp.factorial(2 * k) for k in range(1, count + 1))


@lru_cache(maxsize=4)
def _log_table(n: int) -> np.ndarray:
    return np.log(np.arange(1, n + 1, dtype=np.float64))


def default_terms(t: float) -> int:
    return max(12, math.ceil(0.5 * t))


def _roundoff(t: float, N: int) -> float:
    return 4e-16 * (1.0 + t * math.log(N)) * math.sqrt(math.log(N) + 1.0)


@lru_cache(maxsize=None)
def _bernoulli_ratios_float(count: int) -> tuple:
    return tuple(float(r) for r in _bernoulli_ratios(count))


def _tail(s, N, target, backend):
    """Euler-Maclaurin corrections; returns (sum, bound on the dropped part)."""
    if backend == "float":
        ratios = _bernoulli_ratios_float(MAX_TAIL_TERMS + 1)
        Nf = float(N)
    else:
        ratios = _bernoulli_ratios(MAX_TAIL_TERMS + 1)
        Nf = _mp.mpf(N)
    poch = s  # s(s+1)...(s+2k-2)
    power = Nf ** (-s - 1)  # N^(-s-2k+1)
    inv_n2 = 1 / (Nf * Nf)
    total = 0
    for k in range(1, MAX_TAIL_TERMS + 1):
        total += ratios[k - 1] * poch * power
        poch = poch * (s + 2 * k - 1) * (s + 2 * k)
        power = power * inv_n2
        bound = abs(ratios[k] * poch * power) * abs(s + 2 * k + 1) / (2 * k + 1.5)
        if bound < target / 4:
            return total, float(bound)
    raise NumericError(f"Euler-Maclaurin tail did not reach {target:g} in {MAX_TAIL_TERMS} terms")


def _em(t: float, precision_target: float, terms: int | None):
    N = terms if terms is not None else default_terms(t)
    backend = "float" if _roundoff(t, N) < precision_target / 4 else "mp"
    if backend == "float":
        s = complex(0.5, t)
        logs = _log_table(N - 1)
        phase = t * logs
        amp = np.exp(-0.5 * logs)
        head = complex(np.sum(amp * np.cos(phase)), -np.sum(amp * np.sin(phase)))
        Nf = float(N)
        head += Nf ** (1 - s) / (s - 1) + 0.5 * Nf ** (-s)
    else:
        s = _mp.mpc(0.5, t)
        head = _mp.fsum(_mp.power(n, -s) for n in range(1, N))
        head += _mp.power(N, 1 - s) / (s - 1) + _mp.power(N, -s) / 2
    tail, bound = _tail(s, N, precision_target, backend)
    return complex(head + tail), bound


def zeta_half_em(t: float, precision_target: float = 1e-10, terms: int | None = None) -> complex:
    """zeta(1/2 + it) for 0 <= t <= 1e4 with absolute error below ``precision_target``.

    ``terms`` overrides the length N of the Dirichlet head (default
    ceil(t/2), at least 12); the tail is lengthened until its bound drops
    below the target.
    """
    if not 0 <= t <= T_MAX:
        raise OutOfRangeError(f"oracle regime is 0 <= t <= {T_MAX:g}, got t={t}")
    if precision_target < MIN_TARGET:
        raise ValueError(f"precision_target must be >= {MIN_TARGET:g}")
    return _em(float(t), precision_target, terms)[0]


def zeta_half_em_with_bound(t: float, precision_target: float = 1e-10) -> tuple[complex, float]:
    """As :func:`zeta_half_em`, also returning the tail bound actually achieved."""
    if not 0 <= t <= T_MAX:
        raise OutOfRangeError(f"oracle regime is 0 <= t <= {T_MAX:g}, got t={t}")
    return _em(float(t), precision_target, None)


def abs_sq_em(ts, precision_target: float = 1e-10) -> np.ndarray:
    """|zeta(1/2 + it)|^2 for each t (pointwise loop over the oracle)."""
    return np.array([abs(zeta_half_em(float(t), precision_target)) ** 2 for t in np.ravel(ts)])
