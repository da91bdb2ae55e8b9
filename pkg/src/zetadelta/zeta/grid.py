"""Critical-line sampling and the mean-square error term E(T)."""
from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..constants import CONSTANTS, mp
from ..errors import OutOfRangeError
from ..quadrature import Estimate, combine, panel_integrals, panel_rows, simpson
from .euler_maclaurin import zeta_half_em
from .riemann_siegel import T_MIN, hardy_z_rs

MAX_STEP = 0.05
ORACLE_STEP = 0.01
ORACLE_TARGET = 1e-10
_CHUNK = 1 << 18


class Method(enum.Enum):
    RIEMANN_SIEGEL = "riemann_siegel"
    EULER_MACLAURIN = "euler_maclaurin"


@dataclass(frozen=True)
class CriticalLineSample:
    t: float
    value_sq: float
    method: Method


def sample_point(t: float) -> CriticalLineSample:
    if t >= T_MIN:
        return CriticalLineSample(t, hardy_z_rs(t) ** 2, Method.RIEMANN_SIEGEL)
    return CriticalLineSample(t, abs(zeta_half_em(t, ORACLE_TARGET)) ** 2, Method.EULER_MACLAURIN)


def grid_count(t0: float, t1: float, h: float) -> int:
    return int(math.floor((t1 - t0) / h + 1e-9)) + 1


def grid_times(t0: float, h: float, start: int, stop: int) -> np.ndarray:
    """Times of samples ``start .. stop-1``.

    When 1/h and t0/h are integers the i-th time is (k0 + i)/(1/h), a single
    correctly rounded division, so a point has the same float64 value in
    every grid that contains it (including the h/2 refinement).
    """
    i = np.arange(start, stop, dtype=np.float64)
    inv = 1.0 / h
    if abs(inv - round(inv)) < 1e-9 and abs(t0 * inv - round(t0 * inv)) < 1e-6:
        return (round(t0 * inv) + i) / round(inv)
    return t0 + i * h


@dataclass(eq=False)
class SampleGrid:
    """|zeta(1/2 + it)|^2 at t0, t0 + h, ..., up to t1."""

    t0: float
    t1: float
    h: float
    values: np.ndarray

    @property
    def count(self) -> int:
        return len(self.values)

    @property
    def times(self) -> np.ndarray:
        return grid_times(self.t0, self.h, 0, self.count)

    @property
    def t_end(self) -> float:
        return float(grid_times(self.t0, self.h, self.count - 1, self.count)[0])

    def index_of(self, t: float) -> int:
        """Index of the sample at time t; t must lie on the grid."""
        j = round((t - self.t0) / self.h)
        if abs(self.t0 + j * self.h - t) > 1e-6 * self.h or not 0 <= j < self.count:
            raise OutOfRangeError(f"t={t} is not a sample of grid [{self.t0}, {self.t_end}] step {self.h}")
        return j

    def covers(self, a: float, b: float) -> bool:
        return self.t0 <= a + 1e-9 and b <= self.t_end + 1e-9


def _values_block(t: np.ndarray) -> np.ndarray:
    out = np.empty_like(t)
    fast = t >= T_MIN
    if fast.any():
        out[fast] = hardy_z_rs(t[fast]) ** 2
    for i in np.flatnonzero(~fast):
        out[i] = abs(zeta_half_em(float(t[i]), ORACLE_TARGET)) ** 2
    return out


def sample_critical_line(t0: float, t1: float, h: float = 0.01, threads: int = 1) -> SampleGrid:
    """Sample |zeta(1/2 + it)|^2 on [t0, t1] at step h.

    The Riemann-Siegel path is used from t = 10 up and the Euler-Maclaurin
    oracle below.  Blocks are evaluated independently and stitched in order,
    so the result is bit-identical for any thread count.
    """
    if not 2 <= t0 < t1:
        raise ValueError(f"need 2 <= t0 < t1, got t0={t0}, t1={t1}")
    if not 0 < h <= MAX_STEP:
        raise ValueError(f"step h={h} must satisfy 0 < h <= {MAX_STEP} (oscillation undersampled)")
    n = grid_count(t0, t1, h)
    spans = [(i, min(i + _CHUNK, n)) for i in range(0, n, _CHUNK)]
    work = lambda s: _values_block(grid_times(t0, h, *s))  # noqa: E731
    if threads > 1 and len(spans) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(work, spans))
    else:
        parts = [work(s) for s in spans]
    return SampleGrid(t0=float(t0), t1=float(t1), h=float(h), values=np.concatenate(parts))


@lru_cache(maxsize=8)
def _oracle_head(upper: float, h: float) -> Estimate:
    """Integral of |zeta|^2 over [0, upper] from oracle samples."""
    n = max(2, math.ceil(upper / h))
    n += n % 2
    step = upper / n
    y = np.array([abs(zeta_half_em(k * step, ORACLE_TARGET)) ** 2 for k in range(n + 1)])
    fine = simpson(y, step)
    coarse = simpson(y[::2], 2 * step)
    return Estimate(fine, abs(fine - coarse) + 1e-14 * abs(fine))


def mean_square_main_term(T: float) -> float:
    T = mp.mpf(T)
    return float(T * (mp.log(T / (2 * CONSTANTS.pi)) + 2 * CONSTANTS.euler_gamma - 1))


def per_unit(h: float) -> int:
    """Samples per unit interval; must be an even integer for panel quadrature."""
    inv = 1.0 / h
    P = round(inv)
    if abs(inv - P) > 1e-9 or P % 2:
        raise ValueError(f"panel quadrature needs 1/h to be an even integer, got h={h}")
    return P


def integrate_power(grid: SampleGrid, a: float, b: float, power: int = 1) -> Estimate:
    """Integral of (|zeta|^2)^power over [a, b] on grid samples (a, b on the grid)."""
    P = per_unit(grid.h)
    i, j = grid.index_of(a), grid.index_of(b)
    full, rest = divmod(j - i, P)
    fines, coarses = [], []
    for u0 in range(0, full, _CHUNK // P):
        units = min(_CHUNK // P, full - u0)
        rows = panel_rows(grid.values, P, i + u0 * P, units) ** power
        f, c = panel_integrals(rows, grid.h)
        fines.append(f)
        coarses.append(c)
    if rest:
        y = grid.values[i + full * P : j + 1] ** power
        f = simpson(y, grid.h)
        c = simpson(y[::2], 2 * grid.h) if rest % 2 == 0 and rest >= 2 else f
        fines.append(np.array([f]))
        coarses.append(np.array([c]))
    if not fines:
        return Estimate(0.0, 0.0)
    return combine(np.concatenate(fines), np.concatenate(coarses))


def mean_square_error_E(T: float, grid: SampleGrid | None = None, oracle_step: float = ORACLE_STEP) -> Estimate:
    """E(T) = int_0^T |zeta(1/2 + it)|^2 dt - T(log(T/2pi) + 2 gamma - 1).

    [0, 2] (or all of [0, T] when T <= 2) is integrated from oracle samples
    at step ``oracle_step``; [2, T] comes from ``grid``, which must start at
    2 with step <= 0.05.  Returns the value with its step-halving error bar.
    """
    if T <= 0:
        raise ValueError("T must be positive")
    if oracle_step > 0.01:
        raise ValueError("oracle segment needs step <= 0.01")
    if T <= 2:
        head = _oracle_head(float(T), oracle_step)
        main = float(mp.mpf(T) * (mp.log(mp.mpf(T) / (2 * CONSTANTS.pi)) + 2 * CONSTANTS.euler_gamma - 1))
        return Estimate(head.value - main, head.error)
    if grid is None or abs(grid.t0 - 2.0) > 1e-12 or not grid.covers(2.0, T):
        raise ValueError(f"grid must cover [2, {T}] starting exactly at t = 2")
    if grid.h > MAX_STEP:
        raise ValueError("grid step must be <= 0.05")
    head = _oracle_head(2.0, oracle_step)
    body = integrate_power(grid, 2.0, T, 1)
    return Estimate(head.value + body.value - mean_square_main_term(T), head.error + body.error)


__all__ = [
    "CriticalLineSample",
    "Method",
    "SampleGrid",
    "grid_times",
    "integrate_power",
    "mean_square_error_E",
    "mean_square_main_term",
    "sample_critical_line",
    "sample_point",
]
