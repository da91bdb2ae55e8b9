"""Mixed moments int_2^T Delta^k(t) |zeta(1/2+it)|^(2m) dt, growth fits and reports.

Integration runs over unit panels [n, n+1].  On each panel D(t) is the
constant D(n) (its left limit at n + 1), so the integrand is smooth inside
the panel and composite Simpson applies; the jump of Delta at integers is
exactly on panel boundaries.
"""
from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Sequence

import numpy as np

from .bounds import FactDatabase, conjectural_exponent, derive_mixed_bound, trivial_bound
from .bounds.engine import K_RANGE, M_RANGE, single_fact
from .constants import EULER_GAMMA
from .divisor import DivisorTable
from .errors import NumericError
from .quadrature import Estimate, panel_integrals, simpson
from .zeta.grid import SampleGrid, grid_times, per_unit

LOWER_LIMIT = 2.0
MIN_T = 10.0
SLOPE_TOLERANCE = 0.15
CSV_HEADER = ("T", "k", "m", "I", "err_est", "slope_context")

_UNITS_PER_BLOCK = 4096


@dataclass(frozen=True)
class MomentRequest:
    k: int
    m: int
    T_values: tuple[float, ...]
    h: float = 0.01
    absolute: bool = False

    def __post_init__(self):
        if self.k < 0 or self.m < 0:
            raise ValueError("k and m must be nonnegative")
        T = tuple(float(t) for t in self.T_values)
        if not T:
            raise ValueError("need at least one T")
        if any(b <= a for a, b in zip(T, T[1:])):
            raise ValueError("T_values must be strictly ascending")
        if T[0] < MIN_T:
            raise ValueError(f"T values must be >= {MIN_T:g}")
        object.__setattr__(self, "T_values", T)


@dataclass(frozen=True)
class MomentPoint:
    T: float
    value: float
    error: float


@dataclass(frozen=True)
class ExponentFit:
    slope: float
    intercept: float
    residual_rms: float
    points: tuple[tuple[float, float], ...]
    used_abs: bool = False
    window: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        if len(self.points) < 3:
            raise ValueError("an exponent fit needs at least 3 points")


def _main(t: np.ndarray) -> np.ndarray:
    return t * (np.log(t) + (2.0 * EULER_GAMMA - 1.0))


def _integrand(k, m, absolute, D, t, zsq):
    f = np.ones_like(t)
    # overflow surfaces as inf and is reported by _check_finite
    with np.errstate(over="ignore", invalid="ignore"):
        if k:
            d = D - _main(t)
            f = np.abs(d) ** k if absolute else d**k
        if m:
            f = f * zsq**m
    return f


def _check_finite(f: np.ndarray, t: np.ndarray) -> None:
    bad = ~np.isfinite(f)
    if bad.any():
        i = int(np.argmax(bad))
        raise NumericError(f"integrand overflow at t = {float(t.flat[i])!r}")


def _panels(k, m, absolute, grid: SampleGrid, table: DivisorTable | None, n0: int, units: int):
    """Fine and coarse Simpson sums for panels [n0 + u, n0 + u + 1], u < units."""
    P = per_unit(grid.h)
    start = grid.index_of(float(n0))
    seg = grid.values[start : start + units * P + 1]
    rows = np.lib.stride_tricks.sliding_window_view(seg, P + 1)[::P]
    t = grid_times(grid.t0, grid.h, start, start + units * P + 1)
    trows = np.lib.stride_tricks.sliding_window_view(t, P + 1)[::P]
    D = table.prefix[n0 : n0 + units].astype(np.float64)[:, None] if k else 0.0
    f = _integrand(k, m, absolute, D, trows, rows)
    _check_finite(f, trows)
    return panel_integrals(f, grid.h)


def _partial(k, m, absolute, grid, table, a: float, b: float) -> tuple[float, float]:
    """Simpson over [a, b] inside one unit panel (a, b on the grid)."""
    i, j = grid.index_of(a), grid.index_of(b)
    if j == i:
        return 0.0, 0.0
    t = grid_times(grid.t0, grid.h, i, j + 1)
    D = float(table.prefix[int(math.floor(a + 1e-9))]) if k else 0.0
    f = _integrand(k, m, absolute, D, t, grid.values[i : j + 1])
    _check_finite(f, t)
    fine = simpson(f, grid.h)
    steps = j - i
    coarse = simpson(f[::2], 2 * grid.h) if steps % 2 == 0 and steps >= 2 else fine
    return fine, coarse


def _check_coverage(k, grid: SampleGrid, table: DivisorTable | None, a: float, b: float) -> None:
    if not grid.covers(a, b):
        raise ValueError(
            f"zeta grid [{grid.t0:g}, {grid.t_end:g}] does not cover [{a:g}, {b:g}]"
        )
    if grid.h > 0.05:
        raise ValueError("grid step must be <= 0.05")
    if k:
        if table is None:
            raise ValueError("a divisor table is required when k > 0")
        if table.limit < math.floor(b):
            raise ValueError(f"divisor table limit {table.limit} < floor(T) = {math.floor(b)}")


def _panel_sums(k, m, absolute, grid, table, n_lo: int, n_hi: int, threads: int):
    """Per-panel fine/coarse sums for panels n_lo .. n_hi-1, in order."""
    spans = [(n, min(n + _UNITS_PER_BLOCK, n_hi)) for n in range(n_lo, n_hi, _UNITS_PER_BLOCK)]
    work = lambda s: _panels(k, m, absolute, grid, table, s[0], s[1] - s[0])  # noqa: E731
    if threads > 1 and len(spans) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(work, spans))
    else:
        parts = [work(s) for s in spans]
    if not parts:
        return np.zeros(0), np.zeros(0)
    return np.concatenate([p[0] for p in parts]), np.concatenate([p[1] for p in parts])


def integrate_segment(
    k: int, m: int, a: float, b: float, grid: SampleGrid, table: DivisorTable | None = None,
    absolute: bool = False, threads: int = 1,
) -> Estimate:
    """int_a^b Delta^k |zeta|^(2m) dt for grid points a <= b."""
    _check_coverage(k, grid, table, a, b)
    if b < a:
        raise ValueError("need a <= b")
    fines, coarses = [], []
    n_a, n_b = math.ceil(a - 1e-9), math.floor(b + 1e-9)
    if n_a > n_b:
        f, c = _partial(k, m, absolute, grid, table, a, b)
        fines.append(f)
        coarses.append(c)
    else:
        f, c = _partial(k, m, absolute, grid, table, a, float(n_a))
        fines.append(f)
        coarses.append(c)
        pf, pc = _panel_sums(k, m, absolute, grid, table, n_a, n_b, threads)
        fines.extend(pf)
        coarses.extend(pc)
        f, c = _partial(k, m, absolute, grid, table, float(n_b), b)
        fines.append(f)
        coarses.append(c)
    fine, coarse = np.asarray(fines, dtype=np.float64), np.asarray(coarses, dtype=np.float64)
    return Estimate(
        math.fsum(fine),
        math.fsum(np.abs(fine - coarse)) + 1e-14 * math.fsum(np.abs(fine)),
    )


def mixed_moment(
    req: MomentRequest, table: DivisorTable | None, grid: SampleGrid, threads: int = 1
) -> list[MomentPoint]:
    """int_2^T Delta^k(t) |zeta(1/2+it)|^(2m) dt at each requested T.

    Odd k keeps the sign of Delta unless ``req.absolute`` asks for |Delta|^k.
    Each value carries the step-halving error bar of its panels.  Panel sums
    are computed once up to max T and accumulated with ``math.fsum``.
    """
    k, m = req.k, req.m
    T_max = req.T_values[-1]
    if abs(grid.h - req.h) > 1e-15:
        raise ValueError(f"grid step {grid.h} differs from requested h = {req.h}")
    if abs(grid.t0 - LOWER_LIMIT) > 1e-12:
        raise ValueError("moment integrals start at t = 2; the grid must start there")
    _check_coverage(k, grid, table, LOWER_LIMIT, T_max)
    n_hi = math.floor(T_max + 1e-9)
    fine, coarse = _panel_sums(k, m, req.absolute, grid, table, int(LOWER_LIMIT), n_hi, threads)
    gap = np.abs(fine - coarse)
    out = []
    for T in req.T_values:
        nT = math.floor(T + 1e-9)
        used = nT - int(LOWER_LIMIT)
        parts_f = list(fine[:used])
        parts_g = list(gap[:used])
        if T - nT > 1e-9:
            f, c = _partial(k, m, req.absolute, grid, table, float(nT), T)
            parts_f.append(f)
            parts_g.append(abs(f - c))
        value = math.fsum(parts_f)
        err = math.fsum(parts_g) + 1e-14 * math.fsum(abs(x) for x in parts_f)
        out.append(MomentPoint(T, value, err))
    return out


def select_fit_window(points: Sequence[tuple[float, float]]) -> list[tuple[float, float]]:
    """Points in the largest decade [T_max/10, T_max], or all points if fewer than 2 fall there."""
    T_max = max(T for T, _ in points)
    top = [(T, I) for T, I in points if T >= T_max / 10 * (1 - 1e-12)]
    return top if len(top) >= 2 else list(points)


def fit_growth_exponent(points: Sequence[tuple[float, float]], use_abs: bool = False) -> ExponentFit:
    """Least-squares slope of log I against log T over the largest decade.

    At least 3 points are required overall; the line is fitted through those
    in [T_max/10, T_max] to damp small-T transients (see
    :func:`select_fit_window`), and the residual rms refers to that window.

    With ``use_abs`` the fit runs on |I(T)|, which is how odd-k moments are
    handled; otherwise any I(T) <= 0 is rejected.
    """
    pts = [(float(T), float(I)) for T, I in points]
    if len(pts) < 3:
        raise ValueError("need at least 3 points to fit a growth exponent")
    window = select_fit_window(pts)
    T = np.array([p[0] for p in window])
    I = np.array([p[1] for p in window])
    if use_abs:
        I = np.abs(I)
    if np.any(I <= 0) or np.any(T <= 0):
        raise ValueError("I(T) must be positive for a log-log fit; use use_abs=True (|I| mode) for signed moments")
    x, y = np.log(T), np.log(I)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    return ExponentFit(
        slope=float(slope),
        intercept=float(intercept),
        residual_rms=float(np.sqrt(np.mean(resid**2))),
        points=tuple(pts),
        used_abs=use_abs,
        window=(float(T.min()), float(T.max())),
    )


def proven_exponent(k: int, m: int, db: FactDatabase) -> tuple[Q | None, str]:
    if k in K_RANGE and m in M_RANGE:
        return derive_mixed_bound(k, m, db).growth, "derived"
    fact = single_fact(k, m, db)
    if fact is not None:
        return fact.growth, fact.source
    return None, "not covered"


def compare_with_bounds(k: int, m: int, fit: ExponentFit, db: FactDatabase | None = None) -> dict:
    """Empirical slope next to the proven, trivial and conjectural exponents."""
    db = db or FactDatabase()
    proven, proven_source = proven_exponent(k, m, db)
    try:
        trivial = trivial_bound(k, m, db)
    except ValueError:
        trivial = None
    conj = conjectural_exponent(k, m) if k >= 1 and m >= 1 else Q(1) + Q(k, 4)
    signs = "".join("+" if I > 0 else "-" if I < 0 else "0" for _, I in fit.points)
    report = {
        "k": k,
        "m": m,
        "empirical_slope": fit.slope,
        "intercept": fit.intercept,
        "residual_rms": fit.residual_rms,
        "fit_window": list(fit.window),
        "used_abs": fit.used_abs,
        "sign_pattern": signs,
        "proven_exponent": None if proven is None else str(proven),
        "proven_decimal": None if proven is None else float(proven),
        "proven_source": proven_source,
        "trivial_exponent": None if trivial is None else str(trivial),
        "conjectural_exponent": str(conj),
        "conjectural_note": "conditional on Delta << x^(1/4+eps) and the Lindelof hypothesis",
        "slope_tolerance": SLOPE_TOLERANCE,
        "checks": {
            "empirical_le_proven": None if proven is None else fit.slope <= float(proven) + SLOPE_TOLERANCE,
            "conjectural_le_proven": None if proven is None else conj <= proven,
            "empirical_near_conjectural": abs(fit.slope - float(conj)) <= SLOPE_TOLERANCE,
        },
    }
    if fit.used_abs:
        report["flag"] = "fit on |I(T)|: signed moment, see sign_pattern"
    return report


def slope_context(points: Sequence[MomentPoint]) -> list[float | None]:
    """Secant slope of log|I| against log T from the previous point."""
    out: list[float | None] = [None]
    for p, q in zip(points, points[1:]):
        if p.value == 0 or q.value == 0:
            out.append(None)
        else:
            out.append(math.log(abs(q.value) / abs(p.value)) / math.log(q.T / p.T))
    return out


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, int):
        return str(x)
    return format(float(x), ".17g")


def moment_csv(k: int, m: int, points: Sequence[MomentPoint]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for p, s in zip(points, slope_context(points)):
        w.writerow([_fmt(p.T), k, m, _fmt(p.value), _fmt(p.error), _fmt(s)])
    return buf.getvalue()


__all__ = [
    "CSV_HEADER",
    "ExponentFit",
    "LOWER_LIMIT",
    "MomentPoint",
    "MomentRequest",
    "compare_with_bounds",
    "fit_growth_exponent",
    "integrate_segment",
    "mixed_moment",
    "moment_csv",
    "select_fit_window",
    "slope_context",
]
