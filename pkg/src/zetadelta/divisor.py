"""Divisor and two-squares tables, and the error terms built from them.

Tables are indexed directly by ``n``: ``counts[n]`` is d(n) (or r(n)) and
``prefix[n]`` the exact partial sum up to and including ``n``.  Index 0 is a
placeholder so the arrays have length ``limit + 1``.

Main terms are evaluated in 50-digit arithmetic and rounded once, so the
only float64 rounding in :func:`delta` is the final conversion.  The array
variants (:func:`delta_array`) stay in float64 for bulk sampling.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import isqrt
from typing import Iterator

import numpy as np

from .constants import CONSTANTS, EULER_GAMMA, mp
from .errors import OutOfRangeError, ResourceError

#: Tables above this size are refused; use :func:`stream_divisor_prefix`.
MAX_TABLE_LIMIT = 2**31
#: uint32 count plus int64 prefix.
BYTES_PER_ENTRY = 12

_BLOCK = 1 << 20


@dataclass(eq=False)
class DivisorTable:
    limit: int
    counts: np.ndarray
    prefix: np.ndarray
    _alt_prefix: np.ndarray | None = field(default=None, repr=False)

    @property
    def alternating_prefix(self) -> np.ndarray:
        """``alt[n] = sum_{j<=n} (-1)^j d(j)`` (int64)."""
        if self._alt_prefix is None:
            signed = self.counts.astype(np.int64)
            signed[1::2] *= -1
            self._alt_prefix = np.cumsum(signed)
        return self._alt_prefix

    def divisor_sum(self, x: float) -> int:
        """Exact D(x) = sum_{n <= x} d(n)."""
        n = _floor_index(x, self.limit)
        return int(self.prefix[n])


@dataclass(eq=False)
class TwoSquaresTable:
    limit: int
    counts: np.ndarray
    prefix: np.ndarray  # excludes r(0): prefix[n] = sum_{1<=j<=n} r(j)


def _check_limit(N) -> int:
    if isinstance(N, bool) or int(N) != N:
        raise ValueError(f"table limit must be an integer, got {N!r}")
    N = int(N)
    if N < 1:
        raise ValueError(f"table limit must be >= 1, got {N}")
    if N > MAX_TABLE_LIMIT:
        raise ResourceError(
            f"N={N} exceeds the in-memory cap 2**31 "
            f"({BYTES_PER_ENTRY} bytes/entry); use stream_divisor_prefix"
        )
    return N


def _segment_counts(lo: int, hi: int) -> np.ndarray:
    """d(n) for lo <= n < hi by pairing each divisor d <= sqrt(n) with n/d."""
    out = np.zeros(hi - lo, dtype=np.uint32)
    for d in range(1, isqrt(hi - 1) + 1):
        q = max(d, -(-lo // d))
        n = d * q
        if n >= hi:
            continue
        if q == d:
            out[n - lo] += 1
            n += d
        if n < hi:
            out[n - lo : hi - lo : d] += 2
    return out


def sieve_divisor_counts(N: int, threads: int = 1) -> DivisorTable:
    """Sieve d(n) for 1 <= n <= N.

    Every pair ``d * q = n`` with ``d < q`` is credited twice through its
    smaller factor, and squares once, so the Python loop only runs to
    sqrt(N) while the total work stays O(N log N).  With ``threads > 1`` the
    range is split into disjoint blocks whose results are concatenated in
    order, so output does not depend on the thread count.
    """
    N = _check_limit(N)
    try:
        if threads <= 1 or N <= _BLOCK:
            counts = _segment_counts(0, N + 1)
        else:
            bounds = list(range(0, N + 1, _BLOCK)) + [N + 1]
            spans = list(zip(bounds[:-1], bounds[1:]))
            with ThreadPoolExecutor(max_workers=threads) as pool:
                parts = list(pool.map(lambda s: _segment_counts(*s), spans))
            counts = np.concatenate(parts)
        counts[0] = 0
        prefix = np.cumsum(counts, dtype=np.int64)
    except MemoryError as exc:  # pragma: no cover - depends on host
        raise ResourceError(f"cannot allocate divisor table for N={N}") from exc
    return DivisorTable(limit=N, counts=counts, prefix=prefix)


def table_from_counts(counts: np.ndarray) -> DivisorTable:
    counts = np.asarray(counts, dtype=np.uint32)
    return DivisorTable(
        limit=len(counts) - 1, counts=counts, prefix=np.cumsum(counts, dtype=np.int64)
    )


def stream_divisor_prefix(
    stop: int, start: int = 1, block: int = _BLOCK
) -> Iterator[tuple[int, np.ndarray, np.ndarray]]:
    """Yield ``(lo, counts, prefix)`` blocks covering ``start <= n <= stop``.

    ``prefix`` holds the running D(n) from n = 1, so blocks can be consumed
    without ever holding the full table.  Used when N is above the cap.
    """
    if start < 1 or stop < start:
        raise ValueError("need 1 <= start <= stop")
    running = 0
    if start > 1:
        running = hyperbola_divisor_sum(start - 1)
    lo = start
    while lo <= stop:
        hi = min(lo + block, stop + 1)
        c = _segment_counts(lo, hi)
        p = np.cumsum(c, dtype=np.int64) + np.int64(running)
        running = int(p[-1])
        yield lo, c, p
        lo = hi


def sieve_two_squares(N: int) -> TwoSquaresTable:
    """r(n) = #{(a, b) in Z^2 : a^2 + b^2 = n} for 0 <= n <= N."""
    N = _check_limit(N)
    r = np.zeros(N + 1, dtype=np.int64)
    root = isqrt(N)
    b = np.arange(root + 1, dtype=np.int64)
    for a in range(root + 1):
        bs = b[: isqrt(N - a * a) + 1]
        n = a * a + bs * bs
        w = np.where(bs > 0, 2, 1) * (2 if a > 0 else 1)
        r[n] += w  # n is strictly increasing in b, so no repeated indices
    prefix = np.cumsum(r)
    prefix -= r[0]
    return TwoSquaresTable(limit=N, counts=r, prefix=prefix)


def hyperbola_divisor_sum(x) -> int:
    """D(x) = 2 sum_{k <= sqrt x} floor(x/k) - floor(sqrt x)^2, exactly."""
    n = int(np.floor(x))
    if n < 1:
        return 0
    s = isqrt(n)
    return 2 * sum(n // k for k in range(1, s + 1)) - s * s


def _floor_index(x, limit: int) -> int:
    n = int(np.floor(x))
    if n > limit:
        raise OutOfRangeError(f"floor({x}) = {n} exceeds table limit {limit}")
    return n


def _main_term(x):
    """x (log x + 2 gamma - 1) in 50-digit arithmetic."""
    x = mp.mpf(x)
    return x * (mp.log(x) + 2 * CONSTANTS.euler_gamma - 1)


def _delta_mp(x, table: DivisorTable):
    if x < 1:
        raise ValueError(f"delta is defined for x >= 1, got {x}")
    n = _floor_index(x, table.limit)
    return mp.mpf(int(table.prefix[n])) - _main_term(x)


def delta(x: float, table: DivisorTable) -> float:
    """Dirichlet divisor error term D(x) - x(log x + 2 gamma - 1).

    The sum includes n = x when x is an integer, so Delta jumps by d(n) at n.
    """
    return float(_delta_mp(x, table))


def delta_array(x: np.ndarray, table: DivisorTable) -> np.ndarray:
    """Vectorised float64 Delta(x) for 1 <= floor(x) <= limit."""
    x = np.asarray(x, dtype=np.float64)
    idx = np.floor(x).astype(np.int64)
    if idx.size and (idx.min() < 1 or idx.max() > table.limit):
        raise OutOfRangeError("delta_array argument outside [1, limit]")
    return table.prefix[idx] - x * (np.log(x) + (2.0 * EULER_GAMMA - 1.0))


def delta_star(x: float, table: DivisorTable) -> float:
    """Modified error term -Delta(x) + 2 Delta(2x) - Delta(4x)/2."""
    _floor_index(4 * x, table.limit)
    val = -_delta_mp(x, table) + 2 * _delta_mp(2 * x, table) - _delta_mp(4 * x, table) / 2
    return float(val)


def delta_star_alternating(x: float, table: DivisorTable) -> float:
    """Same quantity through (1/2) sum_{n <= 4x} (-1)^n d(n) - x(log x + 2 gamma - 1)."""
    if x < 1:
        raise ValueError(f"delta_star is defined for x >= 1, got {x}")
    n = _floor_index(4 * x, table.limit)
    alt = int(table.alternating_prefix[n])
    return float(mp.mpf(alt) / 2 - _main_term(x))


def circle_error(x: float, table: TwoSquaresTable) -> float:
    """Gauss circle error P(x) = sum_{1 <= n <= x} r(n) - pi x."""
    if x < 0:
        raise ValueError(f"circle_error needs x >= 0, got {x}")
    n = _floor_index(x, table.limit)
    return float(mp.mpf(int(table.prefix[n])) - CONSTANTS.pi * mp.mpf(x))


def _main_antiderivative(t):
    t = mp.mpf(t)
    return t * t / 2 * (mp.log(t) + 2 * CONSTANTS.euler_gamma - 1) - t * t / 4


def delta_integral(a: float, b: float, table: DivisorTable) -> float:
    """Exact integral of Delta over [a, b] (step part summed piecewise)."""
    if not 1 <= a <= b:
        raise ValueError("need 1 <= a <= b")
    _floor_index(b, table.limit)
    na, nb = int(np.floor(a)), int(np.floor(b))
    if na == nb:
        step = mp.mpf(int(table.prefix[na])) * (mp.mpf(b) - mp.mpf(a))
    else:
        step = mp.mpf(int(table.prefix[na])) * (na + 1 - mp.mpf(a))
        step += int(table.prefix[na + 1 : nb].sum())
        step += mp.mpf(int(table.prefix[nb])) * (mp.mpf(b) - nb)
    return float(step - (_main_antiderivative(b) - _main_antiderivative(a)))


__all__ = [
    "BYTES_PER_ENTRY",
    "MAX_TABLE_LIMIT",
    "DivisorTable",
    "TwoSquaresTable",
    "circle_error",
    "delta",
    "delta_array",
    "delta_integral",
    "delta_star",
    "delta_star_alternating",
    "hyperbola_divisor_sum",
    "sieve_divisor_counts",
    "sieve_two_squares",
    "stream_divisor_prefix",
    "table_from_counts",
]
