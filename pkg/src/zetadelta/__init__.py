"""Divisor-problem and critical-line zeta numerics with exact Hölder exponent bookkeeping."""
__version__ = "0.1.0"

from .constants import CONSTANTS, Constants  # noqa: E402
from .divisor import (  # noqa: E402
    DivisorTable,
    TwoSquaresTable,
    circle_error,
    delta,
    delta_star,
    delta_star_alternating,
    sieve_divisor_counts,
    sieve_two_squares,
)
from .zeta import mean_square_error_E, sample_critical_line, zeta_half_em, zeta_half_rs  # noqa: E402

__all__ = [
    "CONSTANTS",
    "Constants",
    "DivisorTable",
    "TwoSquaresTable",
    "circle_error",
    "delta",
    "delta_star",
    "delta_star_alternating",
    "mean_square_error_E",
    "sample_critical_line",
    "sieve_divisor_counts",
    "sieve_two_squares",
    "zeta_half_em",
    "zeta_half_rs",
]
