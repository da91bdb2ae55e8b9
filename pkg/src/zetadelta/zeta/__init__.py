"""zeta(1/2 + it): Riemann-Siegel fast path, Euler-Maclaurin oracle, grids and E(T)."""
from .euler_maclaurin import zeta_half_em, zeta_half_em_with_bound
from .grid import (
    CriticalLineSample,
    Method,
    SampleGrid,
    mean_square_error_E,
    mean_square_main_term,
    sample_critical_line,
    sample_point,
)
from .riemann_siegel import hardy_z_rs, siegel_theta, zeta_half_rs

__all__ = [
    "CriticalLineSample",
    "Method",
    "SampleGrid",
    "hardy_z_rs",
    "mean_square_error_E",
    "mean_square_main_term",
    "sample_critical_line",
    "sample_point",
    "siegel_theta",
    "zeta_half_em",
    "zeta_half_em_with_bound",
    "zeta_half_rs",
]
