"""High-precision constants and their float64 shadows."""
from __future__ import annotations

from dataclasses import dataclass

import mpmath

_DPS = 50

# Private context so callers' mpmath precision is never touched.
mp = mpmath.MPContext()
mp.dps = _DPS


@dataclass(frozen=True)
class Constants:
    euler_gamma: mpmath.mpf
    pi: mpmath.mpf


CONSTANTS = Constants(euler_gamma=+mp.euler, pi=+mp.pi)

EULER_GAMMA = float(CONSTANTS.euler_gamma)
PI = float(CONSTANTS.pi)
TWO_PI = 2.0 * PI
