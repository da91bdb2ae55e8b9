"""Independent reference implementations used only by the tests."""
from math import isqrt

import mpmath


def trial_division_d(n: int) -> int:
    count = 0
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            count += 1 if d * d == n else 2
    return count


def lattice_r(n: int) -> int:
    r = isqrt(n)
    return sum(1 for a in range(-r, r + 1) for b in range(-r, r + 1) if a * a + b * b == n)


def direct_D(x) -> int:
    return sum(trial_division_d(n) for n in range(1, int(x) + 1))


def mp_delta(x, dps=40):
    with mpmath.workdps(dps):
        x = mpmath.mpf(x)
        return direct_D(x) - x * (mpmath.log(x) + 2 * mpmath.euler - 1)


def mp_abs_zeta(t, dps=30):
    with mpmath.workdps(dps):
        return float(abs(mpmath.zeta(mpmath.mpc(0.5, t))))


def mp_hardy_z(t, dps=30):
    with mpmath.workdps(dps):
        return float(mpmath.siegelz(t))
