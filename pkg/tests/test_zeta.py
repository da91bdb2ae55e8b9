import cmath
import math
import random

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import mp_abs_zeta, mp_hardy_z
from zetadelta.errors import OutOfRangeError
from zetadelta.zeta import (
    Method,
    hardy_z_rs,
    mean_square_error_E,
    sample_critical_line,
    sample_point,
    siegel_theta,
    zeta_half_em,
    zeta_half_em_with_bound,
    zeta_half_rs,
)
from zetadelta.zeta.riemann_siegel import correction_orders

FIRST_ZERO = 14.134725142


def test_em_at_zero():
    z = zeta_half_em(0.0, 1e-12)
    assert z.real == pytest.approx(-1.4603545088095868, abs=1e-11)
    assert abs(z.imag) < 1e-12


def test_em_first_zero():
    assert abs(zeta_half_em(FIRST_ZERO)) < 1e-4


def test_em_refinement_consistency():
    a = zeta_half_em(1.0, 1e-12)
    b = zeta_half_em(1.0, 1e-12, terms=24)
    assert abs(a - b) < 1e-9


@settings(max_examples=25, deadline=None)
@given(st.floats(min_value=0.0, max_value=3000.0))
def test_em_against_mpmath(t):
    z, bound = zeta_half_em_with_bound(t, 1e-10)
    with mpmath.workdps(30):
        ref = complex(mpmath.zeta(mpmath.mpc(0.5, t)))
    assert abs(z - ref) < 1e-10
    assert bound < 1e-10


def test_em_high_t_uses_precise_backend():
    t = 9876.5
    with mpmath.workdps(30):
        ref = complex(mpmath.zeta(mpmath.mpc(0.5, t)))
    assert abs(zeta_half_em(t, 1e-11) - ref) < 1e-11


def test_em_errors():
    with pytest.raises(OutOfRangeError):
        zeta_half_em(1e4 + 1)
    with pytest.raises(OutOfRangeError):
        zeta_half_em(-1.0)
    with pytest.raises(ValueError):
        zeta_half_em(5.0, 1e-13)


def test_rs_rejects_low_t():
    with pytest.raises(OutOfRangeError):
        zeta_half_rs(9.99)
    with pytest.raises(OutOfRangeError):
        hardy_z_rs(np.array([12.0, 5.0]))


def test_rs_examples():
    assert abs(zeta_half_rs(100.0) - abs(zeta_half_em(100.0, 1e-12))) < 1e-6
    assert zeta_half_rs(FIRST_ZERO) < 1e-3
    assert zeta_half_rs(1e6) == zeta_half_rs(1e6)


@pytest.mark.parametrize("t", [10.0, 10.7, 17.3, 25.1, 99.9, 500.0, 3333.3, 2e4, 1.2e5, 1e6])
def test_rs_against_mpmath_siegelz(t):
    tol = 1e-8 if t < 1e5 else 1e-7
    assert hardy_z_rs(t) == pytest.approx(mp_hardy_z(t), abs=tol)


def test_rs_block_independence():
    t = np.linspace(10, 3000, 70_001)
    whole = hardy_z_rs(t)
    pieces = np.concatenate([hardy_z_rs(t[i : i + 999]) for i in range(0, t.size, 999)])
    assert np.array_equal(whole, pieces)
    assert hardy_z_rs(float(t[12345])) == whole[12345]


def test_correction_orders_decrease():
    orders = correction_orders(np.array([10, 50, 500, 5000, 5e4]))
    assert list(orders) == sorted(orders, reverse=True)
    assert orders.min() >= 2


def test_siegel_theta_accuracy():
    for t in (10.0, 100.0, 1e4):
        assert siegel_theta(t) == pytest.approx(float(mpmath.siegeltheta(t)), abs=1e-12 * max(1, t))


def test_functional_equation_route():
    """|zeta| from the Euler-Maclaurin sum equals |Z| from the Hardy-function route."""
    rng = random.Random(7)
    for _ in range(100):
        t = rng.uniform(10, 1000)
        z = zeta_half_em(t, 1e-10)
        rotated = cmath.exp(1j * float(mpmath.siegeltheta(t))) * z
        assert abs(rotated.imag) < 1e-8
        assert abs(abs(z) - abs(hardy_z_rs(t))) < 1e-6


def test_sample_point_methods():
    lo, hi = sample_point(5.0), sample_point(50.0)
    assert lo.method is Method.EULER_MACLAURIN and hi.method is Method.RIEMANN_SIEGEL
    assert lo.value_sq == pytest.approx(mp_abs_zeta(5.0) ** 2, abs=1e-9)
    assert hi.value_sq == pytest.approx(mp_abs_zeta(50.0) ** 2, abs=1e-7)


def test_grid_rejects_coarse_step():
    with pytest.raises(ValueError):
        sample_critical_line(2, 3, 0.5)
    with pytest.raises(ValueError):
        sample_critical_line(1, 3, 0.01)
    with pytest.raises(ValueError):
        sample_critical_line(5, 5, 0.01)


def test_grid_first_zero():
    g = sample_critical_line(10, 20, 0.01)
    assert g.count == 1001
    assert np.all(np.isfinite(g.values)) and np.all(g.values >= 0)
    near = (g.times > 14.0) & (g.times < 14.3)
    assert g.values[near].min() < 1e-3
    assert abs(g.times[np.argmin(g.values)] - FIRST_ZERO) < 0.01


def test_grid_concatenation_and_threads():
    whole = sample_critical_line(10, 20, 0.01)
    a = sample_critical_line(10, 15, 0.01)
    b = sample_critical_line(15, 20, 0.01)
    assert np.array_equal(np.concatenate([a.values, b.values[1:]]), whole.values)
    big1 = sample_critical_line(2, 6000, 0.01, threads=1)
    big4 = sample_critical_line(2, 6000, 0.01, threads=4)
    assert np.array_equal(big1.values, big4.values)


def test_grid_length_rule():
    g = sample_critical_line(2.0, 3.0, 0.03)
    assert g.count == math.floor((3.0 - 2.0) / 0.03) + 1


def test_grid_times_shared_with_half_step():
    g = sample_critical_line(10, 12, 0.01)
    half = sample_critical_line(10, 12, 0.005)
    assert np.array_equal(half.times[::2], g.times)
    assert np.array_equal(half.values[::2], g.values)


def test_E_small_T_limit():
    vals = [abs(mean_square_error_E(T).value) for T in (1e-2, 1e-4, 1e-6)]
    assert vals[0] > vals[1] > vals[2]
    assert vals[2] < 1e-4


def test_E_100(grid_5000, grid_5000_half):
    e = mean_square_error_E(100, grid_5000)
    assert abs(e.value) <= 10 * 100**0.35
    e2 = mean_square_error_E(100, grid_5000_half)
    assert abs(e.value - e2.value) < e.error
    assert e.value == pytest.approx(3.46265409, abs=1e-5)


def test_E_against_mpmath_quadrature(grid_5000):
    with mpmath.workdps(20):
        head = mpmath.quad(lambda t: abs(mpmath.zeta(mpmath.mpc(0.5, t))) ** 2, mpmath.linspace(0, 50, 26))
        main = 50 * (mpmath.log(50 / (2 * mpmath.pi)) + 2 * mpmath.euler - 1)
    assert mean_square_error_E(50, grid_5000).value == pytest.approx(float(head - main), abs=1e-6)


def test_E_coverage_errors(grid_5000):
    with pytest.raises(ValueError):
        mean_square_error_E(6000, grid_5000)
    shifted = sample_critical_line(10, 20, 0.01)
    with pytest.raises(ValueError):
        mean_square_error_E(15, shifted)
