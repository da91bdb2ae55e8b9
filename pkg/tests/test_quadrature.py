import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from zetadelta.quadrature import combine, panel_integrals, panel_rows, simpson, simpson_weights


@given(st.integers(min_value=1, max_value=400))
def test_weights_integrate_constants(n):
    assert math.fsum(simpson_weights(n)) == pytest.approx(n, rel=1e-13)


@pytest.mark.parametrize("n", [2, 3, 5, 8, 11])
def test_exact_for_cubics(n):
    x = np.linspace(0.0, 2.0, n + 1)
    y = 3 * x**3 - x**2 + 2
    assert simpson(y, 2.0 / n) == pytest.approx(3 * 4 - 8 / 3 + 4, rel=1e-13)


def test_trapezoid_single_interval():
    assert simpson([1.0, 3.0], 0.5) == 1.0


def test_panels_match_whole_range():
    h, P = 0.01, 100
    x = 2 + np.arange(0, 20 * P + 1) * h
    y = np.sin(x) * np.exp(x / 10)
    fine, coarse = panel_integrals(panel_rows(y, P, 0, 20), h)
    est = combine(fine, coarse)
    exact = _exact(22.0) - _exact(2.0)
    assert abs(est.value - exact) < 1e-8  # h^4 truncation
    assert abs(est.value - exact) < est.error


def _exact(t):
    # antiderivative of sin(t) e^(t/10)
    return math.exp(t / 10) * (math.sin(t) / 10 - math.cos(t)) / (1 + 1 / 100)


def test_rejects_empty():
    with pytest.raises(ValueError):
        simpson_weights(0)
