import math
import random

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import direct_D, lattice_r, mp_delta, trial_division_d
from zetadelta.constants import CONSTANTS
from zetadelta.divisor import (
    BYTES_PER_ENTRY,
    MAX_TABLE_LIMIT,
    circle_error,
    delta,
    delta_array,
    delta_integral,
    delta_star,
    delta_star_alternating,
    hyperbola_divisor_sum,
    sieve_divisor_counts,
    sieve_two_squares,
    stream_divisor_prefix,
)
from zetadelta.errors import OutOfRangeError, ResourceError


def test_constants_to_30_digits():
    assert str(CONSTANTS.euler_gamma).startswith("0.577215664901532860606512090082")
    assert str(CONSTANTS.pi).startswith("3.14159265358979323846264338327")


def test_small_tables():
    assert list(sieve_divisor_counts(1).counts[1:]) == [1]
    t = sieve_divisor_counts(12)
    assert t.counts[12] == 6
    assert list(t.counts[1:]) == [1, 2, 2, 3, 2, 4, 2, 4, 3, 4, 2, 6]


def test_sieve_matches_trial_division(table_1e4):
    expected = np.array([0] + [trial_division_d(n) for n in range(1, 10_001)])
    assert np.array_equal(table_1e4.counts.astype(np.int64), expected)


def test_table_invariants(table_1e4):
    c = table_1e4.counts
    assert c[1] == 1
    primes = [p for p in range(2, 10_001) if all(p % q for q in range(2, math.isqrt(p) + 1))]
    assert all(c[p] == 2 for p in primes)
    assert np.all(np.diff(table_1e4.prefix) >= 0)
    assert table_1e4.prefix[-1] == int(c.sum())


def test_threaded_sieve_identical():
    a = sieve_divisor_counts(3_000_000, threads=1)
    b = sieve_divisor_counts(3_000_000, threads=4)
    assert np.array_equal(a.counts, b.counts)


def test_invalid_limits():
    with pytest.raises(ValueError):
        sieve_divisor_counts(0)
    with pytest.raises(ResourceError):
        sieve_divisor_counts(MAX_TABLE_LIMIT + 1)
    assert BYTES_PER_ENTRY == 12


def test_streaming_prefix_matches_table(table_1e4):
    blocks = list(stream_divisor_prefix(10_000, start=1, block=777))
    prefix = np.concatenate([p for _, _, p in blocks])
    assert np.array_equal(prefix, table_1e4.prefix[1:])
    lo, _, p = next(stream_divisor_prefix(10_000, start=5000, block=100))
    assert lo == 5000 and p[0] == table_1e4.prefix[5000]


def test_delta_values(table_1e4):
    assert delta(2, table_1e4) == pytest.approx(1.3048429792739779, abs=1e-15)
    assert delta(10, table_1e4) == pytest.approx(2.4298357720288859, abs=1e-14)
    assert table_1e4.divisor_sum(10) == 27


@pytest.mark.parametrize("x", [1.5, 7.25, 100.0, 999.9, 2024.5])
def test_delta_against_direct_summation(table_1e4, x):
    assert delta(x, table_1e4) == pytest.approx(float(mp_delta(x)), abs=1e-10)


@pytest.mark.parametrize("n", [2, 12, 360, 5040])
def test_delta_jump_is_d_n(table_1e4, n):
    below = delta(n - 1e-9, table_1e4)
    at = delta(n, table_1e4)
    assert at - below == pytest.approx(int(table_1e4.counts[n]), abs=1e-6)


def test_delta_errors(table_1e4):
    with pytest.raises(ValueError):
        delta(0.5, table_1e4)
    with pytest.raises(OutOfRangeError):
        delta(10_001, table_1e4)


def test_delta_array_matches_scalar(table_1e4):
    x = np.linspace(1, 9_999, 257)
    got = delta_array(x, table_1e4)
    want = np.array([delta(v, table_1e4) for v in x])
    assert np.max(np.abs(got - want)) < 1e-9


def test_delta_star_values(table_1e4):
    assert delta_star(2, table_1e4) == pytest.approx(1.3048429792739779, abs=1e-14)
    assert delta_star_alternating(2, table_1e4) == pytest.approx(1.3048429792739779, abs=1e-14)
    assert int(table_1e4.alternating_prefix[8]) == 6
    assert delta_star(1, table_1e4) == pytest.approx(0.8455686701969343, abs=1e-14)


@settings(max_examples=200, deadline=None)
@given(x=st.floats(min_value=1.0, max_value=2500.0, allow_nan=False))
def test_delta_star_identity(table_1e4, x):
    a, b = delta_star(x, table_1e4), delta_star_alternating(x, table_1e4)
    assert abs(a - b) <= 1e-9 * max(1.0, abs(a))


def test_two_squares_matches_lattice(squares_1e4):
    r = squares_1e4.counts
    assert r[0] == 1
    for n in list(range(0, 400)) + random.Random(1).sample(range(400, 10_001), 200):
        assert r[n] == lattice_r(n)


def test_two_squares_invariants(squares_1e4):
    r = squares_1e4.counts
    assert np.all(r >= 0)
    for p in range(3, 10_001, 4):
        if all(p % q for q in range(2, math.isqrt(p) + 1)):
            assert r[p] == 0


def test_circle_error(squares_1e4):
    assert circle_error(2, squares_1e4) == pytest.approx(8 - 2 * math.pi, abs=1e-14)
    assert circle_error(3, squares_1e4) == pytest.approx(8 - 3 * math.pi, abs=1e-14)
    assert circle_error(0.5, squares_1e4) == pytest.approx(-math.pi / 2, abs=1e-15)
    assert sieve_two_squares(10).counts.tolist() == [1, 4, 4, 0, 4, 8, 0, 0, 4, 4, 8]


@pytest.fixture(scope="module")
def prefix_1e6():
    return sieve_divisor_counts(10**6).prefix


@settings(max_examples=300, deadline=None)
@given(x=st.integers(min_value=1, max_value=10**6))
def test_hyperbola_matches_sieve(prefix_1e6, x):
    assert hyperbola_divisor_sum(x) == prefix_1e6[x]


def test_hyperbola_small_direct():
    for x in [1, 2, 3.7, 10, 99.5, 500]:
        assert hyperbola_divisor_sum(x) == direct_D(x)


def test_delta_integral_matches_mpmath_quad(table_1e4):
    a, b = 2.5, 40.75
    pieces = [a] + list(range(3, 41)) + [b]
    with mpmath.workdps(30):
        want = mpmath.fsum(
            mpmath.quad(lambda t, n=int(lo): direct_D(n) - t * (mpmath.log(t) + 2 * mpmath.euler - 1), [lo, hi])
            for lo, hi in zip(pieces, pieces[1:])
        )
    assert delta_integral(a, b, table_1e4) == pytest.approx(float(want), abs=1e-10)


def test_mean_smallness(table_1e5):
    for T in (1e3, 1e4, 1e5):
        mean = delta_integral(2, T, table_1e5) / T
        assert abs(mean) <= 5 * T**0.25
