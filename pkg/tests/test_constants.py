import math
from fractions import Fraction

import pytest

from satake_bounds.constants import (
    EXACT_N_MAX,
    N_MAX,
    constant_table,
    leading_constant,
    subset_counts,
    table_json,
    threshold_sequence,
)


def recurrence(n):
    """Independent evaluation of R_1..R_{m+1} with Fractions."""
    m = n // 2
    R = [Fraction(1)]
    for j in range(2, m + 2):
        prod = Fraction(1)
        for x in R:
            prod *= x
        R.append(prod / math.comb(n, j - 1))
    return R


@pytest.mark.parametrize("n, expected", [(4, [1, 4, 6]), (2, [1, 2]), (8, [1, 8, 28, 56, 70])])
def test_subset_counts(n, expected):
    assert subset_counts(n) == expected


@pytest.mark.parametrize(
    "n, expected",
    [(4, ["1", "1/4", "1/24"]), (2, ["1", "1/2"]), (5, ["1", "1/5", "1/50"])],
)
def test_threshold_examples(n, expected):
    assert threshold_sequence(n) == [Fraction(x) for x in expected]


@pytest.mark.parametrize("n, c", [(2, 4), (3, 9), (4, 576), (5, 2500)])
def test_leading_constant_examples(n, c):
    assert leading_constant(n) == c


@pytest.mark.parametrize("n", range(2, EXACT_N_MAX + 1))
def test_table_matches_independent_recurrence(n):
    t = constant_table(n)
    R = recurrence(n)
    assert t.R == R
    assert t.c_n == 1 / R[-1] ** 2
    for j in range(1, t.m + 1):
        assert R[j] * t.r[j] == math.prod(R[:j])


@pytest.mark.parametrize("n", range(2, N_MAX + 1))
def test_thresholds_strictly_decrease(n):
    t = constant_table(n)
    # D_{j+1} = D_1..D_j r_j has every exponent of D_j plus at least r_j itself
    for a, b in zip(t.exponents, t.exponents[1:]):
        assert all(y >= x for x, y in zip(a, b)) and a != b
    assert all(x < y for x, y in zip(t.log_R[1:], t.log_R)) or t.m == 0
    if n <= EXACT_N_MAX:
        R = t.R
        assert R[0] == 1 and all(0 < b < a for a, b in zip(R, R[1:]))


@pytest.mark.parametrize("n", range(2, N_MAX))
def test_leading_constant_nondecreasing(n):
    a, b = constant_table(n), constant_table(n + 1)
    if b.n <= EXACT_N_MAX:
        assert a.c_n <= b.c_n
    assert a.log_c_n <= b.log_c_n + 1e-9 * abs(b.log_c_n)


def test_large_n_only_in_log_form():
    t = constant_table(64)
    with pytest.raises(OverflowError):
        t.denominators
    assert math.isfinite(t.log_c_n) and t.log_c_n > 0


@pytest.mark.parametrize("bad", [1, 0, 65, 2.5])
def test_rejects_out_of_range_n(bad):
    with pytest.raises(ValueError):
        constant_table(bad)


def test_table_json():
    assert table_json(4) == {"n": 4, "m": 2, "r": [1, 4, 6], "R": ["1", "1/4", "1/24"], "c_n": "576"}
