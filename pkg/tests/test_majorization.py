import math

import pytest
from hypothesis import given, strategies as st

from satake_bounds.constants import constant_table
from satake_bounds.majorization import (
    classify_case,
    lrs_check,
    lrs_delta,
    lrs_threshold,
    max_modulus_sq,
    prime_majorization_bound,
    replay_counterexample,
    trace_bound,
    trace_split_check,
    verify_bound,
)
from satake_bounds.params import SpectralParams, UnitaryClass, sample_unitary_class


def uclass(*vals, prime_norm=None):
    return UnitaryClass.from_params(SpectralParams(vals, prime_norm)).sorted()


DIAG4 = uclass(2, 0.5, 1j, -1j)


def test_max_modulus_sq():
    assert max_modulus_sq(DIAG4) == 4
    assert max_modulus_sq(uclass(1, 1, 1)) == 1
    assert max_modulus_sq(uclass(10, 0.1)) == pytest.approx(100)


def test_classify_examples():
    rep = classify_case(uclass(10, 0.1), constant_table(2))
    assert (rep.case_tag, rep.j) == ("case_i", 1)
    assert rep.lower_bound_witness == pytest.approx(5) and rep.observed == pytest.approx(10.1)
    rep = classify_case(uclass(1, 1), constant_table(2))
    assert rep.case_tag == "case_ii" and rep.holds


def brute_force_case(mods, R, m):
    """First j in 1..m meeting the case (i) conditions, else None."""
    top = mods[0]
    for j in range(1, m + 1):
        if all(mods[i] >= R[i] * top for i in range(j)) and mods[j] <= R[j] * top:
            return j
    return None


def test_classify_diag4_by_exhaustion():
    t = constant_table(4)
    rep = classify_case(DIAG4, t)
    j = brute_force_case(DIAG4.params.moduli, [float(x) for x in t.R], t.m)
    assert rep.j == j and rep.case_tag == ("case_i" if j else "case_ii")
    assert rep.holds


@given(st.integers(2, 10), st.floats(1, 1e4), st.integers(0, 2**32 - 1))
def test_classification_is_consistent(n, max_mod, seed):
    uc = sample_unitary_class(n, max_mod, seed).sorted()
    t = constant_table(n)
    R = t.R_float()
    mods = uc.params.moduli
    rep = classify_case(uc, t)
    assert rep.j == brute_force_case(mods, R, t.m)
    if rep.case_tag == "case_i":
        j = rep.j
        assert 1 <= j <= t.m
        assert all(mods[i] >= R[i] * mods[0] for i in range(j))
        assert mods[j] <= R[j] * mods[0]
    else:
        assert mods[t.m] >= R[t.m] * mods[0]
    assert rep.holds
    assert max_modulus_sq(uc) <= trace_bound(uc, t) + 1e-9


def test_trace_bound_examples():
    assert trace_bound(DIAG4, constant_table(4)) == pytest.approx(5328)
    assert trace_bound(uclass(1, 1), constant_table(2)) == pytest.approx(20)
    assert trace_bound(uclass(10, 0.1), constant_table(2), start_j=2) == 4


@pytest.mark.parametrize("t", [2.0001, 3, 10, 1e3])
def test_sum_from_second_trace_is_false(t):
    uc = uclass(t, 1 / t)
    table = constant_table(2)
    assert max_modulus_sq(uc) > trace_bound(uc, table, start_j=2)
    assert max_modulus_sq(uc) <= trace_bound(uc, table, start_j=1)


def test_trace_bound_rejects_bad_input():
    with pytest.raises(ValueError):
        trace_bound(UnitaryClass.from_params(SpectralParams([0.5, 2])), constant_table(2))
    with pytest.raises(ValueError):
        trace_bound(DIAG4, constant_table(2))
    with pytest.raises(ValueError):
        trace_bound(DIAG4, constant_table(4), start_j=3)


def test_prime_majorization_examples():
    assert prime_majorization_bound(DIAG4, constant_table(4)) == pytest.approx(5904)
    assert prime_majorization_bound(uclass(1, 1), constant_table(2)) == pytest.approx(20)
    w = complex(math.cos(2 * math.pi / 3), math.sin(2 * math.pi / 3))
    assert prime_majorization_bound(uclass(1, w, w * w), constant_table(3)) == pytest.approx(9)


@given(st.integers(2, 8), st.integers(0, 2**32 - 1))
def test_prime_bound_dominates_trace_bound(n, seed):
    uc = sample_unitary_class(n, 100, seed).sorted()
    t = constant_table(n)
    assert trace_bound(uc, t) <= prime_majorization_bound(uc, t) * (1 + 1e-12)


def test_trace_split_examples():
    s = trace_split_check(SpectralParams([1, 1]))
    assert s[:3] == (4, 3, 1)
    s = trace_split_check(SpectralParams([2, 0.5]))
    assert s[:3] == pytest.approx((6.25, 5.25, 1))
    s = trace_split_check(SpectralParams([3 + 4j]))
    assert s[:3] == pytest.approx((25, 25, 0))


@given(st.lists(st.tuples(st.floats(-5, 5), st.floats(-5, 5)).filter(lambda t: t != (0, 0)),
                min_size=1, max_size=8))
def test_trace_split_identity(pairs):
    assert trace_split_check(SpectralParams([complex(*p) for p in pairs])).identity_error <= 1e-10


def test_lrs_examples():
    assert lrs_delta(2) == pytest.approx(0.2)
    assert lrs_threshold(4, 2) == pytest.approx(1.515717, abs=5e-7)
    assert lrs_check(uclass(1.5, 1 / 1.5, prime_norm=4))
    assert not lrs_check(uclass(2, 0.5, prime_norm=4))
    assert lrs_check(uclass(1j, -1, 1, prime_norm=2))
    with pytest.raises(ValueError):
        lrs_check(uclass(1, 1))


@given(st.integers(1, 8), st.integers(2, 10**6), st.integers(0, 2**32 - 1))
def test_lrs_check_respects_inverse_conjugate(n, Np, seed):
    uc = sample_unitary_class(n, 10, seed)
    p = SpectralParams(uc.params.values, Np)
    assert lrs_check(p) == lrs_check(p.inverse_conjugate())


def test_verify_bound_is_deterministic_and_clean():
    a = verify_bound(5, 300, seed=11, max_modulus=1e3)
    assert a == verify_bound(5, 300, seed=11, max_modulus=1e3)
    assert a["failures"] == 0 and a["witness_failures"] == 0 and a["counterexample"] is None
    assert sum(a["case_histogram"].values()) == 300


def test_counterexample_replays():
    res = verify_bound(2, 100, seed=1, max_modulus=10, start_j=2)
    assert res["failures"] > 0
    rep = replay_counterexample(res["counterexample"])
    assert rep["violated"]
    assert rep["max_modulus_sq"] == res["counterexample"]["max_modulus_sq"]
