"""Bounding the largest squared parameter by exterior-power traces.

For a unitary class of rank ``n`` with ``m = n // 2`` and constants from
:mod:`satake_bounds.constants`,

    max |alpha_i|^2  <=  c_n * (1 + sum_{j=1..m} |e_j(alpha)|^(2/j)).

The sum starts at ``j = 1``. Starting at ``j = 2`` is false already for
``n = 2`` (``diag(t, 1/t)`` with ``t > 2``); ``start_j=2`` is kept so the
counterexample stays reproducible.

All floating-point inequalities are asserted with an absolute slack of
``TOL = 1e-9``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, NamedTuple, Optional

import numpy as np

from .constants import ConstantTable, constant_table
from .params import (
    SpectralParams,
    UnitaryClass,
    elementary_symmetric,
    from_record,
    sample_unitary_class,
    sym2_trace,
    to_record,
)

__all__ = [
    "TOL",
    "CaseReport",
    "max_modulus_sq",
    "classify_case",
    "trace_bound",
    "trace_split_check",
    "lrs_delta",
    "lrs_threshold",
    "lrs_check",
    "prime_majorization_bound",
    "verify_bound",
    "replay_counterexample",
]

TOL = 1e-9


def _params(x: SpectralParams | UnitaryClass) -> SpectralParams:
    return x.params if isinstance(x, UnitaryClass) else x


def _require_sorted(uclass: UnitaryClass, table: ConstantTable) -> SpectralParams:
    params = _params(uclass)
    if table.n != params.n:
        raise ValueError(f"table is for n={table.n} but parameters have n={params.n}")
    if not params.is_sorted():
        raise ValueError("parameters must be sorted by decreasing modulus")
    return params


def max_modulus_sq(params: SpectralParams | UnitaryClass) -> float:
    return max(abs(v) for v in _params(params).values) ** 2


@dataclass(frozen=True)
class CaseReport:
    case_tag: Literal["case_i", "case_ii"]
    j: Optional[int]
    # case_i: R_{j+1} |alpha_1|^j; case_ii: c_n = R_{m+1}^-2
    lower_bound_witness: float
    # case_i: |e_j|; case_ii: max |alpha_i|^2
    observed: float

    @property
    def holds(self) -> bool:
        if self.case_tag == "case_i":
            return self.observed >= self.lower_bound_witness - TOL
        return self.observed <= self.lower_bound_witness + TOL


def classify_case(uclass: UnitaryClass, table: ConstantTable) -> CaseReport:
    """Decide which threshold case applies and record the inequality it yields.

    Case (i) with index ``j``: ``|alpha_i| >= R_i |alpha_1|`` for ``i <= j``
    and ``|alpha_{j+1}| <= R_{j+1} |alpha_1|``; the first such ``j`` wins and
    then ``|e_j| >= R_{j+1} |alpha_1|^j``. Otherwise case (ii):
    ``|alpha_{m+1}| >= R_{m+1} |alpha_1|``, so ``|alpha_1|^2 <= c_n``.
    """
    params = _require_sorted(uclass, table)
    mods = params.moduli
    R = table.R_float()
    top = mods[0]
    m = table.m
    for j in range(1, m + 1):
        head_ok = all(mods[i - 1] >= R[i - 1] * top for i in range(1, j + 1))
        if head_ok and mods[j] <= R[j] * top:
            e_j = elementary_symmetric(params.values)[j]
            return CaseReport("case_i", j, R[j] * top**j, abs(e_j))
    # the two cases are exhaustive
    assert mods[m] >= R[m] * top
    return CaseReport("case_ii", None, table.c_n_float(), top * top)


def trace_bound(uclass: UnitaryClass, table: ConstantTable, start_j: int = 1) -> float:
    if start_j not in (1, 2):
        raise ValueError("start_j must be 1 or 2")
    params = _require_sorted(uclass, table)
    e = elementary_symmetric(params.values)
    tail = sum(abs(e[j]) ** (2.0 / j) for j in range(start_j, table.m + 1))
    return table.c_n_float() * (1.0 + tail)


def prime_majorization_bound(uclass: UnitaryClass, table: ConstantTable) -> float:
    """``c_n (m + |e_1|^2 + sum_{j=2..m} |e_j|)``.

    Dominates :func:`trace_bound` term by term since ``x^(2/j) <= 1 + x``
    for ``j >= 2``.
    """
    params = _require_sorted(uclass, table)
    e = elementary_symmetric(params.values)
    s = table.m + abs(e[1]) ** 2 + sum(abs(e[j]) for j in range(2, table.m + 1))
    return table.c_n_float() * s


class TraceSplit(NamedTuple):
    trace_sq: float
    sym2: float
    ext2: float
    identity_error: float


def trace_split_check(params: SpectralParams) -> TraceSplit:
    """``(|Tr A|^2, |Tr sym^2 A|, |Tr wedge^2 A|)`` plus the relative error of
    ``(Tr A)^2 = Tr sym^2 A + Tr wedge^2 A``."""
    params = _params(params)
    e = elementary_symmetric(params.values)
    t1 = e[1]
    t_sym = sym2_trace(params)
    t_ext = e[2] if params.n >= 2 else 0
    lhs = t1 * t1
    scale = max(abs(lhs), abs(t_sym) + abs(t_ext), 1e-300)
    return TraceSplit(abs(t1) ** 2, abs(t_sym), abs(t_ext), abs(lhs - t_sym - t_ext) / scale)


def lrs_delta(n: int) -> float:
    return 1.0 / (n * n + 1)


def lrs_threshold(prime_norm: float, n: int) -> float:
    return prime_norm ** (0.5 - lrs_delta(n))


def lrs_check(params: SpectralParams | UnitaryClass) -> bool:
    """All moduli inside ``[Np^-(1/2 - delta), Np^(1/2 - delta)]``."""
    params = _params(params)
    if params.prime_norm is None:
        raise ValueError("lrs_check needs prime_norm")
    thr = lrs_threshold(params.prime_norm, params.n)
    return all(1.0 / thr - TOL <= m <= thr + TOL for m in params.moduli)


# ---------------------------------------------------------------------------
# Monte Carlo campaign

def verify_bound(
    n: int,
    trials: int,
    seed: int,
    max_modulus: float = 100.0,
    start_j: int = 1,
) -> dict:
    """Sample unitary classes and test ``max^2 <= trace_bound``.

    Trial ``i`` uses the ``i``-th word of ``SeedSequence(seed)`` as its
    sampler seed. The report lists the first violation (if any) as a
    serialized record that :func:`replay_counterexample` accepts.
    """
    table = constant_table(n)
    seeds = np.random.SeedSequence(seed).generate_state(max(trials, 1))[:trials]
    failures = 0
    worst = 0.0
    hist = {"case_i": 0, "case_ii": 0}
    witness_failures = 0
    counterexample = None
    for s in seeds:
        uc = sample_unitary_class(n, max_modulus, int(s)).sorted()
        lhs = max_modulus_sq(uc)
        rhs = trace_bound(uc, table, start_j)
        worst = max(worst, lhs / rhs)
        rep = classify_case(uc, table)
        hist[rep.case_tag] += 1
        if not rep.holds:
            witness_failures += 1
        if lhs > rhs + TOL:
            failures += 1
            if counterexample is None:
                counterexample = {
                    "sample_seed": int(s),
                    "start_j": start_j,
                    "max_modulus_sq": lhs,
                    "bound": rhs,
                    "class": to_record(uc),
                }
    return {
        "check": "trace-majorization",
        "n": n,
        "trials": trials,
        "seed": seed,
        "max_modulus": max_modulus,
        "start_j": start_j,
        "failures": failures,
        "witness_failures": witness_failures,
        "worst_ratio": worst,
        "case_histogram": hist,
        "counterexample": counterexample,
    }


def replay_counterexample(record: dict) -> dict:
    """Re-evaluate a serialized counterexample from :func:`verify_bound`."""
    uc = from_record(record["class"])
    if not isinstance(uc, UnitaryClass):
        raise ValueError("counterexample record lacks a pairing")
    uc = uc.sorted()
    table = constant_table(uc.n)
    lhs = max_modulus_sq(uc)
    rhs = trace_bound(uc, table, record.get("start_j", 1))
    return {
        "check": "trace-majorization",
        "start_j": record.get("start_j", 1),
        "max_modulus_sq": lhs,
        "bound": rhs,
        "violated": bool(lhs > rhs + TOL),
    }
