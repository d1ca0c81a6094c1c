"""The acceptance matrix: one deterministic check per criterion.

Each ``criterion_*`` function returns a :class:`Row`. ``worst_margin`` is
the smallest normalized slack seen by the check (tolerance minus error, or
``1 - lhs/rhs`` for inequalities); it is negative exactly when something
failed. Random instances come from ``SeedSequence([seed, criterion, ...])``
so rows are reproducible one at a time.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from decimal import Decimal, getcontext
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from .constants import constant_table, leading_constant
from .dirichlet import (
    CMSeries,
    bootstrap_iterations,
    linear_extraction_check,
    maxsq_euler_factor,
    primes_upto,
    ramified_factor_bound,
    ramified_threshold,
    run_bootstrap,
    square_identity_check,
    square_identity_table,
    truncated_euler_factor,
)
from .majorization import (
    lrs_delta,
    lrs_threshold,
    max_modulus_sq,
    trace_bound,
    trace_split_check,
    verify_bound,
)
from .params import SpectralParams, UnitaryClass, sample_unitary_class
from .symfunc import (
    cauchy_schwarz_check,
    coefficient_domination_check,
    conjugate_values,
    euler_expand,
    partitions,
    random_gaussian_rationals,
    rankin_coefficients,
    schur_eval,
    schur_tableaux,
    self_pair_coefficient,
)

__all__ = ["Row", "CRITERIA", "CHECK_NAMES", "run_criterion", "report", "DEFAULT_SEED"]

DEFAULT_SEED = 0
FULL_TRIALS = 10_000


@dataclass
class Row:
    criterion: int
    check: str
    passed: Optional[bool]
    worst_margin: Optional[float]
    detail: dict = field(default_factory=dict)
    runtime_s: Optional[float] = None

    @property
    def status(self) -> str:
        return "skip" if self.passed is None else ("pass" if self.passed else "fail")

    def as_dict(self, timings: bool = False) -> dict:
        out = {
            "criterion": self.criterion,
            "check": self.check,
            "status": self.status,
            "worst_margin": self.worst_margin,
            "detail": self.detail,
        }
        if timings:
            out["runtime_s"] = self.runtime_s
        return out


def _rng(seed: int, *keys: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, *keys]))


def _sub_seed(seed: int, *keys: int) -> int:
    return int(np.random.SeedSequence([seed, *keys]).generate_state(1)[0])


def _scaled(default: int, trials: Optional[int]) -> int:
    if trials is None:
        return default
    return max(1, math.ceil(default * trials / FULL_TRIALS))


def _rel(a, b) -> float:
    d = abs(a - b)
    return 0.0 if d == 0 else d / max(abs(a), abs(b))


# ---------------------------------------------------------------------------
# 1-3: constants and the trace majorization

def criterion_constants(seed: int, trials: Optional[int]) -> Row:
    expected = {2: 4, 3: 9, 4: 576, 5: 2500}
    mismatches = {}
    for n, want in expected.items():
        # straight recurrence on Fractions, independent of the exponent table
        R = [Fraction(1)]
        for j in range(2, n // 2 + 2):
            R.append(math.prod(R) / math.comb(n, j - 1))
        recurrence = 1 / R[-1] ** 2
        got = leading_constant(n)
        if not got == recurrence == want:
            mismatches[n] = [str(got), str(recurrence), want]
    ok = not mismatches
    return Row(1, "constants", ok, 0.0 if ok else -1.0,
               {"c_n": {str(n): str(leading_constant(n)) for n in expected}, "mismatches": mismatches})


def criterion_trace_majorization(seed: int, trials: Optional[int]) -> Row:
    count = _scaled(FULL_TRIALS, trials)
    per_n = {}
    margin = math.inf
    ok = True
    for n in range(2, 9):
        res = verify_bound(n, count, _sub_seed(seed, 2, n), max_modulus=1e3)
        ok &= res["failures"] == 0 and res["witness_failures"] == 0
        margin = min(margin, 1.0 - res["worst_ratio"])
        if res["witness_failures"]:
            margin = min(margin, -1.0)
        per_n[str(n)] = {
            "failures": res["failures"],
            "witness_failures": res["witness_failures"],
            "worst_ratio": res["worst_ratio"],
            "case_histogram": res["case_histogram"],
        }
    return Row(2, "trace-majorization", ok, margin,
               {"trials_per_n": count, "max_modulus": 1e3, "per_n": per_n})


def criterion_falsification(seed: int, trials: Optional[int]) -> Row:
    uc = UnitaryClass(SpectralParams([10, 0.1]), (1, 0)).sorted()
    table = constant_table(2)
    lhs = max_modulus_sq(uc)
    rhs = trace_bound(uc, table, start_j=2)
    campaign = verify_bound(2, _scaled(100, trials), _sub_seed(seed, 3), max_modulus=10, start_j=2)
    ok = lhs > rhs and campaign["failures"] > 0
    return Row(3, "trace-majorization-without-first-trace", ok, lhs / rhs - 1.0,
               {"max_modulus_sq": lhs, "bound_start_j_2": rhs,
                "bound_start_j_1": trace_bound(uc, table, start_j=1),
                "random_failures": campaign["failures"], "random_trials": campaign["trials"]})


# ---------------------------------------------------------------------------
# 4-7: traces, Schur functions, local coefficients

def criterion_trace_split(seed: int, trials: Optional[int]) -> Row:
    tol = 1e-10
    count = _scaled(FULL_TRIALS, trials)
    rng = _rng(seed, 4)
    worst = 0.0
    for _ in range(count):
        n = int(rng.integers(1, 9))
        vals = rng.normal(size=n) + 1j * rng.normal(size=n)
        worst = max(worst, trace_split_check(SpectralParams(vals)).identity_error)
    return Row(4, "trace-split", worst <= tol, tol - worst,
               {"samples": count, "worst_relative_error": worst, "tolerance": tol})


def criterion_cauchy(seed: int, trials: Optional[int]) -> Row:
    tol = 1e-8
    r_max = 8
    count = _scaled(1000, trials)
    exact_count = _scaled(50, trials)
    worst = 0.0
    for n in range(1, 5):
        for k in range(count):
            a = sample_unitary_class(n, 4.0, _sub_seed(seed, 5, n, k, 0)).params
            b = sample_unitary_class(n, 4.0, _sub_seed(seed, 5, n, k, 1)).params
            for lhs, rhs in zip(rankin_coefficients(a, b, r_max), euler_expand(a, b, r_max)):
                worst = max(worst, _rel(lhs, rhs))
    rng = _rng(seed, 5, 0)
    exact_mismatches = 0
    for k in range(exact_count):
        n = 1 + k % 4
        a, b = random_gaussian_rationals(rng, n), random_gaussian_rationals(rng, n)
        got = rankin_coefficients(a, b, r_max, exact=True)
        want = euler_expand(a, b, r_max, exact=True)
        exact_mismatches += sum(1 for x, y in zip(got, want) if x - y)
    ok = worst <= tol and exact_mismatches == 0
    return Row(5, "cauchy", ok, tol - worst if not exact_mismatches else -1.0,
               {"float_samples_per_n": count, "worst_relative_error": worst, "tolerance": tol,
                "exact_samples": exact_count, "exact_mismatches": exact_mismatches})


def criterion_schur_oracle(seed: int, trials: Optional[int]) -> Row:
    rng = _rng(seed, 6)
    shapes = 0
    mismatches = []
    for n in range(1, 5):
        point = random_gaussian_rationals(rng, n)
        for w in range(9):
            for lam in partitions(w, n):
                shapes += 1
                if schur_eval(lam, point, exact=True) - schur_tableaux(lam, point, exact=True):
                    mismatches.append([n, list(lam)])
    ok = not mismatches
    return Row(6, "schur-oracle", ok, 0.0 if ok else -1.0,
               {"shapes": shapes, "mismatches": mismatches})


def criterion_coefficients(seed: int, trials: Optional[int]) -> Row:
    count = _scaled(FULL_TRIALS, trials)
    rng = _rng(seed, 7)
    tol = 1e-9
    worst_dom = worst_cs = worst_eq = 0.0
    min_self = math.inf
    for k in range(count):
        n = int(rng.integers(1, 5))
        r = int(rng.integers(0, 9))
        a = sample_unitary_class(n, 4.0, _sub_seed(seed, 7, k, 0)).params
        b = sample_unitary_class(int(rng.integers(1, 5)), 4.0, _sub_seed(seed, 7, k, 1)).params
        min_self = min(min_self, self_pair_coefficient(a, r))
        lhs, rhs = coefficient_domination_check(a, r)
        worst_dom = max(worst_dom, lhs / rhs)
        lhs, rhs = cauchy_schwarz_check(a, b, r)
        worst_cs = max(worst_cs, lhs / rhs)
        # the diagonal of the Hermitian pairing is (pi, contragredient of pi)
        lhs, rhs = cauchy_schwarz_check(a, conjugate_values(a.values), r)
        worst_eq = max(worst_eq, _rel(lhs, rhs))
    ok = min_self >= -1e-12 and worst_dom <= 1 + tol and worst_cs <= 1 + tol and worst_eq <= tol
    margin = min(1 + tol - worst_dom, 1 + tol - worst_cs, tol - worst_eq)
    return Row(7, "coefficient-inequalities", ok, margin,
               {"instances": count, "min_self_pair": min_self,
                "worst_domination_ratio": worst_dom, "worst_cauchy_schwarz_ratio": worst_cs,
                "worst_diagonal_equality_error": worst_eq})


# ---------------------------------------------------------------------------
# 8-11: Dirichlet series and local factors

def criterion_square_identity(seed: int, trials: Optional[int]) -> Row:
    x_max = 300
    tol = 1e-9
    count = _scaled(20, trials)
    primes = primes_upto(x_max * x_max)
    worst_eq = 0.0
    worst_dom = 0.0
    for k in range(count):
        vals = _rng(seed, 8, k).uniform(0.0, 3.0, size=len(primes))
        series = CMSeries(dict(zip(primes.tolist(), vals.tolist())), p_max=x_max * x_max, default=None)
        sq, restricted, weighted = square_identity_table(series, x_max)
        worst_eq = max(worst_eq, float(np.max(np.abs(sq - restricted) / sq)))
        worst_dom = max(worst_dom, float(np.max(restricted / weighted)))
    golden = square_identity_check(CMSeries.constant(1.0), 3)
    ok = worst_eq <= tol and worst_dom <= 1 + 1e-12 and tuple(golden) == (9.0, 9.0, 23.0)
    return Row(8, "square-identity", ok, min(tol - worst_eq, 1 + 1e-12 - worst_dom),
               {"series": count, "x_max": x_max, "worst_relative_error": worst_eq,
                "worst_domination_ratio": worst_dom, "worked_value": list(golden)})


def criterion_bootstrap(seed: int, trials: Optional[int]) -> Row:
    eps = 0.05
    records = run_bootstrap(CMSeries.constant(4.0, 10_000), eps)
    final = records[-1]["measured_exponent"]
    formula = bootstrap_iterations(10, 0.1)
    ok = final < eps and all(r["holds"] for r in records) and formula == 7
    return Row(9, "bootstrap", ok, eps - final,
               {"initial_exponent": records[0]["initial_exponent"], "steps": len(records) - 1,
                "exponents": [r["measured_exponent"] for r in records],
                "premise_holds": [r["holds"] for r in records],
                "iterations_A10_eps0.1": formula})


def criterion_local_factors(seed: int, trials: Optional[int]) -> Row:
    tol = 1e-12
    worst_lin = 0.0
    for lam in np.linspace(0.0, 1.0, 10):
        for x in np.linspace(0.0, 0.99, 10):
            a, b = linear_extraction_check(float(lam), float(x))
            worst_lin = max(worst_lin, _rel(a, b))

    rng = _rng(seed, 10)
    small_primes = primes_upto(100)
    worst_euler = 0.0
    euler_cases = 0
    for k in range(_scaled(200, trials)):
        n = int(rng.integers(2, 5))
        Np = int(rng.choice(small_primes))
        sigma = float(rng.choice([1.0, 1.5, 2.0]))
        uc = sample_unitary_class(n, lrs_threshold(Np, n), _sub_seed(seed, 10, k))
        uc = UnitaryClass(SpectralParams(uc.params.values, Np), uc.pairing, uc.tolerance)
        max_sq = max_modulus_sq(uc)
        if max_sq * Np ** (-sigma) > 0.9:
            continue
        euler_cases += 1
        # 0.9**401 < 1e-18, far below double rounding
        worst_euler = max(worst_euler, _rel(maxsq_euler_factor(uc, sigma),
                                            truncated_euler_factor(max_sq, Np, sigma, r_max=400)))

    np_floor = 17
    large = [int(p) for p in primes_upto(10_000) if p >= np_floor]
    ram_margin = math.inf
    ram_failures = {}
    for n in range(1, 5):
        bad = []
        for p in large:
            rb = ramified_factor_bound(p, n)
            ram_margin = min(ram_margin, (rb.bound - rb.closed_form) / rb.closed_form)
            if not rb.holds:
                bad.append(p)
        if bad:
            ram_failures[str(n)] = {"count": len(bad), "largest": bad[-1]}
    thresholds = {str(n): ramified_threshold(n).exact for n in range(1, 5)}

    ok = worst_lin <= tol and worst_euler <= tol and not ram_failures
    return Row(10, "local-factors", ok, min(tol - worst_lin, tol - worst_euler, ram_margin),
               {"linear_extraction_worst": worst_lin, "euler_factor_cases": euler_cases,
                "euler_factor_worst": worst_euler, "ramified_prime_floor": np_floor,
                "ramified_failures": ram_failures, "ramified_measured_threshold": thresholds})


def criterion_lrs(seed: int, trials: Optional[int]) -> Row:
    golden = "1.515717"
    getcontext().prec = 30
    independent = Decimal(4) ** (Decimal(3) / Decimal(10))
    got = lrs_threshold(4, 2)
    digits = f"{independent:.7g}"
    ok = lrs_delta(2) == 0.2 and f"{got:.7g}" == digits == golden
    return Row(11, "lrs-threshold", ok, 5e-7 - abs(got - float(golden)),
               {"delta_n2": lrs_delta(2), "threshold": got, "independent": digits, "golden": golden})


CRITERIA: dict[int, Callable[[int, Optional[int]], Row]] = {
    1: criterion_constants,
    2: criterion_trace_majorization,
    3: criterion_falsification,
    4: criterion_trace_split,
    5: criterion_cauchy,
    6: criterion_schur_oracle,
    7: criterion_coefficients,
    8: criterion_square_identity,
    9: criterion_bootstrap,
    10: criterion_local_factors,
    11: criterion_lrs,
}

CHECK_NAMES = {
    1: "constants",
    2: "trace-majorization",
    3: "trace-majorization-without-first-trace",
    4: "trace-split",
    5: "cauchy",
    6: "schur-oracle",
    7: "coefficient-inequalities",
    8: "square-identity",
    9: "bootstrap",
    10: "local-factors",
    11: "lrs-threshold",
}


def run_criterion(k: int, seed: int = DEFAULT_SEED, trials: Optional[int] = None) -> Row:
    """Run one row. ``trials=0`` skips it; other values scale the sample counts
    relative to ``FULL_TRIALS``."""
    if trials == 0:
        return Row(k, CHECK_NAMES[k], None, None, {"reason": "trials=0"})
    t0 = time.perf_counter()
    row = CRITERIA[k](seed, trials)
    row.runtime_s = time.perf_counter() - t0
    return row


def report(seed: int = DEFAULT_SEED, trials: Optional[int] = None,
           criteria: Optional[list[int]] = None) -> list[Row]:
    return [run_criterion(k, seed, trials) for k in (criteria or sorted(CRITERIA))]
