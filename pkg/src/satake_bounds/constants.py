"""Exact constants of the trace majorization.

For rank ``n`` with ``m = n // 2`` the table holds

* ``r_j = C(n, j)``, the number of terms of ``e_j`` (``r_0 = 1``),
* thresholds ``R_1 = 1`` and ``R_j = (R_1 ... R_{j-1}) / r_{j-1}``,
* the leading constant ``c_n = R_{m+1}**-2``.

Every ``R_j`` is a unit fraction ``1/D_j`` with ``D_j = D_1 ... D_{j-1} r_{j-1}``,
so the table also keeps each ``D_j`` as an exponent vector over ``r_1..r_m``.
``log2 D_{m+1}`` roughly doubles with each ``j``, which makes the literal
rationals unmanageable past ``n = 32`` (``n = 64`` would need ~2e10 bits);
beyond that only the exponent form and logarithms are available.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

__all__ = [
    "N_MAX",
    "EXACT_N_MAX",
    "ConstantTable",
    "constant_table",
    "subset_counts",
    "threshold_sequence",
    "leading_constant",
]

N_MAX = 64
EXACT_N_MAX = 32


def _check_n(n: int, lo: int) -> None:
    if int(n) != n or not lo <= n <= N_MAX:
        raise ValueError(f"n must be an integer in [{lo}, {N_MAX}], got {n!r}")


def subset_counts(n: int) -> list[int]:
    _check_n(n, 1)
    return [math.comb(n, j) for j in range(n // 2 + 1)]


@dataclass(frozen=True)
class ConstantTable:
    n: int
    m: int
    r: tuple[int, ...]
    # exponents[j-1][i] is the power of r_i in D_j, for j = 1..m+1, i = 0..m
    exponents: tuple[tuple[int, ...], ...]

    @cached_property
    def denominators(self) -> tuple[int, ...]:
        """``D_1..D_{m+1}`` as exact integers."""
        if self.n > EXACT_N_MAX:
            raise OverflowError(
                f"exact thresholds are only materialized for n <= {EXACT_N_MAX}"
            )
        out: list[int] = []
        prod = 1
        for j in range(1, self.m + 2):
            d = 1 if j == 1 else prod * self.r[j - 1]
            out.append(d)
            prod *= d
        return tuple(out)

    @property
    def R(self) -> list[Fraction]:
        return [Fraction(1, d) for d in self.denominators]

    @property
    def c_n(self) -> Fraction:
        return Fraction(self.denominators[-1] ** 2)

    @cached_property
    def log_R(self) -> tuple[float, ...]:
        logs_r = [math.log(x) for x in self.r]
        return tuple(-sum(e * lr for e, lr in zip(row, logs_r)) for row in self.exponents)

    @property
    def log_c_n(self) -> float:
        return -2.0 * self.log_R[-1]

    def R_float(self) -> list[float]:
        return [math.exp(x) for x in self.log_R]

    def c_n_float(self) -> float:
        return float(self.c_n) if self.n <= EXACT_N_MAX else math.exp(self.log_c_n)


@lru_cache(maxsize=None)
def constant_table(n: int) -> ConstantTable:
    _check_n(n, 2)
    r = tuple(subset_counts(n))
    m = n // 2
    rows: list[list[int]] = []
    total = [0] * (m + 1)  # exponent vector of D_1 ... D_{j-1}
    for j in range(1, m + 2):
        row = [0] * (m + 1)
        if j > 1:
            row = list(total)
            row[j - 1] += 1
        rows.append(row)
        total = [a + b for a, b in zip(total, row)]
    return ConstantTable(n, m, r, tuple(tuple(row) for row in rows))


def threshold_sequence(n: int) -> list[Fraction]:
    return constant_table(n).R


def leading_constant(n: int) -> Fraction:
    return constant_table(n).c_n


def table_json(n: int) -> dict:
    t = constant_table(n)
    return {
        "n": t.n,
        "m": t.m,
        "r": list(t.r),
        "R": [str(x) for x in t.R],
        "c_n": str(t.c_n),
    }
