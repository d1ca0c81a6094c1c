"""Partitions, Schur functions and Rankin-Selberg local coefficients.

The local coefficient of the pairwise-product Euler factor is the complete
homogeneous function of the ``n1 * n2`` products ``alpha_i * beta_j``; the
Cauchy identity rewrites it as ``sum_lambda s_lambda(alpha) s_lambda(beta)``
over partitions of ``r`` with at most ``n`` parts. Both sides are computed
here independently so each can check the other.

Schur functions are evaluated with the Jacobi-Trudi determinant in the
``h_k``, which is polynomial in the inputs and stays well defined at
repeated or zero arguments (the Weyl quotient does not). With
``exact=True`` all arithmetic happens in the Gaussian rationals; floats are
converted exactly through their binary expansion.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Sequence

from sympy.polys.domains import QQ, QQ_I

from .params import SpectralParams

__all__ = [
    "Partition",
    "partitions",
    "to_exact",
    "complete_homogeneous",
    "schur_eval",
    "schur_tableaux",
    "semistandard_tableaux",
    "rankin_coefficient",
    "rankin_coefficients",
    "euler_expand",
    "self_pair_coefficient",
    "monomial_count",
    "coefficient_domination_check",
    "cauchy_schwarz_check",
    "majorant_scale",
    "random_gaussian_rationals",
    "conjugate_values",
]


class Partition(tuple):
    """Weakly decreasing tuple of positive integers."""

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"not a partition: {parts}")
        return super().__new__(cls, parts)

    @property
    def weight(self) -> int:
        return sum(self)

    def __repr__(self) -> str:
        return f"Partition({tuple(self)})"


def _partitions(r: int, max_len: int, max_part: int):
    if r == 0:
        yield ()
        return
    if max_len == 0:
        return
    for first in range(min(r, max_part), 0, -1):
        for rest in _partitions(r - first, max_len - 1, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _partition_table(r: int, n: int) -> tuple[Partition, ...]:
    return tuple(Partition(p) for p in _partitions(r, n, r))


def partitions(r: int, n: int) -> list[Partition]:
    """Partitions of ``r`` with at most ``n`` parts, reverse-lexicographic."""
    if r < 0 or n < 1:
        raise ValueError("need r >= 0 and n >= 1")
    return list(_partition_table(r, n))


# ---------------------------------------------------------------------------
# arithmetic back ends

def to_exact(x):
    """Exact Gaussian rational for an int, Fraction, float, complex or QQ_I element."""
    if isinstance(x, QQ_I.dtype):
        return x
    if isinstance(x, complex):
        re, im = Fraction(x.real), Fraction(x.imag)
    elif isinstance(x, (int, float, Rational)):
        re, im = Fraction(x), Fraction(0)
    else:
        raise TypeError(f"cannot convert {type(x).__name__} to a Gaussian rational")
    return QQ_I(QQ(re.numerator, re.denominator), QQ(im.numerator, im.denominator))


def _conj(x):
    if isinstance(x, QQ_I.dtype):
        return QQ_I(x.x, -x.y)
    return x.conjugate()


def _abs2(x) -> float:
    if isinstance(x, QQ_I.dtype):
        return float(x.x * x.x + x.y * x.y)
    return abs(x) ** 2


def _values(x, exact: bool) -> list:
    vals = x.values if isinstance(x, SpectralParams) else list(x)
    if exact:
        return [to_exact(v) for v in vals]
    return [complex(v) for v in vals]


def _ring(exact: bool):
    return (QQ_I.zero, QQ_I.one) if exact else (0j, 1 + 0j)


def complete_homogeneous(values: Sequence, kmax: int, exact: bool = False) -> list:
    """``h_0..h_kmax`` as coefficients of ``prod 1/(1 - x_i t)``."""
    zero, one = _ring(exact)
    h = [one] + [zero] * kmax
    for x in _values(values, exact):
        for k in range(1, kmax + 1):
            h[k] = h[k] + x * h[k - 1]
    return h


def _det(mat: list[list], exact: bool):
    """Determinant by Gaussian elimination (partial pivoting in float mode)."""
    a = [row[:] for row in mat]
    size = len(a)
    zero, one = _ring(exact)
    det = one
    for c in range(size):
        if exact:
            piv = next((r for r in range(c, size) if a[r][c]), None)
        else:
            piv = max(range(c, size), key=lambda r: abs(a[r][c]))
            if a[piv][c] == 0:
                piv = None
        if piv is None:
            return zero
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        p = a[c][c]
        det = det * p
        for r in range(c + 1, size):
            f = a[r][c] / p
            if f:
                for k in range(c + 1, size):
                    a[r][k] = a[r][k] - f * a[c][k]
    return det


def _schur_from_h(lam: Sequence[int], h: list, exact: bool):
    ell = len(lam)
    zero, one = _ring(exact)
    if ell == 0:
        return one
    mat = []
    for i in range(ell):
        row = []
        for j in range(ell):
            k = lam[i] - i + j
            row.append(h[k] if 0 <= k < len(h) else zero)
        mat.append(row)
    return _det(mat, exact)


def schur_eval(lam: Sequence[int], values, exact: bool = False):
    """``s_lambda(values)`` via Jacobi-Trudi."""
    lam = Partition(lam)
    vals = _values(values, exact)
    if len(lam) > len(vals):
        raise ValueError(f"partition {tuple(lam)} has more parts than {len(vals)} variables")
    h = complete_homogeneous(vals, lam[0] + len(lam) if lam else 0, exact)
    return _schur_from_h(lam, h, exact)


def semistandard_tableaux(lam: Sequence[int], letters: int):
    """Yield semistandard Young tableaux of shape ``lam`` with entries ``0..letters-1``.

    Rows weakly increase, columns strictly increase; each tableau is a
    tuple of row tuples.
    """
    lam = Partition(lam)
    cells = [(i, j) for i, row in enumerate(lam) for j in range(row)]
    grid = [[0] * row for row in lam]

    def fill(idx):
        if idx == len(cells):
            yield tuple(tuple(row) for row in grid)
            return
        i, j = cells[idx]
        lo = grid[i][j - 1] if j > 0 else 0
        if i > 0:
            lo = max(lo, grid[i - 1][j] + 1)
        for v in range(lo, letters):
            grid[i][j] = v
            yield from fill(idx + 1)

    yield from fill(0)


def schur_tableaux(lam: Sequence[int], values, exact: bool = False):
    """``s_lambda(values)`` as a sum of tableau monomials (slow; used as an oracle)."""
    vals = _values(values, exact)
    zero, one = _ring(exact)
    total = zero
    for tab in semistandard_tableaux(lam, len(vals)):
        term = one
        for row in tab:
            for v in row:
                term = term * vals[v]
        total = total + term
    return total


# ---------------------------------------------------------------------------
# Rankin-Selberg local coefficients

def _pad(a: list, b: list, zero) -> tuple[list, list]:
    n = max(len(a), len(b))
    return a + [zero] * (n - len(a)), b + [zero] * (n - len(b))


def _schur_row(vals: list, n: int, r: int, exact: bool) -> list:
    h = complete_homogeneous(vals, r + n, exact)
    return [_schur_from_h(lam, h, exact) for lam in _partition_table(r, n)]


def rankin_coefficient(p1, p2, r: int, exact: bool = False):
    """``sum over partitions of r with <= n parts of s_lam(alpha) s_lam(beta)``.

    The shorter argument is padded with zeros to the common length ``n``.
    """
    zero, _ = _ring(exact)
    a, b = _pad(_values(p1, exact), _values(p2, exact), zero)
    n = len(a)
    total = zero
    for sa, sb in zip(_schur_row(a, n, r, exact), _schur_row(b, n, r, exact)):
        total = total + sa * sb
    return total


def rankin_coefficients(p1, p2, r_max: int, exact: bool = False) -> list:
    """:func:`rankin_coefficient` for every ``r = 0..r_max`` from one pass of ``h_k``."""
    zero, _ = _ring(exact)
    a, b = _pad(_values(p1, exact), _values(p2, exact), zero)
    n = len(a)
    ha = complete_homogeneous(a, r_max + n, exact)
    hb = complete_homogeneous(b, r_max + n, exact)
    out = []
    for r in range(r_max + 1):
        total = zero
        for lam in _partition_table(r, n):
            total = total + _schur_from_h(lam, ha, exact) * _schur_from_h(lam, hb, exact)
        out.append(total)
    return out


def euler_expand(p1, p2, r_max: int, exact: bool = False) -> list:
    """Coefficients ``x^0..x^r_max`` of ``prod_{i,j} (1 - alpha_i beta_j x)^-1``."""
    if r_max < 0:
        raise ValueError("r_max must be >= 0")
    a, b = _values(p1, exact), _values(p2, exact)
    return complete_homogeneous([x * y for x in a for y in b], r_max, exact)


def self_pair_coefficient(p, r: int) -> float:
    """``sum_lambda |s_lambda(alpha)|^2``: the local coefficient against the contragredient."""
    vals = _values(p, False)
    return float(sum(_abs2(s) for s in _schur_row(vals, len(vals), r, False)))


def monomial_count(k: int, r: int) -> int:
    """Number of degree-``r`` monomials in ``k`` variables."""
    if k < 1 or r < 0:
        raise ValueError("need k >= 1 and r >= 0")
    return math.comb(k + r - 1, r)


def coefficient_domination_check(p, r: int) -> tuple[float, float]:
    """``(sum |s_lambda|^2, C(n^2 + r - 1, r) * max|alpha|^(2r))``; the first never exceeds the second."""
    vals = _values(p, False)
    n = len(vals)
    top = max(abs(v) for v in vals) ** 2
    return self_pair_coefficient(vals, r), monomial_count(n * n, r) * top**r


def cauchy_schwarz_check(p1, p2, r: int) -> tuple[float, float]:
    """``(|lambda(p^r, pi1 x pi2)|, sqrt(lambda(p^r, pi1 x pi1~) lambda(p^r, pi2 x pi2~)))``."""
    a, b = _pad(_values(p1, False), _values(p2, False), 0j)
    lhs = abs(rankin_coefficient(a, b, r))
    return lhs, math.sqrt(self_pair_coefficient(a, r) * self_pair_coefficient(b, r))


def majorant_scale(p1, p2, r: int) -> float:
    """``h_r(|alpha_i beta_j|)``: the natural size against which coefficient errors are measured."""
    a = [abs(complex(v)) for v in _values(p1, False)]
    b = [abs(complex(v)) for v in _values(p2, False)]
    return complete_homogeneous([x * y for x in a for y in b], r)[r].real


def random_gaussian_rationals(rng, n: int) -> list:
    """``n`` Gaussian rationals with numerators in ``[-9, 9]`` and denominators in ``[1, 7]``."""
    num = rng.integers(-9, 10, size=(n, 2))
    den = rng.integers(1, 8, size=(n, 2))
    return [QQ_I(QQ(int(a), int(b)), QQ(int(c), int(d))) for (a, c), (b, d) in zip(num, den)]


def conjugate_values(values, exact: bool = False) -> list:
    return [_conj(v) for v in _values(values, exact)]
