"""Schur functions and the local coefficients of a Rankin-Selberg product.

Run with ``python demos/03_schur_and_rankin.py``.
"""
import numpy as np

from satake_bounds.params import sample_unitary_class
from satake_bounds.symfunc import (
    cauchy_schwarz_check,
    coefficient_domination_check,
    conjugate_values,
    euler_expand,
    partitions,
    random_gaussian_rationals,
    rankin_coefficients,
    schur_eval,
    schur_tableaux,
)

print("partitions of 4 with <= 3 parts:", partitions(4, 3))
print("s_(2,1)(2, 3) by Jacobi-Trudi:", schur_eval((2, 1), [2, 3]).real,
      " by tableaux:", schur_tableaux((2, 1), [2, 3]).real)

# Both sides of the Cauchy identity, in exact arithmetic.
rng = np.random.default_rng(1)
a, b = random_gaussian_rationals(rng, 3), random_gaussian_rationals(rng, 3)
schur_side = rankin_coefficients(a, b, 5, exact=True)
euler_side = euler_expand(a, b, 5, exact=True)
print("exact agreement for r = 0..5:", [not (x - y) for x, y in zip(schur_side, euler_side)])
print("r = 3 coefficient:", schur_side[3])

# Floating point on sampled classes.
p1 = sample_unitary_class(4, 3, 10).params
p2 = sample_unitary_class(4, 3, 11).params
lhs, rhs = rankin_coefficients(p1, p2, 8), euler_expand(p1, p2, 8)
print("max relative error, r <= 8:", max(abs(x - y) / abs(y) for x, y in zip(lhs, rhs)))

for r in range(0, 7, 2):
    dom = coefficient_domination_check(p1, r)
    cs = cauchy_schwarz_check(p1, p2, r)
    diag = cauchy_schwarz_check(p1, conjugate_values(p1.values), r)
    print(f"r={r}: domination {dom[0]:.4g} <= {dom[1]:.4g};  "
          f"Cauchy-Schwarz {cs[0]:.4g} <= {cs[1]:.4g};  diagonal {diag[0]:.6g} = {diag[1]:.6g}")
