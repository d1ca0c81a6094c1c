"""Constants c_n and the bound on max |alpha|^2 by traces of exterior powers.

Run with ``python demos/02_trace_majorization.py``.
"""
from satake_bounds.constants import constant_table, leading_constant
from satake_bounds.majorization import (
    classify_case,
    max_modulus_sq,
    prime_majorization_bound,
    trace_bound,
    verify_bound,
)
from satake_bounds.params import SpectralParams, UnitaryClass

for n in range(2, 9):
    t = constant_table(n)
    print(f"n={n}  R={[str(x) for x in t.R]}  c_n={leading_constant(n)}")

# Only log form is kept at the top of the range.
print("log c_64 =", round(constant_table(64).log_c_n, 1))

uc = UnitaryClass.from_params(SpectralParams([2, 0.5, 1j, -1j])).sorted()
t4 = constant_table(4)
print()
print("diag(2, 1/2, i, -i):")
print("  max |alpha|^2      =", max_modulus_sq(uc))
print("  trace bound        =", trace_bound(uc, t4))
print("  bound at a prime   =", prime_majorization_bound(uc, t4))
print("  case               =", classify_case(uc, t4))

# Dropping the j = 1 term breaks the bound already in rank 2.
big = UnitaryClass.from_params(SpectralParams([10, 0.1])).sorted()
t2 = constant_table(2)
print()
print("diag(10, 1/10): max^2 =", max_modulus_sq(big),
      " bound from j=1:", trace_bound(big, t2), " bound from j=2:", trace_bound(big, t2, start_j=2))

print()
for n in (2, 4, 6, 8):
    res = verify_bound(n, 2000, seed=n, max_modulus=1e3)
    print(f"n={n}: failures={res['failures']}  worst max^2/bound={res['worst_ratio']:.3g}  cases={res['case_histogram']}")
