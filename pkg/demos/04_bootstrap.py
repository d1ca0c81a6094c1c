"""Halving the growth exponent of a completely multiplicative series.

Run with ``python demos/04_bootstrap.py``.
"""
from satake_bounds.dirichlet import (
    CMSeries,
    bootstrap_iterations,
    divisor_constant,
    ramified_threshold,
    run_bootstrap,
    square_identity_check,
)

one = CMSeries.constant(1.0)
print("lambda = 1, X = 3: (S^2, restricted divisor sum, tau-weighted sum) =", square_identity_check(one, 3))

for eps in (0.5, 0.3):
    dc = divisor_constant(eps, 10**6)
    print(f"max tau(n) / n^{eps} for n <= 1e6: {dc.value:.4f} at n = {dc.witness}")

# lambda(p) = 4 for every prime below 1e4: partial sums grow much faster than X.
series = CMSeries.constant(4.0, 10_000)
records = run_bootstrap(series, eps=0.05)
A = records[0]["initial_exponent"]
print(f"\nmeasured exponent A = {A:.4f}; steps needed for eps=0.05: {bootstrap_iterations(A, 0.05)}")
for rec in records:
    print(f"  step {rec['iter']}: exponent {rec['measured_exponent']:.4f}  "
          f"sigma {rec['sigma']:.2f}  constant {rec['constant']}  premise holds {rec['holds']}")

print("\nfirst prime norm from which (1 - t^2)^-1 <= 1 + t, t = Np^(-1/(n^2+1)):")
for n in range(1, 5):
    print(f"  n={n}: Np >= {ramified_threshold(n).exact}")
