"""Unitary classes: pairing, traces and the count of large parameters.

Run with ``python demos/01_unitary_classes.py``.
"""
import numpy as np

from satake_bounds.params import (
    SpectralParams,
    UnitaryClass,
    check_unitary_pairing,
    dumps,
    elementary_symmetric,
    sample_unitary_class,
    sym2_trace,
)

# A hand-made class: 2 and 1/2 pair with each other, i and -i sit on the circle.
p = SpectralParams([2, 0.5, 1j, -1j])
sigma = check_unitary_pairing(p)
print("pairing of (2, 1/2, i, -i):", sigma)

# (2, 2) has no partner for either value.
print("pairing of (2, 2):", check_unitary_pairing(SpectralParams([2, 2])))

# Traces of exterior powers are elementary symmetric functions.
e = elementary_symmetric(p.values)
print("Tr wedge^j for j = 0..4:", np.round(np.array(e, dtype=complex), 12))

# (Tr A)^2 splits into the symmetric and alternating square.
q = SpectralParams([2, 0.5])
print("(Tr A)^2 =", sum(q.values) ** 2, " sym^2 + wedge^2 =", sym2_trace(q) + elementary_symmetric(q.values)[2])

# Sampled classes never have more than n // 2 parameters off the circle.
counts = np.zeros(5, dtype=int)
for seed in range(2000):
    counts[sample_unitary_class(8, 1e3, seed).count_outside()] += 1
print("how many |alpha| > 1 among 2000 rank-8 samples (0..4):", counts.tolist())

# Sampling is reproducible bit for bit.
a, b = sample_unitary_class(4, 10, 42), sample_unitary_class(4, 10, 42)
print("same seed, same record:", dumps(a) == dumps(b))
print(dumps(a))

uc = UnitaryClass.from_params(p).sorted()
print("sorted moduli:", [round(m, 3) for m in uc.params.moduli], "pairing", uc.pairing)
