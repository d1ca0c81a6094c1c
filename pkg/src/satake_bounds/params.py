"""Local spectral data at a finite place.

A :class:`SpectralParams` holds the ``n`` nonzero complex parameters of a
diagonal conjugacy class; a :class:`UnitaryClass` additionally carries a
permutation ``sigma`` with ``alpha[i] * conj(alpha[sigma[i]]) == 1`` which
witnesses that ``A^{-1}`` and ``conj(A)`` are conjugate.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

__all__ = [
    "SpectralParams",
    "UnitaryClass",
    "sort_by_modulus",
    "check_unitary_pairing",
    "sample_unitary_class",
    "elementary_symmetric",
    "exterior_trace",
    "sym2_trace",
    "dumps",
    "loads",
]


@dataclass(frozen=True)
class SpectralParams:
    values: tuple[complex, ...]
    prime_norm: Optional[int] = None

    def __init__(self, values: Iterable[complex], prime_norm: Optional[int] = None):
        vals = tuple(complex(v) for v in values)
        if not vals:
            raise ValueError("need at least one parameter")
        for v in vals:
            if v == 0 or not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise ValueError(f"parameters must be finite and nonzero, got {v!r}")
        if prime_norm is not None and (int(prime_norm) != prime_norm or prime_norm < 2):
            raise ValueError(f"prime_norm must be an integer >= 2, got {prime_norm!r}")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "prime_norm", None if prime_norm is None else int(prime_norm))

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def moduli(self) -> list[float]:
        return [abs(v) for v in self.values]

    def is_sorted(self) -> bool:
        mods = self.moduli
        return all(a >= b for a, b in zip(mods, mods[1:]))

    def inverse_conjugate(self) -> "SpectralParams":
        """The multiset ``{1/conj(alpha_i)}``."""
        return SpectralParams([1 / v.conjugate() for v in self.values], self.prime_norm)


@dataclass(frozen=True)
class UnitaryClass:
    params: SpectralParams
    pairing: tuple[int, ...]
    tolerance: float = 1e-9

    def __post_init__(self):
        n = self.params.n
        pairing = tuple(int(s) for s in self.pairing)
        if sorted(pairing) != list(range(n)):
            raise ValueError(f"pairing {pairing} is not a permutation of 0..{n - 1}")
        if self.tolerance < 0:
            raise ValueError("tolerance must be nonnegative")
        vals = self.params.values
        for i, s in enumerate(pairing):
            err = abs(vals[i] * vals[s].conjugate() - 1)
            if err > self.tolerance:
                raise ValueError(
                    f"alpha[{i}]*conj(alpha[{s}]) is off from 1 by {err:.3g} > {self.tolerance:g}"
                )
        object.__setattr__(self, "pairing", pairing)

    @property
    def n(self) -> int:
        return self.params.n

    @classmethod
    def from_params(cls, params: SpectralParams, tol: float = 1e-9) -> "UnitaryClass":
        sigma = check_unitary_pairing(params, tol)
        if sigma is None:
            raise ValueError("parameters admit no unitary pairing within tolerance")
        return cls(params, sigma, tol)

    def count_outside(self) -> int:
        """Number of parameters with modulus above ``1 + tolerance``."""
        return sum(abs(v) > 1 + self.tolerance for v in self.params.values)

    def sorted(self) -> "UnitaryClass":
        order = _modulus_order(self.params.values)
        where = {old: new for new, old in enumerate(order)}
        params = SpectralParams([self.params.values[i] for i in order], self.params.prime_norm)
        pairing = tuple(where[self.pairing[old]] for old in order)
        return UnitaryClass(params, pairing, self.tolerance)


def _modulus_order(values: Sequence[complex]) -> list[int]:
    # sorted() is stable, so ties keep their original index order
    return sorted(range(len(values)), key=lambda i: -abs(values[i]))


def sort_by_modulus(params: SpectralParams) -> SpectralParams:
    order = _modulus_order(params.values)
    return SpectralParams([params.values[i] for i in order], params.prime_norm)


def check_unitary_pairing(params: SpectralParams, tol: float = 1e-12) -> Optional[tuple[int, ...]]:
    """Find ``sigma`` with ``|alpha_i conj(alpha_sigma(i)) - 1| <= tol`` for all i.

    Greedy first: each unmatched index takes the unmatched partner (itself
    allowed) closest to ``1/conj(alpha_i)``, lowest index on ties, and the
    pair is matched both ways. If greedy gets stuck, a bipartite matching
    on the admissible pairs decides existence. Returns ``None`` if no
    permutation works.
    """
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    vals = params.values
    n = len(vals)
    err = np.abs(np.outer(vals, np.conj(vals)) - 1.0)

    sigma = [-1] * n
    for i in range(n):
        if sigma[i] >= 0:
            continue
        best = -1
        for k in range(n):
            if sigma[k] < 0 and (best < 0 or err[i, k] < err[i, best]):
                best = k
        if best < 0 or err[i, best] > tol:
            break
        sigma[i] = best
        sigma[best] = i
    else:
        return tuple(sigma)

    # greedy failed; any perfect matching of admissible pairs is a witness
    cost = np.where(err <= tol, 0.0, 1.0)
    rows, cols = linear_sum_assignment(cost)
    if cost[rows, cols].sum() > 0:
        return None
    return tuple(int(c) for c in cols)


def sample_unitary_class(n: int, max_modulus: float, seed: int) -> UnitaryClass:
    """Random unitary class: ``k`` reciprocal-conjugate pairs, the rest on the circle.

    ``k`` is uniform on ``0..n//2``; paired moduli are log-uniform on
    ``[1, max_modulus]``, all arguments uniform. Positions are shuffled so
    callers cannot rely on any order.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not max_modulus >= 1:
        raise ValueError("max_modulus must be >= 1")
    rng = np.random.default_rng(seed)
    k = int(rng.integers(0, n // 2 + 1))
    log_mod = rng.uniform(0.0, math.log(max_modulus), size=k)
    pair_args = rng.uniform(0.0, 2 * math.pi, size=k)
    unit_args = rng.uniform(0.0, 2 * math.pi, size=n - 2 * k)

    values: list[complex] = []
    partner: list[int] = []
    for lm, th in zip(log_mod, pair_args):
        z = complex(math.exp(lm) * math.cos(th), math.exp(lm) * math.sin(th))
        w = complex(math.exp(-lm) * math.cos(th), math.exp(-lm) * math.sin(th))
        values += [z, w]
        partner += [len(values) - 1, len(values) - 2]
    for th in unit_args:
        values.append(complex(math.cos(th), math.sin(th)))
        partner.append(len(values) - 1)

    perm = rng.permutation(n)  # new position i holds old entry perm[i]
    where = np.empty(n, dtype=int)
    where[perm] = np.arange(n)
    shuffled = [values[p] for p in perm]
    pairing = tuple(int(where[partner[p]]) for p in perm)
    return UnitaryClass(SpectralParams(shuffled), pairing, 1e-9)


def elementary_symmetric(values: Sequence) -> list:
    """All ``e_0..e_n`` as coefficients of ``prod(1 + x_i t)``.

    Works over any ring whose elements support ``+`` and ``*`` with ints.
    """
    e = [1] + [0] * len(values)
    for i, x in enumerate(values, start=1):
        for j in range(i, 0, -1):
            e[j] = e[j] + x * e[j - 1]
    return e


def exterior_trace(params: SpectralParams, j: int) -> complex:
    """Trace of the j-th exterior power, i.e. ``e_j`` of the parameters."""
    if not 0 <= j <= params.n:
        raise ValueError(f"j={j} outside 0..{params.n}")
    return complex(elementary_symmetric(params.values)[j])


def sym2_trace(params: SpectralParams) -> complex:
    p1 = sum(params.values)
    p2 = sum(v * v for v in params.values)
    return (p1 * p1 + p2) / 2


# ---------------------------------------------------------------------------
# canonical text record

def _hex_pair(z: complex) -> list[str]:
    return [float(z.real).hex(), float(z.imag).hex()]


def to_record(obj: SpectralParams | UnitaryClass) -> dict:
    if isinstance(obj, UnitaryClass):
        rec = to_record(obj.params)
        rec["pairing"] = list(obj.pairing)
        rec["tolerance"] = float(obj.tolerance).hex()
        return rec
    return {
        "n": obj.n,
        "values": [_hex_pair(v) for v in obj.values],
        "prime_norm": obj.prime_norm,
    }


def from_record(rec: dict) -> SpectralParams | UnitaryClass:
    values = [complex(float.fromhex(re), float.fromhex(im)) for re, im in rec["values"]]
    if len(values) != rec["n"]:
        raise ValueError("record length does not match n")
    params = SpectralParams(values, rec.get("prime_norm"))
    if "pairing" in rec:
        return UnitaryClass(params, tuple(rec["pairing"]), float.fromhex(rec["tolerance"]))
    return params


def dumps(obj: SpectralParams | UnitaryClass) -> str:
    return json.dumps(to_record(obj), sort_keys=True, separators=(",", ":"))


def loads(text: str) -> SpectralParams | UnitaryClass:
    return from_record(json.loads(text))
