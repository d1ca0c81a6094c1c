"""Completely multiplicative nonnegative Dirichlet series over the rationals.

Ideals are positive integers and prime ideals are rational primes; the
norm of ``n`` is ``n``. A :class:`CMSeries` is determined by its values at
primes. This module covers the partial sums, the divisor identity behind
the squaring step, the exponent-halving bootstrap, the local Euler factors
of the largest-squared-parameter series and the conductor arithmetic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, NamedTuple, Optional, Sequence

import numpy as np
from scipy.special import zeta

from .majorization import max_modulus_sq
from .params import UnitaryClass

__all__ = [
    "CMSeries",
    "primes_upto",
    "coefficient",
    "coefficients",
    "partial_sum",
    "partial_sums",
    "divisor_tau",
    "tau_table",
    "square_identity_check",
    "square_identity_table",
    "divisor_constant",
    "bootstrap_iterations",
    "PremiseViolation",
    "bootstrap_step",
    "run_bootstrap",
    "dyadic_tail_sum",
    "dirichlet_value",
    "maxsq_euler_factor",
    "truncated_euler_factor",
    "linear_extraction_check",
    "ramified_factor_bound",
    "ramified_threshold",
    "Conductor",
    "archimedean_factor",
    "rankin_conductor_bound",
    "rankin_q_bound",
]


def primes_upto(n: int) -> np.ndarray:
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.flatnonzero(sieve)


def _smallest_prime_factor(n: int) -> np.ndarray:
    spf = np.zeros(n + 1, dtype=np.int64)
    for p in range(2, math.isqrt(n) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    rest = np.flatnonzero(spf == 0)
    spf[rest] = rest
    return spf


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class CMSeries:
    """Values ``lambda(p) >= 0`` at primes, extended completely multiplicatively.

    Primes ``p <= p_max`` missing from ``prime_values`` and all primes beyond
    ``p_max`` take ``default``; with ``default=None`` such primes are an
    error, so zero-extension is never implicit.
    """

    prime_values: Mapping[int, float] = field(default_factory=dict)
    p_max: int = 10_000
    default: Optional[float] = 1.0

    def __post_init__(self):
        vals = {int(p): float(v) for p, v in dict(self.prime_values).items()}
        for p, v in vals.items():
            if p < 2 or _factorize(p) != {p: 1}:
                raise ValueError(f"{p} is not a prime")
            if p > self.p_max:
                raise ValueError(f"prime {p} exceeds p_max={self.p_max}")
            if not v >= 0:
                raise ValueError(f"lambda({p}) = {v} must be nonnegative")
        if self.default is not None and not self.default >= 0:
            raise ValueError("default must be nonnegative")
        object.__setattr__(self, "prime_values", vals)

    @classmethod
    def constant(cls, c: float, p_max: int = 10_000, default: Optional[float] = 1.0) -> "CMSeries":
        """``lambda(p) = c`` for every prime ``p <= p_max``."""
        return cls({int(p): c for p in primes_upto(p_max)}, p_max, default)

    @classmethod
    def from_function(
        cls, f: Callable[[int], float], p_max: int = 10_000, default: Optional[float] = 1.0
    ) -> "CMSeries":
        return cls({int(p): f(int(p)) for p in primes_upto(p_max)}, p_max, default)

    @classmethod
    def parse(cls, text: str, p_max: int = 10_000, default: Optional[float] = 1.0) -> "CMSeries":
        """Read ``"2:2,3:1.5"`` style literals."""
        vals = {}
        for item in filter(None, (s.strip() for s in text.split(","))):
            p, _, v = item.partition(":")
            vals[int(p)] = float(v)
        return cls(vals, p_max, default)

    def at_prime(self, p: int, extend: bool = True) -> float:
        """``lambda(p)``; primes above ``p_max`` take ``default`` only when ``extend``."""
        if p in self.prime_values:
            return self.prime_values[p]
        if p > self.p_max and not extend:
            raise ValueError(f"prime {p} exceeds p_max={self.p_max}")
        if self.default is None:
            raise ValueError(f"no value for prime {p} and no default")
        return self.default


def coefficient(series: CMSeries, n: int, extend: bool = False) -> float:
    """``lambda(n)``. A prime factor above ``p_max`` is an error unless ``extend``.

    The bulk routines below (:func:`coefficients` and everything built on
    it) always extend with ``default``, since they need a total series.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    out = 1.0
    for p, e in _factorize(n).items():
        out *= series.at_prime(p, extend) ** e
    return out


def coefficients(series: CMSeries, N: int) -> np.ndarray:
    """``lambda(0..N)`` with ``lambda(0) = 0``, via a smallest-prime-factor sieve."""
    lam = np.zeros(N + 1)
    if N < 1:
        return lam
    spf = _smallest_prime_factor(N)
    at_p = np.zeros(N + 1)
    for p in primes_upto(N):
        at_p[p] = series.at_prime(int(p))
    lam[1] = 1.0
    lo = 2
    # n // spf(n) <= n/2, so each dyadic block only reads earlier blocks
    while lo <= N:
        hi = min(2 * lo, N + 1)
        idx = np.arange(lo, hi)
        q = spf[idx]
        lam[idx] = at_p[q] * lam[idx // q]
        lo = hi
    return lam


def _squarefree_mask(N: int) -> np.ndarray:
    mask = np.ones(N + 1, dtype=bool)
    mask[0] = False
    for p in primes_upto(math.isqrt(N)):
        mask[p * p :: p * p] = False
    return mask


def partial_sums(series: CMSeries, N: int, squarefree_only: bool = False) -> np.ndarray:
    """``S(0..N)`` where ``S(X) = sum_{n <= X} lambda(n)``."""
    lam = coefficients(series, N)
    if squarefree_only:
        lam = np.where(_squarefree_mask(N), lam, 0.0)
    return np.cumsum(lam)


def partial_sum(series: CMSeries, X: float, squarefree_only: bool = False) -> float:
    if X < 1:
        raise ValueError("X must be >= 1")
    return float(partial_sums(series, int(X), squarefree_only)[int(X)])


def divisor_tau(n: int) -> int:
    if n < 1:
        raise ValueError("n must be >= 1")
    return math.prod(e + 1 for e in _factorize(n).values())


def tau_table(N: int) -> np.ndarray:
    tau = np.zeros(N + 1, dtype=np.int64)
    for d in range(1, N + 1):
        tau[d::d] += 1
    return tau


def square_identity_check(series: CMSeries, X: int) -> tuple[float, float, float]:
    """``(S(X)^2, sum lambda(r) tau_X(r), sum lambda(r) tau(r))`` over ``r <= X^2``.

    ``tau_X(r)`` counts factorizations ``r = d e`` with ``d, e <= X``. The
    first two agree by complete multiplicativity; the third dominates.
    """
    if X < 1:
        raise ValueError("X must be >= 1")
    X = int(X)
    top = X * X
    lam = coefficients(series, top)
    tau_x = np.zeros(top + 1, dtype=np.int64)
    for d in range(1, X + 1):
        tau_x[d : d * X + 1 : d] += 1
    s = float(lam[1 : X + 1].sum())
    return s * s, float(lam @ tau_x), float(lam @ tau_table(top))


def square_identity_table(series: CMSeries, x_max: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The three columns of :func:`square_identity_check` for every ``X = 1..x_max``.

    The restricted sum is grown one ``X`` at a time:
    ``T(X) = T(X-1) + 2 sum_{d<X} lambda(dX) + lambda(X^2)``.
    """
    top = x_max * x_max
    lam = coefficients(series, top)
    S = np.cumsum(lam[: x_max + 1])
    weighted = np.cumsum(lam * tau_table(top))
    restricted = np.zeros(x_max + 1)
    for x in range(1, x_max + 1):
        restricted[x] = restricted[x - 1] + 2.0 * lam[x * np.arange(1, x)].sum() + lam[x * x]
    xs = np.arange(1, x_max + 1)
    return S[1:] ** 2, restricted[1:], weighted[xs * xs]


class DivisorConstant(NamedTuple):
    log_value: float
    witness: Optional[int]

    @property
    def value(self) -> float:
        return math.exp(self.log_value)


def divisor_constant(eps: float, limit: Optional[int] = None) -> DivisorConstant:
    """``sup tau(r) / r^eps`` over ``r <= limit`` (all ``r`` if ``limit`` is None).

    Maximizers have nonincreasing exponents on consecutive primes, which
    keeps the bounded search small. The unbounded supremum factors over
    primes: ``prod_p max_k (k + 1) p^(-k eps)``, with only ``p < 2^(1/eps)``
    contributing.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    if limit is None:
        total = 0.0
        for p in primes_upto(int(2 ** (1 / eps)) + 1):
            lp = math.log(int(p))
            best, k = 0.0, 1
            while True:
                val = math.log(k + 1) - k * eps * lp
                if val < best:
                    break
                best, k = val, k + 1
            total += best
        return DivisorConstant(total, None)

    if limit < 1:
        raise ValueError("limit must be >= 1")
    primes: list[int] = []
    prod = 1
    for p in primes_upto(200):
        if prod > limit:
            break
        primes.append(int(p))
        prod *= int(p)
    best = [0.0, 1]

    def search(i: int, r: int, max_e: int, score: float) -> None:
        if score > best[0]:
            best[0], best[1] = score, r
        if i == len(primes):
            return
        lp = math.log(primes[i])
        for e in range(1, max_e + 1):
            r *= primes[i]
            if r > limit:
                break
            search(i + 1, r, e, score + math.log(e + 1) - e * eps * lp)

    search(0, 1, int(math.log2(limit)) + 1, 0.0)
    return DivisorConstant(best[0], best[1])


# ---------------------------------------------------------------------------
# bootstrap

def bootstrap_iterations(A: float, eps: float) -> int:
    """Smallest integer ``M > (log A - log eps) / log 2``, floored at 0."""
    if A <= 0 or eps <= 0:
        raise ValueError("A and eps must be positive")
    bound = (math.log(A) - math.log(eps)) / math.log(2)
    return max(0, math.floor(bound) + 1)


class PremiseViolation(ValueError):
    def __init__(self, X: int, S: float, bound: float):
        super().__init__(f"S({X}) = {S:.6g} exceeds the premise bound {bound:.6g}")
        self.X = X
        self.S = S
        self.bound = bound


@dataclass(frozen=True)
class BootstrapStep:
    constant: float  # smallest B' with S(X) <= B' X^(1+eps) on [1, x_max]
    kappa: float  # B' <= kappa * sqrt(B) follows from the premise
    divisor_constant: float  # max tau(r) / r^eps over r <= x_max^2
    route_holds: bool  # divisor route checked directly for X <= sqrt(x_max)

    def certified(self, B: float) -> float:
        return self.kappa * math.sqrt(B)


_REL = 1e-12


def bootstrap_step(series: CMSeries, x_max: int, B: float, sigma: float, eps: float) -> BootstrapStep:
    """One squaring step: from ``S(X) <= B X^sigma`` to a constant near ``sqrt(B)``.

    For ``X <= x_max``,
    ``S(X)^2 <= sum_{r <= X^2} lambda(r) tau(r) <= D X^(2 eps) S(X^2)``
    with ``D = max_{r <= x_max^2} tau(r) r^-eps``; the premise at ``X^2``
    then gives ``S(X) <= sqrt(D B) X^(sigma + eps)``, so the measured
    constant at exponent ``1 + eps`` is at most
    ``kappa sqrt(B)`` with ``kappa = sqrt(D) x_max^max(sigma - 1, 0)``.

    The premise is checked on ``[1, x_max]`` (a violation raises
    :class:`PremiseViolation` with the offending ``X``); beyond ``x_max`` it
    is taken as given.
    """
    if x_max < 1 or B <= 0 or eps <= 0:
        raise ValueError("need x_max >= 1, B > 0, eps > 0")
    S = partial_sums(series, x_max)
    X = np.arange(1, x_max + 1, dtype=float)
    bound = B * X**sigma
    bad = np.flatnonzero(S[1:] > bound * (1 + _REL))
    if bad.size:
        i = int(bad[0])
        raise PremiseViolation(i + 1, float(S[i + 1]), float(bound[i]))

    measured = float(np.max(S[1:] / X ** (1 + eps)))
    D = divisor_constant(eps, x_max * x_max).value
    kappa = math.sqrt(D) * x_max ** max(sigma - 1.0, 0.0)

    root = math.isqrt(x_max)
    lam = coefficients(series, root * root)
    tau = tau_table(root * root)
    weighted = np.cumsum(lam * tau)
    route = True
    for x in range(1, root + 1):
        lhs = S[x] ** 2
        mid = weighted[x * x]
        rhs = D * x ** (2 * eps) * S[x * x]
        route &= bool(lhs <= mid * (1 + _REL) and mid <= rhs * (1 + _REL))
    return BootstrapStep(measured, kappa, D, route)


def control_constants(series: CMSeries, sigma: float, xs: Sequence[int]) -> np.ndarray:
    """``B(X) = max_{Y <= X} S(Y) / Y^sigma`` at each ``X`` in ``xs``."""
    top = int(max(xs))
    S = partial_sums(series, top)
    Y = np.arange(1, top + 1, dtype=float)
    running = np.maximum.accumulate(S[1:] / Y**sigma)
    return running[np.asarray(xs, dtype=int) - 1]


def _slope(logx: np.ndarray, logy: np.ndarray) -> float:
    return float(np.polyfit(logx, logy, 1)[0])


def run_bootstrap(
    series: CMSeries,
    eps: float,
    sigma: Optional[float] = None,
    x_lo: int = 100,
    x_hi: int = 100_000,
    points: int = 31,
    A: Optional[float] = None,
    iters: Optional[int] = None,
) -> list[dict]:
    """Iterate the squaring step on the polynomial-control constant.

    The range scale ``X`` plays the conductor: on ``[1, X]`` the series
    obeys ``S(Y) <= B_0(X) Y^sigma`` with ``B_0(X) = max_{Y<=X} S(Y)/Y^sigma``,
    and ``B_0(X) ~ X^A`` measures the exponent ``A`` (log-regression over
    log-spaced ``X`` in ``[x_lo, x_hi]``). Each step replaces ``B`` by
    ``sqrt(D_eps B)`` and ``sigma`` by ``sigma + eps``, where ``D_eps`` is the
    global divisor constant, so the exponent halves. Constants are carried
    as logarithms (``D_eps`` is astronomically large for small ``eps``).

    Returns one record per level ``0..M`` with the regression slope of
    ``log B_k`` against ``log X`` and whether ``S(Y) <= B_k(X) Y^sigma_k``
    holds on every ``Y <= X`` of the grid.
    """
    sigma = 1.0 + eps if sigma is None else sigma
    xs = np.unique(np.round(np.geomspace(x_lo, x_hi, points)).astype(int))
    S = partial_sums(series, int(xs[-1]))
    logx = np.log(xs.astype(float))
    log_b = np.log(control_constants(series, sigma, xs))
    measured_a = _slope(logx, log_b)
    a = measured_a if A is None else A
    steps = bootstrap_iterations(max(a, 1e-300), eps) if iters is None else iters
    log_d = divisor_constant(eps).log_value

    logY = np.log(np.arange(1, int(xs[-1]) + 1, dtype=float))
    logS = np.log(np.where(S[1:] > 0, S[1:], 1e-300))
    records = []
    sig = sigma
    for k in range(steps + 1):
        if k:
            log_b = 0.5 * (log_d + log_b)
            sig += eps
        holds = all(
            bool(np.all(lb + sig * logY[:x] >= logS[:x] - _REL)) for lb, x in zip(log_b, xs)
        )
        records.append(
            {
                "iter": k,
                "measured_exponent": _slope(logx, log_b),
                "initial_exponent": measured_a,
                "sigma": sig,
                "log10_constant": float(log_b[-1] / math.log(10)),
                "constant": _sci(float(log_b[-1])),
                "holds": holds,
            }
        )
    return records


def _sci(log_value: float) -> str:
    """Render ``exp(log_value)`` in scientific notation without overflowing."""
    l10 = log_value / math.log(10)
    e = math.floor(l10)
    return f"{10 ** (l10 - e):.6f}e{e:+d}"


def dyadic_tail_sum(series: CMSeries, sigma: float, x_max: int) -> float:
    """``sum_{M = 2^k <= x_max} M^-sigma S(2M)``."""
    if sigma <= 1:
        raise ValueError("sigma must exceed 1")
    if x_max < 1:
        return 0.0
    S = partial_sums(series, 2 * int(x_max))
    total = 0.0
    M = 1
    while M <= x_max:
        total += M ** (-sigma) * S[2 * M]
        M *= 2
    return float(total)


def dirichlet_value(series: CMSeries, sigma: float) -> float:
    """``sum_n lambda(n) n^-sigma`` as an Euler product.

    Supported tails: ``default == 1`` (a zeta factor) and ``default == 0``.
    """
    primes = primes_upto(series.p_max)
    lam = np.array([series.at_prime(int(p)) for p in primes])
    ratio = lam * primes.astype(float) ** (-sigma)
    if np.any(ratio >= 1):
        raise ValueError(f"Euler product diverges at sigma={sigma}")
    head = float(np.prod(1.0 / (1.0 - ratio)))
    if series.default == 0:
        return head
    if series.default == 1:
        if sigma <= 1:
            raise ValueError("zeta tail diverges for sigma <= 1")
        return head * float(zeta(sigma)) * float(np.prod(1.0 - primes.astype(float) ** (-sigma)))
    raise ValueError("dirichlet_value supports default 0 or 1 only")


# ---------------------------------------------------------------------------
# local factors

def maxsq_euler_factor(uclass: UnitaryClass, sigma: float) -> float:
    """``sum_r max|alpha|^(2r) Np^(-r sigma) = (1 - max^2 Np^-sigma)^-1``."""
    Np = uclass.params.prime_norm
    if Np is None:
        raise ValueError("prime_norm is required")
    ratio = max_modulus_sq(uclass) * Np ** (-sigma)
    if ratio >= 1:
        raise ValueError(f"local factor diverges: max^2 Np^-sigma = {ratio:.6g} >= 1")
    return 1.0 / (1.0 - ratio)


def truncated_euler_factor(max_sq: float, prime_norm: float, sigma: float, r_max: int = 60) -> float:
    ratio = max_sq * prime_norm ** (-sigma)
    return math.fsum(ratio**r for r in range(r_max + 1))


def linear_extraction_check(lambda_p: float, x: float) -> tuple[float, float]:
    """``1/(1 - y)`` against ``(1 + y) / (1 - y^2)`` with ``y = lambda_p x``."""
    if lambda_p < 0 or not 0 <= x < 1:
        raise ValueError("need lambda_p >= 0 and 0 <= x < 1")
    y = lambda_p * x
    if y >= 1:
        raise ValueError(f"lambda_p * x = {y} must be < 1")
    return 1.0 / (1.0 - y), (1.0 + y) / (1.0 - y * y)


class RamifiedBound(NamedTuple):
    closed_form: float  # (1 - Np^(-2 delta))^-1
    bound: float  # 1 + Np^-delta
    holds: bool


def ramified_factor_bound(Np: float, n: int) -> RamifiedBound:
    """Compare the geometric local factor with ``1 + Np^-delta``, ``delta = 1/(n^2 + 1)``."""
    if Np < 2 or n < 1:
        raise ValueError("need Np >= 2 and n >= 1")
    delta = 1.0 / (n * n + 1)
    closed = 1.0 / (1.0 - Np ** (-2 * delta))
    bound = 1.0 + Np ** (-delta)
    return RamifiedBound(closed, bound, closed <= bound)


class RamifiedThreshold(NamedTuple):
    c: float  # closed form <= 1 + c Np^(-2 delta) for every Np >= 2
    sufficient: float  # c^(1/delta): beyond this the comparison holds
    exact: int  # least integer Np from which on the comparison holds


def ramified_threshold(n: int) -> RamifiedThreshold:
    """Where ``(1 - t^2)^-1 <= 1 + t`` starts to hold, ``t = Np^-delta``.

    The inequality is ``1 - t - t^2 >= 0``, i.e. ``t <= (sqrt 5 - 1)/2``, so
    it holds exactly for ``Np >= phi^(n^2 + 1)`` with ``phi`` the golden ratio.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    delta = 1.0 / (n * n + 1)
    c = 1.0 / (1.0 - 2.0 ** (-2 * delta))
    phi = (1 + math.sqrt(5)) / 2
    exact = math.ceil(phi ** (n * n + 1) - 1e-9)
    while exact > 2 and ramified_factor_bound(exact - 1, n).holds:
        exact -= 1
    while not ramified_factor_bound(max(exact, 2), n).holds:
        exact += 1
    return RamifiedThreshold(c, c ** (1 / delta), max(exact, 2))


def ramified_euler_product(primes: Iterable[int], n: int) -> tuple[float, float]:
    """Products of both sides of :func:`ramified_factor_bound` over a prime set."""
    closed, bound = 1.0, 1.0
    for p in primes:
        rb = ramified_factor_bound(p, n)
        closed *= rb.closed_form
        bound *= rb.bound
    return closed, bound


# ---------------------------------------------------------------------------
# conductors

def archimedean_factor(mu: Iterable[complex]) -> float:
    return math.prod(1.0 + abs(complex(m)) for m in mu)


@dataclass(frozen=True)
class Conductor:
    q: int
    mu: tuple[complex, ...] = ()

    def __post_init__(self):
        if int(self.q) != self.q or self.q < 1:
            raise ValueError("q must be a positive integer")
        object.__setattr__(self, "mu", tuple(complex(m) for m in self.mu))

    @property
    def lambda_inf(self) -> float:
        return archimedean_factor(self.mu)

    @property
    def C(self) -> float:
        return self.q * self.lambda_inf


def _analytic(c: Conductor | float) -> float:
    value = c.C if isinstance(c, Conductor) else float(c)
    if value <= 0:
        raise ValueError("conductors must be positive")
    return value


def rankin_conductor_bound(c1: Conductor | float, n1: int, c2: Conductor | float, n2: int) -> float:
    """``C1^n2 C2^n1``, the shape of the pair conductor bound with implied constant 1."""
    return _analytic(c1) ** n2 * _analytic(c2) ** n1


def rankin_q_bound(q1: int, n1: int, q2: int, n2: int) -> int:
    """``q1^n2 q2^n1`` in exact integers."""
    return int(q1) ** n2 * int(q2) ** n1
