"""Exponential-sum kernels: rational approximations, min-function sums,
bilinear and Type I aggregates, the five-term Vaughan split of the von
Mangoldt transform, and the Weyl-differenced double sum.

Every bound evaluator sets the implicit constant to 1; callers compare the
exact left side against the bound as a ratio and never assert <= 1.
Ranges written "n ~ N" mean (N, 2N]; "mn < X" is strict.

Zero-denominator convention: when ||m theta|| = 0 (theta rational with q | m)
the min(. , 1/||m theta||) picks its first argument, matching the degenerate
geometric series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, NamedTuple

import numpy as np

from ._budget import check_budget
from .errors import InternalCheckError, PreconditionError
from .primetables import PrimeTables

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class ThetaApprox:
    """theta = a/q + beta with gcd(a, q) = 1, |beta| <= 1/q^2; H = 1 + |beta| X."""

    theta: float
    a: int
    q: int
    beta: float
    X: int

    def __post_init__(self):
        if self.q < 1:
            raise PreconditionError("q must be >= 1")
        if math.gcd(self.a, self.q) != 1:
            raise PreconditionError(f"a/q = {self.a}/{self.q} not reduced")
        if abs(self.beta) > 1.0 / self.q**2:
            raise PreconditionError("|beta| exceeds 1/q^2")
        if abs(self.theta - (self.a / self.q + self.beta)) > 1e-12:
            raise PreconditionError("theta, a/q and beta are inconsistent")

    @property
    def H(self) -> float:
        return 1.0 + abs(self.beta) * self.X

    @property
    def qH(self) -> float:
        return self.q * self.H

    def unit_norm(self, m: int) -> float:
        """||m theta|| = distance of m*theta to the nearest integer.

        Exact modular arithmetic when beta = 0 (theta truly rational); the
        floating path otherwise.
        """
        if self.beta == 0.0:
            s = (m * self.a) % self.q
            return min(s, self.q - s) / self.q
        x = m * self.theta
        return abs(x - round(x))


def _convergents(theta: float, max_q: int):
    """Continued-fraction convergents (p, q) of theta with q <= max_q."""
    out = []
    p_m2, q_m2 = 0, 1
    p_m1, q_m1 = 1, 0
    x = theta
    for _ in range(64):
        a = math.floor(x)
        p, q = a * p_m1 + p_m2, a * q_m1 + q_m2
        if q > max_q:
            break
        out.append((p, q))
        p_m2, q_m2 = p_m1, q_m1
        p_m1, q_m1 = p, q
        frac = x - a
        if frac < 1e-15:
            break
        x = 1.0 / frac
    return out


def dirichlet_approx(theta: float, Q: int, X: int) -> ThetaApprox:
    """Reduced a/q with q <= Q and |theta - a/q| <= 1/(qQ).

    Deterministic: walks the continued-fraction convergents in increasing q
    and returns the first that qualifies (one always does).
    """
    if Q < 1:
        raise PreconditionError("Q must be >= 1")
    convs = _convergents(theta, Q)
    if not convs:
        convs = [(round(theta), 1)]
    chosen = None
    for p, q in convs:
        if abs(theta - p / q) <= 1.0 / (q * Q):
            chosen = (p, q)
            break
    if chosen is None:
        chosen = convs[-1]
    a, q = chosen
    beta = theta - a / q
    if abs(beta) > 1.0 / (q * Q) + 1e-15:
        raise InternalCheckError("Dirichlet approximation failed its own guarantee")
    return ThetaApprox(theta=theta, a=a, q=q, beta=beta, X=X)


def lambda_hat(tables: PrimeTables, X: int, d: int, c: int, theta: float) -> complex:
    """sum_{n < X, n = c (mod d)} Lambda(n) e(n theta), exact over prime powers."""
    if X > tables.limit + 1:
        raise PreconditionError(f"X={X} exceeds table limit {tables.limit}")
    if d < 1:
        raise PreconditionError("d must be >= 1")
    pp_n, pp_log = tables.prime_powers
    cut = np.searchsorted(pp_n, X, side="left")
    ns = pp_n[:cut]
    mask = ns % d == c % d
    ns = ns[mask]
    logs = pp_log[:cut][mask]
    phases = np.exp(2j * np.pi * ((ns * theta) % 1.0))
    return complex((logs * phases).sum())


class MinSum(NamedTuple):
    value: float
    bound: float


def min_sum(mode: str, M: int, cap: float, ta: ThetaApprox) -> MinSum:
    """sum_{m <= M} min(first(m), 1/||m theta||) with the matching bound shape.

    mode "linear":    first(m) = N       (cap = N), bound
                      (M + M N q|beta| + 1/(q|beta|)) log(2qM)
                      (+inf when beta = 0: the bound degenerates);
    mode "hyperbola": first(m) = X/m + 1 (cap = X), bound
                      X (M/X + qH/X + 1/(qH)) log(2qM)^2.
    """
    if M < 1:
        raise PreconditionError("M must be >= 1")
    if mode not in ("linear", "hyperbola"):
        raise PreconditionError(f"unknown mode {mode!r}")
    check_budget(M, f"min_sum over M={M}")
    total = 0.0
    for m in range(1, M + 1):
        first = cap if mode == "linear" else cap / m + 1.0
        norm = ta.unit_norm(m)
        total += first if norm == 0.0 else min(first, 1.0 / norm)
    log_factor = math.log(2 * ta.q * M)
    if mode == "linear":
        if ta.beta == 0.0:
            bound = math.inf
        else:
            qb = ta.q * abs(ta.beta)
            bound = (M + M * cap * qb + 1.0 / qb) * log_factor
    else:
        X = cap
        bound = X * (M / X + ta.qH / X + 1.0 / ta.qH) * log_factor**2
    return MinSum(total, bound)


class BilinearResult(NamedTuple):
    value: complex
    norm1: float
    norm2: float
    bound: float


def _phase(mn: int, ta: ThetaApprox) -> complex:
    frac = ((mn % ta.q) * (ta.a % ta.q) % ta.q) / ta.q + (mn * ta.beta) % 1.0
    ang = TWO_PI * (frac % 1.0)
    return complex(math.cos(ang), math.sin(ang))


def bilinear_sum(
    alpha1: Mapping[int, complex],
    alpha2: Mapping[int, complex],
    X: int,
    ta: ThetaApprox,
    d: int = 1,
    c: int = 0,
) -> BilinearResult:
    """sum_{mn < X, mn = c (mod d)} alpha1(m) alpha2(n) e(mn theta).

    Returns the exact double sum, both l2 norms, and the bilinear bound
    sqrt(X) ||a1|| ||a2|| (M/X + N/X + qH/X + 1/(qH))^(1/2) log(2qX), where
    M, N are the largest supported indices.
    """
    if d < 1:
        raise PreconditionError("d must be >= 1")
    check_budget(len(alpha1) * len(alpha2), "bilinear double sum")
    total = 0.0 + 0.0j
    for m, w1 in alpha1.items():
        if w1 == 0:
            continue
        for n, w2 in alpha2.items():
            if w2 == 0:
                continue
            mn = m * n
            if mn >= X or mn % d != c % d:
                continue
            total += w1 * w2 * _phase(mn, ta)
    norm1 = math.sqrt(sum(abs(w) ** 2 for w in alpha1.values()))
    norm2 = math.sqrt(sum(abs(w) ** 2 for w in alpha2.values()))
    M = max(alpha1, default=1)
    N = max(alpha2, default=1)
    inner = M / X + N / X + ta.qH / X + 1.0 / ta.qH
    bound = math.sqrt(X) * norm1 * norm2 * math.sqrt(inner) * math.log(2 * ta.q * X)
    return BilinearResult(complex(total), norm1, norm2, bound)


# -- Vaughan five-term split --------------------------------------------------


class VaughanSums(NamedTuple):
    s1: complex
    s2: complex
    s3: complex
    s4: complex
    s5: complex

    @property
    def total(self) -> complex:
        return self.s1 + self.s2 - self.s3 - self.s4 + self.s5


_VAUGHAN_CACHE: dict[tuple[int, int], tuple[np.ndarray, ...]] = {}


def _vaughan_arrays(tables: PrimeTables, X: int, U: int):
    """Pointwise component arrays of the split, cached per (X, U).

    a1 = Lambda_{<=U};      a2 = mu_{<=U} * log;
    a3 = (f 1_{<=U}) * 1;   a4 = (f 1_{>U}) * 1   with f = mu_{<=U} * Lambda_{<=U};
    a5 = mu_{>U} * Lambda_{>U} * 1.
    Identity: a1 + a2 - a3 - a4 + a5 = Lambda pointwise on [1, X).
    """
    key = (X, U)
    hit = _VAUGHAN_CACHE.get(key)
    if hit is not None:
        return hit
    check_budget(X * (math.log(X) + 2) * 4, f"Vaughan arrays at X={X}")
    mu = tables.mobius_range(X).astype(np.float64)
    lam = tables.mangoldt_range(X)
    a1 = lam.copy()
    a1[U + 1 :] = 0.0

    a2 = np.zeros(X)
    for m in range(1, min(U, X - 1) + 1):
        if mu[m] == 0:
            continue
        js = np.arange(1, (X - 1) // m + 1)
        a2[m * js] += mu[m] * np.log(js)

    f = np.zeros(X)
    pp_n, pp_log = tables.prime_powers
    cut = np.searchsorted(pp_n, U, side="right")
    small_pp = pp_n[:cut]
    small_lg = pp_log[:cut]
    for m in range(1, U + 1):
        if mu[m] == 0:
            continue
        prods = m * small_pp
        keep = prods < X
        np.add.at(f, prods[keep], mu[m] * small_lg[keep])

    a3 = np.zeros(X)
    for m in range(1, min(U, X - 1) + 1):
        if f[m] != 0:
            a3[m::m] += f[m]
    a4 = np.zeros(X)
    for m in range(U + 1, min(U * U, X - 1) + 1):
        if f[m] != 0:
            a4[m::m] += f[m]

    g = np.zeros(X)
    big = (pp_n > U) & (pp_n < X)
    for pp, lg in zip(pp_n[big], pp_log[big]):
        g[pp::pp] += lg
    a5 = np.zeros(X)
    for m in range(U + 1, X):
        if mu[m] == 0:
            continue
        js = np.arange(1, (X - 1) // m + 1)
        a5[m * js] += mu[m] * g[js]

    arrays = (a1, a2, a3, a4, a5)
    if len(_VAUGHAN_CACHE) >= 4:
        _VAUGHAN_CACHE.pop(next(iter(_VAUGHAN_CACHE)))
    _VAUGHAN_CACHE[key] = arrays
    return arrays


def vaughan_decompose(
    tables: PrimeTables, X: int, U: int, d: int, c: int, theta: float
) -> VaughanSums:
    """Five component sums whose signed total equals lambda_hat(X, d, c, theta).

    The split is exact as an algebraic identity; only floating rounding
    separates total from the direct transform.
    """
    if U < 2:
        raise PreconditionError("U must be >= 2")
    if X - 1 > tables.limit:
        raise PreconditionError("X exceeds table limit")
    arrays = _vaughan_arrays(tables, X, U)
    ns = np.arange(X, dtype=np.int64)
    mask = ns % d == c % d
    ns = ns[mask]
    phases = np.exp(2j * np.pi * ((ns * theta) % 1.0))
    sums = [complex((arr[ns] * phases).sum()) for arr in arrays]
    return VaughanSums(*sums)


# -- Weyl-differenced double sum ----------------------------------------------


class WeylSum(NamedTuple):
    value: float
    bound: float


def mikawa_w(tables: PrimeTables, M: int, N: int, X: int, ta: ThetaApprox) -> WeylSum:
    """M * sum_{m ~ M} sum_{n ~ N} tau_3(n) min(X/(m^2 n) + 1, 1/||m^2 n theta||).

    The exact double loop, next to the bound shape
    M^2 N (log X)^3 + X (1/M + qH/X + 1/(qH))^(1/4) (log X)^8.
    """
    if M < 1 or N < 1:
        raise PreconditionError("M and N must be >= 1")
    if 2 * N > tables.limit:
        raise PreconditionError("tau_3 range exceeds table limit")
    check_budget(M * N * 4, f"weyl double sum M={M} N={N}")
    tau3 = {n: tables.tau(n, 3) for n in range(N + 1, 2 * N + 1)}
    total = 0.0
    for m in range(M + 1, 2 * M + 1):
        m2 = m * m
        for n in range(N + 1, 2 * N + 1):
            first = X / (m2 * n) + 1.0
            norm = ta.unit_norm(m2 * n)
            term = first if norm == 0.0 else min(first, 1.0 / norm)
            total += tau3[n] * term
    value = M * total
    lx = math.log(X)
    bound = M * M * N * lx**3 + X * (1.0 / M + ta.qH / X + 1.0 / ta.qH) ** 0.25 * lx**8
    return WeylSum(value, bound)


# -- Type I aggregates ---------------------------------------------------------


def _modinv(x: int, m: int) -> int:
    return pow(x % m, -1, m)


def type_one_inner(
    d: int, c: int, M: int, alpha: Mapping[int, complex], j: int, X: int, theta: float
) -> complex:
    """sum_{mn < X, m <= M, mn = c (mod d)} alpha(m) (log n)^j e(mn theta)."""
    if j not in (0, 1):
        raise PreconditionError("j must be 0 or 1")
    total = 0.0 + 0.0j
    for m, w in alpha.items():
        if w == 0 or m > M or m < 1:
            continue
        g = math.gcd(m, d)
        if c % g != 0:
            continue
        dd = d // g
        start = (c // g) * _modinv(m // g, dd) % dd if dd > 1 else 1
        if start == 0:
            start = dd
        n_max = (X - 1) // m
        if start > n_max:
            continue
        ns = np.arange(start, n_max + 1, dd, dtype=np.int64)
        weights = np.log(ns.astype(np.float64)) if j == 1 else np.ones(len(ns))
        phases = np.exp(2j * np.pi * (((ns * m) * theta) % 1.0))
        total += w * complex((weights * phases).sum())
    return complex(total)


def type_one_sum(
    weights: Mapping[int, tuple[complex, int]],
    M: int,
    alpha: Mapping[int, complex],
    j: int,
    X: int,
    theta: float,
) -> complex:
    """Weighted aggregate sum_d sigma_d * inner(d, c_d); weights maps d -> (sigma_d, c_d)."""
    check_budget(sum(X // max(d, 1) for d in weights) * max(len(alpha), 1), "type I aggregate")
    total = 0.0 + 0.0j
    for d, (sigma, c_d) in weights.items():
        if sigma == 0:
            continue
        total += sigma * type_one_inner(d, c_d, M, alpha, j, X, theta)
    return complex(total)


def type_one_max(
    tables: PrimeTables,
    D: int,
    h3: int,
    M: int,
    alpha: Mapping[int, complex],
    j: int,
    X: int,
    theta: float,
) -> float:
    """sum_{d <= D} tau_{h3}(d) max over reduced c of |inner(d, c)|.

    The max enumerates every reduced residue; no shortcuts.
    """
    check_budget(X * math.log(D + 1) * max(len(alpha), 1), "type I max aggregate")
    total = 0.0
    for d in range(1, D + 1):
        best = 0.0
        for c in range(1, d + 1):
            if math.gcd(c, d) != 1:
                continue
            best = max(best, abs(type_one_inner(d, c % d, M, alpha, j, X, theta)))
        total += tables.tau(d, h3) * best
    return total
