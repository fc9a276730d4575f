"""Digit-set Fourier transform via the digit-product factorization.

For X = b^k the transform of the restricted set is

    hat1(theta) = sum_{n < X} 1_set(n) e(n theta),

and it factors over digit positions: each position j contributes
sum_{d allowed} e(d b^j theta), with an e(r theta) prefactor when the last
digit is pinned to r.  Evaluation is O(k b) per point; the O(b^k) defining
sum is only ever used as a test oracle.

On the grid theta = t/X the phases are tracked as exact integers mod X, so
whole-spectrum scans (L^1 mass, hybrid sums over rational points, inversion)
are clean of phase drift.

The factorization requires a nonzero excluded digit: with a0 = 0 the
canonical-expansion set is not a product over digit positions (short
expansions re-enter the set), so these transforms refuse a0 = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._budget import check_budget
from .digitset import DigitSystem, count
from .errors import PreconditionError

TWO_PI = 2.0 * math.pi

_SPECTRUM_CACHE: dict[tuple[int, int, int | None, int], np.ndarray] = {}
_SPECTRUM_CACHE_MAX = 8

_ROOTS_CACHE: dict[int, np.ndarray] = {}


def _unit_roots(X: int) -> np.ndarray:
    """e(-t/X) for t = 0..X-1; shared by repeated inversion scans."""
    roots = _ROOTS_CACHE.get(X)
    if roots is None:
        roots = np.exp(-2j * np.pi * np.arange(X) / X)
        if len(_ROOTS_CACHE) >= 4:
            _ROOTS_CACHE.pop(next(iter(_ROOTS_CACHE)))
        _ROOTS_CACHE[X] = roots
    return roots


@dataclass
class FourierStats:
    """Measured spectrum statistics for one digit length k."""

    k: int
    l1_total: float
    c_b_estimate: float
    alpha_b_estimate: float
    hybrid_totals: dict = field(default_factory=dict)


def _require_product_form(ds: DigitSystem, k: int) -> None:
    if k < 1:
        raise PreconditionError("k must be >= 1")
    if ds.excluded == 0:
        raise PreconditionError("digit-product transform needs a nonzero excluded digit")


def eval_hat(ds: DigitSystem, k: int, theta: float) -> complex:
    """hat1_set(theta) by the digit product; O(k*b)."""
    _require_product_form(ds, k)
    b = ds.base
    phase = theta % 1.0
    if ds.residue is not None:
        value = complex(math.cos(TWO_PI * ds.residue * phase), math.sin(TWO_PI * ds.residue * phase))
        start = 1
    else:
        value = 1.0 + 0.0j
        start = 0
    # phase of b^j * theta mod 1, advanced one digit position at a time
    pj = (phase * b**start) % 1.0 if start else phase
    for _ in range(start, k):
        s = 0.0 + 0.0j
        for d in ds.allowed:
            ang = TWO_PI * ((d * pj) % 1.0)
            s += complex(math.cos(ang), math.sin(ang))
        value *= s
        pj = (pj * b) % 1.0
    return value


def spectrum(ds: DigitSystem, k: int) -> np.ndarray:
    """hat1_set(t/X) for all 0 <= t < X = b^k, exact rational phases; cached."""
    _require_product_form(ds, k)
    key = (ds.base, ds.excluded, ds.residue, k)
    cached = _SPECTRUM_CACHE.get(key)
    if cached is not None:
        return cached
    b = ds.base
    X = b**k
    check_budget(X * k * b, f"spectrum scan at X={X}")
    t = np.arange(X, dtype=np.int64)
    if ds.residue is not None:
        out = np.exp(2j * np.pi * ((ds.residue * t) % X) / X)
        start = 1
    else:
        out = np.ones(X, dtype=np.complex128)
        start = 0
    for j in range(start, k):
        w = (b**j) % X
        factor = np.zeros(X, dtype=np.complex128)
        tw = (t * w) % X
        for d in ds.allowed:
            factor += np.exp(2j * np.pi * ((d * tw) % X) / X)
        out *= factor
    if len(_SPECTRUM_CACHE) >= _SPECTRUM_CACHE_MAX:
        _SPECTRUM_CACHE.pop(next(iter(_SPECTRUM_CACHE)))
    _SPECTRUM_CACHE[key] = out
    return out


def inversion_indicator(ds: DigitSystem, k: int, n: int) -> float:
    """(1/X) sum_t hat1(t/X) e(-nt/X); equals the membership indicator of n."""
    b = ds.base
    X = b**k
    if not 0 <= n < X:
        raise PreconditionError(f"n={n} not in [0, {X})")
    if X > 10**6:
        raise PreconditionError("inversion scan limited to X <= 10^6")
    hat = spectrum(ds, k)
    t = np.arange(X, dtype=np.int64)
    phases = _unit_roots(X)[(n * t) % X]
    return float((hat * phases).sum().real) / X


def l1_and_cb(ds: DigitSystem, k: int) -> FourierStats:
    """Full L^1 scan of the spectrum and the growth constants derived from it.

    l1_total = sum_t |hat1(t/X)|; the geometric-mean growth constant is
    c_b = l1_total^(1/k) / (b log b), and the hybrid-bound exponent is
    alpha_b = log(c_b * b * log b / (b-1)) / log b.
    """
    b = ds.base
    hat = spectrum(ds, k)
    l1_total = float(np.abs(hat).sum())
    c_b = l1_total ** (1.0 / k) / (b * math.log(b))
    alpha_b = math.log(c_b * b * math.log(b) / (b - 1)) / math.log(b)
    return FourierStats(k=k, l1_total=l1_total, c_b_estimate=c_b, alpha_b_estimate=alpha_b)


def _reduced_residues(q: int) -> list[int]:
    return [a for a in range(1, q) if math.gcd(a, q) == 1]


def hybrid_sum(ds: DigitSystem, k: int, Q: int, B: int,
               stats: FourierStats | None = None) -> dict:
    """Hybrid rational-point mass of the spectrum near fractions a/q, q ~ Q.

    Sums |hat1(a/q + eta/X)| over q in (Q, 2Q], reduced 1 <= a < q, and the
    integers t = X a/q + eta with |eta| < B (only such theta are grid points).
    Also reports the bound shape (b-1)^k (Q^2 B)^alpha_b + Q^2 B (c_b log b)^k
    evaluated with the measured constants, and the LHS/RHS ratio.  Passing a
    FourierStats records the total in its (Q, B) table.
    """
    if Q < 1 or B < 1:
        raise PreconditionError("Q and B must be >= 1")
    b = ds.base
    X = b**k
    check_budget(4 * Q * Q * B + X * k * b, f"hybrid scan Q={Q} B={B}")
    hat_abs = np.abs(spectrum(ds, k))
    total = 0.0
    points = 0
    for q in range(Q + 1, 2 * Q + 1):
        for a in _reduced_residues(q):
            center = X * a / q
            lo = math.floor(center - B) + 1
            hi = math.ceil(center + B) - 1
            for t in range(lo, hi + 1):
                if abs(t - center) < B:
                    total += float(hat_abs[t % X])
                    points += 1
    if stats is None:
        stats = l1_and_cb(ds, k)
    rhs = (b - 1) ** k * (Q * Q * B) ** stats.alpha_b_estimate + Q * Q * B * (
        stats.c_b_estimate * math.log(b)
    ) ** k
    stats.hybrid_totals[(Q, B)] = total
    return {
        "value": total,
        "points": points,
        "bound": rhs,
        "ratio": total / rhs if rhs > 0 else math.inf,
    }


def linf_probe(ds: DigitSystem, k: int, q: int, a: int, eps: float) -> tuple[float, float]:
    """|hat1(a/q + eps)| at a reduced fraction plus an empirical decay rate.

    Requires q < b^(k/3), gcd(a, q) = 1, |eps| < 1/(2 b^(2k/3)), and that q
    keeps a nontrivial divisor after stripping the primes of b.  The decay
    rate reported is -log(value / hat1(0)) * log(q) / k.
    """
    b = ds.base
    if q < 1 or math.gcd(a, q) != 1:
        raise PreconditionError("need gcd(a, q) = 1 with q >= 1")
    if q >= b ** (k / 3):
        raise PreconditionError(f"q={q} not below b^(k/3)")
    if abs(eps) >= 0.5 * b ** (-2 * k / 3):
        raise PreconditionError("eps too large for the probe regime")
    q1 = q
    for p in range(2, b + 1):
        if b % p == 0:
            while q1 % p == 0:
                q1 //= p
    if q1 == 1:
        raise PreconditionError("q has no divisor > 1 coprime to b")
    value = abs(eval_hat(ds, k, (a / q + eps) % 1.0))
    norm = count(ds, k)
    if value <= 0:
        return 0.0, math.inf
    decay = -math.log(value / norm) * math.log(q) / k if q > 1 else 0.0
    return value, decay
