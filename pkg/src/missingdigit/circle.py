"""Arc dissection at X = b^k, the progression discrepancy and its weighted
aggregates, exact conservation splits over major/minor arcs, and the
two-squares application counts with the Buchstab split.

The discrepancy measured everywhere below is

    E(X; d, c) = sum_{n < X, n = c (d), n = r (b)} Lambda(n) 1_set(n)
                 - (1/phi(d)) (b/phi(b)) * #(set members < X ending in r),

with the member count exact.  Frequencies t/X are labeled Major3 (exact
fraction with q | X), Major2 (integer offset eta from such a fraction),
Major1 (close to a reduced fraction with q not dividing X) or Minor; a single
t can witness several major conditions, so classification checks Major3,
then Major2, then Major1, scanning q and a in increasing order and taking
the first witness.  That priority is what makes the labels a partition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, NamedTuple, Optional

import numpy as np

from ._budget import check_budget
from .digitset import DigitSystem, contains, contains_array, count
from .errors import InternalCheckError, PreconditionError
from .fourier import spectrum
from .primetables import PrimeTables

KIND_MINOR = "Minor"
KIND_M1 = "Major1"
KIND_M2 = "Major2"
KIND_M3 = "Major3"


@dataclass(frozen=True)
class ArcLabel:
    kind: str
    a: int
    q: int
    eta: Optional[float]
    C: float


def _log_power(X: int, C: float) -> float:
    return math.log(X) ** C


def classify_arc(t: int, X: int, C: float) -> ArcLabel:
    """Label one frequency t/X; deterministic first-witness priority."""
    if not 0 <= t < X:
        raise PreconditionError(f"t={t} not in [0, {X})")
    cutoff = _log_power(X, C)
    g = math.gcd(t, X)
    q0 = X // g
    if q0 <= cutoff:
        return ArcLabel(KIND_M3, t // g, q0, None, C)
    qmax = int(cutoff)
    for q in range(1, qmax + 1):
        if X % q != 0:
            continue
        step = X // q
        a_lo = max(0, math.ceil((t - cutoff) / step))
        a_hi = min(q - 1, math.floor((t + cutoff) / step))
        for a in range(a_lo, a_hi + 1):
            if math.gcd(a, q) != 1:
                continue
            eta = t - a * step
            if 0 < abs(eta) <= cutoff:
                return ArcLabel(KIND_M2, a, q, float(eta), C)
    for q in range(1, qmax + 1):
        if X % q == 0:
            continue
        a_lo = max(1, math.ceil((t * q - q * cutoff) / X))
        a_hi = min(q - 1, math.floor((t * q + q * cutoff) / X))
        for a in range(a_lo, a_hi + 1):
            if math.gcd(a, q) != 1:
                continue
            if abs(t * q - a * X) <= q * cutoff:
                return ArcLabel(KIND_M1, a, q, None, C)
    return ArcLabel(KIND_MINOR, 0, 0, None, C)


_KIND_CODE = {KIND_MINOR: 0, KIND_M1: 1, KIND_M2: 2, KIND_M3: 3}
_ARC_CODE_CACHE: dict[tuple[int, float], np.ndarray] = {}


def arc_codes(X: int, C: float) -> np.ndarray:
    """Codes 0..3 (minor, M1, M2, M3) for every t < X; cached."""
    key = (X, C)
    hit = _ARC_CODE_CACHE.get(key)
    if hit is not None:
        return hit
    check_budget(X * _log_power(X, C), f"arc classification at X={X}")
    codes = np.zeros(X, dtype=np.int8)
    for t in range(X):
        codes[t] = _KIND_CODE[classify_arc(t, X, C).kind]
    if len(_ARC_CODE_CACHE) >= 4:
        _ARC_CODE_CACHE.pop(next(iter(_ARC_CODE_CACHE)))
    _ARC_CODE_CACHE[key] = codes
    return codes


def ramanujan_sum(q: int, a: int) -> complex:
    """sum over reduced residues m mod q of e(-m a / q); equals mu(q) for (a,q)=1."""
    if q < 1:
        raise PreconditionError("q must be >= 1")
    total = 0.0 + 0.0j
    for m in range(1, q + 1):
        if math.gcd(m, q) == 1:
            ang = -2.0 * math.pi * ((m * a) % q) / q
            total += complex(math.cos(ang), math.sin(ang))
    return total


# -- discrepancy ----------------------------------------------------------------


def _power_of(ds: DigitSystem, X: int) -> int:
    k = round(math.log(X) / math.log(ds.base))
    if ds.base**k != X:
        raise PreconditionError(f"X={X} is not a power of the base {ds.base}")
    return k


def _phi(tables: PrimeTables, n: int) -> int:
    return tables.totient(n) if n <= tables.limit else _phi_slow(n)


def _phi_slow(n: int) -> int:
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            result -= result // p
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _member_prime_powers(tables: PrimeTables, ds: DigitSystem, X: int):
    """(n, log p) arrays over prime powers n < X that are members ending in r."""
    if ds.residue is None:
        raise PreconditionError("a last-digit residue is required here")
    pp_n, pp_log = tables.prime_powers
    cut = np.searchsorted(pp_n, X, side="left")
    ns = pp_n[:cut]
    keep = contains_array(ds, ns)
    return ns[keep], pp_log[:cut][keep]


def discrepancy_E(tables: PrimeTables, ds: DigitSystem, X: int, d: int, c: int) -> float:
    """E(X; d, c) with the exact member count in the main term."""
    b = ds.base
    r = ds.residue
    if r is None or math.gcd(r, b) != 1:
        raise PreconditionError("need a residue r with gcd(r, b) = 1")
    if math.gcd(c, d) != 1 or math.gcd(d, b) != 1:
        raise PreconditionError("need gcd(c, d) = gcd(d, b) = 1")
    k = _power_of(ds, X)
    if X - 1 > tables.limit:
        raise PreconditionError("X exceeds table limit")
    ns, logs = _member_prime_powers(tables, ds, X)
    lam_side = float(logs[ns % d == c % d].sum())
    main = b * count(ds, k) / (_phi(tables, d) * _phi(tables, b))
    return lam_side - main


class Row(NamedTuple):
    d: int
    c: int
    E: float
    weight: float


@dataclass
class DiscrepancyReport:
    weight_kind: str
    rows: list[Row]
    aggregate: float
    params: dict = field(default_factory=dict)

    def recomputed_aggregate(self) -> float:
        if self.weight_kind in ("abs_max_c", "fixed_c", "factorable_pair"):
            return sum(r.weight * abs(r.E) for r in self.rows)
        return sum(r.weight * r.E for r in self.rows)


def weighted_discrepancy(
    tables: PrimeTables,
    ds: DigitSystem,
    X: int,
    weight_kind: str,
    D: int | None = None,
    c: int | None = None,
    D1: int | None = None,
    D2: int | None = None,
    xi: Mapping[int, float] | None = None,
    weights=None,
    L: int | None = None,
    h: Callable[[int], float] | None = None,
    delta: float = 1e-3,
) -> DiscrepancyReport:
    """One equidistribution-style weighted aggregate of discrepancies.

    abs_max_c:        sum_{d <= D, (d,b)=1} max over reduced c of |E(X;d,c)|
    fixed_c:          sum_{d <= D, (d,bc)=1} |E(X;d,c)|
    factorable_pair:  sum_{d1 <= D1} sum_{d2 <= D2} |E(X;d1 d2,c)| over
                      (c,d1d2) = (b,d1d2) = (d1,d2) = 1
    well_factorable:  sum_d xi(d) E(X;d,c) over (d,bc)=1
    sieve_semi:       sum_d lambda^-(d) [Lambda-count over n=1 (d), n=3 (8)
                      minus (1/(4 phi(d)))(b/phi(b)) count] over (d,2b)=1
    sieve_lin:        sum_d lambda^+(d) [two-variable count over 2 l n + 1
                      minus its (1/(4 phi(d)))(b/phi(b)) main term]
    """
    b = ds.base
    r = ds.residue
    if r is None or math.gcd(r, b) != 1:
        raise PreconditionError("need a residue r with gcd(r, b) = 1")
    k = _power_of(ds, X)
    if X - 1 > tables.limit:
        raise PreconditionError("X exceeds table limit")
    cnt = count(ds, k)
    phi_b = _phi(tables, b)
    rows: list[Row] = []
    params: dict = {"X": X, "b": b, "a0": ds.excluded, "r": r, "kind": weight_kind}

    ns, logs = _member_prime_powers(tables, ds, X)

    def lam_sums_mod(d: int) -> np.ndarray:
        return np.bincount(ns % d, weights=logs, minlength=d)

    if weight_kind == "abs_max_c":
        if D is None:
            raise PreconditionError("abs_max_c needs D")
        params["D"] = D
        for d in range(1, D + 1):
            if math.gcd(d, b) != 1:
                continue
            sums = lam_sums_mod(d)
            main = b * cnt / (_phi(tables, d) * phi_b)
            best_c, best_e = 1 % d, None
            for cc in range(1, d + 1):
                if math.gcd(cc, d) != 1:
                    continue
                e_val = float(sums[cc % d]) - main
                if best_e is None or abs(e_val) > abs(best_e):
                    best_c, best_e = cc % d, e_val
            rows.append(Row(d, best_c, best_e, 1.0))
        aggregate = sum(abs(row.E) for row in rows)

    elif weight_kind == "fixed_c":
        if D is None or c is None:
            raise PreconditionError("fixed_c needs D and c")
        params.update(D=D, c=c)
        for d in range(1, D + 1):
            if math.gcd(d, b * c) != 1 or math.gcd(c, d) != 1:
                continue
            rows.append(Row(d, c % d, discrepancy_E(tables, ds, X, d, c), 1.0))
        aggregate = sum(abs(row.E) for row in rows)

    elif weight_kind == "factorable_pair":
        if D1 is None or D2 is None or c is None:
            raise PreconditionError("factorable_pair needs D1, D2 and c")
        params.update(D1=D1, D2=D2, c=c)
        for d1 in range(1, D1 + 1):
            for d2 in range(1, D2 + 1):
                d = d1 * d2
                if math.gcd(d1, d2) != 1 or math.gcd(d, b) != 1 or math.gcd(d, c) != 1:
                    continue
                rows.append(Row(d, c % d, discrepancy_E(tables, ds, X, d, c), 1.0))
        aggregate = sum(abs(row.E) for row in rows)

    elif weight_kind == "well_factorable":
        if xi is None or c is None:
            raise PreconditionError("well_factorable needs xi and c")
        params["c"] = c
        for d in sorted(xi):
            w = xi[d]
            if w == 0 or math.gcd(d, b * c) != 1:
                continue
            rows.append(Row(d, c % d, discrepancy_E(tables, ds, X, d, c), float(w)))
        aggregate = sum(row.weight * row.E for row in rows)

    elif weight_kind == "sieve_semi":
        if weights is None:
            raise PreconditionError("sieve_semi needs sieve weights")
        params["level"] = weights.spec.D
        mask8 = ns % 8 == 3
        for d in weights.support:
            w = weights(d)
            if w == 0 or math.gcd(d, 2 * b) != 1:
                continue
            lam_side = float(logs[mask8 & (ns % d == 1 % d)].sum())
            main = b * cnt / (4.0 * _phi(tables, d) * phi_b)
            rows.append(Row(d, 1 % d, lam_side - main, float(w)))
        aggregate = sum(row.weight * row.E for row in rows)

    elif weight_kind == "sieve_lin":
        if weights is None or L is None:
            raise PreconditionError("sieve_lin needs sieve weights and L")
        if h is None:
            h = lambda _l: 1.0
        params.update(L=L, level=weights.spec.D)
        pp_n, pp_log = tables.prime_powers
        ells = [l for l in range(L + 1, 2 * L + 1) if math.gcd(l, 2 * b) == 1]
        for d in weights.support:
            w = weights(d)
            if w == 0 or math.gcd(d, 2 * b) != 1:
                continue
            inner = 0.0
            main_sum = 0.0
            for ell in ells:
                h_ell = h(ell)
                if h_ell == 0:
                    continue
                if math.gcd(ell, d) == 1:
                    main_sum += h_ell / ell
                n_cap = (X - 1) // (2 * ell)
                cut = np.searchsorted(pp_n, n_cap, side="right")
                nn = pp_n[:cut]
                keep = ((2 * ell * nn + 1) % d == 0) & ((ell * nn) % 4 == 1)
                if not keep.any():
                    continue
                vals = 2 * ell * nn[keep] + 1
                member = contains_array(ds, vals)
                inner += h_ell * float(pp_log[:cut][keep][member].sum())
            main = b * cnt * main_sum / (4.0 * _phi(tables, d) * phi_b)
            rows.append(Row(d, -1 % d, inner - main, float(w)))
        aggregate = sum(row.weight * row.E for row in rows)

    else:
        raise PreconditionError(f"unknown weight kind {weight_kind!r}")

    report = DiscrepancyReport(weight_kind, rows, float(aggregate), params)
    recomputed = report.recomputed_aggregate()
    if abs(recomputed - report.aggregate) > 1e-9 * max(1.0, abs(report.aggregate)):
        raise InternalCheckError("aggregate does not match its rows")
    return report


# -- conservation split over arcs ------------------------------------------------


@dataclass
class ArcSplit:
    major1: complex
    major2: complex
    major3: complex
    minor: complex
    direct: float
    main_term: float
    residual: float

    @property
    def major(self) -> complex:
        return self.major1 + self.major2 + self.major3


def arc_split(
    tables: PrimeTables, ds: DigitSystem, X: int, d: int, c: int, C: float
) -> ArcSplit:
    """Split (1/X) sum_t hat1(t/X) LambdaHat_{d,c}(-t/X) by arc kind.

    The four partial sums must recombine to the direct progression count;
    the relative residual is checked against 1e-5 and returned.
    """
    if X > 10**5:
        raise PreconditionError("arc_split scan limited to X <= 10^5")
    b = ds.base
    if ds.residue is None or math.gcd(ds.residue, b) != 1:
        raise PreconditionError("need a residue r with gcd(r, b) = 1")
    if math.gcd(c, d) != 1 or math.gcd(d, b) != 1:
        raise PreconditionError("need gcd(c, d) = gcd(d, b) = 1")
    k = _power_of(ds, X)
    if X - 1 > tables.limit:
        raise PreconditionError("X exceeds table limit")
    hat = spectrum(ds, k)
    lam = tables.mangoldt_range(X)
    masked = np.where(np.arange(X) % d == c % d, lam, 0.0)
    lam_hat_neg = np.fft.fft(masked)  # index t holds LambdaHat_{d,c}(-t/X)
    terms = hat * lam_hat_neg / X
    codes = arc_codes(X, C)
    sums = [complex(terms[codes == code].sum()) for code in (1, 2, 3, 0)]
    ns, logs = _member_prime_powers(tables, ds, X)
    direct = float(logs[ns % d == c % d].sum())
    main_term = b * count(ds, k) / (_phi(tables, d) * _phi(tables, b))
    recombined = sum(sums).real
    residual = abs(recombined - direct) / max(1.0, abs(direct))
    if residual > 1e-5:
        raise InternalCheckError(
            f"arc split lost mass: recombined {recombined} vs direct {direct}"
        )
    return ArcSplit(sums[0], sums[1], sums[2], sums[3], direct, main_term, residual)


# -- application counts -----------------------------------------------------------


def count_missing_digit_primes(
    tables: PrimeTables, ds: DigitSystem, X: int
) -> tuple[int, float]:
    """(#primes p < X in the digit set, kappa X^zeta / log X)."""
    if X - 1 > tables.limit:
        raise PreconditionError("X exceeds table limit")
    primes = tables.primes_upto(X - 1)
    cnt = int(contains_array(ds, primes).sum())
    predicted = float(ds.kappa) * X**ds.zeta / math.log(X)
    return cnt, predicted


class BuchstabResult(NamedTuple):
    S: int
    T: int
    total: int
    app_count: int
    predicted_scale: float
    z: float


def buchstab_and_app(
    tables: PrimeTables, ds: DigitSystem, X: int, alpha: float
) -> BuchstabResult:
    """Partition the sifted count of shifted primes by least excluded factor.

    Over primes p < X with p = 3 (mod 8) ending in r and avoiding the digit:
    S counts p - 1 free of sieve primes (= 3 mod 4, not dividing b) up to
    z = X^(1/alpha), total the same up to sqrt(X), and T classifies by the
    least sieve factor in (z, sqrt X]; total = S - T exactly.  Every p in
    total is verified to have p - 1 primitively two-square representable.
    app_count drops the mod-8 restriction and counts p - 1 in that class
    directly; predicted_scale is X^zeta / (log X)^(3/2).
    """
    b = ds.base
    r = ds.residue
    if b % 2 == 0:
        raise PreconditionError("base must be odd here")
    if r is None or math.gcd(r * (r - 1), b) != 1:
        raise PreconditionError("need a residue r with gcd(r(r-1), b) = 1")
    if X - 1 > tables.limit:
        raise PreconditionError("X exceeds table limit")
    if alpha <= 2:
        raise PreconditionError("alpha must exceed 2")
    z = X ** (1.0 / alpha)
    primes = tables.primes_upto(X - 1)
    member = contains_array(ds, primes)
    app_count = 0
    S = T = total = 0
    for p in primes[member]:
        p = int(p)
        qc = tables.quadratic_class(p - 1)
        if qc.in_B:
            app_count += 1
        if p % 8 != 3:
            continue
        least = None
        for f, _ in tables.factor(p - 1):
            if f % 4 == 3 and b % f != 0:
                least = f
                break
        if least is None or least > z:
            S += 1
        if least is not None and least > z and least * least <= X:
            T += 1
        if least is None or least * least > X:
            total += 1
            if not qc.in_B:
                raise InternalCheckError(
                    f"sifted prime p={p} has p-1 outside the primitive class"
                )
    predicted = X**ds.zeta / math.log(X) ** 1.5
    return BuchstabResult(S, T, total, app_count, predicted, z)
