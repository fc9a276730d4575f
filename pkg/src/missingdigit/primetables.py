"""Sieve infrastructure: smallest-prime-factor table and derived arithmetic.

One uint32 word per integer buys full factorization up to the table limit,
which in turn serves the von Mangoldt function, Moebius mu, Euler phi, the
h-fold divisor function tau_h, Chebyshev-type sums over double progressions,
and the two quadratic classes

    B    = {n : n = n1^2 + n2^2 with gcd(n1, n2) = 1}
         = {2^e * m : e in {0, 1}, p | m => p = 1 mod 4},
    Bcal = {n >= 1 : p | n => p = 1 mod 4}.

The table is read-only after construction and safe to share.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .errors import PreconditionError


class QuadClass(NamedTuple):
    in_B: bool
    in_Bcal: bool


class PrimeTables:
    """Smallest-prime-factor table for 2..limit plus cached prime-power arrays."""

    def __init__(self, limit: int):
        if limit < 2:
            raise PreconditionError("limit must be >= 2")
        self.limit = int(limit)
        try:
            spf = np.zeros(self.limit + 1, dtype=np.uint32)
        except MemoryError as exc:
            raise MemoryError(f"spf table for limit {limit} does not fit in memory") from exc
        for p in range(2, math.isqrt(self.limit) + 1):
            if spf[p] == 0:
                spf[p] = p
                block = spf[p * p :: p]
                block[block == 0] = p
        unmarked = np.nonzero(spf[2:] == 0)[0] + 2
        spf[unmarked] = unmarked
        spf[0] = spf[1] = 1
        self.spf = spf
        self._primes = None
        self._pp = None

    # -- factorization ------------------------------------------------------

    def _check(self, n: int) -> int:
        n = int(n)
        if not 1 <= n <= self.limit:
            raise PreconditionError(f"{n} outside table range [1, {self.limit}]")
        return n

    def factor(self, n: int) -> list[tuple[int, int]]:
        """(prime, exponent) pairs of n in increasing prime order."""
        n = self._check(n)
        out = []
        while n > 1:
            p = int(self.spf[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        return out

    def is_prime(self, n: int) -> bool:
        n = self._check(n)
        return n >= 2 and int(self.spf[n]) == n

    @property
    def primes(self) -> np.ndarray:
        if self._primes is None:
            idx = np.arange(self.limit + 1, dtype=np.uint32)
            self._primes = np.nonzero(self.spf == idx)[0][1:].astype(np.int64)
            # idx 1 has spf 1; strip it, keep primes >= 2
        return self._primes

    def primes_upto(self, y: int) -> np.ndarray:
        y = min(int(y), self.limit)
        pr = self.primes
        return pr[: np.searchsorted(pr, y, side="right")]

    @property
    def prime_powers(self) -> tuple[np.ndarray, np.ndarray]:
        """(n-array, log p-array) over all prime powers n = p^m <= limit."""
        if self._pp is None:
            pr = self.primes
            ns = [pr]
            logs = [np.log(pr.astype(np.float64))]
            small = pr[pr <= math.isqrt(self.limit)]
            for p in small:
                p = int(p)
                q = p * p
                while q <= self.limit:
                    ns.append(np.array([q], dtype=np.int64))
                    logs.append(np.array([math.log(p)]))
                    q *= p
            n_all = np.concatenate(ns)
            log_all = np.concatenate(logs)
            order = np.argsort(n_all, kind="stable")
            self._pp = (n_all[order], log_all[order])
        return self._pp

    # -- arithmetic functions ------------------------------------------------

    def mangoldt(self, n: int) -> float:
        """log p when n = p^m, else 0."""
        n = self._check(n)
        if n == 1:
            return 0.0
        p = int(self.spf[n])
        while n % p == 0:
            n //= p
        return math.log(p) if n == 1 else 0.0

    def mobius(self, n: int) -> int:
        n = self._check(n)
        mu = 1
        while n > 1:
            p = int(self.spf[n])
            n //= p
            if n % p == 0:
                return 0
            mu = -mu
        return mu

    def totient(self, n: int) -> int:
        n = self._check(n)
        phi = 1
        for p, e in self.factor(n):
            phi *= (p - 1) * p ** (e - 1)
        return phi

    def tau(self, n: int, h: int = 2) -> int:
        """Ordered factorizations of n into h parts: prod C(e + h - 1, h - 1)."""
        if h < 1:
            raise PreconditionError("h must be >= 1")
        n = self._check(n)
        t = 1
        for _, e in self.factor(n):
            t *= math.comb(e + h - 1, h - 1)
        return t

    def arith(self, n: int, h: int = 2) -> tuple[int, int, int]:
        """(mu(n), phi(n), tau_h(n)) from one factorization."""
        return self.mobius(n), self.totient(n), self.tau(n, h)

    def mobius_range(self, size: int) -> np.ndarray:
        """mu(n) for 0 <= n < size as int8 (mu(0) set to 0)."""
        if size - 1 > self.limit:
            raise PreconditionError("range exceeds table limit")
        mu = np.ones(size, dtype=np.int8)
        mu[0] = 0
        for p in self.primes_upto(size - 1):
            p = int(p)
            mu[p::p] *= -1
            sq = p * p
            if sq < size:
                mu[sq::sq] = 0
        return mu

    def mangoldt_range(self, size: int) -> np.ndarray:
        """Lambda(n) for 0 <= n < size as float64."""
        if size - 1 > self.limit:
            raise PreconditionError("range exceeds table limit")
        lam = np.zeros(size, dtype=np.float64)
        pp_n, pp_log = self.prime_powers
        cut = np.searchsorted(pp_n, size, side="left")
        lam[pp_n[:cut]] = pp_log[:cut]
        return lam

    # -- progression psi sums -------------------------------------------------

    def psi_progression(
        self,
        y: int,
        d: int,
        c: int,
        q: int = 1,
        m: int = 0,
        three_mod_eight: bool = False,
    ) -> float:
        """Sum of Lambda(n) over n <= y with n = c (mod d) and n = m (mod q).

        The optional flag further restricts to n = 3 (mod 8).  Empty
        progressions are allowed and give 0.
        """
        y = int(y)
        if y > self.limit:
            raise PreconditionError(f"y={y} exceeds table limit {self.limit}")
        if d < 1 or q < 1:
            raise PreconditionError("moduli must be >= 1")
        if y < 2:
            return 0.0
        pp_n, pp_log = self.prime_powers
        cut = np.searchsorted(pp_n, y, side="right")
        ns = pp_n[:cut]
        mask = (ns % d == c % d) & (ns % q == m % q)
        if three_mod_eight:
            mask &= ns % 8 == 3
        return float(pp_log[:cut][mask].sum())

    # -- quadratic classes ----------------------------------------------------

    def quadratic_class(self, n: int) -> QuadClass:
        """(n in B, n in Bcal) via the primitive two-squares criterion."""
        n = self._check(n)
        if n == 1:
            return QuadClass(True, True)
        e2 = 0
        m = n
        while m % 2 == 0:
            m //= 2
            e2 += 1
        good_odd = True
        mm = m
        while mm > 1:
            p = int(self.spf[mm])
            if p % 4 != 1:
                good_odd = False
                break
            while mm % p == 0:
                mm //= p
        in_b = good_odd and e2 <= 1
        in_bcal = good_odd and e2 == 0
        return QuadClass(in_b, in_bcal)

    def in_bcal_array(self, size: int) -> np.ndarray:
        """Boolean array: n in Bcal for 0 <= n < size (sieve-accumulated)."""
        if size - 1 > self.limit:
            raise PreconditionError("range exceeds table limit")
        ok = np.ones(size, dtype=bool)
        ok[0] = False
        for p in self.primes_upto(size - 1):
            p = int(p)
            if p % 4 != 1:
                ok[p::p] = False
        return ok


def build(limit: int) -> PrimeTables:
    """Construct the table; kept as a free function mirroring the module API."""
    return PrimeTables(limit)
