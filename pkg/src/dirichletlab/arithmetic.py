"""Integer tables: smallest-prime-factor sieve, factorizations, and the
multiplicative/additive functions built from them.

Everything downstream (weight catalogs, coefficient identities) reads from a
SieveTable, so factorization cost is amortized to O(1) per query after the
O(N log log N) build.  Bulk table builders are vectorized with slice
arithmetic; the per-n operations work on an explicit factorization and use
exact integer (or rational) arithmetic wherever the result is rational.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import BudgetError, RangeError

DEFAULT_BUDGET = 10**8

# A factorization is an ascending tuple of (prime, exponent) pairs; 1 -> ().
Factorization = tuple


@dataclass(frozen=True)
class SieveTable:
    """Smallest-prime-factor table for 2..limit, plus the prime list."""

    limit: int
    spf: np.ndarray
    primes: np.ndarray


def build_sieve(limit: int, budget: int = DEFAULT_BUDGET) -> SieveTable:
    """Sieve smallest prime factors up to limit.

    Refuses limits beyond the budget ceiling rather than thrashing memory.
    """
    if limit < 2:
        raise RangeError(f"sieve limit must be >= 2, got {limit}")
    if limit > budget:
        raise BudgetError(f"sieve limit {limit} exceeds budget {budget}")
    spf = np.zeros(limit + 1, dtype=np.int32)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            seg = spf[p * p :: p]
            seg[seg == 0] = p
    rem = np.flatnonzero(spf == 0)
    rem = rem[rem >= 2]
    spf[rem] = rem.astype(np.int32)
    primes = np.flatnonzero(spf == np.arange(limit + 1, dtype=np.int64))
    primes = primes[primes >= 2]
    spf.setflags(write=False)
    primes.setflags(write=False)
    return SieveTable(limit=limit, spf=spf, primes=primes)


def factorize(table: SieveTable, n: int) -> Factorization:
    """Factor n by repeated smallest-prime-factor division; pairs ascend."""
    n = int(n)
    if not 1 <= n <= table.limit:
        raise RangeError(f"n={n} outside tabulated range [1, {table.limit}]")
    spf = table.spf
    out = []
    while n > 1:
        p = int(spf[n])
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        out.append((p, e))
    return tuple(out)


def reconstruct(f: Factorization) -> int:
    n = 1
    for p, e in f:
        n *= p**e
    return n


def divisors(f: Factorization) -> list:
    """All divisors of the factored integer, ascending."""
    out = [1]
    for p, e in f:
        out = [d * p**j for d in out for j in range(e + 1)]
    return sorted(out)


def divisor_count(f: Factorization) -> int:
    out = 1
    for _, e in f:
        out *= e + 1
    return out


def mobius(f: Factorization) -> int:
    for _, e in f:
        if e >= 2:
            return 0
    return -1 if len(f) % 2 else 1


def von_mangoldt(f: Factorization) -> float:
    """log p on prime powers p^k, zero elsewhere (including 1)."""
    if len(f) == 1:
        return math.log(f[0][0])
    return 0.0


def generalized_divisor(gamma, f: Factorization) -> float:
    """Coefficient multiplicative in f with value rising(gamma,e)/e! at p^e.

    The per-prime-power recurrence value_j = value_{j-1} * (gamma+j-1)/j is
    run in exact integer arithmetic for integer gamma >= 1 and in exact
    rational arithmetic otherwise, so the single final float conversion is
    correctly rounded (this is what makes the gamma=2 case agree with
    divisor_count exactly as floats).
    """
    g = float(gamma)
    if g.is_integer() and g >= 1:
        gi = int(g)
        total = 1
        for _, e in f:
            val = 1
            for j in range(1, e + 1):
                val = val * (gi + j - 1) // j  # binomial recurrence, exact
            total *= val
        return float(total)
    q = Fraction(g)
    total = Fraction(1)
    for _, e in f:
        val = Fraction(1)
        for j in range(1, e + 1):
            val = val * (q + j - 1) / j
        total *= val
    return float(total)


def ordered_factorizations(n: int, table: SieveTable) -> int:
    """Count ordered factorizations of n into parts > 1 (1 has exactly one,
    the empty product).  Exact integer arithmetic; memoized over the divisor
    lattice of n."""
    f = factorize(table, n)
    divs = divisors(f)
    counts = {1: 1}
    for m in divs[1:]:
        acc = 1  # the one-part factorization (m) itself
        for d in divs:
            if d >= m:
                break
            if d > 1 and m % d == 0:
                acc += counts[d]
        counts[m] = acc
    return counts[divs[-1]]


def ordered_factorization_table(limit: int) -> np.ndarray:
    """Ordered-factorization counts for 1..limit in one divisor-lattice pass.

    F[n] = 1 + sum of F[m] over proper divisors m > 1; processing m ascending
    makes each F[m] final before it is pushed onto its multiples.
    """
    if limit < 1:
        raise RangeError(f"limit must be >= 1, got {limit}")
    F = np.zeros(limit + 1, dtype=np.int64)
    F[1:] = 1
    for m in range(2, limit // 2 + 1):
        F[2 * m :: m] += F[m]
    return F


def divisor_count_table(limit: int) -> np.ndarray:
    """d(n) for 1..limit via the hyperbola split (pairs i, n/i with i<=sqrt(n))."""
    d = np.zeros(limit + 1, dtype=np.int64)
    for i in range(1, math.isqrt(limit) + 1):
        d[i * i :: i] += 2
        d[i * i] -= 1
    return d


def von_mangoldt_table(table: SieveTable) -> np.ndarray:
    lam = np.zeros(table.limit + 1)
    primes = table.primes.astype(np.int64)
    logp = np.log(primes.astype(np.float64))
    power = primes.copy()
    k = power.size
    while k:
        lam[power[:k]] = logp[:k]
        power[:k] *= primes[:k]
        k = int(np.searchsorted(power[:k], table.limit, side="right"))
    return lam


def generalized_divisor_table(gamma, table: SieveTable) -> np.ndarray:
    """Bulk version of generalized_divisor over 1..limit.

    gamma=2 routes through the exact divisor-count table; other gammas apply
    the per-prime-power ratio (gamma+j-1)/j to multiples of p^j, which keeps
    relative rounding at the 1e-15 level (fine for the fit/fit-ratio uses;
    per-n exactness lives in generalized_divisor).
    """
    if float(gamma) == 2.0:
        return divisor_count_table(table.limit).astype(np.float64)
    t = np.ones(table.limit + 1)
    t[0] = 0.0
    for p in table.primes:
        p = int(p)
        q, j = p, 1
        while q <= table.limit:
            t[q::q] *= (gamma + j - 1) / j
            q *= p
            j += 1
    return t


def omega_table(table: SieveTable) -> np.ndarray:
    """Number of prime factors counted with multiplicity, for 0..limit."""
    om = np.zeros(table.limit + 1, dtype=np.int8)
    for p in table.primes:
        p = int(p)
        q = p
        while q <= table.limit:
            om[q::q] += 1
            q *= p
    return om


def exponent_factorial_table(table: SieveTable) -> np.ndarray:
    """Product of exponent factorials prod(nu_p!) for each n (1 at n=1)."""
    t = np.ones(table.limit + 1)
    t[0] = 0.0
    for p in table.primes:
        p = int(p)
        if p * p > table.limit:
            break
        q, j = p * p, 2
        while q <= table.limit:
            t[q::q] *= j
            q *= p
            j += 1
    return t
