"""Prime tables from a segmented sieve of Eratosthenes."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DomainError

#: Largest sieve bound accepted by :func:`sieve_primes` (about 2.8 GB of int64 output
#: would be needed well before this; 10**8 takes a few seconds).
MAX_LIMIT = 4 * 10**9

_SEGMENT_ODDS = 1 << 18  # odd numbers per segment; 256 KiB of flags


@dataclass(frozen=True, eq=False)
class PrimeTable:
    """All primes up to ``limit`` in ascending order.

    The ``primes`` array is marked read-only so a table can be shared freely.
    """

    limit: int
    primes: np.ndarray

    def __len__(self):
        return int(self.primes.size)

    def __iter__(self):
        return iter(self.primes.tolist())

    @cached_property
    def logs(self) -> np.ndarray:
        out = np.log(self.primes.astype(np.float64))
        out.setflags(write=False)
        return out

    @property
    def largest(self) -> int:
        return int(self.primes[-1])

    def power_sum(self, sigma: float) -> float:
        """Sum of p**-sigma over the table (P_t at a real argument)."""
        return float(np.sum(np.exp(-sigma * self.logs)))

    def restrict(self, limit: int) -> "PrimeTable":
        """Sub-table of primes <= limit (shares memory)."""
        if limit < 2:
            raise DomainError(f"limit must be >= 2, got {limit}")
        n = int(np.searchsorted(self.primes, limit, side="right"))
        return _make_table(min(limit, self.limit), self.primes[:n])


def _make_table(limit, primes):
    primes = np.asarray(primes, dtype=np.int64)
    primes.setflags(write=False)
    return PrimeTable(limit=int(limit), primes=primes)


def _small_primes(n):
    """Plain sieve for the base primes up to n."""
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for p in range(3, math.isqrt(n) + 1, 2):
        if flags[p]:
            flags[p * p :: 2 * p] = False
    return np.flatnonzero(flags)


def sieve_primes(limit: int) -> PrimeTable:
    """Return the table of all primes ``<= limit``.

    Odd numbers only, sieved in fixed-size segments so the working set stays
    in cache; 1.5e7 takes well under a second and 1e8 a few seconds.
    """
    limit = int(limit)
    if limit < 2:
        raise DomainError(f"sieve limit must be >= 2, got {limit}")
    if limit > MAX_LIMIT:
        raise DomainError(f"sieve limit {limit} exceeds ceiling {MAX_LIMIT}")
    if limit < 3:
        return _make_table(limit, [2])

    root = math.isqrt(limit)
    base = _small_primes(max(root, 2))[1:]  # odd base primes
    chunks = [np.array([2], dtype=np.int64)]
    # segment covers odd numbers lo, lo+2, ..., index i <-> lo + 2i
    lo = 3
    seg = np.empty(_SEGMENT_ODDS, dtype=bool)
    while lo <= limit:
        count = min(_SEGMENT_ODDS, (limit - lo) // 2 + 1)
        flags = seg[:count]
        flags[:] = True
        hi = lo + 2 * (count - 1)
        for p in base:
            p = int(p)
            sq = p * p
            if sq > hi:
                break
            if sq >= lo:
                start = sq
            else:
                start = lo + (-lo) % p  # first multiple of p >= lo
                if start % 2 == 0:
                    start += p
            flags[(start - lo) // 2 :: p] = False
        idx = np.flatnonzero(flags)
        chunks.append(lo + 2 * idx.astype(np.int64))
        lo = hi + 2
    return _make_table(limit, np.concatenate(chunks))


def prime_count_upper(n: int) -> int:
    """An upper bound for the n-th prime (Rosser's bound for n >= 6)."""
    if n < 6:
        return 13
    ln = math.log(n)
    return int(n * (ln + math.log(ln))) + 3


def nth_prime(n: int) -> int:
    """The n-th prime, 1-indexed: nth_prime(1) == 2."""
    n = int(n)
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    table = sieve_primes(prime_count_upper(n))
    return int(table.primes[n - 1])


def primes_through_nth(n: int) -> PrimeTable:
    """Table ending exactly at the n-th prime (limit = p_n)."""
    n = int(n)
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    table = sieve_primes(prime_count_upper(n))
    return table.restrict(int(table.primes[n - 1]))
