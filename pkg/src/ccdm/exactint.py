"""Exact arbitrary-precision combinatorics: binomials, multinomials, Legendre
prime-exponent factorials and power-of-two flooring.

Everything here returns plain Python ints.  No floating point is used
anywhere: an inexact count would silently corrupt rank arithmetic downstream,
so both binomial routes below are exact and are cross-checked in the tests.
"""

from __future__ import annotations

import threading
from bisect import bisect_right
from functools import lru_cache
from typing import Iterable, Sequence

__all__ = [
    "primes_upto",
    "factorial_prime_exponents",
    "binomial",
    "binomial_product",
    "multinomial",
    "floor_log2_pow2",
]

# Shared sieve output, grown on demand.  Readers grab the current tuple
# atomically; the lock only serialises regeneration.
_prime_lock = threading.Lock()
_prime_table: tuple[int, ...] = ()
_prime_limit: int = -1


def primes_upto(n: int) -> tuple[int, ...]:
    """All primes <= n, from a cached Eratosthenes sieve."""
    global _prime_table, _prime_limit
    if n > _prime_limit:
        with _prime_lock:
            if n > _prime_limit:
                limit = max(n, 2 * _prime_limit, 256)
                sieve = bytearray(b"\x01") * (limit + 1)
                sieve[0:2] = b"\x00\x00"
                for p in range(2, int(limit**0.5) + 1):
                    if sieve[p]:
                        step = len(range(p * p, limit + 1, p))
                        sieve[p * p :: p] = bytes(step)
                _prime_table = tuple(i for i, flag in enumerate(sieve) if flag)
                _prime_limit = limit
    table = _prime_table
    if table and table[-1] > n:
        return table[: bisect_right(table, n)]
    return table


@lru_cache(maxsize=4096)
def factorial_prime_exponents(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of n! as ((p, exponent), ...) with exponents > 0.

    The exponent of prime p is sum(floor(n / p**i)) over i >= 1, so neither
    the bases nor the exponents ever exceed n.
    """
    if n < 0:
        raise ValueError("factorial of negative integer is undefined")
    factors = []
    for p in primes_upto(n):
        e = 0
        q = n // p
        while q:
            e += q
            q //= p
        if e:
            factors.append((p, e))
    return tuple(factors)


def _reconstruct(factors: Iterable[tuple[int, int]]) -> int:
    # Odd-prime powers are multiplied first; the power of two is applied
    # last as a single shift.
    shift = 0
    value = 1
    for p, e in factors:
        if p == 2:
            shift = e
        else:
            value *= p**e
    return value << shift


@lru_cache(maxsize=None)
def binomial(n: int, w: int) -> int:
    """Exact C(n, w) via prime factorization of the factorials.

    Cancellation happens on the exponent vectors before any multiplication,
    so intermediate bases and exponents stay <= n.  Returns 0 when w > n.
    """
    if n < 0 or w < 0:
        raise ValueError("binomial arguments must be nonnegative")
    if w > n:
        return 0
    if w == 0 or w == n:
        return 1
    top = dict(factorial_prime_exponents(n))
    for p, e in factorial_prime_exponents(w):
        top[p] -= e
    for p, e in factorial_prime_exponents(n - w):
        top[p] -= e
    return _reconstruct((p, e) for p, e in top.items() if e)


def binomial_product(n: int, w: int) -> int:
    """Exact C(n, w) as a running multiplicative product.

    Independent cross-check route for :func:`binomial`; every division below
    is exact because each prefix is itself a binomial coefficient.
    """
    if n < 0 or w < 0:
        raise ValueError("binomial arguments must be nonnegative")
    if w > n:
        return 0
    w = min(w, n - w)
    value = 1
    for i in range(1, w + 1):
        value = value * (n - w + i) // i
    return value


def multinomial(counts: Sequence[int]) -> int:
    """Number of distinct arrangements of a multiset with the given counts.

    Computed as the chained product of binomials C(remaining, count), which
    keeps every intermediate value an exact integer.
    """
    remaining = 0
    for c in counts:
        if c < 0:
            raise ValueError("counts must be nonnegative")
        remaining += c
    value = 1
    for c in counts:
        value *= binomial(remaining, c)
        remaining -= c
    return value


def floor_log2_pow2(x: int) -> int:
    """Exponent r of the largest power of two <= x, i.e. 2**r <= x < 2**(r+1)."""
    if x < 1:
        raise ValueError("floor_log2_pow2 requires x >= 1")
    return x.bit_length() - 1
