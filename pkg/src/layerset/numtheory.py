"""Arithmetic application: divisor counting and primality via the B-function.

The remainder of x mod j feeds a B-function Kronecker test, proper divisors
are counted by summing those tests over j in [2, x//2], and primality is
the exactly-zero-divisors slice.  The independent check everywhere is a
conventional sieve of Eratosthenes (`sieve_prime_count`), which shares no
code with the formula route.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .bcore import HalfInt, b


def _check_natural(v, name: str, minimum: int = 0) -> None:
    if isinstance(v, bool) or not isinstance(v, int):
        raise TypeError(f"{name} must be an int, got {v!r}")
    if v < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {v}")


def digit0(j: int, x: int) -> int:
    """Zeroth digit of x in base j: the remainder x - j*floor(x/j)."""
    _check_natural(j, "j", 1)
    _check_natural(x, "x")
    return x - j * (x // j)


def divides(j: int, x: int) -> HalfInt:
    """1 iff j divides x, as b(remainder, 1/2)."""
    return b(digit0(j, x), 0.5)


def proper_divisor_count(x: int) -> int:
    """Number of proper divisors of x (no proper divisor exceeds x//2)."""
    _check_natural(x, "x", 2)
    return sum(divides(j, x).as_bit() for j in range(2, x // 2 + 1))


def exactly_m_divisors(x: int, m: int) -> HalfInt:
    """1 iff x has exactly m proper divisors: b(m - count, 1/2)."""
    _check_natural(x, "x", 2)
    _check_natural(m, "m")
    return b(m - proper_divisor_count(x), 0.5)


def is_prime(x: int) -> HalfInt:
    """1 iff x is prime, as the zero-proper-divisors slice (x >= 2)."""
    return exactly_m_divisors(x, 0)


def prime_count(N: int, *, bulk: bool = True) -> int:
    """Primes <= N by summing the formula indicator from x = 2.

    With bulk=True (default) the divisor-count sweep runs through the array
    kernels; the arithmetic is identical to the scalar route and the two
    are tested for exact agreement.
    """
    _check_natural(N, "N", 2)
    if not bulk:
        return sum(is_prime(x).as_bit() for x in range(2, N + 1))
    counts = kernels.divisor_counts(N)
    return int(np.count_nonzero(counts[2:] == 0))


def prime_flags_table(limit: int) -> np.ndarray:
    """flags[x] = 1 iff x is prime via the formula route, for x in [0, limit]."""
    _check_natural(limit, "limit", 2)
    counts = kernels.divisor_counts(limit)
    flags = (counts == 0).astype(np.uint8)
    flags[:2] = 0
    return flags


def sieve_prime_count(N: int) -> int:
    """Primes <= N by a plain sieve of Eratosthenes (oracle route)."""
    _check_natural(N, "N", 2)
    return int(sieve_flags(N).sum())


def sieve_flags(limit: int) -> np.ndarray:
    """flags[x] = 1 iff x is prime, by sieving; independent of the B-function."""
    _check_natural(limit, "limit", 2)
    flags = np.ones(limit + 1, dtype=np.uint8)
    flags[:2] = 0
    p = 2
    while p * p <= limit:
        if flags[p]:
            flags[p * p:: p] = 0
        p += 1
    return flags
