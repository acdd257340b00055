"""Elementary arithmetic functions and totient machinery.

Everything here works on plain Python ints; inputs at desk scale stay below
~10^6, so trial division against a cached prime list is plenty.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

_SMALL_PRIME_LIMIT = 1 << 12


def _sieve(limit: int) -> tuple[int, ...]:
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytes(len(range(p * p, limit + 1, p)))
    return tuple(i for i, f in enumerate(flags) if f)


_SMALL_PRIMES = _sieve(_SMALL_PRIME_LIMIT)


def _check_positive(n: int) -> None:
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")


@lru_cache(maxsize=8192)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of ``n`` as a sorted tuple of ``(p, e)`` pairs."""
    _check_positive(n)
    out = []
    for p in _SMALL_PRIMES:
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    else:
        p = _SMALL_PRIMES[-1] + 2
        while p * p <= n:
            if n % p == 0:
                e = 0
                while n % p == 0:
                    n //= p
                    e += 1
                out.append((p, e))
            p += 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return factorize(n) == ((n, 1),)


def prime_divisors(n: int) -> list[int]:
    return [p for p, _ in factorize(n)]


def omega(n: int) -> int:
    """Number of distinct prime factors."""
    return len(factorize(n))


def euler_phi(n: int) -> int:
    _check_positive(n)
    result = n
    for p, _ in factorize(n):
        result -= result // p
    return result


def moebius(n: int) -> int:
    _check_positive(n)
    fac = factorize(n)
    if any(e > 1 for _, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def radical(n: int) -> int:
    _check_positive(n)
    return math.prod(p for p, _ in factorize(n))


def divisor_count(n: int) -> int:
    _check_positive(n)
    return math.prod(e + 1 for _, e in factorize(n))


def divisors(n: int) -> list[int]:
    """Sorted positive divisors of ``n``."""
    _check_positive(n)
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def phi_sieve(limit: int) -> list[int]:
    """``phi(n)`` for every ``0 <= n <= limit`` (index 0 holds 0)."""
    phi = list(range(limit + 1))
    for p in range(2, limit + 1):
        if phi[p] == p:
            for k in range(p, limit + 1, p):
                phi[k] -= phi[k] // p
    return phi


@lru_cache(maxsize=1024)
def _inverse_totient(d: int) -> tuple[int, ...]:
    # phi(n) >= sqrt(n/2) for all n, so phi(n) = d forces n <= 2 d^2.
    phi = phi_sieve(2 * d * d)
    return tuple(n for n in range(1, len(phi)) if phi[n] == d)


def inverse_totient(d: int) -> list[int]:
    """All ``n`` with ``phi(n) == d``, sorted. Empty when ``d`` is not a totient.

    The search is exhaustive up to ``2 d^2``, which is safe because
    ``phi(n) >= sqrt(n / 2)``.
    """
    if d < 1:
        raise ValueError(f"expected a positive integer, got {d}")
    if d > 1 and d % 2:
        return []
    return list(_inverse_totient(d))


def is_totient(d: int) -> bool:
    return d >= 1 and bool(inverse_totient(d))


def next_totient(d: int) -> int:
    """Successor of the totient ``d`` in the increasing sequence of totients."""
    if not is_totient(d):
        raise ValueError(f"{d} is not a totient")
    k = d + 1
    while not is_totient(k):
        k += 1
    return k


def canonical_indices(d: int) -> list[int]:
    """Indices ``n`` with ``phi(n) == d`` and ``n`` not congruent to 2 mod 4."""
    return [n for n in inverse_totient(d) if n % 4 != 2]


def indices_with_degree_between(lo: int, hi: int, *, canonical: bool = True) -> list[int]:
    """Every ``n`` with ``lo <= phi(n) <= hi``, optionally restricted to n != 2 mod 4."""
    out: list[int] = []
    for d in range(max(lo, 1), hi + 1):
        out.extend(canonical_indices(d) if canonical else inverse_totient(d))
    return sorted(out)


@dataclass(frozen=True)
class TotientTable:
    """phi(n) for ``n <= limit`` together with the distinct totient values seen."""

    limit: int
    phi_values: tuple[int, ...] = field(repr=False)
    totient_set: tuple[int, ...] = field(repr=False)

    @classmethod
    def build(cls, limit: int) -> "TotientTable":
        _check_positive(limit)
        values = tuple(phi_sieve(limit))
        # A totient v is guaranteed to show up only once limit >= 2 v^2.
        complete_to = math.isqrt(limit // 2)
        seen = sorted({v for v in values[1:] if v <= complete_to})
        return cls(limit=limit, phi_values=values, totient_set=tuple(seen))

    def phi(self, n: int) -> int:
        if not 1 <= n <= self.limit:
            raise IndexError(n)
        return self.phi_values[n]
