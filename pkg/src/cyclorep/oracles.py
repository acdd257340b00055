"""Deliberately naive reference implementations.

Nothing here imports the production routes: the totient is a gcd count,
coefficients come from sympy, values are plain power sums and searches are
literal double loops. Slow by design; used only to cross-check.
"""

from __future__ import annotations

import math
from functools import lru_cache

import sympy


@lru_cache(maxsize=None)
def phi_by_gcd(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


@lru_cache(maxsize=None)
def coeffs_by_sympy(n: int) -> tuple[int, ...]:
    """Coefficients ``c_0..c_d`` of the n-th cyclotomic polynomial, low degree first."""
    t = sympy.Symbol("t")
    return tuple(int(c) for c in reversed(sympy.Poly(sympy.cyclotomic_poly(n, t), t).all_coeffs()))


def form_value(coeffs: tuple[int, ...], x: int, y: int) -> int:
    d = len(coeffs) - 1
    return sum(c * x**j * y ** (d - j) for j, c in enumerate(coeffs))


def height_radius(N: int, d: int) -> int:
    # smallest safe integer radius from the float bound, padded by one
    return math.ceil(2 / math.sqrt(3) * N ** (1 / d)) + 1


def represented_naive(n: int, N: int, height2: bool) -> set[int]:
    coeffs = coeffs_by_sympy(n)
    R = height_radius(N, len(coeffs) - 1)
    out = set()
    for x in range(-R, R + 1):
        for y in range(-R, R + 1):
            if height2 and max(abs(x), abs(y)) < 2:
                continue
            v = form_value(coeffs, x, y)
            if 1 <= v <= N:
                out.add(v)
    return out


def count_Ad_naive(d: int, N: int) -> int:
    """``A_d(N)`` by scanning every index whose degree is small enough to matter.

    A value of degree ``D`` at height ``>= 2`` is at least ``3^(D/2)``, so only
    ``D`` with ``3^D <= N^2`` contribute, and ``phi(n) >= sqrt(n / 2)`` bounds ``n``.
    """
    max_deg = 0
    while 3 ** (max_deg + 1) <= N * N:
        max_deg += 1
    values: set[int] = set()
    for n in range(3, 2 * max_deg * max_deg + 1):
        if n % 4 == 2:
            continue
        if d <= phi_by_gcd(n) <= max_deg:
            values |= represented_naive(n, N, True)
    return len(values)
