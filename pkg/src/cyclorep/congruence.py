"""Residue confinement of cyclotomic form values.

Residue images are always computed exhaustively over the full grid
``[0, M)^2``; the confinement statements (mod p for p | n, mod 9 for 3^k,
mod 4 for 4 | n) are checked against these images rather than assumed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from sympy.ntheory.modular import crt

from .cycloform import cyclotomic_coeffs, cyclotomic_poly, evaluate
from .kernels import get_backend
from .numtheory import canonical_indices, euler_phi, factorize, is_prime, is_totient

MAX_MODULUS = 512


class ConfinementError(ValueError):
    """Raised when an index falls outside the cases the confinement lemma covers."""


@dataclass(frozen=True)
class ResidueProfile:
    index: int
    modulus: int
    attained: frozenset[int]

    def within(self, allowed: set[int] | frozenset[int]) -> bool:
        return self.attained <= frozenset(allowed)


def residues_attained(
    n: int, modulus: int, *, max_modulus: int = MAX_MODULUS, backend: str | None = None
) -> ResidueProfile:
    """Exact image of ``(a, b) -> Phi_n(a, b) mod M`` over ``0 <= a, b < M``."""
    if n < 1:
        raise ValueError(f"index must be positive, got {n}")
    if modulus < 2:
        raise ValueError("modulus must be at least 2")
    if modulus > max_modulus:
        raise ValueError(f"modulus {modulus} exceeds the grid guard {max_modulus}")
    coeffs = [c % modulus for c in cyclotomic_coeffs(n)]
    out = np.zeros(modulus, dtype=np.uint8)
    get_backend(backend).residue_image(coeffs, modulus, out)
    return ResidueProfile(n, modulus, frozenset(int(r) for r in np.flatnonzero(out)))


@dataclass(frozen=True)
class DefiniResult:
    """Which case of the prime-index congruence applied at ``(a, b)``."""

    case: str  # "NotCongruent" or "Congruent"
    p: int
    a: int
    b: int
    value: int
    modulus: int
    residue: int
    expected: int

    @property
    def holds(self) -> bool:
        return self.residue == self.expected


def lemma_defini1_check(p: int, a: int, b: int) -> DefiniResult:
    """Evaluate ``Phi_p(a, b)`` and test the congruence for an odd prime ``p``.

    If ``a != b (mod p)`` the value should be 1 mod p; otherwise it should be
    ``p * a^(p-1)`` mod ``p^2``.
    """
    if p < 3 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    v = evaluate(cyclotomic_poly(p), a, b)
    if (a - b) % p:
        return DefiniResult("NotCongruent", p, a, b, v, p, v % p, 1)
    mod = p * p
    return DefiniResult("Congruent", p, a, b, v, mod, v % mod, p * pow(a, p - 1, mod) % mod)


def varpi(n: int) -> int:
    """Modulus attached to an index in the confinement-class construction.

    Smallest prime ``>= 5`` dividing ``n``; otherwise 4 when ``n = 2^h 3^k``
    with ``h >= 2``, or 9 when ``n = 3^k`` with ``k >= 2``. Other shapes are
    not covered and raise.
    """
    if n < 3 or n % 4 == 2:
        raise ConfinementError(f"varpi is undefined for n = {n}")
    fac = dict(factorize(n))
    big = [p for p in fac if p >= 5]
    if big:
        return min(big)
    h, k = fac.get(2, 0), fac.get(3, 0)
    if h >= 2:
        return 4
    if h == 0 and k >= 2:
        return 9
    raise ConfinementError(f"varpi is undefined for n = {n}")


@dataclass(frozen=True)
class FactorRecord:
    index: int
    varpi: int
    local_a: int
    local_b: int
    value_residue: int
    attained: frozenset[int]

    @property
    def obstructed(self) -> bool:
        return self.value_residue not in self.attained


@dataclass(frozen=True)
class ConfinementClasses:
    d: int
    m: int
    D: int
    a0: int
    b0: int
    per_factor: tuple[FactorRecord, ...]

    def contains(self, a: int, b: int) -> bool:
        return (a - self.a0) % self.D == 0 and (b - self.b0) % self.D == 0


# Local classes (a mod w, b mod w) per varpi value.
def _local_class(w: int) -> tuple[int, int]:
    if w == 4:
        return 1, 1
    return 0, 2


def confinement_classes(d: int, m: int) -> ConfinementClasses:
    """Residue classes ``(a0, b0) mod D`` on which ``Phi_m`` avoids every degree-``d`` form.

    For each ``n_i`` in the canonical indices of degree ``d``, the class is
    fixed modulo ``varpi(n_i)`` and the pieces are glued with the CRT. The
    result is checked: for every ``n_i`` the residue of ``Phi_m(a0, b0)`` mod
    ``varpi(n_i)`` must fall outside the exhaustively computed image of
    ``Phi_{n_i}``.
    """
    if d < 4 or not is_totient(d) or not is_totient(d + 2):
        raise ValueError(f"need totients d >= 4 and d + 2, got d = {d}")
    if euler_phi(m) != d + 2 or m % 4 == 2:
        raise ValueError(f"m = {m} must satisfy phi(m) = {d + 2} and m != 2 mod 4")
    indices = canonical_indices(d)
    ws: dict[int, int] = {}
    for n_i in indices:
        try:
            ws[n_i] = varpi(n_i)
        except ConfinementError as exc:
            raise ConfinementError(f"index {n_i} of degree {d}: {exc}") from None
    moduli = sorted(set(ws.values()))
    if 4 in moduli:
        fac = factorize(m)
        if len(fac) != 1 or fac[0][0] % 4 != 3:
            raise ConfinementError(f"the mod-4 case needs m = p^s with p = 3 mod 4, got m = {m}")
    D = math.lcm(*moduli)
    local = {w: _local_class(w) for w in moduli}
    a0 = int(crt(moduli, [local[w][0] for w in moduli])[0]) % D
    b0 = int(crt(moduli, [local[w][1] for w in moduli])[0]) % D
    value = evaluate(cyclotomic_poly(m), a0, b0)
    records = []
    for n_i in indices:
        w = ws[n_i]
        profile = residues_attained(n_i, w)
        rec = FactorRecord(n_i, w, *local[w], value % w, profile.attained)
        if not rec.obstructed:
            raise ConfinementError(
                f"Phi_{m}({a0}, {b0}) = {value % w} mod {w} is attained by Phi_{n_i}"
            )
        records.append(rec)
    return ConfinementClasses(d, m, D, a0, b0, tuple(records))
