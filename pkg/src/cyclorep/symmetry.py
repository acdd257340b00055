"""Automorphism groups of cyclotomic forms and the Stewart-Xiao weights.

Only the two dihedral groups realized by cyclotomic forms are handled: the
four signed swaps ``D2`` (4 does not divide n) and the eight signed
permutation matrices ``D4`` (4 divides n). Groups come from the known
classification and are then checked by evaluation.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .cycloform import cyclotomic_poly, evaluate

Matrix = tuple[tuple[int, int], tuple[int, int]]

IDENTITY: Matrix = ((1, 0), (0, 1))
SWAP: Matrix = ((0, 1), (1, 0))
NEG: Matrix = ((-1, 0), (0, -1))
ROT: Matrix = ((0, 1), (-1, 0))
REFLECT_Y: Matrix = ((1, 0), (0, -1))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def _closure(gens: Iterable[Matrix]) -> list[Matrix]:
    elems = {IDENTITY}
    frontier = [IDENTITY]
    gens = list(gens)
    while frontier:
        nxt = []
        for e in frontier:
            for g in gens:
                p = matmul(e, g)
                if p not in elems:
                    elems.add(p)
                    nxt.append(p)
        frontier = nxt
    return sorted(elems)


@dataclass(frozen=True)
class AutGroup:
    kind: str
    generators: tuple[Matrix, ...]
    elements: tuple[Matrix, ...]

    def is_closed(self) -> bool:
        s = set(self.elements)
        return all(matmul(a, b) in s for a in self.elements for b in self.elements)

    def subgroups_of_order(self, k: int) -> list[tuple[Matrix, ...]]:
        """All subgroups with ``k`` elements, by brute force over subsets."""
        others = [e for e in self.elements if e != IDENTITY]
        found = []
        for combo in itertools.combinations(others, k - 1):
            sub = set(combo) | {IDENTITY}
            if all(matmul(a, b) in sub for a in sub for b in sub):
                found.append(tuple(sorted(sub)))
        return found


D2 = AutGroup("D2", (SWAP, NEG), tuple(_closure((SWAP, NEG))))
D4 = AutGroup("D4", (SWAP, ROT), tuple(_closure((SWAP, ROT))))


def automorphism_group(n: int) -> AutGroup:
    """Signed-permutation automorphism group of ``Phi_n``: D4 iff 4 divides n.

    For the quadratic forms (n = 3, 4, 6) the full rational automorphism
    group is infinite; the finite signed-permutation part is returned.
    """
    if n < 3:
        raise ValueError(f"automorphism groups are defined here for n >= 3, got {n}")
    return D4 if n % 4 == 0 else D2


def is_automorphism(n: int, u: Matrix, samples: Iterable[tuple[int, int]]) -> bool:
    f = cyclotomic_poly(n)
    (u1, u2), (u3, u4) = u
    return all(evaluate(f, u1 * x + u2 * y, u3 * x + u4 * y) == evaluate(f, x, y) for x, y in samples)


def verify_group(n: int, n_samples: int = 10, seed: int = 0) -> bool:
    """Every listed element fixes ``Phi_n`` at random integer points."""
    rng = random.Random(seed)
    pts = [(rng.randint(-50, 50), rng.randint(-50, 50)) for _ in range(n_samples)]
    group = automorphism_group(n)
    return group.is_closed() and all(is_automorphism(n, u, pts) for u in group.elements)


def invariant_lattice_det(matrices: Sequence[Sequence[Sequence[Fraction | int]]]) -> int:
    """Index in Z^2 of ``{v in Z^2 : A v in Z^2 for every A}``.

    With ``q`` a common denominator of all entries the lattice contains
    ``q Z^2``, so the index is ``q^2`` divided by the number of admissible
    classes of ``v`` mod ``q``.
    """
    entries = [Fraction(x) for a in matrices for row in a for x in row]
    q = math.lcm(*(e.denominator for e in entries))
    if q == 1:
        return 1
    good = 0
    for v0 in range(q):
        for v1 in range(q):
            if all(
                (Fraction(a[0][0]) * v0 + Fraction(a[0][1]) * v1).denominator == 1
                and (Fraction(a[1][0]) * v0 + Fraction(a[1][1]) * v1).denominator == 1
                for a in matrices
            ):
                good += 1
    return q * q // good


def stewart_xiao_weight(kind: str, lattice_dets: int | Sequence[int] = 1) -> Fraction:
    """Rational weight ``W_F`` for automorphism groups of type D2 or D4.

    D2 takes one determinant ``|det Lambda|``. D4 takes four:
    ``|det Lambda_1|, |det Lambda_2|, |det Lambda_3|, |det Lambda|``; a bare
    integer is broadcast to all of them.
    """
    if kind == "D2":
        dets = [lattice_dets] if isinstance(lattice_dets, int) else list(lattice_dets)
        if len(dets) != 1:
            raise ValueError("D2 needs exactly one lattice determinant")
    elif kind == "D4":
        dets = [lattice_dets] * 4 if isinstance(lattice_dets, int) else list(lattice_dets)
        if len(dets) != 4:
            raise ValueError("D4 needs four lattice determinants")
    else:
        raise ValueError(f"unsupported group kind {kind!r}")
    if any(d == 0 for d in dets):
        raise ValueError("lattice determinants must be nonzero")
    dets = [abs(d) for d in dets]
    half = Fraction(1, 2)
    if kind == "D2":
        return half * (1 - Fraction(1, 2 * dets[0]))
    d1, d2, d3, d = dets
    return half * (1 - Fraction(1, 2 * d1) - Fraction(1, 2 * d2) - Fraction(1, 2 * d3) + Fraction(3, 4 * d))


def group_weight(group: AutGroup) -> Fraction:
    """``W_F`` computed from the actual invariant lattices of ``group``."""
    full = invariant_lattice_det(group.elements)
    if group.kind == "D2":
        return stewart_xiao_weight("D2", full)
    subs = group.subgroups_of_order(4)
    if len(subs) != 3:
        raise RuntimeError(f"expected three subgroups of order 4, found {len(subs)}")
    return stewart_xiao_weight("D4", [invariant_lattice_det(s) for s in subs] + [full])


def w_weight(n: int) -> Fraction:
    if n < 3:
        raise ValueError(f"w_n is defined for n >= 3, got {n}")
    return Fraction(1, 8) if n % 4 == 0 else Fraction(1, 4)


def are_isomorphic(n1: int, n2: int) -> bool:
    """Whether ``Phi_n1`` and ``Phi_n2`` are related by a rational change of variables."""
    if n1 == n2:
        return True
    lo, hi = sorted((n1, n2))
    return lo % 2 == 1 and hi == 2 * lo


def canonicalize(n: int) -> int:
    """Representative of ``n``'s isomorphism class that is not 2 mod 4."""
    if n < 3:
        raise ValueError(f"expected n >= 3, got {n}")
    return n // 2 if n % 4 == 2 else n
