"""Exact counts of integers represented by cyclotomic forms.

Two conventions coexist and are kept apart:

* ``B_n(N)``: integers ``1 <= m <= N`` equal to ``Phi_n(a, b)`` with
  ``max(|a|, |b|) >= 2`` (the ``require_height2`` flag). ``A_d(N)`` is the
  size of the union of these over all ``n != 2 mod 4`` with ``phi(n) >= d``.
* Common-value counters for two forms include the value 0 and put no height
  condition on the pairs.

All sieves mark a presence bitmap over ``[0, N]``; work can be split across
threads by slicing the x-range, and the merged bitmap does not depend on
the split.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .cycloform import BinaryForm, cyclotomic_poly, evaluate, length
from .kernels import get_backend
from .numtheory import euler_phi, indices_with_degree_between

log = logging.getLogger(__name__)

SQRT3 = math.sqrt(3.0)
DEFAULT_MEMORY_CAP = 1 << 31
DEFAULT_BOX_CAP = 4000
_INT64_SAFE = 1 << 62


def flw_height_bound(m: int, n: int) -> float:
    """``(2 / sqrt 3) m^(1 / phi(n))``: no representation of ``m`` by ``Phi_n`` is taller."""
    d = euler_phi(n)
    if d < 2:
        raise ValueError(f"need phi(n) >= 2, got phi({n}) = {d}")
    return 2.0 / SQRT3 * m ** (1.0 / d)


def integer_height_radius(N: int, d: int) -> int:
    """Largest integer ``M`` with ``M <= (2 / sqrt 3) N^(1/d)``, decided exactly.

    The condition is equivalent to ``3^d M^(2d) <= 4^d N^2``.
    """
    if N < 1:
        return 0
    lhs_scale, rhs = 3**d, 4**d * N * N
    M = int(2.0 / SQRT3 * N ** (1.0 / d)) + 2
    while M > 0 and lhs_scale * M ** (2 * d) > rhs:
        M -= 1
    return M


@dataclass(frozen=True)
class DegreeBound:
    max_degree: int
    max_index: int


def degree_bound(N: int) -> DegreeBound:
    """Largest admissible degree and index for forms that can represent values up to ``N``.

    ``max_degree`` is the largest ``D`` with ``3^D <= N^2``, i.e.
    ``floor(2 log N / log 3)`` computed without rounding error. ``max_index``
    uses the published constants ``5.383`` and ``1.161``.
    """
    if N < 3:
        raise ValueError("degree_bound needs N >= 3")
    D = 0
    while 3 ** (D + 1) <= N * N:
        D += 1
    return DegreeBound(D, math.floor(5.383 * math.log(N) ** 1.161))


@dataclass(frozen=True)
class RepresentationTable:
    indices: tuple[int, ...]
    bound: int
    require_height2: bool
    members: np.ndarray = field(repr=False)
    witnesses: dict[int, tuple[int, int, int]] | None = field(default=None, repr=False)

    @property
    def count(self) -> int:
        return int(self.members.size)

    def as_set(self) -> set[int]:
        return set(int(v) for v in self.members)

    def __contains__(self, m: int) -> bool:
        i = np.searchsorted(self.members, m)
        return bool(i < self.members.size and self.members[i] == m)


def _split(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, hi - lo + 1))
    step, extra = divmod(hi - lo + 1, parts)
    out, start = [], lo
    for i in range(parts):
        stop = start + step + (1 if i < extra else 0) - 1
        out.append((start, stop))
        start = stop + 1
    return out


def _fast_radius(form: BinaryForm) -> int:
    # Any pair with max(|x|, |y|) <= r has every Horner intermediate below L r^d.
    L, d = length(form), form.degree
    r = int((_INT64_SAFE / L) ** (1.0 / d)) + 1
    while r > 0 and L * r**d >= _INT64_SAFE:
        r -= 1
    return r


def _sieve_form_into(
    out: np.ndarray,
    n: int,
    radius: int,
    cap: int,
    height2: bool,
    workers: int,
    backend: str | None,
) -> None:
    form = cyclotomic_poly(n).form
    kern = get_backend(backend)
    coeffs = list(form.coefficients)
    fast = _fast_radius(form)

    def slow(x: int, y: int) -> int:
        return evaluate(form, x, y)

    # Central symmetry: (x, y) and (-x, -y) give the same value, so x >= 0 suffices.
    chunks = _split(0, radius, workers)
    if len(chunks) == 1:
        kern.sieve_box(coeffs, 0, radius, radius, cap, height2, out, fast, slow)
        return
    bufs = [np.zeros_like(out) for _ in chunks]
    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        futs = [
            pool.submit(kern.sieve_box, coeffs, lo, hi, radius, cap, height2, buf, fast, slow)
            for (lo, hi), buf in zip(chunks, bufs)
        ]
        for f in futs:
            f.result()
    for buf in bufs:
        np.bitwise_or(out, buf, out=out)


def _check_memory(N: int, memory_cap: int) -> None:
    if N + 1 > memory_cap:
        raise MemoryError(f"bound N = {N} exceeds the sieve memory cap of {memory_cap} values")


def _witnesses(indices, N: int, height2: bool) -> dict[int, tuple[int, int, int]]:
    wit: dict[int, tuple[int, int, int]] = {}
    for n in indices:
        f = cyclotomic_poly(n)
        R = integer_height_radius(N, f.degree)
        if not height2:
            R = max(R, 1)
        for x in range(0, R + 1):
            for y in range(-R, R + 1):
                if height2 and max(x, abs(y)) < 2:
                    continue
                v = evaluate(f, x, y)
                if 1 <= v <= N and v not in wit:
                    wit[v] = (n, x, y)
    return wit


def represented_by_form(
    n: int,
    N: int,
    require_height2: bool = True,
    *,
    workers: int = 1,
    backend: str | None = None,
    with_witnesses: bool = False,
    memory_cap: int = DEFAULT_MEMORY_CAP,
) -> RepresentationTable:
    """The integers ``1 <= m <= N`` represented by ``Phi_n``.

    Pairs are searched up to the height ``(2 / sqrt 3) N^(1/phi(n))``, beyond
    which no value can be ``<= N``; pairs with ``max(|x|, |y|) <= 1`` are
    always searched when the height condition is off.
    """
    d = euler_phi(n)
    if n < 3 or d < 2:
        raise ValueError(f"need n >= 3 (phi(n) >= 2), got n = {n}")
    if N < 1:
        raise ValueError("N must be positive")
    _check_memory(N, memory_cap)
    out = np.zeros(N + 1, dtype=np.uint8)
    radius = integer_height_radius(N, d)
    if not require_height2:
        radius = max(radius, 1)
    if radius >= (2 if require_height2 else 0):
        _sieve_form_into(out, n, radius, N, require_height2, workers, backend)
    out[0] = 0
    members = np.flatnonzero(out)
    wit = _witnesses([n], N, require_height2) if with_witnesses else None
    return RepresentationTable((n,), N, require_height2, members, wit)


def ad_indices(d: int, N: int) -> list[int]:
    """Indices ``n != 2 mod 4`` with ``d <= phi(n)`` that can reach a value ``<= N``."""
    if N < 3:
        return []
    bound = degree_bound(N)
    return indices_with_degree_between(max(d, 2), bound.max_degree)


def count_Ad(
    d: int,
    N: int,
    *,
    workers: int = 1,
    backend: str | None = None,
    with_witnesses: bool = False,
    memory_cap: int = DEFAULT_MEMORY_CAP,
) -> tuple[int, RepresentationTable]:
    """Exact ``A_d(N)``: the size of the union of ``B_n(N)`` over ``phi(n) >= d``.

    The index set is complete: every ``n != 2 mod 4`` whose degree lies in
    ``[d, max_degree]`` is enumerated through the inverse totient.
    """
    if d < 2:
        raise ValueError("d must be at least 2")
    if N < 1:
        raise ValueError("N must be positive")
    _check_memory(N, memory_cap)
    indices = ad_indices(d, N)
    out = np.zeros(N + 1, dtype=np.uint8)
    for i, n in enumerate(indices):
        radius = integer_height_radius(N, euler_phi(n))
        if radius < 2:
            continue
        log.debug("sieving Phi_%d to height %d (%d/%d)", n, radius, i + 1, len(indices))
        _sieve_form_into(out, n, radius, N, True, workers, backend)
    out[0] = 0
    members = np.flatnonzero(out)
    wit = _witnesses(indices, N, True) if with_witnesses else None
    table = RepresentationTable(tuple(indices), N, True, members, wit)
    return table.count, table


def _value_counter(f: BinaryForm, B: int) -> Counter:
    return Counter(evaluate(f, x, y) for x in range(-B, B + 1) for y in range(-B, B + 1))


def common_values_count(f1: BinaryForm, f2: BinaryForm, B: int, *, box_cap: int = DEFAULT_BOX_CAP) -> int:
    """Number of ``(x1, x2, x3, x4)`` with all ``|x_i| <= B`` and ``F1(x1, x2) = F2(x3, x4)``.

    The zero quadruple is included.
    """
    if B < 1:
        raise ValueError("B must be positive")
    if B > box_cap:
        raise MemoryError(f"height {B} exceeds the box cap {box_cap}")
    f1 = getattr(f1, "form", f1)
    f2 = getattr(f2, "form", f2)
    c1 = _value_counter(f1, B)
    c2 = c1 if f2 == f1 else _value_counter(f2, B)
    return sum(k * c2[v] for v, k in c1.items() if v in c2)


def common_represented(
    n1: int, n2: int, N: int, *, workers: int = 1, backend: str | None = None
) -> int:
    """Number of ``0 <= m <= N`` represented by both ``Phi_n1`` and ``Phi_n2`` (any pairs)."""
    t1 = represented_by_form(n1, N, False, workers=workers, backend=backend)
    t2 = represented_by_form(n2, N, False, workers=workers, backend=backend)
    return int(np.intersect1d(t1.members, t2.members).size) + 1


@dataclass(frozen=True)
class MultiplicityHistogram:
    index: int
    bound: int
    constraint: tuple[int, int, int] | None
    histogram: dict[int, int]
    multiplicities: dict[int, int] = field(repr=False)

    @property
    def pairs(self) -> int:
        return sum(k * c for k, c in self.histogram.items())

    @property
    def image_size(self) -> int:
        return len(self.multiplicities)

    def sum_of_squares(self) -> int:
        return sum(k * k * c for k, c in self.histogram.items())


def multiplicity_histogram(
    m_index: int, B: int, constraint: tuple[int, int, int] | None = None
) -> MultiplicityHistogram:
    """For each value of ``Phi_m`` on the box ``|a|, |b| <= B`` count its preimages.

    With ``constraint = (D, a0, b0)`` only pairs with ``a = a0`` and
    ``b = b0 (mod D)`` are admitted. The histogram maps a multiplicity to
    the number of values having it.
    """
    if euler_phi(m_index) < 2:
        raise ValueError("need phi(m) >= 2")
    f = cyclotomic_poly(m_index)
    if constraint is None:
        a_range = range(-B, B + 1)
        b_range = range(-B, B + 1)
    else:
        D, a0, b0 = constraint
        a_range = range(-B + (a0 + B) % D, B + 1, D)
        b_range = range(-B + (b0 + B) % D, B + 1, D)
    mult = Counter(evaluate(f, a, b) for a in a_range for b in b_range)
    hist = Counter(mult.values())
    return MultiplicityHistogram(m_index, B, constraint, dict(sorted(hist.items())), dict(mult))


@dataclass(frozen=True)
class CauchySchwarzReport:
    constrained_pairs: int
    image_size: int
    sum_rho_squared: int

    @property
    def holds(self) -> bool:
        # (sum rho~)^2 <= |image| * sum rho^2
        return self.constrained_pairs**2 <= self.image_size * self.sum_rho_squared


def cauchy_schwarz_check(m_index: int, B: int, constraint: tuple[int, int, int]) -> CauchySchwarzReport:
    """Compare the constrained pair count with the image size and the full second moment."""
    con = multiplicity_histogram(m_index, B, constraint)
    full = multiplicity_histogram(m_index, B)
    return CauchySchwarzReport(con.pairs, con.image_size, full.sum_of_squares())
