"""Cyclotomic polynomials, their homogenized binary forms, and exact evaluation.

A binary form ``F(X, Y) = sum_j c_j X^j Y^(d-j)`` is stored densely as the
coefficient tuple ``(c_0, ..., c_d)``, which is also the coefficient list of
the dehomogenized polynomial ``P(t) = F(t, 1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .numtheory import (
    divisor_count,
    divisors,
    euler_phi,
    factorize,
    moebius,
    radical,
)

__all__ = [
    "BinaryForm",
    "CyclotomicForm",
    "OVER_CAP",
    "OverCap",
    "IdentityReport",
    "cyclotomic_poly",
    "cyclotomic_coeffs",
    "cyclotomic_coeffs_ladder",
    "evaluate",
    "evaluate_bounded",
    "value_at_one",
    "value_at_minus_one",
    "verify_identity_radical",
    "verify_identity_prime_quotient",
    "length",
    "bateman_check",
    "bateman_growth_scan",
]


class OverCap:
    """Sentinel type returned by :func:`evaluate_bounded` for values above the cap."""

    _instance: "OverCap | None" = None

    def __new__(cls) -> "OverCap":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "OVER_CAP"

    def __bool__(self) -> bool:
        return False


OVER_CAP = OverCap()


@dataclass(frozen=True)
class BinaryForm:
    coefficients: tuple[int, ...]
    _definite: list = field(default_factory=list, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        coeffs = tuple(int(c) for c in self.coefficients)
        if not coeffs or not any(coeffs):
            raise ValueError("the zero form is not a binary form")
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def from_coefficients(cls, coeffs: Iterable[int]) -> "BinaryForm":
        return cls(tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x: int, y: int) -> int:
        return evaluate(self, x, y)

    def is_positive_definite(self) -> bool:
        """True when ``F(x, y) > 0`` for every real ``(x, y) != (0, 0)``."""
        if not self._definite:
            self._definite.append(_positive_definite(self.coefficients))
        return self._definite[0]

    def substitute_powers(self, k: int) -> "BinaryForm":
        """The form ``F(X^k, Y^k)``."""
        out = [0] * (self.degree * k + 1)
        for j, c in enumerate(self.coefficients):
            out[j * k] = c
        return BinaryForm(tuple(out))


def _positive_definite(coeffs: tuple[int, ...]) -> bool:
    d = len(coeffs) - 1
    if d % 2 or coeffs[-1] <= 0 or coeffs[0] <= 0:
        return False
    import sympy

    t = sympy.Symbol("t")
    poly = sympy.Poly(list(reversed(coeffs)), t)
    return poly.count_roots() == 0


@dataclass(frozen=True)
class CyclotomicForm:
    """The binary form ``Phi_n(X, Y) = Y^phi(n) phi_n(X / Y)``."""

    index: int
    form: BinaryForm

    @property
    def degree(self) -> int:
        return self.form.degree

    @property
    def coefficients(self) -> tuple[int, ...]:
        return self.form.coefficients

    def __call__(self, x: int, y: int) -> int:
        return evaluate(self.form, x, y)

    def is_positive_definite(self) -> bool:
        # phi_n has no real zero once n >= 3
        return self.index >= 3


def _mul_one_minus(a: list[int], k: int) -> None:
    """In place: ``a <- a * (1 - t^k)`` truncated to ``len(a)`` terms."""
    for i in range(len(a) - 1, k - 1, -1):
        a[i] -= a[i - k]


def _div_one_minus(a: list[int], k: int) -> None:
    """In place: ``a <- a / (1 - t^k)`` as a power series truncated to ``len(a)`` terms."""
    for i in range(k, len(a)):
        a[i] += a[i - k]


@lru_cache(maxsize=4096)
def cyclotomic_coeffs(n: int) -> tuple[int, ...]:
    """Coefficients ``a_0..a_phi(n)`` of the ``n``-th cyclotomic polynomial.

    Uses ``phi_n(t) = phi_r(t^(n/r))`` with ``r`` the radical of ``n`` and the
    product ``prod_{k | r} (1 - t^k)^mu(r/k)`` evaluated as an integer power
    series truncated past degree ``phi(r)``; every step is exact.
    """
    if n < 1:
        raise ValueError(f"cyclotomic index must be positive, got {n}")
    if n == 1:
        return (-1, 1)
    r = radical(n)
    s = n // r
    deg = euler_phi(r)
    a = [0] * (deg + 1)
    a[0] = 1
    pos = [k for k in divisors(r) if moebius(r // k) == 1]
    neg = [k for k in divisors(r) if moebius(r // k) == -1]
    for k in pos:
        if k <= deg:
            _mul_one_minus(a, k)
    for k in neg:
        if k <= deg:
            _div_one_minus(a, k)
    if s == 1:
        return tuple(a)
    out = [0] * (deg * s + 1)
    for j, c in enumerate(a):
        out[j * s] = c
    return tuple(out)


def _poly_divexact(num: list[int], den: Sequence[int]) -> list[int]:
    """Exact quotient of integer polynomials (low-order first); ``den`` monic."""
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    num = list(num)
    dd = len(den) - 1
    q = [0] * (len(num) - dd)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + dd]
        q[i] = c
        if c:
            for j in range(dd + 1):
                num[i + j] -= c * den[j]
    if any(num[:dd]):
        raise ArithmeticError("division is not exact")
    return q


@lru_cache(maxsize=512)
def cyclotomic_coeffs_ladder(n: int) -> tuple[int, ...]:
    """Same polynomial as :func:`cyclotomic_coeffs`, via the division ladder.

    ``phi_n = (t^n - 1) / prod_{k | n, k < n} phi_k``, each ``phi_k`` obtained
    recursively the same way. Quadratic cost; kept as an independent route for
    cross-checking.
    """
    if n < 1:
        raise ValueError(f"cyclotomic index must be positive, got {n}")
    num = [-1] + [0] * (n - 1) + [1]
    for k in divisors(n)[:-1]:
        num = _poly_divexact(num, cyclotomic_coeffs_ladder(k))
    return tuple(num)


@lru_cache(maxsize=4096)
def cyclotomic_poly(n: int) -> CyclotomicForm:
    return CyclotomicForm(index=n, form=BinaryForm(cyclotomic_coeffs(n)))


def _as_form(f: "BinaryForm | CyclotomicForm") -> BinaryForm:
    return f.form if isinstance(f, CyclotomicForm) else f


def evaluate(f: "BinaryForm | CyclotomicForm", x: int, y: int) -> int:
    """Exact ``F(x, y)`` by homogeneous Horner on unbounded integers."""
    coeffs = _as_form(f).coefficients
    d = len(coeffs) - 1
    h = coeffs[d]
    yp = 1
    for j in range(d - 1, -1, -1):
        yp *= y
        h = h * x + coeffs[j] * yp
    return h


def evaluate_bounded(f: "BinaryForm | CyclotomicForm", x: int, y: int, cap: int) -> "int | OverCap":
    """``F(x, y)`` when it is at most ``cap``, else :data:`OVER_CAP`.

    Only defined for positive definite forms, where the value is nonnegative
    and the comparison against ``cap`` is meaningful.
    """
    if cap < 1:
        raise ValueError("cap must be positive")
    if not f.is_positive_definite():
        raise ValueError("evaluate_bounded needs a positive definite form")
    v = evaluate(f, x, y)
    return v if v <= cap else OVER_CAP


def value_at_one(n: int) -> int:
    """``phi_n(1)``: 0 for n = 1, p for prime powers p^k, 1 otherwise."""
    fac = factorize(n)
    if n == 1:
        return 0
    if len(fac) == 1:
        return fac[0][0]
    return 1


def value_at_minus_one(n: int) -> int:
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    if n == 1:
        return -2
    if n % 4 == 2:
        return value_at_one(n // 2)
    if n % 2:
        return 1
    return 2 if n & (n - 1) == 0 else 1


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of checking a polynomial identity on sample points."""

    holds: bool
    checked: tuple[tuple[int, int], ...]
    skipped: tuple[tuple[int, int], ...] = ()

    def __bool__(self) -> bool:
        return self.holds


def verify_identity_radical(n: int, samples: Iterable[tuple[int, int]]) -> IdentityReport:
    """Check ``Phi_n(x, y) == Phi_kappa(x^e, y^e)`` with ``kappa = rad(n)``, ``e = n / kappa``."""
    if n < 2:
        raise ValueError("identity needs n >= 2")
    k = radical(n)
    e = n // k
    fn, fk = cyclotomic_poly(n), cyclotomic_poly(k)
    pts = tuple(samples)
    ok = all(evaluate(fn, x, y) == evaluate(fk, x**e, y**e) for x, y in pts)
    return IdentityReport(ok, pts)


def verify_identity_prime_quotient(
    n: int, samples: Iterable[tuple[int, int]], p: int | None = None
) -> IdentityReport:
    """Check ``Phi_n(x, y) = Phi_m(x^(p^r), y^(p^r)) / Phi_m(x^(p^(r-1)), y^(p^(r-1)))``.

    ``n = p^r m`` with ``p`` not dividing ``m``; ``p`` defaults to the smallest
    prime factor. Samples where the denominator vanishes are skipped and
    reported, not counted as failures.
    """
    if n < 2:
        raise ValueError("identity needs n >= 2")
    fac = dict(factorize(n))
    if p is None:
        p = min(fac)
    if p not in fac:
        raise ValueError(f"{p} does not divide {n}")
    r = fac[p]
    m = n // p**r
    fn, fm = cyclotomic_poly(n), cyclotomic_poly(m)
    hi, lo = p**r, p ** (r - 1)
    checked, skipped = [], []
    ok = True
    for x, y in samples:
        den = evaluate(fm, x**lo, y**lo)
        if den == 0:
            skipped.append((x, y))
            continue
        num = evaluate(fm, x**hi, y**hi)
        q, rem = divmod(num, den)
        checked.append((x, y))
        if rem or q != evaluate(fn, x, y):
            ok = False
    return IdentityReport(ok, tuple(checked), tuple(skipped))


def length(f: "BinaryForm | CyclotomicForm") -> int:
    """Sum of the absolute values of the coefficients."""
    return sum(abs(c) for c in _as_form(f).coefficients)


def bateman_check(n: int) -> tuple[bool, tuple[int, int]]:
    """Compare ``L(phi_n)`` against ``n^(d(n)/2)`` exactly.

    ``d(n)`` is odd only for perfect squares, so the bound is always an
    integer. For ``n = 1`` the inequality fails (``L(phi_1) = 2``); callers
    scanning the lemma start at ``n = 2``.
    """
    L = length(cyclotomic_poly(n))
    dn = divisor_count(n)
    if dn % 2 == 0:
        bound = n ** (dn // 2)
    else:
        bound = math.isqrt(n) ** dn
    return L <= bound, (L, bound)


@dataclass(frozen=True)
class GrowthScan:
    epsilon: float
    n_max: int
    n_min: int
    failures: tuple[int, ...]


def bateman_growth_scan(epsilon: float, n_max: int = 2000) -> GrowthScan:
    """Find where ``phi(n) L(phi_n) <= exp(n^epsilon)`` starts holding up to ``n_max``.

    ``n_min`` is one past the largest failing index (2 if nothing fails).
    This is an empirical report, not a proof of the asymptotic claim.
    """
    failures = []
    for n in range(2, n_max + 1):
        lhs = math.log(euler_phi(n) * length(cyclotomic_poly(n)))
        if lhs > n**epsilon:
            failures.append(n)
    n_min = failures[-1] + 1 if failures else 2
    return GrowthScan(epsilon, n_max, n_min, tuple(failures))
