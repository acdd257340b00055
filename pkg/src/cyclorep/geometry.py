"""Areas of the fundamental domains ``Phi_n(x, y) <= 1`` and related constants.

The area is the line integral ``int_R phi_n(t)^(-2/d) dt``. Because
``phi_n`` is palindromic for ``n >= 3``, the substitution ``t -> 1/t`` folds
the tails onto ``[-1, 1]``, so

    A_n = 2 * int_{-1}^{1} phi_n(t)^(-2/d) dt.

On ``(-1, 1)`` the integrand is evaluated through the product
``prod (1 - t^k)^mu(n/k)`` in log form, which stays accurate at high degree
where Horner's rule would lose digits.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from .cycloform import cyclotomic_coeffs, cyclotomic_poly, length, value_at_minus_one, value_at_one
from .numtheory import canonical_indices, divisors, euler_phi, is_totient, moebius, next_totient, radical
from .symmetry import w_weight

DEFAULT_TOL = 1e-10
DEFAULT_BUDGET = 10**6

# Gauss-Kronrod 7/15 nodes and weights on [-1, 1] (QUADPACK qk15).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_WK15 = np.concatenate([_WGK[:-1], _WGK[::-1]])
# Gauss weights sit on the odd-indexed Kronrod nodes (0.949..., 0.741..., 0.405..., 0).
_WG7 = np.zeros(15)
_WG7[[1, 3, 5]] = _WG[:3]
_WG7[7] = _WG[3]
_WG7[[9, 11, 13]] = _WG[2::-1]


class QuadratureError(RuntimeError):
    pass


def _gk15(f, a: float, b: float) -> tuple[float, float]:
    c, h = 0.5 * (a + b), 0.5 * (b - a)
    fx = f(c + h * _NODES)
    k = h * float(np.dot(_WK15, fx))
    g = h * float(np.dot(_WG7, fx))
    return k, abs(k - g)


def adaptive_gk(f, a: float, b: float, tol: float, budget: int = DEFAULT_BUDGET, initial: int = 8):
    """Globally adaptive Gauss-Kronrod integration of a vectorized ``f`` over ``[a, b]``.

    The interval with the largest ``|K15 - G7|`` is bisected until the sum of
    these differences (plus a roundoff allowance) is at most ``tol``. Returns
    ``(value, error_bound, evaluations)``; raises :class:`QuadratureError`
    when the evaluation budget runs out first.
    """
    heap: list[tuple[float, float, float, float]] = []
    evals = 0
    edges = np.linspace(a, b, initial + 1)
    for lo, hi in zip(edges[:-1], edges[1:]):
        k, e = _gk15(f, lo, hi)
        evals += 15
        heapq.heappush(heap, (-e, lo, hi, k))
    while True:
        err = sum(-item[0] for item in heap)
        value = math.fsum(item[3] for item in sorted(heap, key=lambda it: it[1]))
        roundoff = 50 * np.finfo(float).eps * math.fsum(abs(item[3]) for item in heap)
        if err + roundoff <= tol:
            return value, float(err + roundoff), evals
        if evals + 30 > budget:
            raise QuadratureError(f"no convergence to {tol:g} within {budget} evaluations (err {err:.3g})")
        e, lo, hi, _ = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        for s, t in ((lo, mid), (mid, hi)):
            k, e2 = _gk15(f, s, t)
            heapq.heappush(heap, (-e2, s, t, k))
        evals += 30


def _log_phi_inside(n: int, t: np.ndarray) -> np.ndarray:
    """``log phi_n(t)`` for ``|t| < 1`` via ``sum mu(n/k) log(1 - t^k)``."""
    out = np.zeros_like(t, dtype=float)
    at = np.abs(t)
    neg = t < 0
    with np.errstate(divide="ignore"):
        la = np.log(at)
    nz = at > 0
    for e in divisors(radical(n)):
        k = n // e
        mu = moebius(e)
        # 1 - t^k: for t < 0 and odd k this is 1 + |t|^k, otherwise 1 - |t|^k
        plus = neg & (k % 2 == 1)
        term = np.zeros_like(out)
        term[plus] = np.log1p(at[plus] ** k)
        minus = ~plus & nz
        term[minus] = np.log(-np.expm1(k * la[minus]))
        out += mu * term
    return out


def phi_real(n: int, t) -> np.ndarray:
    """``phi_n(t)`` in floating point for real ``t``, accurate at high degree (n >= 3)."""
    if n < 3:
        raise ValueError("phi_real is for n >= 3")
    t = np.atleast_1d(np.asarray(t, dtype=float))
    d = euler_phi(n)
    out = np.empty_like(t)
    inside = np.abs(t) < 1
    out[inside] = np.exp(_log_phi_inside(n, t[inside]))
    big = np.abs(t) > 1
    if big.any():
        s = 1.0 / t[big]
        out[big] = np.abs(t[big]) ** d * np.exp(_log_phi_inside(n, s))
    out[t == 1.0] = value_at_one(n)
    out[t == -1.0] = value_at_minus_one(n)
    return out


def _integrand(n: int):
    d = euler_phi(n)
    expo = -2.0 / d

    def f(t):
        return np.exp(expo * _log_phi_inside(n, t))

    return f


@dataclass(frozen=True)
class AreaResult:
    index: int
    value: float
    abs_error: float
    evaluations: int


def area(n: int, tol: float = DEFAULT_TOL, budget: int = DEFAULT_BUDGET) -> AreaResult:
    """Area of ``{(x, y) : Phi_n(x, y) <= 1}`` to absolute accuracy ``tol``."""
    if n < 3:
        raise ValueError(f"the fundamental domain is bounded only for n >= 3, got {n}")
    if tol < 1e-12:
        raise ValueError("tol below 1e-12 is not supported")
    half_tol = tol / 2
    v, e, evals = adaptive_gk(_integrand(n), -1.0, 1.0, half_tol, budget)
    return AreaResult(n, 2 * v, 2 * e, evals)


def area_truncated(n: int, T: float = 1e3, tol: float = 1e-9) -> float:
    """Direct integral over ``[-T, T]`` with Horner evaluation plus the ``2/T`` tail.

    Independent of the palindromic fold; only useful as a cross-check for
    small ``n`` since the tail correction is first order.
    """
    coeffs = np.array(cyclotomic_coeffs(n)[::-1], dtype=float)
    d = len(coeffs) - 1

    def f(t):
        return np.polyval(coeffs, t) ** (-2.0 / d)

    v, _, _ = adaptive_gk(f, -T, T, tol, budget=4 * 10**6, initial=256)
    return v + 2.0 / T


def _is_power_of_two(k: int) -> bool:
    return k >= 1 and k & (k - 1) == 0


def area_power_of_two(d: int) -> float:
    """Closed form ``(2/d) Gamma(1/d)^2 / Gamma(2/d)`` for the form ``X^d + Y^d = Phi_{2d}``."""
    if d < 2 or not _is_power_of_two(d):
        raise ValueError(f"phi_(2d)(t) = 1 + t^d only when d is a power of two; got d = {d}")
    return 2.0 / d * math.gamma(1.0 / d) ** 2 / math.gamma(2.0 / d)


def eta(d: int) -> float:
    if d < 3:
        raise ValueError("eta is defined for d >= 3")
    if d == 3:
        return 2 / 9 + 73 / (108 * math.sqrt(3))
    if d <= 20:
        return (0.5 + 9 / (4 * math.sqrt(d))) / d
    return 1 / d


def beta_star(d: int) -> float:
    if d % 2 or d < 4:
        raise ValueError(f"beta* is defined for even d >= 4, got {d}")
    if d <= 8:
        return 3 / (d * math.sqrt(d))
    return 1 / d


@dataclass(frozen=True)
class ConstantBundle:
    d: int
    C_d: float
    error: float
    contributions: tuple[tuple[int, Fraction, AreaResult], ...]
    eta_d: float
    beta_star_d: float
    next_totient: int


def constant_Cd(d: int, tol: float = DEFAULT_TOL) -> ConstantBundle:
    """Leading constant ``C_d = sum w_n A_n`` over ``phi(n) = d``, ``n != 2 mod 4``."""
    if d < 4 or not is_totient(d):
        raise ValueError(f"C_d is defined for totients d >= 4, got {d}")
    parts = []
    for n in canonical_indices(d):
        parts.append((n, w_weight(n), area(n, tol)))
    value = math.fsum(float(w) * a.value for _, w, a in parts)
    err = math.fsum(float(w) * a.abs_error for _, w, a in parts)
    return ConstantBundle(d, value, err, tuple(parts), eta(d), beta_star(d), next_totient(d))


KNOWN_FERMAT_PRIMES = (3, 5, 17, 257, 65537)


def fermat_indices(k: int) -> list[tuple[int, Fraction]]:
    """Weighted indices for ``C_(2^k)`` built from Fermat primes.

    Returns ``(n, weight)`` pairs: ``2^(k+1)`` with weight 1/8, ``l_k(m)``
    for ``1 <= m < k`` with weight 1/8, and the odd ``l_k(k) / 2`` with
    weight 1/4 when ``k <= 31``. Only the five known Fermat primes are used,
    so ``m`` ranges over ``1..31``.
    """
    if k < 2:
        raise ValueError("need k >= 2")

    def ell(m: int) -> int:
        prod = 1
        for a in range(m.bit_length()):
            if m >> a & 1:
                prod *= KNOWN_FERMAT_PRIMES[a]
        return 2 ** (k - m + 1) * prod

    out = [(2 ** (k + 1), Fraction(1, 8))]
    out += [(ell(m), Fraction(1, 8)) for m in range(1, min(k, 32))]
    if k <= 31:
        out.append((ell(k) // 2, Fraction(1, 4)))
    return sorted(out)


@dataclass(frozen=True)
class LineMinimum:
    t_min: float
    m_value: float


def min_on_line(n: int, tol: float = 1e-12, grid: int = 20001) -> LineMinimum:
    """Global minimum of ``phi_n`` on the real line.

    A dense grid on ``[-2, 2]`` locates the minimum (for ``|t| >= 1``,
    ``phi_n(t) = |t|^d phi_n(1/t) >= phi_n(1/t)``, so nothing smaller lies
    outside), then bisection on the sign of the derivative refines it.
    """
    if n < 3:
        raise ValueError("min_on_line is for n >= 3")
    ts = np.linspace(-2.0, 2.0, grid)
    vals = phi_real(n, ts)
    i = int(np.argmin(vals))
    coeffs = cyclotomic_coeffs(n)
    dcoef = np.array([j * c for j, c in enumerate(coeffs)][1:][::-1], dtype=float)

    def deriv(t: float) -> float:
        return float(np.polyval(dcoef, t))

    lo, hi = ts[max(i - 1, 0)], ts[min(i + 1, grid - 1)]
    best_t, best_v = float(ts[i]), float(vals[i])
    lo, hi = float(lo), float(hi)
    dlo, dhi = deriv(lo), deriv(hi)
    if dlo < 0 < dhi:
        for _ in range(200):
            if hi - lo <= tol:
                break
            mid = 0.5 * (lo + hi)
            if deriv(mid) < 0:
                lo = mid
            else:
                hi = mid
        t = 0.5 * (lo + hi)
        v = float(phi_real(n, t)[0])
        if v <= best_v:
            best_t, best_v = t, v
    return LineMinimum(best_t, best_v)


@dataclass(frozen=True)
class Sandwich:
    index: int
    inner_side: float
    outer_side: float
    area_lower: float
    area_upper: float
    area: AreaResult

    @property
    def holds(self) -> bool:
        a = self.area
        return self.area_lower - a.abs_error <= a.value <= self.area_upper + a.abs_error


def square_sandwich(n: int, tol: float = DEFAULT_TOL) -> Sandwich:
    """Squares ``max(|x|, |y|) <= L^(-1/d)`` inside and ``<= m^(-1/d)`` around the domain.

    Sides are reported as full side lengths (twice the half-widths), and the
    induced area bounds ``4 L^(-2/d) <= A <= 4 m^(-2/d)`` are checked.
    """
    d = euler_phi(n)
    L = length(cyclotomic_poly(n))
    m = min_on_line(n).m_value
    a = area(n, tol)
    return Sandwich(n, 2 * L ** (-1 / d), 2 * m ** (-1 / d), 4 * L ** (-2 / d), 4 * m ** (-2 / d), a)


@dataclass(frozen=True)
class ContainmentSample:
    region: str  # "inner" or "outer"
    x: float
    y: float
    value: float
    status: str  # "pass", "fail" or "indeterminate"


@dataclass(frozen=True)
class ContainmentReport:
    index: int
    epsilon: float
    inner_side: float
    outer_side: float
    samples: tuple[ContainmentSample, ...]
    asserted: bool

    @property
    def all_pass(self) -> bool:
        return all(s.status == "pass" for s in self.samples)

    def counts(self) -> dict[str, int]:
        out = {"pass": 0, "fail": 0, "indeterminate": 0}
        for s in self.samples:
            out[s.status] += 1
        return out


def containment_check(
    n: int, epsilon: float, grid: int = 64, *, dps: int = 50, assert_from: int | None = None
) -> ContainmentReport:
    """Sample the boundaries of the squares of side ``2 -+ n^(-1+epsilon)``.

    On the inner square the form should be ``<= 1`` and on the outer square
    ``> 1``. Points are taken on the edge ``x = h, |y| <= h``; the symmetries
    ``Phi(x, y) = Phi(y, x) = Phi(-x, -y)`` carry this edge onto the rest of
    the boundary. Evaluation is in ``dps``-digit arithmetic and values within
    ``10^-(dps-10)`` of 1 are marked indeterminate. ``asserted`` is set only
    when ``n >= assert_from``; below that the report is informational.
    """
    if n < 3:
        raise ValueError("containment is defined for n >= 3")
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    if grid < 1:
        raise ValueError("grid must be positive")
    coeffs = cyclotomic_coeffs(n)
    samples: list[ContainmentSample] = []
    with mpmath.workdps(dps):
        s = mpmath.mpf(n) ** (epsilon - 1)
        guard = mpmath.mpf(10) ** (-(dps - 10))
        samples.append(ContainmentSample("inner", 0.0, 0.0, 0.0, "pass"))
        for region, half in (("inner", (2 - s) / 2), ("outer", (2 + s) / 2)):
            for i in range(grid + 1):
                x = half
                y = -half + 2 * half * i / grid
                v = mpmath.fsum(c * x**j * y ** (len(coeffs) - 1 - j) for j, c in enumerate(coeffs) if c)
                if abs(v - 1) < guard:
                    status = "indeterminate"
                elif region == "inner":
                    status = "pass" if v <= 1 else "fail"
                else:
                    status = "pass" if v > 1 else "fail"
                samples.append(ContainmentSample(region, float(x), float(y), float(v), status))
        inner_side, outer_side = float(2 - s), float(2 + s)
    asserted = assert_from is not None and n >= assert_from
    return ContainmentReport(n, epsilon, inner_side, outer_side, tuple(samples), asserted)


def predicted_Ad(d: int, N: float, bundle: ConstantBundle) -> float:
    """Main term ``C_d N^(2/d)``."""
    if bundle.d != d:
        raise ValueError(f"bundle is for d = {bundle.d}, not {d}")
    return bundle.C_d * N ** (2.0 / d)


def phi_exact(n: int, t: Fraction) -> Fraction:
    c = cyclotomic_coeffs(n)
    h = Fraction(c[-1])
    for a in reversed(c[:-1]):
        h = h * t + a
    return h


def lower_bound_check(n: int, t: Fraction) -> bool:
    """Exact check of ``phi_n(t) >= |t|^(d-1) (|t| - 1) / prod_{k | n, k < n} L(phi_k)`` for ``n >= 3``."""
    if n < 3:
        raise ValueError("the lower bound is stated for n >= 3")
    d = euler_phi(n)
    prod = math.prod(length(cyclotomic_poly(k)) for k in divisors(n)[:-1])
    at = abs(t)
    return phi_exact(n, t) >= at ** (d - 1) * (at - 1) / prod


def difference_bound_check(n: int, t: Fraction) -> bool:
    """Exact check of ``|phi_n(t) - phi_n(+-1)| <= |t -+ 1| max(1, |t|)^(d-1) d L(phi_n)`` (both signs)."""
    d = euler_phi(n)
    L = length(cyclotomic_poly(n))
    scale = max(Fraction(1), abs(t)) ** (d - 1) * d * L
    v = phi_exact(n, t)
    return abs(v - value_at_one(n)) <= abs(t - 1) * scale and abs(v - value_at_minus_one(n)) <= abs(t + 1) * scale
