"""Verification suite: every identity, congruence, bound and area claim as a check.

Each check returns a :class:`CheckResult`. ``acceptance_checks`` lists the
headline checks with their runtime budgets; ``invariant_checks`` adds the
per-module cross-checks against independent oracles. ``run_all`` drives
both and is what ``cyclorep verify-all`` calls.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import mpmath
import numpy as np

from . import oracles
from .congruence import confinement_classes, lemma_defini1_check, residues_attained
from .counting import cauchy_schwarz_check, count_Ad, represented_by_form
from .cycloform import (
    bateman_check,
    cyclotomic_coeffs,
    cyclotomic_coeffs_ladder,
    cyclotomic_poly,
    evaluate,
    value_at_minus_one,
    value_at_one,
    verify_identity_prime_quotient,
    verify_identity_radical,
)
from .geometry import (
    area,
    area_power_of_two,
    area_truncated,
    beta_star,
    constant_Cd,
    containment_check,
    difference_bound_check,
    eta,
    lower_bound_check,
    min_on_line,
    phi_real,
    square_sandwich,
)
from .kernels import BACKENDS
from .numtheory import inverse_totient, prime_divisors
from .symmetry import automorphism_group, group_weight, stewart_xiao_weight, verify_group, w_weight


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float
    limit: float | None = None

    @property
    def within_time(self) -> bool:
        return self.limit is None or self.seconds < self.limit

    @property
    def ok(self) -> bool:
        return self.passed and self.within_time


def _run(name: str, fn: Callable[[], tuple[bool, str]], limit: float | None = None) -> CheckResult:
    t0 = time.perf_counter()
    try:
        passed, detail = fn()
    except Exception as exc:  # a crash is a failed check, reported with its message
        passed, detail = False, f"{type(exc).__name__}: {exc}"
    return CheckResult(name, bool(passed), detail, time.perf_counter() - t0, limit)


# ---- headline checks -------------------------------------------------------


def closed_form_areas(tol: float = 1e-10) -> tuple[bool, str]:
    e4 = abs(area(4, tol).value - math.pi)
    e3 = abs(area(3, tol).value - 2 * math.pi / math.sqrt(3))
    return e4 < 1e-9 and e3 < 1e-9, f"|A4 - pi| = {e4:.2e}, |A3 - 2pi/sqrt3| = {e3:.2e}"


def gamma_areas(tol: float = 1e-10) -> tuple[bool, str]:
    with mpmath.workdps(30):
        g8 = float(mpmath.gamma(0.25) ** 2 / mpmath.gamma(0.5) / 2)
        g16 = float(mpmath.gamma(mpmath.mpf(1) / 8) ** 2 / mpmath.gamma(0.25) / 4)
    e8 = abs(area(8, tol).value - g8)
    e16 = abs(area(16, tol).value - g16)
    return e8 < 1e-8 and e16 < 1e-8, f"|A8 - G| = {e8:.2e}, |A16 - G| = {e16:.2e}"


def residue_confinement(n_max: int = 200, p_max: int = 13, n4_max: int = 100) -> tuple[bool, str]:
    bad = []
    checked = 0
    for n in range(1, n_max + 1):
        for p in prime_divisors(n):
            if p <= p_max:
                checked += 1
                if not residues_attained(n, p).within({0, 1}):
                    bad.append((n, p))
    for n in (9, 27, 81):
        checked += 1
        if not residues_attained(n, 9).within({0, 1, 3}):
            bad.append((n, 9))
    for n in range(4, n4_max + 1, 4):
        checked += 1
        if not residues_attained(n, 4).within({0, 1, 2}):
            bad.append((n, 4))
    return not bad, f"{checked} profiles, violations {bad[:5]}"


def prime_index_congruence(primes=(3, 5, 7, 11, 13)) -> tuple[bool, str]:
    bad = []
    total = 0
    for p in primes:
        for a in range(p * p):
            for b in range(p * p):
                total += 1
                if not lemma_defini1_check(p, a, b).holds:
                    bad.append((p, a, b))
    return not bad, f"{total} pairs, violations {bad[:5]}"


def counting_oracle(cases=((4, 10**3), (4, 10**4), (6, 10**3))) -> tuple[bool, str]:
    parts, ok = [], True
    for d, N in cases:
        fast, _ = count_Ad(d, N)
        slow = oracles.count_Ad_naive(d, N)
        ok &= fast == slow
        parts.append(f"A_{d}({N}) = {fast} vs {slow}")
    return ok, "; ".join(parts)


def counting_upper_bound(ds=(4, 6, 8), Ns=(10**3, 10**4, 10**5, 10**6)) -> tuple[bool, str]:
    worst, ok = 0.0, True
    for d in ds:
        for N in Ns:
            c, _ = count_Ad(d, N)
            bound = 29 * N ** (2 / d) * math.log(N) ** 1.161
            ok &= c <= bound
            worst = max(worst, c / bound)
    return ok, f"largest count/bound = {worst:.4f}"


def asymptotic_ratio(Ns=(10**4, 10**5, 10**6), tol: float = 1e-10) -> tuple[bool, str]:
    C4 = constant_Cd(4, tol).C_d
    r = {N: count_Ad(4, N)[0] / (C4 * math.sqrt(N)) for N in Ns}
    lo, hi = min(Ns), max(Ns)
    ok = abs(r[hi] - 1) < 0.2 and abs(r[hi] - 1) <= abs(r[lo] - 1) + 0.05
    return ok, ", ".join(f"r({N:g}) = {v:.4f}" for N, v in r.items())


def weight_identity(n_max: int = 500) -> tuple[bool, str]:
    bad = []
    groups = {}
    for n in range(3, n_max + 1):
        g = automorphism_group(n)
        if g.kind not in groups:
            groups[g.kind] = group_weight(g)
        w = w_weight(n)
        if w != stewart_xiao_weight(g.kind, 1) or w != groups[g.kind]:
            bad.append(n)
    return not bad, f"weights {sorted((k, str(v)) for k, v in groups.items())}, mismatches {bad[:5]}"


def _value_set(coeffs, B: int) -> set[int]:
    return {oracles.form_value(coeffs, x, y) for x in range(-B, B + 1) for y in range(-B, B + 1)}


def isomorphic_value_sets(n_max: int = 99, box: int = 15) -> tuple[bool, str]:
    bad = [
        n
        for n in range(3, n_max + 1, 2)
        if _value_set(cyclotomic_coeffs(n), box) != _value_set(cyclotomic_coeffs(2 * n), box)
    ]
    return not bad, f"odd n <= {n_max}, box {box}, mismatches {bad[:5]}"


def confinement_end_to_end(samples: int = 500, seed: int = 0, span: int = 10**6) -> tuple[bool, str]:
    cc = confinement_classes(4, 7)
    if (cc.D, cc.a0, cc.b0) != (20, 5, 17):
        return False, f"got (D, a0, b0) = {(cc.D, cc.a0, cc.b0)}"
    rng = random.Random(seed)
    f7 = cyclotomic_poly(7)
    bad = []
    for _ in range(samples):
        a = cc.a0 + cc.D * rng.randint(-span, span)
        b = cc.b0 + cc.D * rng.randint(-span, span)
        v = evaluate(f7, a, b)
        if v % 5 in (0, 1) or v % 4 in (0, 1, 2):
            bad.append((a, b))
    return not bad, f"(D, a0, b0) = (20, 5, 17), {samples} samples, violations {len(bad)}"


def flw_bound(n_max: int = 50, h_max: int = 30) -> tuple[bool, str]:
    """Exact forms of ``h <= (2/sqrt3) v^(1/d)`` and ``d <= (2/log 3) log v``."""
    bad = []
    checked = 0
    for n in range(3, n_max + 1):
        f = cyclotomic_poly(n)
        d = f.degree
        p3, p4 = 3**d, 4**d
        for x in range(-h_max, h_max + 1):
            for y in range(-h_max, h_max + 1):
                h = max(abs(x), abs(y))
                if h < 2:
                    continue
                v = evaluate(f, x, y)
                checked += 1
                if p3 * h ** (2 * d) > p4 * v * v or p3 > v * v:
                    bad.append((n, x, y))
    return not bad, f"{checked} evaluations, violations {bad[:5]}"


def bateman(n_max: int = 2000) -> tuple[bool, str]:
    bad = [n for n in range(2, n_max + 1) if not bateman_check(n)[0]]
    return not bad, f"2 <= n <= {n_max}, violations {bad[:5]}"


def area_limit(tol: float = 1e-10) -> tuple[bool, str]:
    idx = (4, 8, 16, 32, 64, 128, 256)
    vals = [area(n, tol).value for n in idx]
    ok = all(a < b for a, b in zip(vals, vals[1:])) and vals[-1] > 3.9
    return ok, ", ".join(f"A{n} = {v:.6f}" for n, v in zip(idx, vals))


# ---- module invariants -----------------------------------------------------


def coefficient_routes(n_max: int = 300) -> tuple[bool, str]:
    bad = [
        n
        for n in range(1, n_max + 1)
        if not (cyclotomic_coeffs(n) == cyclotomic_coeffs_ladder(n) == oracles.coeffs_by_sympy(n))
    ]
    return not bad, f"n <= {n_max}, mismatches {bad[:5]}"


def totient_oracle(d_max: int = 50) -> tuple[bool, str]:
    by_value: dict[int, list[int]] = {}
    for n in range(1, 2 * d_max * d_max + 1):
        by_value.setdefault(oracles.phi_by_gcd(n), []).append(n)
    bad = [d for d in range(1, d_max + 1) if inverse_totient(d) != by_value.get(d, [])]
    return not bad, f"d <= {d_max}, mismatches {bad[:5]}"


def special_values(n_max: int = 500) -> tuple[bool, str]:
    bad = [
        n
        for n in range(1, n_max + 1)
        if value_at_one(n) != evaluate(cyclotomic_poly(n), 1, 1)
        or value_at_minus_one(n) != evaluate(cyclotomic_poly(n), -1, 1)
    ]
    return not bad, f"n <= {n_max}, mismatches {bad[:5]}"


def product_identities(n_max: int = 120, seed: int = 1) -> tuple[bool, str]:
    rng = random.Random(seed)
    pts = [(rng.randint(-9, 9), rng.randint(-9, 9)) for _ in range(6)]
    bad = []
    for n in range(2, n_max + 1):
        if not verify_identity_radical(n, pts):
            bad.append(("radical", n))
        for p in prime_divisors(n):
            if not verify_identity_prime_quotient(n, pts, p):
                bad.append(("quotient", n, p))
    return not bad, f"n <= {n_max}, failures {bad[:5]}"


def automorphisms(n_max: int = 60) -> tuple[bool, str]:
    bad = [n for n in range(3, n_max + 1) if not verify_group(n)]
    return not bad, f"3 <= n <= {n_max}, failures {bad[:5]}"


def area_sandwich(indices=tuple(range(3, 31)) + (101, 211)) -> tuple[bool, str]:
    bad = [n for n in indices if not square_sandwich(n).holds]
    return not bad, f"{len(indices)} indices, failures {bad}"


def area_closed_form_family(tol: float = 1e-10) -> tuple[bool, str]:
    errs = {2**k: abs(area(2**k, tol).value - area_power_of_two(2 ** (k - 1))) for k in (2, 3, 4, 5)}
    return max(errs.values()) <= 2e-8, f"max error {max(errs.values()):.2e}"


def area_unfolded(indices=(3, 4, 5, 8, 12)) -> tuple[bool, str]:
    # the truncated integral carries an O(1/T^2) tail error beyond the 2/T correction
    diffs = {n: abs(area_truncated(n) - area(n).value) for n in indices}
    return max(diffs.values()) < 1e-5, f"max |folded - truncated| = {max(diffs.values()):.2e}"


def exponent_constants(d_max: int = 100) -> tuple[bool, str]:
    bad = [d for d in range(4, d_max + 1, 2) if eta(d) < beta_star(d)]
    return not bad, f"even 4 <= d <= {d_max}, failures {bad}"


def line_minimum(n_max: int = 30, points: int = 10**6) -> tuple[bool, str]:
    ts = np.linspace(-2.0, 2.0, points)
    worst = 0.0
    for n in range(3, n_max + 1):
        scan = float(phi_real(n, ts).min())
        worst = max(worst, abs(min_on_line(n).m_value - scan))
    return worst < 1e-6, f"max deviation from a {points}-point scan: {worst:.2e}"


def containment(n: int = 101, epsilon: float = 0.5, grid: int = 64) -> tuple[bool, str]:
    big = containment_check(n, epsilon, grid, assert_from=n)
    small = containment_check(4, epsilon, grid)
    ok = big.all_pass and not small.all_pass and small.samples[0].status == "pass"
    return ok, f"n = {n}: {big.counts()}; n = 4 (reported only): {small.counts()}"


def representation_oracle(indices=(3, 4, 5, 7, 8, 9, 12), Ns=(10, 100, 1000)) -> tuple[bool, str]:
    bad = []
    for n in indices:
        for N in Ns:
            for h2 in (True, False):
                fast = represented_by_form(n, N, h2).as_set()
                if fast != oracles.represented_naive(n, N, h2):
                    bad.append((n, N, h2))
    return not bad, f"mismatches {bad[:5]}"


def backend_agreement(N: int = 10**5) -> tuple[bool, str]:
    counts = {name: count_Ad(4, N, backend=name)[1].members for name in BACKENDS}
    first = next(iter(counts.values()))
    ok = all(np.array_equal(first, m) for m in counts.values())
    return ok, f"backends {sorted(counts)} on A_4({N})"


def partition_independence(N: int = 10**5) -> tuple[bool, str]:
    ref = count_Ad(4, N, workers=1)[1].members
    ok = all(np.array_equal(ref, count_Ad(4, N, workers=w)[1].members) for w in (2, 8))
    return ok, f"1/2/8-way splits of A_4({N})"


def growth_bounds(samples: int = 300, seed: int = 2) -> tuple[bool, str]:
    rng = random.Random(seed)
    bad = []
    for _ in range(samples):
        n = rng.randint(2, 120)
        t = Fraction(rng.randint(-400, 400), rng.randint(1, 100))
        if abs(t) > 1 and not lower_bound_check(n, t):
            bad.append(("lower", n, t))
        if not difference_bound_check(n, t):
            bad.append(("difference", n, t))
    return not bad, f"{samples} random (n, t), failures {bad[:3]}"


def second_moment(B: int = 60) -> tuple[bool, str]:
    rep = cauchy_schwarz_check(7, B, (20, 5, 17))
    return rep.holds, f"pairs {rep.constrained_pairs}, image {rep.image_size}, sum rho^2 {rep.sum_rho_squared}"


def confinement_absence(limit_ab: int = 200) -> tuple[bool, str]:
    """Values of Phi_7 on the (5, 17) mod 20 classes never occur as values of Phi_5, Phi_8, Phi_12."""
    f7 = cyclotomic_poly(7)
    targets = sorted(
        {
            evaluate(f7, a, b)
            for a in range(-limit_ab, limit_ab + 1)
            if a % 20 == 5
            for b in range(-limit_ab, limit_ab + 1)
            if b % 20 == 17
        }
    )
    V = targets[-1]
    tarr = np.array(targets, dtype=np.int64)
    hits = []
    for n in (5, 8, 12):
        c = cyclotomic_coeffs(n)
        R = oracles.height_radius(V, len(c) - 1)
        ys = np.arange(-R, R + 1, dtype=np.int64)
        for x in range(0, R + 1):
            vals = np.zeros_like(ys)
            for j, cj in enumerate(c):
                if cj:
                    vals += cj * x**j * ys ** (len(c) - 1 - j)
            if np.isin(vals, tarr, assume_unique=False).any():
                hits.append((n, x))
                break
    return not hits, f"{len(targets)} values up to {V}, hits {hits}"


def acceptance_checks(fast: bool = False) -> list[tuple[str, Callable[[], tuple[bool, str]], float | None]]:
    return [
        ("closed-form areas", closed_form_areas, 5.0),
        ("gamma closed forms", gamma_areas, 10.0),
        ("residue confinement", residue_confinement, 30.0),
        ("prime-index congruence", prime_index_congruence, 60.0),
        ("counting vs naive oracle", counting_oracle, 60.0),
        ("counting upper bound", counting_upper_bound, None),
        ("asymptotic ratio", asymptotic_ratio, 600.0),
        ("weight identity", weight_identity, None),
        ("isomorphic value sets", isomorphic_value_sets, None),
        ("confinement classes", confinement_end_to_end, None),
        ("height bound", flw_bound, 60.0),
        ("Bateman length bound", bateman, 30.0),
        ("area limit", area_limit, None),
    ]


def invariant_checks(fast: bool = False) -> list[tuple[str, Callable[[], tuple[bool, str]], float | None]]:
    checks = [
        ("coefficient routes", coefficient_routes if not fast else lambda: coefficient_routes(120), None),
        ("totient oracle", totient_oracle if not fast else lambda: totient_oracle(30), None),
        ("values at +-1", special_values, None),
        ("product identities", product_identities, None),
        ("automorphism groups", automorphisms, None),
        ("area sandwich", area_sandwich, None),
        ("power-of-two areas", area_closed_form_family, None),
        ("unfolded area", area_unfolded, None),
        ("eta >= beta*", exponent_constants, None),
        ("line minimum", line_minimum if not fast else lambda: line_minimum(30, 10**5), None),
        ("square containment", containment, None),
        ("representation oracle", representation_oracle, None),
        ("backend agreement", backend_agreement, None),
        ("partition independence", partition_independence, None),
        ("growth bounds", growth_bounds, None),
        ("second moment", second_moment, None),
    ]
    if not fast:
        checks.append(("confinement vs images", confinement_absence, None))
    return checks


def run_all(fast: bool = False, progress: Callable[[CheckResult], None] | None = None) -> list[CheckResult]:
    results = []
    for name, fn, limit in acceptance_checks(fast) + invariant_checks(fast):
        res = _run(name, fn, limit)
        results.append(res)
        if progress:
            progress(res)
    return results
