import random

import pytest
from hypothesis import given, strategies as st

from cyclorep.cycloform import (
    OVER_CAP,
    BinaryForm,
    bateman_check,
    bateman_growth_scan,
    cyclotomic_coeffs,
    cyclotomic_coeffs_ladder,
    cyclotomic_poly,
    evaluate,
    evaluate_bounded,
    length,
    value_at_minus_one,
    value_at_one,
    verify_identity_prime_quotient,
    verify_identity_radical,
)
from cyclorep.numtheory import divisors, euler_phi
from cyclorep.oracles import coeffs_by_sympy


def test_small_forms():
    assert cyclotomic_coeffs(3) == (1, 1, 1)
    assert cyclotomic_coeffs(4) == (1, 0, 1)
    assert cyclotomic_coeffs(12) == (1, 0, -1, 0, 1)
    assert cyclotomic_coeffs(1) == (-1, 1)
    assert cyclotomic_coeffs(2) == (1, 1)


def test_rejects_zero_index():
    with pytest.raises(ValueError):
        cyclotomic_poly(0)


def test_three_routes_agree():
    for n in list(range(1, 301)) + [1155, 2310, 3003, 4096]:
        assert cyclotomic_coeffs(n) == cyclotomic_coeffs_ladder(n) == coeffs_by_sympy(n), n


def test_large_coefficient_case():
    # 105 is the first index with a coefficient of absolute value 2
    assert max(map(abs, cyclotomic_coeffs(105))) == 2
    assert max(map(abs, cyclotomic_coeffs(15015))) == 23


def test_evaluate_examples():
    assert evaluate(cyclotomic_poly(5), 1, 1) == 5
    assert evaluate(cyclotomic_poly(4), 3, 4) == 25
    assert evaluate(cyclotomic_poly(12), 2, 1) == 13


def test_evaluate_bounded():
    f4, f12 = cyclotomic_poly(4), cyclotomic_poly(12)
    assert evaluate_bounded(f4, 3, 4, 30) == 25
    assert evaluate_bounded(f4, 3, 4, 20) is OVER_CAP
    assert not OVER_CAP
    assert evaluate_bounded(f12, 2, 1, 13) == 13
    with pytest.raises(ValueError):
        evaluate_bounded(cyclotomic_poly(2), 1, 1, 10)


def test_big_values_are_exact():
    f = cyclotomic_poly(97)
    x, y = 10**12 + 7, -(10**11) + 3
    assert evaluate(f, x, y) == (x**97 - y**97) // (x - y)


def test_product_over_divisors():
    rng = random.Random(5)
    pts = [(2, 1), (3, 2), (-2, 5)] + [(rng.randint(-6, 6), rng.randint(-6, 6)) for _ in range(3)]
    for n in range(1, 301):
        for x, y in pts:
            prod = 1
            for k in divisors(n):
                prod *= evaluate(cyclotomic_poly(k), x, y)
            assert prod == x**n - y**n


def test_palindrome_and_swap_symmetry():
    rng = random.Random(7)
    for n in range(3, 301):
        c = cyclotomic_coeffs(n)
        assert c == c[::-1]
        x, y = rng.randint(-20, 20), rng.randint(-20, 20)
        assert evaluate(cyclotomic_poly(n), x, y) == evaluate(cyclotomic_poly(n), y, x)


def test_doubling_for_odd_index():
    rng = random.Random(11)
    for n in range(3, 200, 2):
        x, y = rng.randint(-30, 30), rng.randint(-30, 30)
        assert evaluate(cyclotomic_poly(2 * n), x, y) == evaluate(cyclotomic_poly(n), x, -y)


@given(st.integers(3, 60), st.integers(-50, 50), st.integers(-50, 50))
def test_definite(n, x, y):
    if (x, y) != (0, 0):
        assert evaluate(cyclotomic_poly(n), x, y) > 0


def test_definiteness_flags():
    assert cyclotomic_poly(3).is_positive_definite()
    assert not cyclotomic_poly(2).is_positive_definite()
    assert BinaryForm.from_coefficients([1, 0, 1]).is_positive_definite()
    assert not BinaryForm.from_coefficients([-1, 0, 1]).is_positive_definite()
    with pytest.raises(ValueError):
        BinaryForm.from_coefficients([0, 0])


def test_special_values():
    assert [value_at_one(n) for n in (1, 9, 15)] == [0, 3, 1]
    assert [value_at_minus_one(n) for n in (1, 8, 12)] == [-2, 2, 1]
    for n in range(1, 2001):
        f = cyclotomic_poly(n)
        assert value_at_one(n) == evaluate(f, 1, 1)
        assert value_at_minus_one(n) == evaluate(f, -1, 1)


def test_identities():
    assert verify_identity_radical(9, [(2, 1)])
    assert evaluate(cyclotomic_poly(9), 2, 1) == evaluate(cyclotomic_poly(3), 8, 1) == 73
    assert verify_identity_radical(4, [(1, 2), (-3, 5)])
    assert verify_identity_radical(12, [(2, 1)])
    assert verify_identity_prime_quotient(7, [(1, 1), (2, 3)])
    rep = verify_identity_prime_quotient(9, [(1, 1), (2, 1)])
    assert rep.holds and rep.skipped == ((1, 1),)


def test_length_and_bateman():
    assert [length(cyclotomic_poly(n)) for n in (4, 3, 12)] == [2, 3, 3]
    assert bateman_check(3) == (True, (3, 3))
    assert bateman_check(12) == (True, (3, 12**3))
    assert bateman_check(1)[0] is False
    assert all(bateman_check(n)[0] for n in range(2, 2001))


def test_growth_scan_reports_threshold():
    scan = bateman_growth_scan(0.5, 500)
    assert scan.n_min == scan.failures[-1] + 1
    big = bateman_growth_scan(1.0, 500)
    assert big.failures == () and big.n_min == 2


def test_degree():
    for n in (1, 2, 7, 30, 210):
        assert cyclotomic_poly(n).degree == euler_phi(n)
