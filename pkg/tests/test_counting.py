import math

import numpy as np
import pytest

from cyclorep.counting import (
    cauchy_schwarz_check,
    common_represented,
    common_values_count,
    count_Ad,
    degree_bound,
    flw_height_bound,
    integer_height_radius,
    multiplicity_histogram,
    represented_by_form,
)
from cyclorep.cycloform import cyclotomic_poly, evaluate
from cyclorep.oracles import count_Ad_naive, represented_naive
from cyclorep.symmetry import canonicalize


def test_height_bound_examples():
    assert flw_height_bound(5, 5) == pytest.approx(1.7266, abs=1e-4)
    assert flw_height_bound(1, 7) == pytest.approx(2 / math.sqrt(3))
    with pytest.raises(ValueError):
        flw_height_bound(5, 2)


def test_integer_radius_is_exact():
    for N in range(1, 3000, 7):
        for d in (2, 4, 6, 8):
            M = integer_height_radius(N, d)
            assert 3**d * M ** (2 * d) <= 4**d * N * N < 3**d * (M + 1) ** (2 * d)


def test_degree_bound_examples():
    assert degree_bound(3).max_degree == 2
    b = degree_bound(10**6)
    assert (b.max_degree, b.max_index) == (25, 113)


def test_represented_examples(backend):
    assert list(represented_by_form(4, 25, True, backend=backend).members) == [4, 5, 8, 9, 10, 13, 16, 17, 18, 20, 25]
    assert represented_by_form(4, 25, backend=backend).count == 11
    assert list(represented_by_form(3, 3, True, backend=backend).members) == [3]
    assert represented_by_form(5, 4, True, backend=backend).count == 0


@pytest.mark.parametrize("n", [3, 4, 5, 7, 8, 9, 12])
@pytest.mark.parametrize("N", [10, 100, 1000])
def test_represented_matches_double_loop(backend, n, N):
    for h2 in (True, False):
        assert represented_by_form(n, N, h2, backend=backend).as_set() == represented_naive(n, N, h2)


def test_witnesses_are_genuine():
    t = represented_by_form(12, 2000, True, with_witnesses=True)
    for v in t.members:
        n, x, y = t.witnesses[int(v)]
        assert evaluate(cyclotomic_poly(n), x, y) == v and max(abs(x), abs(y)) >= 2


@pytest.mark.parametrize("d,N", [(4, 12), (2, 25), (4, 1), (6, 1), (4, 1000), (6, 1000), (8, 5000), (2, 300)])
def test_count_matches_oracle(d, N):
    assert count_Ad(d, N)[0] == count_Ad_naive(d, N)


def test_count_backends_agree():
    tables = [count_Ad(4, 10**5, backend=b)[1].members for b in ("python", "compiled")]
    assert np.array_equal(*tables)


@pytest.mark.parametrize("workers", [2, 8])
def test_partition_independence(workers, backend):
    ref = count_Ad(4, 10**5, workers=1, backend=backend)[1].members
    assert np.array_equal(ref, count_Ad(4, 10**5, workers=workers, backend=backend)[1].members)


def test_monotone():
    Ns = [10, 100, 1000, 10**4, 10**5]
    for d in (2, 4, 6, 8):
        counts = [count_Ad(d, N)[0] for N in Ns]
        assert counts == sorted(counts)
    for N in Ns:
        counts = [count_Ad(d, N)[0] for d in (2, 4, 6, 8, 10, 12)]
        assert counts == sorted(counts, reverse=True)


def test_upper_bound():
    for d in (4, 6, 8):
        for N in (10**3, 10**4, 10**5, 10**6):
            assert count_Ad(d, N)[0] <= 29 * N ** (2 / d) * math.log(N) ** 1.161


def test_isomorphic_index_counts():
    for n in (6, 10, 14, 18, 30):
        a = represented_by_form(n, 5000).members
        b = represented_by_form(canonicalize(n), 5000).members
        assert np.array_equal(a, b)


def test_memory_cap():
    with pytest.raises(MemoryError):
        count_Ad(4, 10**6, memory_cap=10**5)
    with pytest.raises(MemoryError):
        represented_by_form(5, 10**6, memory_cap=10**5)


def test_common_value_counts():
    f4, f5, f8 = (cyclotomic_poly(n) for n in (4, 5, 8))
    assert common_values_count(f4, f4, 1) == 33
    vals5 = [evaluate(f5, x, y) for x in range(-2, 3) for y in range(-2, 3)]
    vals8 = [evaluate(f8, x, y) for x in range(-2, 3) for y in range(-2, 3)]
    assert common_values_count(f5, f8, 2) == sum(a == b for a in vals5 for b in vals8)
    with pytest.raises(MemoryError):
        common_values_count(f4, f4, 10**5)


def test_common_represented():
    for N in (10, 100, 1000):
        assert common_represented(3, 6, N) == represented_by_form(3, N, False).count + 1
    assert common_represented(5, 8, 1) == 2
    s3 = represented_naive(3, 10, False) | {0}
    s4 = represented_naive(4, 10, False) | {0}
    assert common_represented(4, 3, 10) == len(s3 & s4)


def test_multiplicity_histogram():
    h = multiplicity_histogram(4, 2)
    assert h.multiplicities[1] == 4 and h.multiplicities[5] == 8
    assert h.pairs == 25
    assert multiplicity_histogram(5, 2, (20, 5, 17)).histogram == {}


def test_second_moment_inequality():
    rep = cauchy_schwarz_check(7, 60, (20, 5, 17))
    assert rep.constrained_pairs == 36 and rep.holds
