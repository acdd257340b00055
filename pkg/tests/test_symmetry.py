import random
from fractions import Fraction

import pytest

from cyclorep.cycloform import cyclotomic_poly, evaluate
from cyclorep.symmetry import (
    D2,
    D4,
    REFLECT_Y,
    are_isomorphic,
    automorphism_group,
    canonicalize,
    group_weight,
    invariant_lattice_det,
    is_automorphism,
    stewart_xiao_weight,
    verify_group,
    w_weight,
)


def test_group_examples():
    assert automorphism_group(8).kind == "D4"
    assert automorphism_group(5).kind == "D2"
    assert automorphism_group(12).kind == "D4"
    assert len(D2.elements) == 4 and len(D4.elements) == 8
    assert D2.is_closed() and D4.is_closed()
    with pytest.raises(ValueError):
        automorphism_group(2)


def test_groups_fix_the_forms():
    assert all(verify_group(n, n_samples=10, seed=n) for n in range(3, 201))


def test_split_is_strict():
    rng = random.Random(3)
    pts = [(rng.randint(-9, 9), rng.randint(-9, 9)) for _ in range(20)]
    for n in range(3, 201):
        if n % 4:
            assert not is_automorphism(n, REFLECT_Y, pts), n


def test_weights():
    assert stewart_xiao_weight("D2", 1) == Fraction(1, 4)
    assert stewart_xiao_weight("D4", (1, 1, 1, 1)) == Fraction(1, 8)
    assert stewart_xiao_weight("D2", 2) == Fraction(3, 8)
    assert [w_weight(n) for n in (5, 8, 12)] == [Fraction(1, 4), Fraction(1, 8), Fraction(1, 8)]
    with pytest.raises(ValueError):
        stewart_xiao_weight("C3", 1)
    with pytest.raises(ValueError):
        stewart_xiao_weight("D4", (1, 1))
    with pytest.raises(ValueError):
        stewart_xiao_weight("D2", 0)


def test_weight_matches_group_for_all_n():
    lattice = {"D2": group_weight(D2), "D4": group_weight(D4)}
    for n in range(3, 501):
        g = automorphism_group(n)
        assert w_weight(n) == stewart_xiao_weight(g.kind, 1) == lattice[g.kind]


def test_lattice_det():
    assert invariant_lattice_det(D4.elements) == 1
    half = Fraction(1, 2)
    # v with (v0 + v1) / 2 integral: index 2
    assert invariant_lattice_det([((half, half), (half, -half))]) == 2


def test_isomorphism():
    assert are_isomorphic(3, 6) and are_isomorphic(5, 10) and are_isomorphic(10, 5)
    assert not are_isomorphic(3, 4)
    assert not are_isomorphic(4, 8)
    assert [canonicalize(n) for n in (6, 12, 10)] == [3, 12, 5]


def test_isomorphic_forms_share_values():
    B = 15
    for n in range(3, 100, 2):
        f, g = cyclotomic_poly(n), cyclotomic_poly(2 * n)
        vf = {evaluate(f, x, y) for x in range(-B, B + 1) for y in range(-B, B + 1)}
        vg = {evaluate(g, x, y) for x in range(-B, B + 1) for y in range(-B, B + 1)}
        assert vf == vg
