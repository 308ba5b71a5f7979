from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fpproj.exact import (
    floor_mul_pow,
    floor_pow,
    int_nth_root,
    le_affine_pow,
    le_pow,
    parse_fraction,
)
from fpproj.rng import TWO64, choose_without_replacement, key64, key64_array


# -- integer roots ---------------------------------------------------------


def test_int_nth_root_small_exhaustive():
    for q in (1, 2, 3, 5):
        for x in range(0, 200):
            r = int_nth_root(x, q)
            assert r**q <= x < (r + 1) ** q


@given(st.integers(0, 10**30), st.integers(1, 7))
def test_int_nth_root_property(x, q):
    r = int_nth_root(x, q)
    assert r**q <= x < (r + 1) ** q


def test_int_nth_root_rejects_negatives():
    with pytest.raises(ValueError):
        int_nth_root(-1, 2)


# -- power comparisons ------------------------------------------------------


def test_le_pow_exact_boundaries():
    # 7^(3/2) = sqrt(343) ~ 18.5202: 18 <= it, 19 > it
    assert le_pow(18, 1, 7, Fraction(3, 2))
    assert not le_pow(19, 1, 7, Fraction(3, 2))
    # integer exponent boundary is inclusive
    assert le_pow(49, 1, 7, 2)
    assert not le_pow(50, 1, 7, 2)


def test_le_pow_negative_exponent():
    # 4 * 7^(-1/2) ~ 1.5119
    assert le_pow(1, 4, 7, Fraction(-1, 2))
    assert not le_pow(2, 4, 7, Fraction(-1, 2))


def test_le_affine_pow_moves_constant():
    # 10 <= 7 + 2 * 3^(1/2) ~ 10.46 but 11 is not
    assert le_affine_pow(10, 7, 2, 3, Fraction(1, 2))
    assert not le_affine_pow(11, 7, 2, 3, Fraction(1, 2))
    assert le_affine_pow(-5, 0, 0, 3, Fraction(1, 2))
    assert not le_affine_pow(1, 0, 0, 3, Fraction(1, 2))


@given(
    st.integers(0, 500),
    st.integers(2, 13).filter(lambda p: p in (2, 3, 5, 7, 11, 13)),
    st.fractions(min_value=-3, max_value=4).filter(lambda f: f.denominator <= 6),
)
def test_le_pow_agrees_with_high_precision_float(lhs, p, expo):
    approx = float(p) ** float(expo)
    # only check away from the boundary, where float is trustworthy
    if abs(lhs - approx) > 1e-6 * max(1.0, approx):
        assert le_pow(lhs, 1, p, expo) == (lhs < approx)


# -- rational floors -----------------------------------------------------------


def test_floor_pow_values():
    assert floor_pow(11, Fraction(1, 2)) == 3
    assert floor_pow(11, Fraction(3, 2)) == 36
    assert floor_pow(7, Fraction(0)) == 1
    assert floor_pow(5, 3) == 125


def test_floor_mul_pow_values():
    assert floor_mul_pow(Fraction(1, 7), 7, 1) == 1
    assert floor_mul_pow(Fraction(1, 2), 7, Fraction(1, 2)) == 1  # 1.32...
    assert floor_mul_pow(Fraction(3, 2), 2, 10) == 1536
    assert floor_mul_pow(0, 7, Fraction(5, 2)) == 0


@given(
    st.fractions(min_value=0, max_value=100).filter(lambda f: f.denominator <= 20),
    st.sampled_from([2, 3, 5, 7]),
    st.fractions(min_value=-2, max_value=6).filter(lambda f: f.denominator <= 6),
)
def test_floor_mul_pow_property(coeff, p, expo):
    t = floor_mul_pow(coeff, p, expo)
    # t <= coeff * p^expo < t + 1, checked through le_pow itself
    assert le_pow(t, coeff, p, expo)
    assert not le_pow(t + 1, coeff, p, expo)


def test_parse_fraction_forms():
    assert parse_fraction("3/2") == Fraction(3, 2)
    assert parse_fraction("1.5") == Fraction(3, 2)
    assert parse_fraction(1.3) == Fraction(13, 10)
    assert parse_fraction(2) == Fraction(2)
    assert parse_fraction(Fraction(5, 4)) == Fraction(5, 4)


# -- counter-based keys ----------------------------------------------------------


def test_key64_scalar_matches_array():
    keys = key64_array(987654321, 50)
    for i in range(50):
        assert int(keys[i]) == key64(987654321, i)


def test_key64_range_and_determinism():
    ks = [key64(5, i) for i in range(100)]
    assert all(0 <= k < TWO64 for k in ks)
    assert ks == [key64(5, i) for i in range(100)]
    assert len(set(ks)) == 100  # no collisions at this scale
    assert ks != [key64(6, i) for i in range(100)]


def test_choose_without_replacement_contract():
    out = choose_without_replacement(7, 100, 30)
    assert out.shape == (30,)
    assert len(np.unique(out)) == 30
    assert np.all(out[:-1] < out[1:])
    assert out.min() >= 0 and out.max() < 100
    assert np.array_equal(out, choose_without_replacement(7, 100, 30))
    with pytest.raises(ValueError):
        choose_without_replacement(7, 10, 11)


def test_choose_without_replacement_is_roughly_uniform():
    hits = np.zeros(20, dtype=int)
    for seed in range(500):
        hits[choose_without_replacement(seed, 20, 5)] += 1
    # each index expected 125 times; allow wide but meaningful band
    assert hits.min() > 80 and hits.max() < 170


# -- fractional beta through the audit path ----------------------------------------


def test_audit_family_fractional_beta():
    from fpproj.families import audit_family, full_family
    from fpproj.field import AmbientSpace
    from fpproj.pointsets import random_point_set

    ambient = AmbientSpace(3, 3)
    G = full_family(ambient, 1)
    E = random_point_set(ambient, 9, seed=1)
    # spread_containing is exactly 4 = |G(2,1)|; 4 <= C |G| 3^-beta pins C
    audit = audit_family(G, "contains", beta=Fraction(3, 2), C=2, test_sets=[E])
    assert audit.spread.max_count == 4
    # 2 * 13 * 3^-1.5 ~ 5.004 >= 4
    assert audit.spread_ok
    tight = audit_family(G, "contains", beta=Fraction(3, 2), C=Fraction(3, 4))
    # 0.75 * 13 * 3^-1.5 ~ 1.876 < 4
    assert not tight.spread_ok