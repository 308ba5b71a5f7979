import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fpproj.field import (
    AmbientSpace,
    FpMatrix,
    FpVector,
    decode,
    dot,
    encode,
    gaussian_binomial,
    is_prime,
    nullspace,
    rref,
)
from oracles import brute_gaussian_count, brute_nullspace_set, span_set


def vec(p, n, coords):
    return FpVector(AmbientSpace(p, n), tuple(coords))


# -- ambient space ------------------------------------------------------


def test_ambient_rejects_composite_p():
    with pytest.raises(ValueError):
        AmbientSpace(6, 2)
    with pytest.raises(ValueError):
        AmbientSpace(1, 2)


def test_ambient_rejects_bad_n():
    with pytest.raises(ValueError):
        AmbientSpace(3, 0)


def test_ambient_rejects_oversized_space():
    with pytest.raises(ValueError):
        AmbientSpace(2, 64)


def test_point_count():
    assert AmbientSpace(3, 4).point_count == 81
    assert AmbientSpace(7, 2).point_count == 49


# -- dot ----------------------------------------------------------------


def test_dot_known_values():
    assert dot(vec(3, 2, (1, 2)), vec(3, 2, (2, 1))) == 1
    zero = vec(5, 3, (0, 0, 0))
    for v in [vec(5, 3, c) for c in [(1, 2, 3), (4, 4, 4)]]:
        assert dot(zero, v) == 0
    for p in (2, 3, 5, 7):
        amb = AmbientSpace(p, 3)
        assert dot(FpVector.unit(amb, 0), FpVector.unit(amb, 1)) == 0


def test_dot_ambient_mismatch():
    with pytest.raises(ValueError):
        dot(vec(3, 2, (1, 0)), vec(5, 2, (1, 0)))
    with pytest.raises(ValueError):
        dot(vec(3, 2, (1, 0)), vec(3, 3, (1, 0, 0)))


@given(st.integers(0, 6), st.integers(0, 6), st.integers(0, 6))
def test_dot_bilinear_in_first_slot(a, b, k):
    amb = AmbientSpace(7, 2)
    u = FpVector(amb, (a, b))
    v = FpVector(amb, (3, 5))
    assert dot(u.scale(k), v) == (k * dot(u, v)) % 7


# -- encode / decode ----------------------------------------------------


def test_encode_known_values():
    assert encode(vec(3, 2, (0, 0))) == 0
    assert encode(vec(3, 2, (2, 1))) == 5


def test_decode_rejects_out_of_range():
    amb = AmbientSpace(3, 2)
    with pytest.raises(ValueError):
        decode(amb, 9)
    with pytest.raises(ValueError):
        decode(amb, -1)


@pytest.mark.parametrize("p,n", [(3, 3), (2, 5), (5, 5), (7, 2)])
def test_encode_decode_bijective(p, n):
    amb = AmbientSpace(p, n)
    seen = set()
    for code in range(p**n):
        v = decode(amb, code)
        assert encode(v) == code
        seen.add(v.coords)
    assert len(seen) == p**n


# -- rref ---------------------------------------------------------------


def test_rref_identity_fixed():
    amb = AmbientSpace(3, 2)
    M = FpMatrix(amb, ((1, 0), (0, 1)))
    R, rank, pivots = rref(M)
    assert R.rows == M.rows and rank == 2 and pivots == (0, 1)


def test_rref_zero_matrix():
    amb = AmbientSpace(3, 2)
    R, rank, pivots = rref(FpMatrix(amb, ((0, 0), (0, 0))))
    assert R.rows == () and rank == 0 and pivots == ()


def test_rref_dependent_rows():
    amb = AmbientSpace(5, 2)
    R, rank, _ = rref(FpMatrix(amb, ((1, 2), (2, 4))))
    assert R.rows == ((1, 2),) and rank == 1


def _random_matrices(p, n, rows, count, seed):
    import random

    rng = random.Random(seed)
    for _ in range(count):
        yield tuple(
            tuple(rng.randrange(p) for _ in range(n)) for _ in range(rows)
        )


@pytest.mark.parametrize("p,n", [(2, 3), (3, 4), (5, 3), (7, 2)])
def test_rref_idempotent_and_preserves_rowspace(p, n):
    amb = AmbientSpace(p, n)
    for rows in _random_matrices(p, n, 3, 25, seed=p * 100 + n):
        R, rank, pivots = rref(FpMatrix(amb, rows))
        R2, rank2, _ = rref(R)
        assert R2.rows == R.rows and rank2 == rank
        assert list(pivots) == sorted(pivots)
        # row space preserved, checked by exhaustive span membership
        original_span = span_set(list(rows), p, n)
        reduced_span = span_set(list(R.rows), p, n)
        assert original_span == reduced_span


# -- nullspace ----------------------------------------------------------


def test_nullspace_identity_is_trivial():
    amb = AmbientSpace(3, 2)
    assert nullspace(FpMatrix(amb, ((1, 0), (0, 1)))).rows == ()


def test_nullspace_zero_row_is_everything():
    amb = AmbientSpace(3, 3)
    basis = nullspace(FpMatrix(amb, ((0, 0, 0),)))
    assert len(basis.rows) == 3


def test_nullspace_example_exhaustive():
    amb = AmbientSpace(3, 3)
    M = ((1, 0, 1),)
    basis = nullspace(FpMatrix(amb, M))
    assert len(basis.rows) == 2
    assert span_set(list(basis.rows), 3, 3) == brute_nullspace_set(M, 3, 3)


@pytest.mark.parametrize("p,n", [(2, 4), (3, 3), (5, 3)])
def test_rank_nullity(p, n):
    amb = AmbientSpace(p, n)
    for rows in _random_matrices(p, n, 2, 30, seed=17 * p + n):
        M = FpMatrix(amb, rows)
        _, rank, _ = rref(M)
        assert rank + len(nullspace(M).rows) == n
        assert span_set(list(nullspace(M).rows), p, n) == brute_nullspace_set(rows, p, n)


# -- gaussian binomial --------------------------------------------------


def test_gaussian_binomial_known_values():
    assert gaussian_binomial(3, 1, 3) == 13
    assert gaussian_binomial(4, 2, 2) == 35
    for n, p in [(3, 3), (4, 2), (5, 5)]:
        assert gaussian_binomial(n, 0, p) == 1
        assert gaussian_binomial(n, n, p) == 1


def test_gaussian_binomial_against_brute_count():
    assert gaussian_binomial(3, 1, 3) == brute_gaussian_count(3, 3, 1)
    assert gaussian_binomial(4, 2, 2) == brute_gaussian_count(2, 4, 2)


def test_gaussian_binomial_symmetry():
    for p in (2, 3, 5):
        for n in range(6):
            for k in range(n + 1):
                assert gaussian_binomial(n, k, p) == gaussian_binomial(n, n - k, p)


def test_gaussian_binomial_rejects_bad_args():
    with pytest.raises(ValueError):
        gaussian_binomial(3, 4, 3)
    with pytest.raises(ValueError):
        gaussian_binomial(3, -1, 3)
    with pytest.raises(ValueError):
        gaussian_binomial(3, 1, 4)


# -- primality helper ---------------------------------------------------


def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31}
    for m in range(-2, 32):
        assert is_prime(m) == (m in primes)


# -- vectors normalize --------------------------------------------------


@given(st.lists(st.integers(-20, 20), min_size=3, max_size=3))
@settings(max_examples=50)
def test_vector_coords_reduced(coords):
    v = vec(5, 3, coords)
    assert all(0 <= c < 5 for c in v.coords)
    assert v.coords == tuple(c % 5 for c in coords)
