import numpy as np
import pytest
from hypothesis import given, strategies as st

from qrsmux import galois
from qrsmux.errors import FieldMismatchError, UnsupportedFieldError
from qrsmux.galois import (
    FieldElement, FieldSpec, add, hamming_distance, hamming_weight, is_prime,
    mul, mul_by_alpha_matrix,
)


def gf(m):
    return FieldSpec.binary_extension(m)


# ---------------------------------------------------------------
# Construction and validation
# ---------------------------------------------------------------

def test_prime_field_requires_prime():
    FieldSpec.prime(2)
    FieldSpec.prime(7919)
    for bad in (0, 1, 4, 9, 100):
        with pytest.raises(ValueError):
            FieldSpec.prime(bad)


def test_extension_field_rejects_bad_polynomials():
    with pytest.raises(ValueError, match="reducible"):
        FieldSpec.binary_extension(2, poly=0b101)  # x^2+1 = (x+1)^2
    # x^4+x^3+x^2+x+1 is irreducible but x has order 5, not 15
    with pytest.raises(ValueError, match="not primitive"):
        FieldSpec.binary_extension(4, poly=0b11111)
    with pytest.raises(ValueError, match="degree"):
        FieldSpec.binary_extension(3, poly=0b111)


def test_default_polynomials_all_valid():
    for m in range(1, 9):
        f = gf(m)
        assert f.order == 1 << m


def test_element_range_checked():
    f = FieldSpec.prime(5)
    FieldElement(4, f)
    with pytest.raises(ValueError):
        FieldElement(5, f)
    with pytest.raises(ValueError):
        FieldElement(-1, f)


def test_poly_override():
    # x^3 + x^2 + 1 is also primitive for m=3
    f = FieldSpec.binary_extension(3, overrides={3: 0b1101})
    assert f.poly == 0b1101
    # alpha^3 = alpha^2 + 1 under this modulus
    assert f.alpha_power(3).value == 0b101


# ---------------------------------------------------------------
# add / mul
# ---------------------------------------------------------------

def test_prime_add_examples():
    f5 = FieldSpec.prime(5)
    assert add(FieldElement(3, f5), FieldElement(4, f5)).value == 2
    f7 = FieldSpec.prime(7)
    assert add(FieldElement(0, f7), FieldElement(6, f7)).value == 6
    assert mul(FieldElement(1, f5), FieldElement(4, f5)).value == 4


def test_gf4_vector_representation():
    # {00, 01, 10, 11} = {0, 1, alpha, alpha^2} with x^2+x+1
    f = gf(2)
    alpha = f.alpha_power(1)
    assert alpha.value == 0b10
    assert f.alpha_power(2).value == 0b11
    assert add(alpha, FieldElement(1, f)).value == 0b11        # alpha + 1 = alpha^2
    assert mul(alpha, alpha).value == 0b11                     # alpha^2 = alpha + 1


def test_gf4_alpha_cubed_is_one():
    # exhaustive power table from the primitive polynomial
    f = gf(2)
    powers = [f.alpha_power(i).value for i in range(3)]
    assert sorted(powers) == [1, 2, 3]
    assert mul(f.alpha_power(1), f.alpha_power(2)).value == 1


def test_field_mismatch_raises():
    a = FieldElement(1, FieldSpec.prime(5))
    b = FieldElement(1, FieldSpec.prime(7))
    with pytest.raises(FieldMismatchError):
        add(a, b)
    with pytest.raises(FieldMismatchError):
        mul(a, FieldElement(1, gf(2)))


def test_exponential_representation_round_trips():
    for m in range(1, 9):
        f = gf(m)
        for v in range(1, f.order):
            e = f.exponent_of(FieldElement(v, f))
            assert f.alpha_power(e).value == v
    with pytest.raises(ValueError):
        gf(3).exponent_of(FieldElement(0, gf(3)))


# ---------------------------------------------------------------
# Field axioms
# ---------------------------------------------------------------

def _mul_table(f):
    n = f.order
    table = np.zeros((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            table[a, b] = galois.mul_int(f, a, b)
    return table


def _add_table(f):
    n = f.order
    idx = np.arange(n)
    if f.kind == galois.PRIME:
        return (idx[:, None] + idx[None, :]) % f.d
    return idx[:, None] ^ idx[None, :]


@pytest.mark.parametrize("fieldspec", [FieldSpec.prime(251), gf(8), FieldSpec.prime(13), gf(4)])
def test_field_axioms_exhaustive(fieldspec):
    """Commutativity, identities, inverses, associativity, distributivity
    over every element triple (vectorized; order <= 256)."""
    M = _mul_table(fieldspec)
    A = _add_table(fieldspec)
    n = fieldspec.order
    assert np.array_equal(M, M.T) and np.array_equal(A, A.T)
    assert np.array_equal(M[1], np.arange(n))
    assert np.array_equal(A[0], np.arange(n))
    assert np.all(M[0] == 0)
    # every nonzero element has a multiplicative inverse
    assert all((M[a] == 1).any() for a in range(1, n))
    # associativity over all n^3 triples: T[a,b,c] = op(op(a,b),c) vs op(a,op(b,c))
    assert np.array_equal(M[M], M[:, M])
    assert np.array_equal(A[A], A[:, A])
    # distributivity over all triples: a*(b+c) == a*b + a*c
    assert np.array_equal(M[:, A], A[M[:, :, None], M[:, None, :]])


# ---------------------------------------------------------------
# Multiplication matrices
# ---------------------------------------------------------------

def test_alpha_matrix_identity():
    assert np.array_equal(mul_by_alpha_matrix(gf(2), 0), np.eye(2, dtype=np.uint8))


def test_alpha_matrix_gf4_n1_columns():
    mat = mul_by_alpha_matrix(gf(2), 1)
    # column p is the bit vector of alpha^(1+p): vec(alpha)=10, vec(alpha^2)=11
    assert [mat[0, 0], mat[1, 0]] == [0, 1]
    assert [mat[0, 1], mat[1, 1]] == [1, 1]


def test_alpha_matrix_gf8_n1_columns():
    f = gf(3)
    mat = mul_by_alpha_matrix(f, 1)
    for p in range(3):
        want = f.alpha_power(1 + p).value
        assert sum(int(mat[j, p]) << j for j in range(3)) == want


def test_alpha_matrix_matches_mul_exhaustively():
    """vec(alpha^n * a) == M @ vec(a) for every field m <= 8, every n, every a."""
    for m in range(1, 9):
        f = gf(m)
        vecs = np.array([[(a >> j) & 1 for j in range(m)] for a in range(f.order)], dtype=np.uint8)
        for n in range(max(f.order - 1, 1)):
            mat = mul_by_alpha_matrix(f, n)
            got = (vecs @ mat.T) % 2
            want = np.array(
                [[(galois.mul_int(f, f.alpha_power(n).value, a) >> j) & 1 for j in range(m)]
                 for a in range(f.order)], dtype=np.uint8)
            assert np.array_equal(got, want), (m, n)


def test_alpha_matrix_rejects_prime_field():
    with pytest.raises(UnsupportedFieldError):
        mul_by_alpha_matrix(FieldSpec.prime(5), 1)
    with pytest.raises(ValueError):
        mul_by_alpha_matrix(gf(2), 3)


# ---------------------------------------------------------------
# Hamming helpers
# ---------------------------------------------------------------

def test_hamming_examples():
    assert hamming_distance(5, 0, 3) == 2  # 101 -> 000 flips two bits
    assert hamming_distance(6, 1, 3) == 3  # 110 -> 001 flips all three
    assert hamming_weight(0, 7) == 0


def test_hamming_range_errors():
    with pytest.raises(ValueError):
        hamming_weight(8, 3)
    with pytest.raises(ValueError):
        hamming_distance(1, 4, 2)
    with pytest.raises(ValueError):
        hamming_weight(-1, 3)


@given(st.integers(1, 16).flatmap(
    lambda w: st.tuples(st.just(w), st.integers(0, 2**w - 1), st.integers(0, 2**w - 1))))
def test_hamming_distance_is_weight_of_xor(args):
    w, a, b = args
    assert hamming_distance(a, b, w) == hamming_weight(a ^ b, w)


def test_is_prime_small():
    assert [n for n in range(2, 30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
