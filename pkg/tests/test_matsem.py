import random

import pytest
from hypothesis import given, settings, strategies as st

from diomorph import matsem
from diomorph.errors import DimensionMismatch

N = matsem.from_dense([[1, 1], [0, 1]])


# ---------------------------------------------------------------- dense oracle

def dense(m):
    return [[m.entry(i, j) for j in range(m.dimension)] for i in range(m.dimension)]


def dense_mul(a, b):
    k = len(a)
    return [[sum(a[i][x] * b[x][j] for x in range(k)) for j in range(k)] for i in range(k)]


def dense_kron(a, b):
    ka, kb = len(a), len(b)
    out = [[0] * (ka * kb) for _ in range(ka * kb)]
    for i in range(ka):
        for j in range(ka):
            for x in range(kb):
                for y in range(kb):
                    out[i * kb + x][j * kb + y] = a[i][j] * b[x][y]
    return out


small = st.integers(0, 6)
dense3 = st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3)


# ---------------------------------------------------------------- construction

def test_normal_form_drops_zeros():
    m = matsem.matrix(2, {(0, 0): 1, (0, 1): 0})
    assert m.entries == ((0, 0, 1),)
    assert m.entry(0, 1) == 0


def test_negative_entry_rejected():
    with pytest.raises(ValueError):
        matsem.matrix(2, {(0, 0): -1})


def test_identity_and_zero():
    i3 = matsem.identity(3)
    assert dense(i3) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert matsem.zeros(3).is_zero
    assert not i3.is_zero


def test_row_and_col_access():
    m = matsem.from_dense([[0, 2], [3, 0]])
    assert m.row_of(0) == {1: 2}
    assert m.col_of(0) == {1: 3}


# ---------------------------------------------------------------- mul / pow

def test_mul_identity_neutral():
    m = matsem.from_dense([[1, 2], [0, 5]])
    assert matsem.mat_mul(m, matsem.identity(2)) == m
    assert matsem.mat_mul(matsem.identity(2), m) == m


def test_mul_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        matsem.mat_mul(matsem.identity(2), matsem.identity(3))


@given(dense3, dense3)
@settings(max_examples=120)
def test_mul_matches_dense_oracle(a, b):
    got = matsem.mat_mul(matsem.from_dense(a), matsem.from_dense(b))
    assert dense(got) == dense_mul(a, b)


def test_unipotent_power_closed_form():
    # [[1,1],[0,1]]^n = [[1,n],[0,1]], including an astronomically large n
    for n in [0, 1, 2, 7, 40]:
        assert dense(matsem.mat_pow(N, n)) == [[1, n], [0, 1]]
    big = 10**30
    assert matsem.mat_pow(N, big).entry(0, 1) == big


@given(dense3, st.integers(0, 6))
@settings(max_examples=60)
def test_pow_is_repeated_mul(a, n):
    m = matsem.from_dense(a)
    expected = matsem.identity(3)
    for _ in range(n):
        expected = matsem.mat_mul(expected, m)
    assert matsem.mat_pow(m, n) == expected


def test_negative_power_rejected():
    with pytest.raises(ValueError):
        matsem.mat_pow(N, -1)


# ---------------------------------------------------------------- kron / transpose / vectors

def test_kron_matches_dense_oracle():
    rng = random.Random(3)
    for _ in range(20):
        a = [[rng.randint(0, 4) for _ in range(2)] for _ in range(2)]
        b = [[rng.randint(0, 4) for _ in range(3)] for _ in range(3)]
        got = matsem.kron(matsem.from_dense(a), matsem.from_dense(b))
        assert dense(got) == dense_kron(a, b)


def test_kron_of_unipotent_cubed():
    nn = matsem.kron(N, N)
    assert matsem.mat_pow(nn, 3).entry(0, 3) == 9


def test_transpose_involution():
    m = matsem.from_dense([[0, 2, 1], [0, 0, 3], [0, 0, 0]])
    assert matsem.transpose(matsem.transpose(m)) == m
    assert matsem.transpose(m).entry(1, 0) == 2


@given(dense3, st.dictionaries(st.integers(0, 2), st.integers(1, 5), max_size=3))
@settings(max_examples=80)
def test_vec_mat_matches_dense(a, vec):
    m = matsem.from_dense(a)
    got = matsem.vec_mat(vec, m)
    for j in range(3):
        expected = sum(vec.get(i, 0) * a[i][j] for i in range(3))
        assert got.get(j, 0) == expected


@given(dense3, st.dictionaries(st.integers(0, 2), st.integers(1, 5), max_size=3))
@settings(max_examples=80)
def test_mat_vec_matches_dense(a, vec):
    m = matsem.from_dense(a)
    got = matsem.mat_vec(m, vec)
    for i in range(3):
        expected = sum(a[i][j] * vec.get(j, 0) for j in range(3))
        assert got.get(i, 0) == expected


def test_upper_triangular_predicate():
    assert matsem.is_upper_triangular(N)
    assert matsem.is_upper_triangular(matsem.identity(4))
    assert not matsem.is_upper_triangular(matsem.from_dense([[0, 0], [1, 0]]))


# ---------------------------------------------------------------- equation sides

A = matsem.from_dense([[1, 1, 0], [0, 1, 1], [0, 0, 1]])
B = matsem.from_dense([[0, 1, 0], [0, 0, 1], [0, 0, 0]])


def test_argument_matrix_single_count():
    assert matsem.argument_matrix(A, B, [2]) == matsem.mat_mul(matsem.mat_pow(A, 2), B)


def test_argument_matrix_two_counts():
    expected = matsem.mat_mul(matsem.mat_mul(matsem.mat_mul(A, B), A), B)
    assert matsem.argument_matrix(A, B, [1, 1]) == expected


def test_side_matrices_are_prefixed_products():
    arg = matsem.argument_matrix(A, B, [1, 1])
    assert matsem.p_side_matrix(A, B, 1, 1) == matsem.mat_mul(matsem.mat_pow(B, 2), arg)
    assert matsem.q_side_matrix(A, B, 1, 1) == matsem.mat_mul(matsem.mat_pow(B, 3), arg)


def test_argument_matrix_rejects_bad_counts():
    with pytest.raises(ValueError):
        matsem.argument_matrix(A, B, [])
    with pytest.raises(ValueError):
        matsem.argument_matrix(A, B, [0])


def test_triangularity_closed_under_product():
    assert matsem.is_upper_triangular(matsem.mat_mul(A, B))
    assert matsem.is_upper_triangular(matsem.p_side_matrix(A, B, 2, 3))
