import numpy as np
import pytest

from parflow.bench.matmul import (
    combine,
    gentleman_direct,
    gentleman_matmul,
    mat_add,
    mat_mul,
    pr_mm_tr,
    random_matrix,
    skew,
    split_matrix,
    torus_size,
)
from parflow.errors import DimensionError
from parflow.skeletons import transpose


def np_product(a, b):
    return (np.array(a, dtype=object) @ np.array(b, dtype=object)).tolist()


def test_oracle_against_numpy():
    a, b = random_matrix(12, 1, -50, 50), random_matrix(12, 2, -50, 50)
    assert mat_mul(a, b) == np_product(a, b)


def test_split_matrix_4x4():
    m = [[4 * r + c for c in range(4)] for r in range(4)]
    grid = split_matrix(2, m)
    assert grid == [
        [[[0, 1], [4, 5]], [[2, 3], [6, 7]]],
        [[[8, 9], [12, 13]], [[10, 11], [14, 15]]],
    ]
    assert combine(grid) == m


def test_block_helpers():
    a, b = random_matrix(5, 3), random_matrix(5, 4)
    assert pr_mm_tr(a, transpose(b)) == mat_mul(a, b)
    assert mat_add(a, b) == [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def test_skew_alignment():
    g = [[(r, c) for c in range(3)] for r in range(3)]
    sa, sb = skew(g, g)
    assert sa[1][2] == (1, 0) and sb[1][2] == (0, 2)


def test_identity_product(backend):
    a = random_matrix(8, 5)
    eye = [[int(i == j) for j in range(8)] for i in range(8)]
    assert gentleman_matmul(a, eye, 4, backend) == a


@pytest.mark.parametrize("n,cores", [(16, 4), (18, 9), (7, 1), (12, 10)])
def test_random_products(backend, n, cores):
    a, b = random_matrix(n, 10 + n), random_matrix(n, 20 + n)
    assert gentleman_matmul(a, b, cores, backend) == np_product(a, b)


def test_unaligned_variant_is_wrong(seq):
    a, b = random_matrix(8, 1), random_matrix(8, 2)
    assert gentleman_matmul(a, b, 4, seq, align=False) != mat_mul(a, b)
    # on a 1x1 torus there is nothing to align
    assert gentleman_matmul(a, b, 1, seq, align=False) == mat_mul(a, b)


def test_direct_baseline():
    a, b = random_matrix(12, 1), random_matrix(12, 2)
    assert gentleman_direct(a, b, 9) == mat_mul(a, b)


def test_dimension_errors(seq):
    a = random_matrix(6, 0)
    with pytest.raises(DimensionError):
        gentleman_matmul(a, random_matrix(4, 0), 4, seq)
    with pytest.raises(DimensionError):
        gentleman_matmul(a, a, 16, seq)  # torus size 4 does not divide 6
    with pytest.raises(DimensionError):
        gentleman_matmul([[1, 2]], [[1, 2]], 1, seq)
    with pytest.raises(DimensionError):
        gentleman_matmul(a, a, 0, seq)


def test_torus_size():
    assert [torus_size(k) for k in (1, 3, 4, 8, 9, 16, 17)] == [1, 1, 2, 2, 3, 4, 4]
