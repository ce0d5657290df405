import itertools
import math
import random

import pytest
from hypothesis import given, strategies as st

from conftest import P31, rand_mat
from gmmds.errors import IndexOutOfRange, NonSquare, RankDeficient
from gmmds.exactla import (
    Mat,
    block_intersection_matrix,
    det,
    direct_intersection_dimension,
    dual_matrix,
    intersection_dimension,
    kernel_basis,
    rank,
    rref,
)
from gmmds.gf import GF


def span_set(F, vecs, k):
    """Every vector of span(vecs), by enumeration."""
    out = set()
    for coeffs in itertools.product(range(F.q), repeat=len(vecs)):
        v = [0] * k
        for c, w in zip(coeffs, vecs):
            v = [F.add(x, F.mul(c, y)) for x, y in zip(v, w)]
        out.add(tuple(v))
    return out


def brute_intersection_dim(V, A, U=None, sigma=None):
    F, k = V.field, V.rows
    sigma = sigma or [0] * len(A)
    acc = None
    for s, S in zip(sigma, A):
        vecs = (U.columns()[:s] if U else []) + [V.col(j) for j in S]
        sp = span_set(F, vecs, k)
        acc = sp if acc is None else acc & sp
    return round(math.log(len(acc), F.q))


def test_rref_examples():
    F = GF(5)
    R, r, piv = rref(Mat.identity(F, 3))
    assert (R.data, r, piv) == (Mat.identity(F, 3).data, 3, [0, 1, 2])
    R, r, piv = rref(Mat.zeros(F, 2, 2))
    assert (r, piv) == (0, [])
    assert rank(Mat(GF(2), [[1, 1], [1, 1]])) == 1


def test_det_examples():
    F = GF(P31)
    a, b = 12345, 678910
    assert det(Mat(F, [[1, 1], [a, b]])) == F.sub(b, a)
    assert det(Mat.identity(F, 4)) == 1
    assert det(Mat(GF(2), [[1, 1], [1, 1]])) == 0
    with pytest.raises(NonSquare):
        det(Mat(F, [[1, 2, 3]]))


def test_kernel_examples():
    F = GF(2)
    K = kernel_basis(Mat(F, [[1, 1, 1]]))
    assert K.cols == 2
    assert span_set(F, K.columns(), 3) == span_set(F, [(1, 1, 0), (0, 1, 1)], 3)
    assert kernel_basis(Mat.identity(GF(5), 3)).cols == 0
    assert kernel_basis(Mat.zeros(GF(5), 1, 2)).cols == 2


def test_dual_examples():
    F = GF(2)
    Q = dual_matrix(Mat(F, [[1, 1, 1]]))
    assert Q.rows == 2
    assert span_set(F, Q.data, 3) == span_set(F, [(1, 1, 0), (0, 1, 1)], 3)
    assert dual_matrix(Mat.identity(F, 3)).shape == (0, 3)
    F5 = GF(5)
    V = Mat(F5, [[1, 1, 1, 1], [0, 1, 2, 3]])
    Q = dual_matrix(V)
    assert rank(Q) == 2 and (V @ Q.T).is_zero()
    with pytest.raises(RankDeficient):
        dual_matrix(Mat(F5, [[1, 2], [2, 4]]))


@given(st.integers(1, 4), st.integers(0, 4), st.sampled_from([2, 3, 4, 5, 7, 8]), st.integers(0, 10**6))
def test_rank_transpose_and_dual(k, extra, q, seed):
    from gmmds.gf import field_of_order

    F = field_of_order(q)
    rng = random.Random(seed)
    n = k + extra
    M = rand_mat(F, k, n, rng)
    assert rank(M) == rank(M.T)
    if rank(M) == k:
        Q = dual_matrix(M)
        assert Q.rows == n - k and (M @ Q.T).is_zero()
        if Q.rows:
            back = dual_matrix(Q)
            assert rank(back.vstack(M)) == k


def test_block_layout():
    F = GF(P31)
    V = Mat(F, [[3, 5], [7, 11]])
    assert block_intersection_matrix(V, [[]]).data == Mat.identity(F, 2).data
    B = block_intersection_matrix(V, [[0], [1]])
    assert B.shape == (4, 4)
    assert det(B) != 0
    U = Mat(F, [[1, 0], [0, 1]])
    B = block_intersection_matrix(V, [[0], [1]], U, [1, 0])
    assert B.shape == (4, 2 + 2 + 1)
    # second block row holds only V column 1
    assert [B.data[2][4], B.data[3][4]] == [5, 11]
    with pytest.raises(IndexOutOfRange):
        block_intersection_matrix(V, [[0, 2]])


def test_intersection_examples():
    F = GF(P31)
    r = random.Random(3)
    V = rand_mat(F, 2, 2, r)
    assert intersection_dimension(V, [[0], [1]]) == 0
    assert intersection_dimension(V, [[0], [0]]) == 1


@pytest.mark.parametrize("q", [2, 3, 4])
def test_intersection_vs_enumeration(q):
    from gmmds.gf import field_of_order

    F = field_of_order(q)
    r = random.Random(q)
    for _ in range(40):
        k = r.randint(1, 3)
        n = r.randint(1, 4)
        ell = r.randint(1, 3)
        V = rand_mat(F, k, n, r)
        b = r.randint(0, k)
        U = rand_mat(F, k, b, r)
        A = [r.sample(range(n), r.randint(0, n)) for _ in range(ell)]
        sig = [r.randint(0, b) for _ in range(ell)]
        want = brute_intersection_dim(V, A, U, sig)
        assert intersection_dimension(V, A, U, sig) == want
        assert direct_intersection_dimension(V, A, U, sig) == want


@given(st.integers(0, 10**6))
def test_block_rank_matches_pairwise(seed):
    from gmmds.gf import field_of_order

    r = random.Random(seed)
    F = field_of_order(r.choice([5, 7, 8]))
    k, n, ell = r.randint(1, 4), r.randint(1, 6), r.randint(1, 3)
    V = rand_mat(F, k, n, r)
    A = [r.sample(range(n), r.randint(0, min(n, k))) for _ in range(ell)]
    assert intersection_dimension(V, A) == direct_intersection_dimension(V, A)
