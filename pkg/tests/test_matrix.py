import itertools

import numpy as np
import pytest

from lrcmr.errors import DuplicatePoint, NoSolution
from lrcmr.gf import make_field
from lrcmr.matrix import GfMatrix, null_space, rank, rref, row_space_equal, solve, vandermonde

F16 = make_field(2, 4)
F13 = make_field(13, 1)


def test_rank_basics():
    assert rank(GfMatrix.zeros(F16, 3, 4)) == 0
    assert rank(GfMatrix.identity(F16, 5)) == 5


def test_vandermonde_rank():
    pts = [F16.gen**i for i in range(5)]
    V = vandermonde(pts, 3)
    assert V.shape == (3, 5) and rank(V) == 3
    tall = vandermonde(pts[:3], 4)
    assert rank(tall) == 3


def test_vandermonde_shapes():
    pts = [F16.gen**i for i in range(4)]
    assert vandermonde(pts, 1).data.tolist() == [[1, 1, 1, 1]]
    with pytest.raises(DuplicatePoint):
        vandermonde([F16.one, F16.one], 2)


def test_local_block_vandermonde():
    # points 1, beta, ..., beta^(a-1) with beta of order a = 3 in GF(16)
    beta = F16.gen**5
    V = vandermonde([beta**x for x in range(3)], 1, start_power=1)
    assert V.data.tolist() == [[1, (beta).value, (beta**2).value]]


def test_rref():
    I = GfMatrix.identity(F13, 3)
    E, piv = rref(I)
    assert E == I and piv == [0, 1, 2]
    a = np.array([[1], [3], [5]])
    b = np.array([[2, 0, 7, 1]])
    outer = GfMatrix(F13, (a @ b) % 13)
    E, piv = rref(outer)
    assert len(piv) == 1 and rank(E) == rank(outer) == 1


def test_null_space():
    assert null_space(GfMatrix.identity(F13, 4)).rows == 0
    F2 = make_field(2, 1)
    for n in range(2, 7):
        ones = GfMatrix(F2, np.ones((1, n), dtype=np.int64))
        N = null_space(ones)
        assert N.rows == n - 1
        span = {tuple(np.array(c) @ N.data % 2) for c in itertools.product(range(2), repeat=n - 1)}
        assert span == {w for w in itertools.product(range(2), repeat=n) if sum(w) % 2 == 0}
        assert (ones @ N.T).is_zero()


def test_solve():
    A = GfMatrix.identity(F13, 3)
    assert solve(A, [4, 5, 6]).tolist() == [4, 5, 6]
    B = GfMatrix(F13, [[1, 2, 3], [0, 1, 4]])
    assert solve(B, [0, 0]).tolist() == [0, 0, 0]
    x = solve(B, [7, 3])
    assert (B.data @ x % 13).tolist() == [7, 3]
    C = GfMatrix(F13, [[1, 2], [2, 4]])
    with pytest.raises(NoSolution):
        solve(C, [1, 0])


def test_row_space_equal():
    A = GfMatrix(F16, [[1, 2, 3], [4, 5, 6]])
    assert row_space_equal(A, A.take_rows([1, 0]))
    lam = F16.gen**7
    scaled = GfMatrix(F16, [[F16.mul(lam.value, v) for v in A.data[0]], list(A.data[1])])
    assert row_space_equal(A, scaled)
    F2 = make_field(2, 1)
    assert not row_space_equal(GfMatrix(F2, [[1, 0]]), GfMatrix(F2, [[0, 1]]))


def test_matmul_matches_scalar_loop():
    rng = np.random.default_rng(1)
    F = make_field(3, 2)
    A = rng.integers(0, F.q, size=(4, 5))
    B = rng.integers(0, F.q, size=(5, 3))
    got = (GfMatrix(F, A) @ GfMatrix(F, B)).data
    for i, j in itertools.product(range(4), range(3)):
        acc = 0
        for t in range(5):
            acc = F.add(acc, F.mul(int(A[i, t]), int(B[t, j])))
        assert got[i, j] == acc


def test_entries_validated():
    with pytest.raises(ValueError):
        GfMatrix(F13, [[13]])
