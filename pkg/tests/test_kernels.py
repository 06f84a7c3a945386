import numpy as np
import pytest

from lrcmr import kernels
from lrcmr.gf import make_field

needs_numba = pytest.mark.skipif(not kernels.HAS_NUMBA, reason="numba not installed")

FIELDS = [(2, 1), (2, 4), (3, 1), (3, 2), (5, 2), (7, 1)]


def _rand(f, rng, shape):
    return rng.integers(0, f.q, size=shape).astype(np.int64)


@needs_numba
@pytest.mark.parametrize("p,e", FIELDS)
def test_rank_batch_backends_agree(p, e):
    f = make_field(p, e)
    rng = np.random.default_rng(p * 10 + e)
    M = _rand(f, rng, (5, 12))
    M[3] = M[1]  # force some rank deficiency
    subs = np.array([rng.choice(12, size=5, replace=False) for _ in range(300)], dtype=np.int64)
    args = f.kernel_args()
    a = kernels.rank_batch_numba(M, subs, *args)
    b = kernels.rank_batch_numpy(M, subs, *args)
    assert a.tolist() == b.tolist()
    assert a.max() <= 4


@needs_numba
@pytest.mark.parametrize("p,e", FIELDS)
def test_matmul_backends_agree(p, e):
    f = make_field(p, e)
    rng = np.random.default_rng(7 + p + e)
    A, B = _rand(f, rng, (9, 13)), _rand(f, rng, (13, 6))
    args = f.kernel_args()
    assert np.array_equal(kernels.matmul_numba(A, B, *args), kernels.matmul_numpy(A, B, *args))


@needs_numba
@pytest.mark.parametrize("p,e", [(2, 2), (3, 1), (3, 2), (5, 1)])
def test_min_weight_backends_agree(p, e):
    f = make_field(p, e)
    rng = np.random.default_rng(p + 3 * e)
    for _ in range(4):
        G = _rand(f, rng, (3, 7))
        args = f.kernel_args()
        assert kernels.min_weight_numba(G, *args, f.q) == kernels.min_weight_numpy(G, *args, f.q)


def test_matmul_against_scalar_loop():
    f = make_field(3, 2)
    rng = np.random.default_rng(0)
    A, B = _rand(f, rng, (4, 5)), _rand(f, rng, (5, 3))
    got = kernels.matmul_numpy(A, B, *f.kernel_args())
    for i in range(4):
        for j in range(3):
            acc = f.zero
            for t in range(5):
                acc = acc + f.element(int(A[i, t])) * f.element(int(B[t, j]))
            assert int(got[i, j]) == int(acc)


def test_zech_table():
    f = make_field(3, 2)
    exp_t, log_t, zech = f.kernel_args()[2:5]
    for d in range(f.q - 1):
        s = f.add(1, int(exp_t[d]))
        assert zech[d] == (-1 if s == 0 else log_t[s])


def test_backend_flag():
    assert kernels.BACKEND in ("numba", "numpy")
    assert kernels.USE_NUMBA == (kernels.BACKEND == "numba")
