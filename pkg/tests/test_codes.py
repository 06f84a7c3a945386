import itertools

import numpy as np
import pytest

from lrcmr import codes, mr
from lrcmr.codes import (
    code_from_generator,
    code_from_parity,
    code_from_roots,
    dual,
    erasure_decode,
    is_cyclic,
    is_mds,
    min_distance,
    puncture,
    same_code,
    shorten,
)
from lrcmr.errors import TooLarge, Unrecoverable, ZeroDimensional
from lrcmr.gf import make_field
from lrcmr.matrix import GfMatrix, rank

from conftest import INSTANCE1

F2 = make_field(2, 1)
F16 = make_field(2, 4)


def repetition(f, n):
    return code_from_generator(GfMatrix(f, np.ones((1, n), dtype=np.int64)))


def test_parity_code():
    C = code_from_parity(GfMatrix(F2, np.ones((1, 6), dtype=np.int64)))
    assert (C.n, C.k) == (6, 5)
    assert code_from_parity(GfMatrix.identity(F2, 4)).k == 0


def test_duplicate_rows_same_code():
    H = GfMatrix(F16, [[1, 2, 3, 4], [5, 6, 7, 8]])
    dup = H.vstack(H.take_rows([0]))
    assert same_code(code_from_parity(H), code_from_parity(dup))


def test_roots():
    assert code_from_roots(F16, 15, []).k == 15
    even = code_from_roots(F16, 15, [0])
    assert even.k == 14
    assert even.contains([7, 7] + [0] * 13)
    assert not even.contains([7] + [0] * 14)
    C = code_from_roots(F16, 15, mr.construction1_roots(INSTANCE1))
    assert len(mr.construction1_roots(INSTANCE1)) == 7
    assert C.k == 8 and rank(C.H) == 7


def test_root_membership(c1):
    # c in C iff c(alpha^i) = 0 for every root i
    f = c1.field
    w = (f.q - 1) // c1.n
    for row in c1.G.data:
        for i in mr.construction1_roots(INSTANCE1):
            x = f.alpha_pow(w * i)
            acc = 0
            for j, c in enumerate(row):
                acc = f.add(acc, f.mul(int(c), f.pow(x, j)))
            assert acc == 0


def test_generator_parity_orthogonal(c1, qc):
    for C in (c1, qc):
        assert (C.G @ C.H.T).is_zero()
        assert rank(C.G) == C.k and rank(C.H) == C.n - C.k


def test_dual_twice(c1):
    assert same_code(dual(dual(c1)), c1)
    assert dual(c1).k == c1.n - c1.k


def test_puncture_and_shorten(c1, qc):
    assert same_code(puncture(c1, range(15)), c1)
    rep = repetition(F2, 5)
    p2 = puncture(rep, [1, 3])
    assert (p2.n, p2.k) == (2, 1) and min_distance(p2) == 2
    local = puncture(c1, [0, 5, 10])
    assert (local.n, local.k, min_distance(local)) == (3, 2, 2)
    assert is_mds(local)
    assert same_code(shorten(c1, range(15)), c1)
    zero = shorten(code_from_parity(GfMatrix.identity(F2, 5)), [0, 2])
    assert (zero.n, zero.k) == (2, 0)
    sh = shorten(qc, [0, 3, 6, 9])
    assert sh.n == 4 and sh.H.rank() == 4 - sh.k


def test_min_distance(c1, c1_small):
    assert min_distance(repetition(F16, 7)) == 7
    assert min_distance(c1) == 5
    assert min_distance(c1_small) == 4
    assert min_distance(c1, cap=4) is None
    with pytest.raises(ZeroDimensional):
        min_distance(code_from_parity(GfMatrix.identity(F2, 3)))
    with pytest.raises(TooLarge):
        min_distance(c1, method="enumerate")


def test_distance_oracles_agree(c1_small):
    f = make_field(3, 2)
    rng = np.random.default_rng(7)
    for _ in range(5):
        C = code_from_generator(GfMatrix(f, rng.integers(0, f.q, size=(3, 7))))
        if C.k == 0:
            continue
        assert min_distance(C, method="subsets") == min_distance(C, method="enumerate")
    assert codes.min_distance_subsets(c1_small) == 4


def test_cyclic_predicate(c1, qc):
    assert is_cyclic(repetition(F16, 5))
    assert is_cyclic(c1)
    assert not is_cyclic(qc)


def test_mds():
    assert is_mds(repetition(F16, 6))
    full = code_from_generator(GfMatrix.identity(F16, 4))
    assert is_mds(full)


def test_erasure_decode(c1):
    word = c1.encode([1, 2, 3, 4, 5, 6, 7, 8])
    assert erasure_decode(c1, list(word)).tolist() == word.tolist()
    local = puncture(c1, [0, 5, 10])
    cw = local.encode([3, 9])
    for pos in range(3):
        w = list(cw)
        w[pos] = None
        got = erasure_decode(local, w)
        matches = [tuple(local.encode(m)) for m in itertools.product(range(16), repeat=2)
                   if all(local.encode(m)[i] == cw[i] for i in range(3) if i != pos)]
        assert matches == [tuple(got)]


def test_erasure_decode_mr_pattern(c1, c1_profile):
    word = c1.encode([9, 0, 1, 15, 2, 2, 7, 3])
    pattern = [0, 5, 1, 6, 2]  # two sets hit twice, one once
    assert mr.mr_erasure_correctable(c1, c1_profile, pattern)
    w = [None if i in pattern else int(v) for i, v in enumerate(word)]
    assert erasure_decode(c1, w).tolist() == word.tolist()


def test_unrecoverable(c1):
    w = [None] * 8 + [0] * 7
    with pytest.raises(Unrecoverable):
        erasure_decode(c1, w)
