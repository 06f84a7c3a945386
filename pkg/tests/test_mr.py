import itertools

import numpy as np
import pytest

from lrcmr import mr
from lrcmr.codes import code_from_parity, is_cyclic, min_distance, puncture
from lrcmr.errors import BadIndex, ModeUnsupported, ParamViolation, TooLarge, UnverifiedProfile
from lrcmr.locality import LocalityProfile, coset_partition, make_profile
from lrcmr.matrix import GfMatrix, rank, row_space_equal, vandermonde
from lrcmr.mr import MrParams

from conftest import INSTANCE1, INSTANCE2


def test_params():
    P = INSTANCE1
    assert (P.n, P.a, P.m, P.k) == (15, 3, 5, 8)
    big = MrParams(3, 4, 6, 3)
    assert (big.n, big.a, big.m, big.k) == (80, 8, 10, 58)
    assert big.subfield_degree == 2
    with pytest.raises(ParamViolation):
        MrParams(6, 1, 2, 2)
    with pytest.raises(ParamViolation):
        MrParams(4, 2, 3, 2)  # a = 4 does not divide 15
    with pytest.raises(ParamViolation):
        MrParams(5, 1, 2, 2)  # m r - 2 = 0


def test_construction1_instances(c1, c1_small):
    assert mr.construction1_roots(INSTANCE1) == sorted({4, 7, 10, 13, 1, 0, 2})
    assert (c1.n, c1.k, c1.field.q) == (15, 8, 16)
    assert (c1_small.n, c1_small.k, c1_small.field.q) == (12, 7, 13)
    assert is_cyclic(c1) and is_cyclic(c1_small)


def test_construction1_needs_coprime_delta():
    with pytest.raises(ParamViolation):
        mr.build_construction1(MrParams(7, 1, 2, 2))  # m = 2, delta = 2


def test_explicit_parity(c1, c1_small):
    for P, C in ((INSTANCE1, c1), (INSTANCE2, c1_small)):
        H = mr.construction1_parity(P)
        assert H.rows == P.m * (P.delta - 1) + 2
        assert row_space_equal(H, C.H)


def test_parity_restricted_to_coset_is_vandermonde():
    P = INSTANCE1
    H = mr.construction1_parity(P)
    f = P.field
    for i in range(P.m):
        cols = H.columns(list(coset_partition(P.n, P.a)[i]))
        nz = [row for row in cols.data if row.any()]
        assert len(nz) == P.delta + 1
        assert rank(GfMatrix(f, np.array(nz))) == P.delta + 1


def test_construction2(qc):
    assert (qc.n, qc.k) == (12, 7)
    assert min_distance(qc) == 4
    assert not is_cyclic(qc)
    C = mr.build_construction2(INSTANCE1)
    assert (C.k, min_distance(C)) == (8, 5)
    v = mr.verify_mr(C, mr.coset_profile(C, INSTANCE1), 2, "both")
    assert v.mr
    with pytest.raises(ParamViolation):
        mr.build_construction2(MrParams(13, 1, 3, 2, s=3))


def test_construction2_local_block():
    P = INSTANCE2
    H = mr.construction2_parity(P)
    beta = P.field.gen ** P.m
    V = vandermonde([beta**x for x in range(P.a)], P.delta - 1, start_power=1)
    assert np.array_equal(H.data[: P.delta - 1, list(range(0, P.n, P.m))], V.data)


def test_constructions_share_parameters():
    for P in (INSTANCE1, INSTANCE2, MrParams(11, 1, 3, 3)):
        a, b = mr.build_construction1(P), mr.build_construction2(P)
        assert (a.n, a.k, min_distance(a)) == (b.n, b.k, min_distance(b))
        assert not row_space_equal(a.H, b.H)


def test_lambda_readings():
    # order-n lambda: MR everywhere we looked, but no slab rotation cyclifies it;
    # order-m lambda: cyclifiable, but not MR on e.g. (48,3,2,4,49)
    P = MrParams(7, 2, 3, 4)
    lit = mr.build_construction2(P, literal_lambda=True)
    ordm = mr.build_construction2(P)
    assert mr.verify_mr(lit, mr.coset_profile(lit, P), 2, "fastpath").mr
    assert not mr.verify_mr(ordm, mr.coset_profile(ordm, P), 2, "fastpath").mr


def test_certificates():
    s1 = mr.all_full_rank_certs(INSTANCE1)
    s2 = mr.all_full_rank_certs(INSTANCE2)
    assert (s1.total, s1.ok) == (180, True)
    assert (s2.total, s2.ok) == (216, True)
    with pytest.raises(BadIndex):
        mr.full_rank_cert(INSTANCE1, (0, 1), (0, 1), 2, 2)


def test_verify_definition(c1, c1_profile):
    v = mr.verify_mr(c1, c1_profile, 2, "definition")
    assert v.mr and v.checked == 243 and v.witness is None
    for choice in itertools.islice(itertools.product(*[itertools.combinations(S, 1) for S in c1_profile.partition]), 5):
        kept = [i for i in range(15) if (i,) not in choice]
        P = puncture(c1, kept)
        assert (P.n, P.k, min_distance(P)) == (10, 8, 3)


def test_modes_agree(c1, c1_profile):
    v = mr.verify_mr(c1, c1_profile, 2, "both")
    assert v.mr and v.fastpath_validated
    assert mr.verify_mr(c1, c1_profile, 2, "fastpath").checked == mr.fastpath_count(c1_profile) == 95
    assert len(mr.fastpath_patterns(c1_profile)) == 95


def _broken(c1):
    rng = np.random.default_rng(3)
    H = mr.construction1_parity(INSTANCE1).data[:-1]  # drop the gamma row
    row = rng.integers(0, 16, size=(1, 15))
    return code_from_parity(GfMatrix(c1.field, np.vstack([H, row])))


def test_not_mr_witness(c1):
    C = _broken(c1)
    assert C.k == 8
    prof = make_profile(C, coset_partition(15, 3), 2, 2)
    assert prof.verified
    for mode in ("definition", "fastpath", "both"):
        v = mr.verify_mr(C, prof, 2, mode)
        assert not v.mr and v.witness
        assert not mr.mr_erasure_correctable(C, prof, v.witness)


def test_erasure_correctable(c1, c1_profile):
    one_each = [S[0] for S in c1_profile.partition]
    assert mr.mr_erasure_correctable(c1, c1_profile, one_each)
    assert mr.mr_erasure_correctable(c1, c1_profile, [])
    assert not mr.mr_erasure_correctable(c1, c1_profile, list(c1_profile.partition[0]) + [1, 6])


def test_guards(c1, c1_profile):
    with pytest.raises(ModeUnsupported):
        mr.verify_mr(c1, c1_profile, 3, "fastpath")
    with pytest.raises(UnverifiedProfile):
        mr.verify_mr(c1, LocalityProfile(2, 2, c1_profile.partition, False))
    with pytest.raises(ParamViolation):
        mr.verify_mr(c1, c1_profile, 3, "definition")
    big = MrParams(3, 4, 6, 3)
    C = mr.build_construction1(big)
    prof = mr.coset_profile(C, big)
    with pytest.raises(TooLarge):
        mr.verify_mr(C, prof, 2, "definition")


def test_sampling(c1, c1_profile):
    pats, width = mr.sample_fastpath_patterns(c1_profile, 200, seed=1)
    assert set(width.tolist()) <= {3, 4}
    family = set(mr.fastpath_patterns(c1_profile))
    for p, w in zip(pats, width):
        assert tuple(int(x) for x in p[:w]) in family
    v = mr.check_sampled_patterns(c1, c1_profile, 200, seed=1)
    assert v.mr and v.mode == "sampled"
