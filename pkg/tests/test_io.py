import json

import pytest

from lrcmr import io, mr
from lrcmr.codes import is_cyclic
from lrcmr.equiv import cyclifying_perm
from lrcmr.errors import FieldReconstructionMismatch, SchemaError
from lrcmr.locality import coset_partition, make_profile

from conftest import INSTANCE1, INSTANCE2


def test_roundtrip(tmp_path, c1, qc):
    for C in (c1, qc):
        path = tmp_path / "c.json"
        io.save_code(C, path)
        D = io.load_code(path)
        assert io.codes_equal(C, D)
        assert D.k == C.k and D.meta["params"] == C.meta["params"]


def test_key_order(c1):
    assert tuple(io.code_to_json(c1)) == io.CODE_KEYS


def test_tampered_entry_fails_verification(tmp_path, c1):
    obj = io.code_to_json(c1)
    obj["H"]["data"][0] ^= 1
    D = io.code_from_json(obj)
    prof = make_profile(D, coset_partition(15, 3), 2, 2)
    assert not io.codes_equal(c1, D)
    assert not is_cyclic(D)
    v = mr.verify_mr(D, prof, 2, "fastpath")
    assert not (prof.verified and v.mr)


def test_wrong_modulus(c1):
    obj = io.code_to_json(c1)
    obj["field"]["modulus"] = [1, 1, 0, 0, 1]  # a different primitive quartic
    with pytest.raises(FieldReconstructionMismatch):
        io.code_from_json(obj)
    obj["field"]["modulus"] = [1, 0, 1, 0, 1]  # reducible
    with pytest.raises(FieldReconstructionMismatch):
        io.code_from_json(obj)


def test_schema_errors(tmp_path):
    with pytest.raises(SchemaError):
        io.code_from_json({"n": 3})
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(SchemaError):
        io.load_code(bad)


def test_perm_roundtrip(tmp_path):
    perm = cyclifying_perm(INSTANCE2)
    io.save_perm(perm, tmp_path / "p.json")
    assert io.load_perm(tmp_path / "p.json") == perm


def test_words():
    assert io.parse_word("1, ?,3,_") == [1, None, 3, None]
    assert io.word_to_json([1, None]) == [1, None]


def test_dumps_is_stable(c1):
    a = io.dumps(io.code_to_json(c1))
    b = io.dumps(io.code_to_json(mr.build_construction1(INSTANCE1)))
    assert a == b and json.loads(a)["n"] == 15
