"""Code files: JSON with a fixed key order so identical codes serialize to
identical bytes."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .codes import LinearCode, code_from_parity
from .errors import FieldReconstructionMismatch, ReducibleModulus, SchemaError
from .gf import FieldSpec, make_field
from .matrix import GfMatrix

CODE_KEYS = ("field", "n", "k", "H", "roots", "meta")


def field_digest(f: FieldSpec) -> str:
    """Short hash of the power table ``alpha**0, ..., alpha**(q-2)``."""
    return hashlib.sha256(f.exp_table[: f.q - 1].astype("<i8").tobytes()).hexdigest()[:16]


def code_to_json(C: LinearCode) -> dict:
    meta = dict(C.meta)
    meta["field_digest"] = field_digest(C.field)
    return {
        "field": C.field.to_json(),
        "n": C.n,
        "k": C.k,
        "H": C.H.to_json(),
        "roots": None if C.roots is None else list(C.roots),
        "meta": meta,
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def save_code(C: LinearCode, path) -> None:
    Path(path).write_text(json.dumps(code_to_json(C), separators=(",", ":")) + "\n")


def _field(obj) -> FieldSpec:
    if not isinstance(obj, dict) or any(k not in obj for k in ("p", "e", "modulus", "alpha")):
        raise SchemaError("field needs p, e, modulus, alpha")
    try:
        f = make_field(int(obj["p"]), int(obj["e"]), [int(c) for c in obj["modulus"]])
    except ReducibleModulus as exc:
        raise FieldReconstructionMismatch(f"stored modulus is not usable: {exc}") from None
    if int(obj["alpha"]) != f.alpha:
        raise FieldReconstructionMismatch(f"stored alpha {obj['alpha']} != reconstructed {f.alpha}")
    return f


def code_from_json(obj: dict) -> LinearCode:
    if not isinstance(obj, dict) or any(k not in obj for k in CODE_KEYS):
        raise SchemaError(f"code file needs keys {list(CODE_KEYS)}")
    f = _field(obj["field"])
    meta = dict(obj["meta"] or {})
    digest = meta.pop("field_digest", None)
    if digest is not None and digest != field_digest(f):
        raise FieldReconstructionMismatch("field tables differ from the ones the file was written with")
    try:
        H = GfMatrix.from_json(f, obj["H"])
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad H matrix: {exc}") from None
    n = int(obj["n"])
    if H.cols != n:
        raise SchemaError(f"H has {H.cols} columns but n = {n}")
    C = code_from_parity(H, roots=obj["roots"], meta=meta)
    if C.k != int(obj["k"]):
        # a tampered H may change the dimension; keep loading, record it
        C.meta["k_declared"] = int(obj["k"])
    return C


def load_code(path) -> LinearCode:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not JSON: {exc}") from None
    return code_from_json(obj)


def codes_equal(a: LinearCode, b: LinearCode) -> bool:
    """Same field and identical parity-check entries."""
    return a.field == b.field and a.H == b.H


def save_perm(perm, path) -> None:
    Path(path).write_text(dumps(perm.to_json()))


def load_perm(path):
    from .equiv import PermSpec

    try:
        return PermSpec.from_json(json.loads(Path(path).read_text()))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not JSON: {exc}") from None


def word_to_json(word) -> list:
    return [None if v is None else int(v) for v in word]


def parse_word(text: str) -> list:
    """Comma-separated symbols; ``?`` or ``_`` marks an erasure."""
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        out.append(None if tok in ("?", "_", "") else int(tok))
    return out
