"""Linear and cyclic codes: construction, puncturing/shortening, distance,
cyclicity and MDS predicates, erasure decoding."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import kernels
from .errors import (
    EmptySet,
    NoSolution,
    NotACodeword,
    OrderMismatch,
    TooLarge,
    Unrecoverable,
    ZeroDimensional,
)
from .gf import FieldSpec
from .matrix import GfMatrix, null_space, rank, rank_of_columns, row_basis, row_space_equal, solve

# combinations are fed to the rank kernel in slices of this size
SUBSET_CHUNK = 1 << 16


@dataclass(frozen=True, eq=False)
class LinearCode:
    """An ``[n, k]`` code over ``field`` with full-rank ``H`` and ``G``.

    ``roots`` holds the root exponents when the code was built from a root
    set (coordinate ``i`` is then the evaluation point ``omega**i``).
    """

    field: FieldSpec
    H: GfMatrix
    G: GfMatrix
    roots: tuple[int, ...] | None = None
    meta: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.H.cols if self.H.cols else self.G.cols

    @property
    def k(self) -> int:
        return self.G.rows

    def __repr__(self) -> str:
        return f"LinearCode[{self.n},{self.k}] over {self.field!r}"

    def contains(self, word: Sequence[int]) -> bool:
        w = GfMatrix(self.field, np.asarray(word, dtype=np.int64).reshape(-1, 1))
        return (self.H @ w).is_zero() if self.H.rows else True

    def encode(self, message: Sequence[int]) -> np.ndarray:
        m = GfMatrix(self.field, np.asarray(message, dtype=np.int64).reshape(1, -1))
        return (m @ self.G).data[0].copy()


def same_code(a: LinearCode, b: LinearCode) -> bool:
    if a.n != b.n or a.k != b.k:
        return False
    if a.H.rows == 0:
        return True
    return row_space_equal(a.H, b.H)


def _width(n: int, M: GfMatrix) -> GfMatrix:
    return M if M.cols == n else GfMatrix.zeros(M.field, 0, n)


def code_from_parity(H: GfMatrix, roots=None, meta=None) -> LinearCode:
    """The code ``{c : H c^T = 0}``; dependent rows of ``H`` are dropped."""
    n = H.cols
    if H.rows and rank(H) < H.rows:
        H = row_basis(H)
    H = _width(n, H)
    G = _width(n, null_space(H)) if H.rows else GfMatrix.identity(H.field, n)
    return LinearCode(H.field, H, G, None if roots is None else tuple(roots), dict(meta or {}))


def code_from_generator(G: GfMatrix, meta=None) -> LinearCode:
    n = G.cols
    if G.rows and rank(G) < G.rows:
        G = row_basis(G)
    G = _width(n, G)
    H = _width(n, null_space(G)) if G.rows else GfMatrix.identity(G.field, n)
    return LinearCode(G.field, H, G, None, dict(meta or {}))


def dual(C: LinearCode) -> LinearCode:
    return LinearCode(C.field, C.G, C.H)


def root_of_unity(field: FieldSpec, n: int) -> int:
    """``alpha ** ((q-1)/n)``, an element of order exactly ``n``."""
    if n < 1 or (field.q - 1) % n:
        raise OrderMismatch(f"{n} does not divide q-1 = {field.q - 1}")
    return field.alpha_pow((field.q - 1) // n)


def code_from_roots(field: FieldSpec, n: int, roots: Iterable[int]) -> LinearCode:
    """Cyclic code of length ``n`` whose generator polynomial vanishes at
    ``omega**i`` for every ``i`` in ``roots`` (``omega`` of order ``n``)."""
    omega = root_of_unity(field, n)
    exps = sorted({int(i) % n for i in roots})
    data = np.array(
        [[field.pow(omega, (c * i) % n) for c in range(n)] for i in exps], dtype=np.int64
    ).reshape(len(exps), n)
    H = GfMatrix(field, data)
    C = code_from_parity(H, roots=exps)
    assert C.k == n - len(exps), "root rows must be independent"
    assert is_cyclic(C)
    return C


def _coords(S: Iterable[int], n: int) -> list[int]:
    coords = sorted({int(s) for s in S})
    if not coords:
        raise EmptySet("coordinate set is empty")
    if coords[0] < 0 or coords[-1] >= n:
        raise IndexError(f"coordinates must lie in [0, {n})")
    return coords


def puncture(C: LinearCode, S: Iterable[int]) -> LinearCode:
    """Keep only the coordinates in ``S`` (generator side)."""
    coords = _coords(S, C.n)
    return code_from_generator(C.G.columns(coords))


def shorten(C: LinearCode, S: Iterable[int]) -> LinearCode:
    """Code whose parity-check matrix is ``H`` restricted to the columns ``S``.

    This is the parity-side restriction, not textbook shortening (which
    keeps the codewords vanishing outside ``S``); the two differ in general.
    """
    coords = _coords(S, C.n)
    return code_from_parity(C.H.columns(coords))


# -- subset enumeration ------------------------------------------------------


def subset_chunks(pool: Sequence[int], w: int, chunk: int = SUBSET_CHUNK) -> Iterator[np.ndarray]:
    """All ``w``-subsets of ``pool`` in lexicographic order, as int arrays."""
    it = itertools.combinations(pool, w)
    while True:
        block = list(itertools.islice(it, chunk))
        if not block:
            return
        yield np.array(block, dtype=np.int64).reshape(len(block), w)


def first_rank_deficient(M: GfMatrix, pool: Sequence[int], w: int, need: int | None = None):
    """First ``w``-subset of ``pool`` (lexicographic) whose columns in ``M``
    have rank below ``need`` (default ``w``), or ``None``."""
    need = w if need is None else need
    for block in subset_chunks(pool, w):
        ranks = rank_of_columns(M, block)
        bad = np.flatnonzero(ranks < need)
        if bad.size:
            return tuple(int(x) for x in block[bad[0]])
    return None


# -- distance ----------------------------------------------------------------


def min_distance_subsets(C: LinearCode, cap: int | None = None) -> int | None:
    """Smallest ``w`` such that some ``w`` columns of ``H`` are dependent."""
    if C.k == 0:
        raise ZeroDimensional("zero code has no minimum distance")
    cap = C.n - C.k + 1 if cap is None else cap
    for w in range(1, min(cap, C.n) + 1):
        if first_rank_deficient(C.H, range(C.n), w) is not None:
            return w
    return None


def min_distance_enumerate(C: LinearCode) -> int:
    """Minimum weight over all ``q**k`` codewords."""
    if C.k == 0:
        raise ZeroDimensional("zero code has no minimum distance")
    return int(kernels.min_weight(C.G.data, *C.field.kernel_args(), C.field.q))


ENUMERATION_LIMIT = 1 << 20


def min_distance(C: LinearCode, cap: int | None = None, method: str = "auto") -> int | None:
    """Exact minimum distance, or ``None`` if it exceeds ``cap``.

    ``method`` is ``"subsets"``, ``"enumerate"`` or ``"auto"`` (whichever of
    ``sum_w C(n, w)`` and ``q**k`` is smaller).
    """
    if C.k == 0:
        raise ZeroDimensional("zero code has no minimum distance")
    cap = C.n - C.k + 1 if cap is None else cap
    if method == "auto":
        subset_cost = sum(comb(C.n, w) for w in range(1, min(cap, C.n) + 1))
        enum_cost = C.field.q**C.k
        method = "enumerate" if enum_cost <= min(subset_cost, ENUMERATION_LIMIT) else "subsets"
    if method == "enumerate":
        if C.field.q**C.k > ENUMERATION_LIMIT:
            raise TooLarge(f"q^k = {C.field.q}^{C.k} codewords exceeds {ENUMERATION_LIMIT}")
        d = min_distance_enumerate(C)
        return d if d <= cap else None
    if method == "subsets":
        return min_distance_subsets(C, cap)
    raise ValueError(f"unknown method {method!r}")


# -- predicates --------------------------------------------------------------


def cyclic_shift(word) -> np.ndarray:
    """``(c_{n-1}, c_0, ..., c_{n-2})``."""
    return np.roll(np.asarray(word), 1, axis=-1)


def is_cyclic(C: LinearCode) -> bool:
    if C.H.rows == 0 or C.k == 0:
        return True
    shifted = GfMatrix(C.field, cyclic_shift(C.G.data))
    return (C.H @ shifted.T).is_zero()


def mds_witness(C: LinearCode):
    """First column subset showing ``C`` is not MDS, else ``None``."""
    n, k = C.n, C.k
    if k == 0 or k == n:
        return None
    if k <= n - k:
        return first_rank_deficient(C.G, range(n), k)
    return first_rank_deficient(C.H, range(n), n - k)


def is_mds(C: LinearCode) -> bool:
    return mds_witness(C) is None


# -- erasure decoding --------------------------------------------------------


def split_word(word: Sequence) -> tuple[np.ndarray, list[int]]:
    """Separate a word with ``None`` erasure marks into values and positions."""
    vals = np.zeros(len(word), dtype=np.int64)
    erased = []
    for i, v in enumerate(word):
        if v is None:
            erased.append(i)
        else:
            vals[i] = int(v)
    return vals, erased


def erasure_decode(C: LinearCode, word: Sequence) -> np.ndarray:
    """Fill the ``None`` positions of ``word`` with the unique codeword values."""
    if len(word) != C.n:
        raise ValueError(f"word length {len(word)} != n = {C.n}")
    f = C.field
    vals, erased = split_word(word)
    if C.H.rows == 0:
        if erased:
            raise Unrecoverable("code has no parity checks", tuple(erased))
        return vals
    known = [i for i in range(C.n) if i not in set(erased)]
    syn = C.H.columns(known) @ GfMatrix(f, vals[known].reshape(-1, 1)) if known else GfMatrix.zeros(f, C.H.rows, 1)
    rhs = [f.neg(int(v)) for v in syn.data[:, 0]]
    if erased:
        HE = C.H.columns(erased)
        if rank(HE) < len(erased):
            raise Unrecoverable("erased columns of H are dependent", tuple(erased))
        try:
            x = solve(HE, rhs)
        except NoSolution:
            raise NotACodeword("unerased symbols are inconsistent with the code") from None
        vals[erased] = x
    elif any(rhs):
        raise NotACodeword("word fails the parity checks")
    assert C.contains(vals)
    return vals
