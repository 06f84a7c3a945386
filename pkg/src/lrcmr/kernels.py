"""Hot GF(q) kernels: batched rank, codeword enumeration, matrix product.

Field elements are ints in ``[0, q)`` (base-``p`` packing of the polynomial
coefficients, constant term least significant).  Multiplication goes through
exp/log tables built by :class:`lrcmr.gf.FieldSpec`; addition is XOR for
``p == 2``, ``mod p`` for prime fields and digit-wise otherwise.

Every kernel exists twice: a numba ``@njit`` version and a pure-numpy
version.  The public names (``rank_batch``, ``min_weight``, ``matmul``) are
bound at import time to the numba versions unless ``LRCMR_DISABLE_NUMBA`` is
set to a truthy value or numba cannot be imported.  Both versions stay
importable under their suffixed names so tests and the benchmark can compare
them directly.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLE = os.environ.get("LRCMR_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")

try:
    import numba
    from numba import njit, prange

    HAS_NUMBA = True
    if "NUMBA_THREADING_LAYER" not in os.environ:
        # the bundled TBB is too old on common distros; avoid the warning
        numba.config.THREADING_LAYER = "workqueue"
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAS_NUMBA = False

USE_NUMBA = HAS_NUMBA and not _DISABLE
BACKEND = "numba" if USE_NUMBA else "numpy"

# numpy fallback processes batches in slices of this many matrices
_CHUNK = 8192


# ---------------------------------------------------------------------------
# numpy element-wise field ops (arrays or scalars)


def np_add(a, b, p: int, e: int):
    if p == 2:
        return a ^ b
    if e == 1:
        return (a + b) % p
    out = 0
    pw = 1
    for _ in range(e):
        out = out + (((a // pw) % p + (b // pw) % p) % p) * pw
        pw *= p
    return out


def np_neg(a, p: int, e: int):
    if p == 2:
        return a
    if e == 1:
        return (p - a) % p
    out = 0
    pw = 1
    for _ in range(e):
        out = out + ((p - (a // pw) % p) % p) * pw
        pw *= p
    return out


def np_mul(a, b, exp_t: np.ndarray, log_t: np.ndarray):
    a = np.asarray(a)
    b = np.asarray(b)
    prod = exp_t[log_t[a] + log_t[b]]
    return np.where((a == 0) | (b == 0), 0, prod)


def np_inv(a, exp_t: np.ndarray, log_t: np.ndarray, qm1: int):
    return exp_t[(qm1 - log_t[a]) % qm1]


# ---------------------------------------------------------------------------
# numpy kernels


def rank_batch_numpy(mat, subsets, p, e, exp_t, log_t, zech, qm1):
    """Rank of ``mat[:, s]`` for every row ``s`` of ``subsets``.

    The numpy kernels add digit-wise and ignore ``zech``, so the two backends
    share only the exp/log tables.
    """
    mat = np.asarray(mat, dtype=np.int64)
    subsets = np.asarray(subsets, dtype=np.int64)
    K, w = subsets.shape
    R = mat.shape[0]
    out = np.zeros(K, dtype=np.int64)
    if K == 0 or w == 0 or R == 0:
        return out
    row_ids = np.arange(R)
    for lo in range(0, K, _CHUNK):
        sub = subsets[lo : lo + _CHUNK]
        B = sub.shape[0]
        A = np.transpose(mat[:, sub], (1, 0, 2)).copy()  # (B, R, w)
        prow = np.zeros(B, dtype=np.int64)
        bidx = np.arange(B)
        for c in range(w):
            col = A[:, :, c]
            cand = (col != 0) & (row_ids[None, :] >= prow[:, None])
            has = cand.any(axis=1)
            if not has.any():
                continue
            piv = np.argmax(cand, axis=1)
            hb = bidx[has]
            hp = piv[has]
            hr = prow[has]
            top = A[hb, hr].copy()
            A[hb, hr] = A[hb, hp]
            A[hb, hp] = top
            prow_rows = A[hb, hr]  # (H, w)
            pinv = np_inv(prow_rows[:, c], exp_t, log_t, qm1)
            sub_a = A[hb]  # (H, R, w)
            below = row_ids[None, :] > hr[:, None]
            factor = np_mul(sub_a[:, :, c], pinv[:, None], exp_t, log_t)
            factor = np.where(below, factor, 0)
            delta = np_mul(factor[:, :, None], prow_rows[:, None, :], exp_t, log_t)
            A[hb] = np_add(sub_a, np_neg(delta, p, e), p, e)
            prow[has] += 1
        out[lo : lo + B] = prow
    return out


def min_weight_numpy(G, p, e, exp_t, log_t, zech, qm1, q):
    """Minimum weight over all nonzero codewords spanned by the rows of ``G``."""
    G = np.asarray(G, dtype=np.int64)
    k, n = G.shape
    if k == 0:
        return -1
    elems = np.arange(q, dtype=np.int64)
    # table of every combination of the first k1 rows
    k1 = 1
    while k1 < k and q ** (k1 + 1) <= 1 << 14:
        k1 += 1
    table = np.zeros((1, n), dtype=np.int64)
    for i in range(k1):
        scaled = np_mul(elems[:, None], G[i][None, :], exp_t, log_t)  # (q, n)
        table = np_add(table[None, :, :], scaled[:, None, :], p, e).reshape(-1, n)
    best = n + 1
    # remaining rows: walk every coefficient vector explicitly
    rest = G[k1:]
    kr = rest.shape[0]
    for idx in range(q**kr):
        shift = np.zeros(n, dtype=np.int64)
        t = idx
        for i in range(kr):
            d = t % q
            t //= q
            if d:
                shift = np_add(shift, np_mul(d, rest[i], exp_t, log_t), p, e)
        words = np_add(table, shift[None, :], p, e)
        wts = np.count_nonzero(words, axis=1)
        if idx == 0:
            wts = wts[1:]
        if wts.size:
            best = min(best, int(wts.min()))
    return best


def matmul_numpy(A, B, p, e, exp_t, log_t, zech, qm1):
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if e == 1:
        return (A @ B) % p
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for j in range(A.shape[1]):
        out = np_add(out, np_mul(A[:, j][:, None], B[j][None, :], exp_t, log_t), p, e)
    return out


# ---------------------------------------------------------------------------
# numba kernels
#
# Addition in GF(p^e) for odd p and e > 1 uses Zech logarithms:
# a + b = a * (1 + b/a) = exp[log a + zech[log b - log a]].

if HAS_NUMBA:

    @njit(cache=True, inline="always")
    def _add(a, b, p, e, exp_t, log_t, zech, qm1):
        if p == 2:
            return a ^ b
        if e == 1:
            s = a + b
            return s - p if s >= p else s
        if a == 0:
            return b
        if b == 0:
            return a
        la = log_t[a]
        d = log_t[b] - la
        if d < 0:
            d += qm1
        z = zech[d]
        if z < 0:
            return 0
        return exp_t[la + z]

    @njit(cache=True, inline="always")
    def _neg(a, p, e, exp_t, log_t, qm1):
        if p == 2 or a == 0:
            return a
        if e == 1:
            return p - a
        return exp_t[log_t[a] + qm1 // 2]

    @njit(cache=True, inline="always")
    def _mul(a, b, exp_t, log_t):
        if a == 0 or b == 0:
            return 0
        return exp_t[log_t[a] + log_t[b]]

    @njit(cache=True)
    def _rank_one(A, p, e, exp_t, log_t, zech, qm1):
        R, w = A.shape
        prow = 0
        for c in range(w):
            if prow == R:
                break
            piv = -1
            for i in range(prow, R):
                if A[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != prow:
                for j in range(w):
                    tmp = A[prow, j]
                    A[prow, j] = A[piv, j]
                    A[piv, j] = tmp
            lp = log_t[A[prow, c]]
            for i in range(prow + 1, R):
                if A[i, c] != 0:
                    # f = -A[i, c] / pivot
                    f = _neg(exp_t[log_t[A[i, c]] + qm1 - lp], p, e, exp_t, log_t, qm1)
                    for j in range(c, w):
                        if A[prow, j] != 0:
                            A[i, j] = _add(A[i, j], _mul(f, A[prow, j], exp_t, log_t), p, e, exp_t, log_t, zech, qm1)
            prow += 1
        return prow

    @njit(cache=True, parallel=True)
    def rank_batch_numba(mat, subsets, p, e, exp_t, log_t, zech, qm1):
        K, w = subsets.shape
        R = mat.shape[0]
        out = np.zeros(K, dtype=np.int64)
        nb = (K + 255) // 256
        for blk in prange(nb):
            A = np.empty((R, w), dtype=np.int64)  # one scratch matrix per block
            for k in range(blk * 256, min(K, blk * 256 + 256)):
                for i in range(R):
                    for j in range(w):
                        A[i, j] = mat[i, subsets[k, j]]
                out[k] = _rank_one(A, p, e, exp_t, log_t, zech, qm1)
        return out

    @njit(cache=True)
    def _min_weight_lead(G, L, S, p, e, exp_t, log_t, zech, qm1, q, best):
        # words with leading coefficient 1 on row L, rows below L free;
        # part[i] holds row L plus the contributions of rows i..L-1
        n = G.shape[1]
        part = np.empty((L + 1, n), dtype=np.int64)
        part[L] = G[L]
        for i in range(L - 1, -1, -1):
            part[i] = part[i + 1]
        digits = np.zeros(L + 1, dtype=np.int64)
        while True:
            wt = 0
            for j in range(n):
                if part[0, j] != 0:
                    wt += 1
            if wt < best:
                best = wt
            i = 0
            while i < L and digits[i] == q - 1:
                i += 1
            if i == L:
                return best
            digits[i] += 1
            for j in range(n):
                part[i, j] = _add(part[i + 1, j], S[i, digits[i], j], p, e, exp_t, log_t, zech, qm1)
            for t in range(i - 1, -1, -1):
                digits[t] = 0
                part[t] = part[i]

    @njit(cache=True, parallel=True)
    def min_weight_numba(G, p, e, exp_t, log_t, zech, qm1, q):
        k, n = G.shape
        if k == 0:
            return -1
        # S[i, d] = element_d * G[i], elements taken in packed order 0..q-1
        S = np.zeros((k, q, n), dtype=np.int64)
        for i in range(k):
            for d in range(1, q):
                for j in range(n):
                    S[i, d, j] = _mul(d, G[i, j], exp_t, log_t)
        # split the top-row choice across threads; scalar multiples share
        # a weight, so the leading nonzero coefficient is fixed to 1
        res = np.full(k, n + 1, dtype=np.int64)
        for L in prange(k):
            res[L] = _min_weight_lead(G, L, S, p, e, exp_t, log_t, zech, qm1, q, n + 1)
        return res.min()

    @njit(cache=True, parallel=True)
    def matmul_numba(A, B, p, e, exp_t, log_t, zech, qm1):
        r, s = A.shape
        c = B.shape[1]
        out = np.zeros((r, c), dtype=np.int64)
        for i in prange(r):
            for t in range(s):
                a = A[i, t]
                if a == 0:
                    continue
                la = log_t[a]
                for j in range(c):
                    b = B[t, j]
                    if b != 0:
                        out[i, j] = _add(out[i, j], exp_t[la + log_t[b]], p, e, exp_t, log_t, zech, qm1)
        return out


if USE_NUMBA:
    rank_batch = rank_batch_numba
    min_weight = min_weight_numba
    matmul = matmul_numba
else:
    rank_batch = rank_batch_numpy
    min_weight = min_weight_numpy
    matmul = matmul_numpy


def set_jobs(jobs: int | None) -> None:
    """Cap the numba worker pool; no-op on the numpy path."""
    if not USE_NUMBA or not jobs:
        return
    numba.set_num_threads(max(1, min(int(jobs), numba.config.NUMBA_NUM_THREADS)))
