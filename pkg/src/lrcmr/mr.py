"""Cyclic MR codes (root-set construction and its explicit parity matrix),
the quasi-cyclic MR code they are compared against, and MR verification."""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from math import comb, gcd
from typing import Iterable, Sequence

import numpy as np

from .bounds import is_prime_power
from .codes import LinearCode, code_from_parity, code_from_roots, mds_witness, puncture
from .errors import BadIndex, ModeUnsupported, ParamViolation, TooLarge, UnverifiedProfile
from .gf import FieldSpec, make_field
from .locality import LocalityProfile, coset_partition, make_profile
from .matrix import GfMatrix, rank_of_columns

DEFINITION_LIMIT = 10**6


@dataclass(frozen=True)
class MrParams:
    """``(n, r, h=2, delta, q**b)`` with ``n = q**b - 1``, ``a = r + delta - 1``.

    ``a`` must divide ``q**b' - 1`` for some ``b' | b``, which puts the
    order-``a`` element ``beta = alpha**m`` in a subfield.
    """

    q: int
    b: int
    r: int
    delta: int
    s: int = 1

    def __post_init__(self):
        pp = is_prime_power(self.q) if self.q >= 2 else None
        if pp is None or pp.base is None:
            raise ParamViolation(f"q = {self.q} is not a prime power")
        if self.b < 1 or self.r < 1 or self.delta < 2:
            raise ParamViolation("need b >= 1, r >= 1, delta >= 2")
        if self.n % self.a:
            raise ParamViolation(f"a = {self.a} does not divide n = {self.n}")
        if self.subfield_degree is None:
            raise ParamViolation(f"a = {self.a} divides no q^b' - 1 with b' | b")
        if self.k < 1:
            raise ParamViolation(f"k = m*r - 2 = {self.k} leaves no information symbols")

    @property
    def n(self) -> int:
        return self.q**self.b - 1

    @property
    def a(self) -> int:
        return self.r + self.delta - 1

    @property
    def m(self) -> int:
        return self.n // self.a

    @property
    def h(self) -> int:
        return 2

    @property
    def k(self) -> int:
        return self.m * self.r - self.h

    @property
    def subfield_degree(self) -> int | None:
        """Least ``b' | b`` with ``a | q**b' - 1``."""
        for bp in range(1, self.b + 1):
            if self.b % bp == 0 and (self.q**bp - 1) % self.a == 0:
                return bp
        return None

    @property
    def field(self) -> FieldSpec:
        pp = is_prime_power(self.q)
        return make_field(pp.base, pp.exponent * self.b)

    def label(self) -> str:
        return f"({self.n},{self.r},{self.h},{self.delta},{self.q**self.b})"

    def to_json(self) -> dict:
        return {"q": self.q, "b": self.b, "r": self.r, "delta": self.delta, "s": self.s,
                "n": self.n, "a": self.a, "m": self.m, "h": self.h, "k": self.k}


def _check_c1(P: MrParams) -> None:
    if gcd(P.delta, P.m) != 1:
        raise ParamViolation(f"gcd(delta, m) = gcd({P.delta}, {P.m}) != 1")


def construction1_roots(P: MrParams) -> list[int]:
    """``{j*a + t : 1 <= j <= m, 1 <= t <= delta-1} | {0, delta}`` mod ``n``."""
    roots = {(j * P.a + t) % P.n for j in range(1, P.m + 1) for t in range(1, P.delta)}
    roots |= {0, P.delta % P.n}
    return sorted(roots)


def build_construction1(P: MrParams) -> LinearCode:
    """The cyclic code of length ``n`` over ``GF(q**b)`` with the root set above."""
    _check_c1(P)
    C = code_from_roots(P.field, P.n, construction1_roots(P))
    if C.k != P.k:
        raise AssertionError(f"expected k = {P.k}, got {C.k}")
    C.meta.update({"family": "cyclic-mr", "params": P.to_json()})
    return C


def _local_rows(P: MrParams, f: FieldSpec, beta: int) -> list[np.ndarray]:
    # coordinate x*m + i lies in slab x and coset i
    rows = []
    for i in range(P.m):
        for j in range(1, P.delta):
            row = np.zeros(P.n, dtype=np.int64)
            for x in range(P.a):
                row[x * P.m + i] = f.pow(beta, x * j)
            rows.append(row)
    return rows


def construction1_parity(P: MrParams) -> GfMatrix:
    """Block parity-check matrix: per-coset ``beta`` Vandermonde rows, the
    all-ones row and ``(gamma**c)_c`` with ``beta = alpha**m``, ``gamma = alpha**delta``."""
    _check_c1(P)
    f = P.field
    omega_exp = (f.q - 1) // P.n
    beta = f.alpha_pow(omega_exp * P.m)
    gamma = f.alpha_pow(omega_exp * P.delta)
    rows = _local_rows(P, f, beta)
    rows.append(np.ones(P.n, dtype=np.int64))
    rows.append(np.array([f.pow(gamma, c) for c in range(P.n)], dtype=np.int64))
    return GfMatrix(f, np.vstack(rows))


def construction2_parity(P: MrParams, literal_lambda: bool = False) -> GfMatrix:
    """Parity-check matrix of the quasi-cyclic MR code.

    The lambda row is ``lambda**(c mod m)``.  By default ``lambda`` is the
    order-``m`` element ``(alpha**a)**s``; only then is that row compatible
    with a cyclic shift after the slab rotation of :func:`lrcmr.equiv.cyclifying_perm`.
    ``literal_lambda`` uses ``alpha**s`` (order ``n / gcd(s, n)``) instead.
    """
    if gcd(P.s, P.m) != 1:
        raise ParamViolation(f"gcd(s, m) = gcd({P.s}, {P.m}) != 1")
    f = P.field
    omega_exp = (f.q - 1) // P.n
    beta = f.alpha_pow(omega_exp * P.m)
    lam = f.alpha_pow(omega_exp * P.s * (1 if literal_lambda else P.a))
    rows = _local_rows(P, f, beta)
    rows.append(np.array([f.pow(lam, c % P.m) for c in range(P.n)], dtype=np.int64))
    rows.append(np.array([f.pow(beta, P.delta * (c // P.m)) for c in range(P.n)], dtype=np.int64))
    return GfMatrix(f, np.vstack(rows))


def build_construction2(P: MrParams, literal_lambda: bool = False) -> LinearCode:
    """Quasi-cyclic code (invariant under a shift by ``m``) with the same
    ``[n, k]`` and repair sets as :func:`build_construction1`."""
    meta = {"family": "quasi-cyclic-mr", "params": P.to_json(), "literal_lambda": literal_lambda}
    C = code_from_parity(construction2_parity(P, literal_lambda), meta=meta)
    if C.k != P.k:
        raise AssertionError(f"expected k = {P.k}, got {C.k}")
    return C


def coset_profile(C: LinearCode, P: MrParams) -> LocalityProfile:
    return make_profile(C, coset_partition(P.n, P.a), P.r, P.delta)


# -- full-rank certificates ----------------------------------------------------


def full_rank_matrix(P: MrParams, T1: Sequence[int], T2: Sequence[int], i1: int, i2: int) -> GfMatrix:
    d = P.delta
    if i1 == i2:
        raise BadIndex("coset indices must differ")
    for i in (i1, i2):
        if not 0 <= i < P.m:
            raise BadIndex(f"coset index {i} outside [0, {P.m})")
    for T in (T1, T2):
        if len(set(T)) != d or any(not 0 <= t < P.a for t in T):
            raise BadIndex(f"need {d} distinct slab indices in [0, {P.a})")
    f = P.field
    w = (f.q - 1) // P.n
    beta = f.alpha_pow(w * P.m)
    gamma = f.alpha_pow(w * P.delta)
    M = np.zeros((2 * d, 2 * d), dtype=np.int64)
    for j in range(1, d):
        for c, t in enumerate(T1):
            M[j - 1, c] = f.pow(beta, j * t)
        for c, t in enumerate(T2):
            M[d - 1 + j - 1, d + c] = f.pow(beta, j * t)
    M[2 * d - 2, :] = 1
    for c, t in enumerate(T1):
        M[2 * d - 1, c] = f.pow(gamma, t * P.m + i1)
    for c, t in enumerate(T2):
        M[2 * d - 1, d + c] = f.pow(gamma, t * P.m + i2)
    return GfMatrix(f, M)


def full_rank_cert(P: MrParams, T1: Sequence[int], T2: Sequence[int], i1: int, i2: int) -> bool:
    M = full_rank_matrix(P, T1, T2, i1, i2)
    return M.rank() == 2 * P.delta


@dataclass
class CertSummary:
    total: int
    passed: int
    failures: list[tuple]

    @property
    def ok(self) -> bool:
        return self.passed == self.total


def all_full_rank_certs(P: MrParams) -> CertSummary:
    """Every admissible ``(T1, T2, i1 != i2)``; counts ``C(a,delta)**2 * m(m-1)``."""
    _check_c1(P)
    subsets = list(itertools.combinations(range(P.a), P.delta))
    failures = []
    total = 0
    for i1, i2 in itertools.permutations(range(P.m), 2):
        for T1 in subsets:
            for T2 in subsets:
                total += 1
                if not full_rank_cert(P, T1, T2, i1, i2):
                    failures.append((T1, T2, i1, i2))
    return CertSummary(total, total - len(failures), failures)


# -- MR verification -----------------------------------------------------------


@dataclass
class MrVerdict:
    mr: bool
    mode: str
    checked: int
    witness: list[int] | None
    runtime_ms: int = 0
    fastpath_validated: bool = False
    notes: list[str] = field(default_factory=list)

    def to_json(self, timing: bool = True) -> dict:
        return {
            "mr": self.mr,
            "mode": self.mode,
            "checked": self.checked,
            "witness": self.witness,
            "runtime_ms": self.runtime_ms if timing else 0,
            "fastpath_validated": self.fastpath_validated,
            "notes": self.notes,
        }


# set once a both-mode run has agreed on a full instance in this process
FASTPATH_VALIDATED = False


def _check_profile(C: LinearCode, profile: LocalityProfile, h: int) -> None:
    if not profile.verified:
        raise UnverifiedProfile("profile has not been verified against the code")
    expect = sum(len(S) for S in profile.partition) - (profile.delta - 1) * len(profile.partition) - C.k
    if expect != h:
        raise ParamViolation(f"profile and dimension give h = {expect}, not {h}")


def definition_selections(profile: LocalityProfile) -> int:
    out = 1
    for S in profile.partition:
        out *= comb(len(S), profile.delta - 1)
    return out


def _verify_definition(C: LinearCode, profile: LocalityProfile) -> tuple[bool, int, list[int] | None]:
    total = definition_selections(profile)
    if total > DEFINITION_LIMIT:
        raise TooLarge(f"{total} keep-selections exceed the limit {DEFINITION_LIMIT}")
    per_set = [list(itertools.combinations(S, profile.delta - 1)) for S in profile.partition]
    checked = 0
    for choice in itertools.product(*per_set):
        checked += 1
        erased = {i for E in choice for i in E}
        kept = [i for i in range(C.n) if i not in erased]
        P = puncture(C, kept)
        # the punctured code must keep dimension k and be MDS
        if P.k < C.k:
            # some codeword vanishes on the kept coordinates
            return False, checked, sorted(erased)
        bad = mds_witness(P)
        if bad is not None:
            if P.k <= P.n - P.k:  # an information set failed: erase the rest
                extra = [kept[j] for j in range(len(kept)) if j not in set(bad)]
            else:
                extra = [kept[j] for j in bad]
            return False, checked, sorted(erased | set(extra))
    return True, checked, None


def fastpath_patterns(profile: LocalityProfile) -> list[tuple[int, ...]]:
    """``delta+1`` erasures in one set, then ``delta`` erasures in each of two sets."""
    d = profile.delta
    pats: list[tuple[int, ...]] = []
    for S in profile.partition:
        pats.extend(itertools.combinations(S, d + 1))
    for S1, S2 in itertools.combinations(profile.partition, 2):
        for A in itertools.combinations(S1, d):
            for B in itertools.combinations(S2, d):
                pats.append(tuple(sorted(A + B)))
    return pats


def fastpath_count(profile: LocalityProfile) -> int:
    d = profile.delta
    sizes = [len(S) for S in profile.partition]
    one = sum(comb(s, d + 1) for s in sizes)
    two = sum(comb(x, d) * comb(y, d) for x, y in itertools.combinations(sizes, 2))
    return one + two


def _first_dependent(C: LinearCode, pats: list[tuple[int, ...]]) -> list[int] | None:
    by_width: dict[int, list[int]] = {}
    for idx, p in enumerate(pats):
        by_width.setdefault(len(p), []).append(idx)
    first = None
    for w, idxs in by_width.items():
        for lo in range(0, len(idxs), 1 << 16):
            chunk = idxs[lo : lo + (1 << 16)]
            arr = np.array([pats[i] for i in chunk], dtype=np.int64).reshape(len(chunk), w)
            ranks = rank_of_columns(C.H, arr)
            bad = np.flatnonzero(ranks < w)
            if bad.size:
                cand = chunk[int(bad[0])]
                first = cand if first is None else min(first, cand)
                break
    return None if first is None else list(pats[first])


def _verify_fastpath(C: LinearCode, profile: LocalityProfile) -> tuple[bool, int, list[int] | None]:
    pats = fastpath_patterns(profile)
    wit = _first_dependent(C, pats)
    return wit is None, len(pats), wit


def ensure_fastpath_validated() -> bool:
    """Run both modes once on the smallest cyclic instance and record agreement."""
    if not FASTPATH_VALIDATED:
        P = MrParams(4, 2, 2, 2)
        C = build_construction1(P)
        verify_mr(C, coset_profile(C, P), 2, "both")
    return FASTPATH_VALIDATED


def verify_mr(C: LinearCode, profile: LocalityProfile, h: int = 2, mode: str = "both") -> MrVerdict:
    """MR check by keep-selection enumeration, by the ``h = 2`` reduced
    pattern family, or both (which must agree)."""
    global FASTPATH_VALIDATED
    if mode not in ("definition", "fastpath", "both"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode != "definition" and h != 2:
        raise ModeUnsupported("the reduced pattern family needs h = 2")
    _check_profile(C, profile, h)
    t0 = time.perf_counter()
    notes: list[str] = []
    if mode == "definition":
        ok, checked, wit = _verify_definition(C, profile)
    elif mode == "fastpath":
        ok, checked, wit = _verify_fastpath(C, profile)
    else:
        ok_d, n_d, wit_d = _verify_definition(C, profile)
        ok_f, n_f, wit_f = _verify_fastpath(C, profile)
        if ok_d != ok_f:
            raise AssertionError(f"definition ({ok_d}) and fastpath ({ok_f}) disagree")
        FASTPATH_VALIDATED = True
        ok, checked, wit = ok_d, n_d + n_f, wit_d if wit_d is not None else wit_f
        notes.append(f"definition checked {n_d} keep-selections, fastpath {n_f} patterns")
    ms = int(round((time.perf_counter() - t0) * 1000))
    return MrVerdict(ok, mode, checked, wit, ms, FASTPATH_VALIDATED, notes)


def mr_erasure_correctable(C: LinearCode, profile: LocalityProfile, pattern: Iterable[int]) -> bool:
    """``rank(H|_E) = |E|``."""
    if not profile.verified:
        raise UnverifiedProfile("profile has not been verified against the code")
    E = sorted(set(int(i) for i in pattern))
    if not E:
        return True
    if E[0] < 0 or E[-1] >= C.n:
        raise IndexError("pattern position outside [0, n)")
    if C.H.rows == 0:
        return False
    return int(rank_of_columns(C.H, np.array([E]))[0]) == len(E)


def sample_fastpath_patterns(profile: LocalityProfile, count: int, seed: int = 0) -> tuple[np.ndarray, np.ndarray]:
    """``count`` draws from the reduced family as ``(patterns, widths)``.

    The two shapes are weighted by their sizes; draws are uniform over the
    family when every repair set has the same size.
    """
    rng = np.random.default_rng(seed)
    d = profile.delta
    sets = [np.array(S) for S in profile.partition]
    sizes = [len(S) for S in sets]
    one = sum(comb(s, d + 1) for s in sizes)
    total = fastpath_count(profile)
    out = np.zeros((count, 2 * d), dtype=np.int64)
    width = np.zeros(count, dtype=np.int64)
    for k in range(count):
        if rng.integers(total) < one:
            S = sets[rng.integers(len(sets))]
            pick = np.sort(rng.choice(S, d + 1, replace=False))
            out[k, : d + 1] = pick
            width[k] = d + 1
        else:
            i, j = sorted(rng.choice(len(sets), 2, replace=False))
            pick = np.concatenate([rng.choice(sets[i], d, replace=False), rng.choice(sets[j], d, replace=False)])
            out[k] = np.sort(pick)
            width[k] = 2 * d
    return out, width


def check_sampled_patterns(C: LinearCode, profile: LocalityProfile, count: int, seed: int = 0) -> MrVerdict:
    """Sampled evidence from the reduced family, for instances too large to enumerate."""
    if not profile.verified:
        raise UnverifiedProfile("profile has not been verified against the code")
    t0 = time.perf_counter()
    pats, width = sample_fastpath_patterns(profile, count, seed)
    wit = None
    for w in np.unique(width):
        sel = pats[width == w][:, :w]
        ranks = rank_of_columns(C.H, sel)
        bad = np.flatnonzero(ranks < w)
        if bad.size and wit is None:
            wit = [int(x) for x in sel[bad[0]]]
    ms = int(round((time.perf_counter() - t0) * 1000))
    return MrVerdict(wit is None, "sampled", count, wit, ms, ensure_fastpath_validated(),
                     [f"{count} patterns sampled with seed {seed}; not a proof of MR"])
