"""(r, delta)-locality: repair sets, partitions, optimality and the coset
structure of repair sets of cyclic optimal LRCs."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .codes import LinearCode, erasure_decode, is_cyclic, min_distance, puncture, split_word
from .errors import NotCyclic, TooLarge, Unrecoverable, UnverifiedProfile
from .matrix import rank_of_columns

GAMMA_SCAN_MAX_N = 20
PARTITION_SEARCH_MAX_N = 24


@dataclass(frozen=True)
class LocalityProfile:
    r: int
    delta: int
    partition: tuple[tuple[int, ...], ...] = ()
    verified: bool = False

    @property
    def is_partition(self) -> bool:
        if not self.partition:
            return False
        seen = [i for S in self.partition for i in S]
        return len(seen) == len(set(seen))

    def set_of(self, i: int) -> tuple[int, ...]:
        for S in self.partition:
            if i in S:
                return S
        raise KeyError(i)

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "delta": self.delta,
            "partition": [list(S) for S in self.partition],
            "verified": self.verified,
        }


def normalize_k(k: int, r: int) -> tuple[int, int]:
    """``k = u*r + v`` with ``0 < v <= r``."""
    v = k % r
    if v == 0:
        v = r
    return (k - v) // r, v


def lrc_singleton_bound(n: int, k: int, r: int, delta: int) -> int:
    """``n - k + 1 - (ceil(k/r) - 1)(delta - 1)``."""
    if not (1 <= k <= n) or r < 1 or delta < 2:
        raise ValueError("need 1 <= k <= n, r >= 1, delta >= 2")
    return n - k + 1 - (-(-k // r) - 1) * (delta - 1)


# -- repair-set membership ---------------------------------------------------


def _sets_in_gamma(C: LinearCode, sets: np.ndarray, delta: int) -> np.ndarray:
    """Vectorised ``d(C|_S) >= delta`` for equal-size sets ``S`` (rows).

    Deleting any ``delta-1`` coordinates of ``S`` must keep ``rank(G|_S)``;
    that is exactly "no nonzero codeword of ``C|_S`` has weight < delta".
    """
    sets = np.asarray(sets, dtype=np.int64)
    K, s = sets.shape
    full = rank_of_columns(C.G, sets) if C.k else np.zeros(K, dtype=np.int64)
    if s < delta:
        return full == 0
    keep = s - delta + 1
    choices = np.array(list(itertools.combinations(range(s), keep)), dtype=np.int64)
    sub = sets[:, choices].reshape(-1, keep)
    part = rank_of_columns(C.G, sub) if C.k else np.zeros(sub.shape[0], dtype=np.int64)
    return (part.reshape(K, len(choices)) == full[:, None]).all(axis=1)


def in_gamma(C: LinearCode, S: Iterable[int], r: int, delta: int) -> bool:
    S = sorted(set(S))
    if not S or len(S) > r + delta - 1:
        return False
    return bool(_sets_in_gamma(C, np.array([S]), delta)[0])


def verify_repair_set(C: LinearCode, S: Iterable[int], r: int, delta: int) -> bool:
    """``|S| <= r + delta - 1`` and the punctured code has distance >= delta."""
    return in_gamma(C, S, r, delta)


def verify_repair_set_by_distance(C: LinearCode, S: Iterable[int], r: int, delta: int) -> bool:
    """Same predicate computed through :func:`min_distance` of the punctured code."""
    S = sorted(set(S))
    if not S or len(S) > r + delta - 1:
        return False
    P = puncture(C, S)
    if P.k == 0:
        return True
    return min_distance(P) >= delta


def make_profile(C: LinearCode, partition: Sequence[Iterable[int]], r: int, delta: int) -> LocalityProfile:
    """Profile whose ``verified`` flag records whether every set passes and
    the sets partition ``[n]``."""
    part = tuple(tuple(sorted(set(S))) for S in partition)
    ok = all(verify_repair_set(C, S, r, delta) for S in part)
    covered = sorted(i for S in part for i in S)
    ok = ok and covered == list(range(C.n))
    return LocalityProfile(r, delta, part, ok)


def coset_partition(n: int, a: int) -> tuple[tuple[int, ...], ...]:
    """Cosets ``<m> + i`` of the subgroup of order ``a`` in ``Z_n``."""
    m = n // a
    return tuple(tuple(i + j * m for j in range(a)) for i in range(m))


def discover_repair_partition(C: LinearCode, r: int, delta: int) -> LocalityProfile | None:
    """A verified partition of ``[n]`` into repair sets of size ``r+delta-1``.

    The coset partition is tried first; otherwise an exhaustive exact-cover
    search returns the lexicographically least partition (``n <= 24``).
    """
    n, a = C.n, r + delta - 1
    if n % a == 0:
        prof = make_profile(C, coset_partition(n, a), r, delta)
        if prof.verified:
            return prof
    if n > PARTITION_SEARCH_MAX_N:
        return None
    if n % a:
        return None
    cands: list[tuple[int, ...]] = []
    for block in _subset_blocks(n, a):
        good = _sets_in_gamma(C, block, delta)
        cands.extend(tuple(int(x) for x in row) for row in block[good])
    by_min: dict[int, list[tuple[int, ...]]] = {}
    for S in cands:
        by_min.setdefault(S[0], []).append(S)

    chosen: list[tuple[int, ...]] = []
    used = [False] * n

    def search() -> bool:
        try:
            first = used.index(False)
        except ValueError:
            return True
        for S in by_min.get(first, ()):
            if any(used[i] for i in S):
                continue
            for i in S:
                used[i] = True
            chosen.append(S)
            if search():
                return True
            chosen.pop()
            for i in S:
                used[i] = False
        return False

    if not search():
        return None
    return LocalityProfile(r, delta, tuple(chosen), True)


def _subset_blocks(n: int, s: int, chunk: int = 1 << 16):
    it = itertools.combinations(range(n), s)
    while True:
        block = list(itertools.islice(it, chunk))
        if not block:
            return
        yield np.array(block, dtype=np.int64).reshape(len(block), s)


def is_optimal_lrc(C: LinearCode, profile: LocalityProfile) -> bool:
    if not profile.verified:
        raise UnverifiedProfile("profile has not been verified against the code")
    return min_distance(C) == lrc_singleton_bound(C.n, C.k, profile.r, profile.delta)


# -- cyclic coset structure ---------------------------------------------------


@dataclass
class StructureReport:
    n: int
    k: int
    r: int
    delta: int
    u: int
    v: int
    hypothesis_met: bool
    gamma_size: int
    all_dichotomy: bool
    all_cosets: bool
    maximal_sets: list[tuple[int, ...]]
    counterexamples: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "hypothesis_met": self.hypothesis_met,
            "all_dichotomy": self.all_dichotomy,
            "all_cosets": self.all_cosets,
            "counterexamples": self.counterexamples,
            "u": self.u,
            "v": self.v,
            "gamma_size": self.gamma_size,
            "maximal_sets": [list(S) for S in self.maximal_sets],
            "notes": self.notes,
        }


def enumerate_gamma(C: LinearCode, r: int, delta: int) -> list[tuple[int, ...]]:
    """Every nonempty ``S`` with ``|S| <= r+delta-1`` and ``d(C|_S) >= delta``."""
    if C.n > GAMMA_SCAN_MAX_N:
        raise TooLarge(f"Gamma scan limited to n <= {GAMMA_SCAN_MAX_N}")
    out: list[tuple[int, ...]] = []
    for s in range(1, min(r + delta - 1, C.n) + 1):
        for block in _subset_blocks(C.n, s):
            good = _sets_in_gamma(C, block, delta)
            out.extend(tuple(int(x) for x in row) for row in block[good])
    return out


def check_coset_structure(C: LinearCode, r: int, delta: int) -> StructureReport:
    """Exhaustive check of the shift dichotomy and coset shape of repair sets."""
    if not is_cyclic(C):
        raise NotCyclic("coset structure is only defined for cyclic codes")
    n, k, a = C.n, C.k, r + delta - 1
    u, v = normalize_k(k, r)
    hyp = u >= 2 * (r - v + 1)
    notes = [f"k = {k} written as u*r + v = {u}*{r} + {v} with 0 < v <= r"]
    if not hyp:
        notes.append(f"hypothesis not met: u = {u} < 2(r - v + 1) = {2 * (r - v + 1)}")
    gamma = enumerate_gamma(C, r, delta)
    gset = [frozenset(S) for S in gamma]
    counter: list[dict] = []
    for S in gset:
        for j in range(1, n):
            shifted = frozenset((x + j) % n for x in S)
            if shifted != S and shifted & S:
                counter.append({"set": sorted(S), "shift": j})
                break
    maximal = [S for S in gset if not any(S < T for T in gset)]
    maximal_sorted = sorted(tuple(sorted(S)) for S in maximal)
    if n % a == 0:
        cosets = {frozenset(c) for c in coset_partition(n, a)}
        all_cosets = bool(maximal) and all(S in cosets for S in maximal)
    else:
        all_cosets = False
        notes.append(f"r + delta - 1 = {a} does not divide n = {n}")
    return StructureReport(
        n=n, k=k, r=r, delta=delta, u=u, v=v,
        hypothesis_met=hyp,
        gamma_size=len(gamma),
        all_dichotomy=not counter,
        all_cosets=all_cosets,
        maximal_sets=maximal_sorted,
        counterexamples=counter,
        notes=notes,
    )


def union_rank_violations(C: LinearCode, sets: Sequence[Iterable[int]], delta: int, max_family: int = 3) -> list[dict]:
    """Families ``V`` (size <= ``max_family``) meeting the overlap premise
    ``|S' & union(V - S')| <= |S'| - delta + 1`` for which
    ``rank(union V) <= |union V| - |V|(delta - 1)`` fails."""
    fam = [frozenset(S) for S in sets]
    bad = []
    for size in range(1, max_family + 1):
        for V in itertools.combinations(fam, size):
            if not all(
                len(S & frozenset().union(*(T for T in V if T is not S))) <= len(S) - delta + 1 for S in V
            ):
                continue
            U = sorted(frozenset().union(*V))
            rk = int(rank_of_columns(C.G, np.array([U]))[0]) if C.k else 0
            if rk > len(U) - size * (delta - 1):
                bad.append({"family": [sorted(S) for S in V], "rank": rk, "union": len(U)})
    return bad


# -- local repair ------------------------------------------------------------


@dataclass
class LocalRepair:
    word: list
    repaired: list[int]
    escalate: list[tuple[int, ...]]

    @property
    def complete(self) -> bool:
        return not self.escalate


def local_repair(C: LinearCode, profile: LocalityProfile, word: Sequence) -> LocalRepair:
    """Repair every set holding at most ``delta-1`` erasures from that set alone."""
    if not profile.verified:
        raise UnverifiedProfile("profile has not been verified against the code")
    out = list(word)
    repaired: list[int] = []
    escalate: list[tuple[int, ...]] = []
    for S in profile.partition:
        lost = [i for i in S if out[i] is None]
        if not lost:
            continue
        if len(lost) > profile.delta - 1:
            escalate.append(S)
            continue
        local = puncture(C, S)
        try:
            fixed = erasure_decode(local, [out[i] for i in S])
        except Unrecoverable:
            escalate.append(S)
            continue
        for pos, val in zip(S, fixed):
            if out[pos] is None:
                out[pos] = int(val)
                repaired.append(pos)
    return LocalRepair(out, sorted(repaired), escalate)


def erasure_count(word: Sequence) -> int:
    return len(split_word(word)[1])
