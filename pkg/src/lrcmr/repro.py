"""Runners for the eleven acceptance checks, shared by the test suite and
``lrcmr repro``."""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import bounds, codes, equiv, locality, mr
from .gf import make_field
from .matrix import GfMatrix, rank_of_columns, row_space_equal

INSTANCE1 = (4, 2, 2, 2)
INSTANCE2 = (13, 1, 3, 2)
INSTANCE_LARGE = (3, 4, 6, 3)


@dataclass
class Check:
    name: str
    passed: bool
    detail: object = None

    def to_json(self) -> dict:
        return {"name": self.name, "pass": self.passed, "witness": self.detail}


@dataclass
class CriterionResult:
    number: int
    title: str
    checks: list[Check] = field(default_factory=list)
    runtime_ms: int = 0

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    def add(self, name: str, ok, detail=None) -> None:
        self.checks.append(Check(name, bool(ok), detail))

    def line(self) -> str:
        return f"criterion {self.number:2d} {'PASS' if self.passed else 'FAIL'}  {self.title}"

    def to_json(self, timing: bool = False) -> dict:
        return {
            "criterion": self.number,
            "title": self.title,
            "pass": self.passed,
            "checks": [c.to_json() for c in self.checks],
            "runtime_ms": self.runtime_ms if timing else 0,
        }


def _instance(args):
    P = mr.MrParams(*args)
    C = mr.build_construction1(P)
    return P, C, mr.coset_profile(C, P)


def _c1_instance(number: int, args, title: str) -> CriterionResult:
    res = CriterionResult(number, title)
    P, C, prof = _instance(args)
    d = codes.min_distance(C)
    res.add("n, k", (C.n, C.k) == (P.n, P.k), [C.n, C.k])
    res.add("field size", C.field.q == P.q**P.b, C.field.q)
    expect_d = 2 * P.delta + 1 if P.r == 2 else P.delta + 2
    res.add("minimum distance", d == expect_d, d)
    res.add("cyclic", codes.is_cyclic(C))
    res.add("coset repair sets verified", prof.verified, [list(S) for S in prof.partition])
    bound = locality.lrc_singleton_bound(C.n, C.k, P.r, P.delta)
    res.add("optimal LRC", locality.is_optimal_lrc(C, prof), {"d": d, "bound": bound})
    v = mr.verify_mr(C, prof, 2, "definition")
    res.add("MR by keep-selection enumeration", v.mr, {"checked": v.checked, "witness": v.witness})
    res.add("keep-selection count", v.checked == mr.definition_selections(prof), v.checked)
    return res


def criterion1() -> CriterionResult:
    res = _c1_instance(1, INSTANCE1, "cyclic [15,8,5] over GF(16): cyclic, optimal LRC, MR (243 selections)")
    res.add("243 selections", any(c.name == "keep-selection count" and c.detail == 243 for c in res.checks))
    return res


def criterion2() -> CriterionResult:
    return _c1_instance(2, INSTANCE2, "cyclic [12,7,4] over GF(13): d = delta + 2, MR")


def criterion3() -> CriterionResult:
    res = CriterionResult(3, "explicit block parity matrix spans the root-set parity space")
    for args in (INSTANCE1, INSTANCE2):
        P, C, _ = _instance(args)
        H = mr.construction1_parity(P)
        res.add(f"{P.label()} rows = m(delta-1)+2", H.rows == P.m * (P.delta - 1) + 2, H.rows)
        res.add(f"{P.label()} row spaces equal", row_space_equal(H, C.H))
    return res


def criterion4() -> CriterionResult:
    res = CriterionResult(4, "2delta x 2delta full-rank certificates hold for every admissible choice")
    for args, expect in ((INSTANCE1, 180), (INSTANCE2, 216)):
        P = mr.MrParams(*args)
        s = mr.all_full_rank_certs(P)
        res.add(f"{P.label()} count", s.total == expect, s.total)
        res.add(f"{P.label()} all full rank", s.ok, s.failures[:3])
    return res


def criterion5() -> CriterionResult:
    res = CriterionResult(5, "field-size bound values and prime-power tests")
    for args, expect in (((16, 6, 2, 3), 16), ((63, 40, 2, 2), 64), ((9, 4, 2, 2), 8)):
        got = bounds.field_bound_new(*args)
        res.add(f"bound{args}", got == expect, got if isinstance(got, int) else got.reason)
        v = bounds.optimal_field_size_verdict(*args, q=expect)
        res.add(f"verdict{args} at q={expect}", v.verdict == "optimal", v.verdict)
    for x in (15, 62, 63):
        res.add(f"{x} not a prime power", not bounds.is_prime_power(x))
    return res


def criterion6() -> CriterionResult:
    res = CriterionResult(6, "q >= n - 1 floor for r = 2 MR codes")
    f15 = bounds.mr_field_floor_r2(15)
    res.add("n=15 floor 14 <= 16", f15 == 14 and f15 <= 16, f15)
    f9 = bounds.mr_field_floor_r2(9)
    res.add("n=9 floor 8 met with equality at q=8", f9 == 8, f9)
    v = bounds.optimal_field_size_verdict(15, 8, 2, 2, 16, mr=True)
    res.add("(15,2,2,2,16) verdict", v.verdict == "optimal", v.to_json())
    return res


def criterion7() -> CriterionResult:
    res = CriterionResult(7, "quasi-cyclic MR code (12,3,2,2,13) becomes cyclic under the slab rotation")
    P = mr.MrParams(*INSTANCE2)
    C2 = mr.build_construction2(P)
    res.add("not cyclic before", not codes.is_cyclic(C2))
    perm = equiv.cyclifying_perm(P)
    tau = equiv.solve_tau(P)
    res.add("tau = 1", tau == 1, tau)
    res.add("z = (0,4,8)", perm is not None and perm.z == (0, 4, 8), None if perm is None else list(perm.z))
    res.add("permuted code cyclic", perm is not None and codes.is_cyclic(equiv.apply_perm(C2, perm)))
    hits, total = equiv.count_psi_hits(C2, P.a)
    res.add("|Psi(12,4)| = 3072", total == 3072, total)
    res.add("exhaustive search agrees on existence", (hits > 0) == (perm is not None), {"hits": hits})
    first = equiv.brute_force_psi_search(C2, P.a)
    res.add("first search hit is cyclifying", first is not None and codes.is_cyclic(equiv.apply_perm(C2, first)),
            None if first is None else first.to_json())
    return res


NECESSARY_FACTS = ("gcd(m,a) = gcd(10,8) = 2 does not divide delta = 3", "gcd(8,phi(8)) = 4 != 1")


def criterion8() -> CriterionResult:
    res = CriterionResult(8, "(80,6,2,3,81): gcd(m,a) = 2 does not divide 3, and a hypothesis fails")
    v = equiv.necessary_verdict(mr.MrParams(*INSTANCE_LARGE))
    rep = v.report
    res.add("verdict hypotheses_unmet", v.verdict == "hypotheses_unmet", v.verdict)
    for s in NECESSARY_FACTS:
        res.add(f"report mentions '{s}'", s in rep, rep)
    return res


def oracle_corpus() -> list[codes.LinearCode]:
    """Small codes with ``q**k <= 2**20`` for distance-oracle comparison."""
    out = []
    rng = np.random.default_rng(20240601)
    for p, e, n, k in ((2, 1, 12, 6), (2, 1, 16, 9), (3, 1, 10, 5), (2, 2, 9, 4), (5, 1, 8, 4),
                       (7, 1, 8, 3), (2, 3, 9, 4), (13, 1, 12, 4), (2, 4, 15, 5), (3, 2, 8, 3)):
        f = make_field(p, e)
        for _ in range(2):
            G = GfMatrix(f, rng.integers(0, f.q, size=(k, n)))
            out.append(codes.code_from_generator(G))
    for args in (INSTANCE1, INSTANCE2):
        P, C, prof = _instance(args)
        for S in prof.partition[:2]:
            out.append(codes.puncture(C, S))
        out.append(codes.puncture(C, [i for S in prof.partition[:2] for i in S]))
    f = make_field(2)
    out.append(codes.code_from_parity(GfMatrix(f, np.ones((1, 10), dtype=np.int64))))
    return [C for C in out if C.k >= 1 and C.field.q**C.k <= 1 << 20]


def criterion9() -> CriterionResult:
    res = CriterionResult(9, "oracle equivalence: MR fastpath vs definition, distance by subsets vs enumeration")
    P, C, prof = _instance(INSTANCE1)
    v = mr.verify_mr(C, prof, 2, "both")
    res.add("both modes agree (MR)", v.mr and v.fastpath_validated, v.notes)
    # every full MR pattern against its peeled reduction
    d = P.delta
    per_set = [list(itertools.combinations(S, d - 1)) for S in prof.partition]
    full, reduced = [], []
    for choice in itertools.product(*per_set):
        erased = {i for E in choice for i in E}
        rest = [i for i in range(C.n) if i not in erased]
        for extra in itertools.combinations(rest, 2):
            pat = sorted(erased | set(extra))
            full.append(pat)
            reduced.append([i for S in prof.partition if sum(j in pat for j in S) >= d for i in S if i in pat])
    full_ok = rank_of_columns(C.H, np.array(full)) == len(full[0])
    red_ok = np.array([int(rank_of_columns(C.H, np.array([r]))[0]) == len(r) if r else True for r in reduced])
    res.add("per-pattern verdicts identical", bool(np.array_equal(full_ok, red_ok)), len(full))
    corpus = oracle_corpus()
    diffs = []
    for D in corpus:
        a = codes.min_distance(D, method="subsets")
        b = codes.min_distance(D, method="enumerate")
        if a != b:
            diffs.append({"n": D.n, "k": D.k, "q": D.field.q, "subsets": a, "enumerate": b})
    res.add(f"distance oracles agree on {len(corpus)} codes", not diffs, diffs)
    return res


def criterion10() -> CriterionResult:
    res = CriterionResult(10, "exhaustive repair-set scan of the [15,8,5] code: shift dichotomy and cosets of <5>")
    P, C, _ = _instance(INSTANCE1)
    rep = locality.check_coset_structure(C, P.r, P.delta)
    res.add("hypothesis met", rep.hypothesis_met, {"u": rep.u, "v": rep.v})
    res.add("shift dichotomy for every repair set", rep.all_dichotomy, rep.counterexamples[:3])
    res.add("maximal repair sets are cosets", rep.all_cosets, [list(S) for S in rep.maximal_sets])
    cosets = sorted(locality.coset_partition(P.n, P.a))
    res.add("exactly the five cosets of <5>", rep.maximal_sets == cosets, rep.gamma_size)
    return res


SAMPLE_COUNT = 10**4


def criterion11(full_fastpath: bool = False) -> CriterionResult:
    title = ("(80,6,2,3,81): sampled patterns plus the full reduced family" if full_fastpath
             else "(80,6,2,3,81): sampled reduced-pattern evidence only (full check infeasible)")
    res = CriterionResult(11, title)
    P = mr.MrParams(*INSTANCE_LARGE)
    res.add("n, a, m", (P.n, P.a, P.m) == (80, 8, 10), [P.n, P.a, P.m])
    res.add("a | 3^2 - 1", P.subfield_degree == 2, P.subfield_degree)
    C = mr.build_construction1(P)
    res.add("k = mr - 2 = 58", C.k == 58, C.k)
    res.add("cyclic", codes.is_cyclic(C))
    prof = mr.coset_profile(C, P)
    res.add("coset repair sets verified", prof.verified)
    res.add("full selection count not enumerable", mr.definition_selections(prof) > mr.DEFINITION_LIMIT,
            mr.definition_selections(prof))
    v = mr.check_sampled_patterns(C, prof, SAMPLE_COUNT, seed=0)
    res.add(f"{SAMPLE_COUNT} sampled patterns correctable", v.mr and v.checked == SAMPLE_COUNT, v.witness)
    nv = equiv.necessary_verdict(P)
    res.add("condition arithmetic as in criterion 8", all(s in nv.report for s in NECESSARY_FACTS))
    if full_fastpath:
        fv = mr.verify_mr(C, prof, 2, "fastpath")
        res.add(f"full reduced family ({fv.checked} patterns)", fv.mr, fv.witness)
    return res


CRITERIA: dict[int, Callable[[], CriterionResult]] = {
    1: criterion1, 2: criterion2, 3: criterion3, 4: criterion4, 5: criterion5, 6: criterion6,
    7: criterion7, 8: criterion8, 9: criterion9, 10: criterion10, 11: criterion11,
}


def run(number: int) -> CriterionResult:
    t0 = time.perf_counter()
    res = CRITERIA[number]()
    res.runtime_ms = int(round((time.perf_counter() - t0) * 1000))
    return res


def run_all(numbers=None) -> list[CriterionResult]:
    return [run(i) for i in (numbers or sorted(CRITERIA))]
