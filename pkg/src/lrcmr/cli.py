"""``lrcmr`` command line.

Every subcommand prints one report (JSON by default) and exits with 0 when
all checks pass, 1 when a verified property fails and 2 on invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time

from . import bounds, codes, equiv, kernels, locality, mr, repro
from .errors import LrcMrError
from .io import dumps, load_code, parse_word, save_code, save_perm, word_to_json


class Report:
    def __init__(self, command: str, inputs: dict):
        self.command = command
        self.inputs = inputs
        self.results: dict = {}
        self.checks: list[dict] = []
        self.runtime_ms = 0
        self.rows: list[dict] | None = None  # tabular payload for --format csv

    def check(self, name: str, ok, witness=None) -> None:
        self.checks.append({"name": name, "pass": bool(ok), "witness": witness})

    @property
    def ok(self) -> bool:
        return all(c["pass"] for c in self.checks)

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "checks": self.checks,
            "runtime_ms": self.runtime_ms,
        }


# -- helpers -------------------------------------------------------------------


def _params(args) -> mr.MrParams:
    return mr.MrParams(args.q, args.b, args.r, args.delta, getattr(args, "s", 1) or 1)


def _code_locality(C, args) -> tuple[int, int]:
    p = C.meta.get("params") or {}
    r = args.r if args.r is not None else p.get("r")
    d = args.delta if args.delta is not None else p.get("delta")
    if r is None or d is None:
        raise ValueError("--r and --delta are required for codes without stored parameters")
    return int(r), int(d)


def _profile(C, r: int, d: int):
    prof = locality.discover_repair_partition(C, r, d)
    return prof


# -- subcommands ----------------------------------------------------------------


def cmd_construct(args, rep: Report) -> None:
    P = _params(args)
    if args.family == "cyclic-mr":
        C = mr.build_construction1(P)
    else:
        C = mr.build_construction2(P, literal_lambda=args.literal_lambda)
    if args.output:
        save_code(C, args.output)
    rep.results = {"params": P.to_json(), "n": C.n, "k": C.k, "field": C.field.to_json(),
                   "roots": None if C.roots is None else list(C.roots), "output": args.output}
    rep.check("k = mr - 2", C.k == P.k, C.k)


def cmd_verify_locality(args, rep: Report) -> None:
    C = load_code(args.code)
    r, d = _code_locality(C, args)
    prof = _profile(C, r, d)
    rep.results = {"profile": None if prof is None else prof.to_json()}
    rep.check("repair partition found", prof is not None and prof.verified)


def cmd_verify_mr(args, rep: Report) -> None:
    C = load_code(args.code)
    r, d = _code_locality(C, args)
    prof = _profile(C, r, d)
    if prof is None:
        rep.check("repair partition found", False)
        return
    v = mr.verify_mr(C, prof, args.h, args.mode)
    rep.results = v.to_json(timing=args.timing)
    rep.check("maximally recoverable", v.mr, v.witness)


def cmd_verify_cyclic(args, rep: Report) -> None:
    C = load_code(args.code)
    ok = codes.is_cyclic(C)
    rep.results = {"cyclic": ok}
    rep.check("cyclic", ok)


def cmd_verify_optimal(args, rep: Report) -> None:
    C = load_code(args.code)
    r, d = _code_locality(C, args)
    prof = _profile(C, r, d)
    if prof is None:
        rep.check("repair partition found", False)
        return
    dist = codes.min_distance(C)
    bound = locality.lrc_singleton_bound(C.n, C.k, r, d)
    rep.results = {"n": C.n, "k": C.k, "d": dist, "bound": bound}
    rep.check("d meets the Singleton-type bound", locality.is_optimal_lrc(C, prof), {"d": dist, "bound": bound})


def cmd_mindist(args, rep: Report) -> None:
    C = load_code(args.code)
    dist = codes.min_distance(C, cap=args.cap, method=args.method)
    rep.results = {"n": C.n, "k": C.k, "d": dist, "above_cap": dist is None}


def cmd_bounds_field(args, rep: Report) -> None:
    b = bounds.field_bound_new(args.n, args.k, args.r, args.delta)
    rep.results = {"bound_new": b if isinstance(b, int) else None,
                   "not_applicable": None if isinstance(b, int) else b.reason}
    if args.q is not None:
        v = bounds.optimal_field_size_verdict(args.n, args.k, args.r, args.delta, args.q, mr=args.mr)
        rep.results.update(v.to_json())
        rep.rows = [bounds.verdict_row(args.n, args.k, args.r, args.delta, args.q, args.mr)]
        rep.check("q respects the field-size floors", v.verdict != "below_bound", v.verdict)


def cmd_bounds_length(args, rep: Report) -> None:
    v = bounds.length_bound_prior(args.q, args.d, args.r, args.delta, args.k)
    rep.results = v.to_json()


def cmd_bounds_sweep(args, rep: Report) -> None:
    rows = bounds.sweep_cyclic_mr(args.q_max, args.b_max, args.r, args.delta)
    rep.rows = rows
    rep.results = {"rows": rows}
    rep.check("no parameter set below a floor", all(r["verdict"] != "below_bound" for r in rows))


def cmd_equiv_sufficient(args, rep: Report) -> None:
    P = _params(args)
    perm = equiv.cyclifying_perm(P)
    rep.results = {"tau": equiv.solve_tau(P) if perm else None, "perm": None if perm is None else perm.to_json()}
    if perm is None:
        rep.results["reason"] = f"gcd(m, a/gcd(a,delta)) != 1 for m = {P.m}, a = {P.a}"
        return
    if args.output:
        save_perm(perm, args.output)
    C2 = mr.build_construction2(P)
    rep.check("permuted quasi-cyclic code is cyclic", codes.is_cyclic(equiv.apply_perm(C2, perm)))


def cmd_equiv_necessary(args, rep: Report) -> None:
    v = equiv.necessary_verdict(_params(args))
    rep.results = v.to_json()


def cmd_equiv_build_perm(args, rep: Report) -> None:
    if args.multiplier is not None:
        perm = equiv.make_multiplier(args.n, args.multiplier)
    else:
        if args.a is None or args.t is None or args.z is None:
            raise ValueError("psi permutations need --a, --t and --z")
        perm = equiv.make_psi(args.n, args.a, args.t, args.z)
    if args.code:
        C = equiv.apply_perm(load_code(args.code), perm)
        rep.results["cyclic_after"] = codes.is_cyclic(C)
        if args.output:
            save_code(C, args.output)
    elif args.output:
        save_perm(perm, args.output)
    rep.results.update({"perm": perm.to_json(), "mapping": perm.mapping().tolist()})


def cmd_equiv_search(args, rep: Report) -> None:
    C = load_code(args.code)
    perm = equiv.brute_force_psi_search(C, args.a, args.limit)
    rep.results = {"size": equiv.psi_size(C.n, args.a), "perm": None if perm is None else perm.to_json()}


def cmd_repair(args, rep: Report) -> None:
    C = load_code(args.code)
    r, d = _code_locality(C, args)
    word = parse_word(args.word)
    if len(word) != C.n:
        raise ValueError(f"word has {len(word)} symbols, code length is {C.n}")
    prof = _profile(C, r, d)
    if prof is None:
        rep.check("repair partition found", False)
        return
    lr = locality.local_repair(C, prof, word)
    rep.results = {"local": word_to_json(lr.word), "repaired": lr.repaired,
                   "escalate": [list(S) for S in lr.escalate]}
    if lr.escalate:
        try:
            full = codes.erasure_decode(C, lr.word)
            rep.results["global"] = [int(v) for v in full]
            rep.check("global decoding", True)
        except LrcMrError as exc:
            rep.results["global"] = None
            rep.check("global decoding", False, str(exc))


def cmd_repro(args, rep: Report) -> None:
    picked = [x for x in args.criteria if x != "all"]
    if not picked:
        which = sorted(repro.CRITERIA)
    else:
        bad = [x for x in picked if not x.isdigit()]
        if bad:
            raise ValueError(f"criteria must be numbers or 'all', got {bad}")
        which = sorted({int(x) for x in picked})
    unknown = [i for i in which if i not in repro.CRITERIA]
    if unknown:
        raise ValueError(f"no criterion numbered {unknown}; choose from {sorted(repro.CRITERIA)}")
    results = []
    for i in which:
        t0 = time.perf_counter()
        res = repro.criterion11(full_fastpath=True) if (i == 11 and args.full) else repro.CRITERIA[i]()
        res.runtime_ms = int(round((time.perf_counter() - t0) * 1000))
        results.append(res)
        rep.check(f"criterion {i}", res.passed, None if res.passed else [c.to_json() for c in res.checks if not c.passed])
    rep.results = {"criteria": [r.to_json(args.timing) for r in results]}
    rep.rows = [{"criterion": r.number, "pass": r.passed, "title": r.title} for r in results]


# -- parser ---------------------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "csv", "human"), default=argparse.SUPPRESS)
    p.add_argument("--jobs", type=int, default=argparse.SUPPRESS, help="worker threads (default: LRCMR_JOBS or all cores)")
    p.add_argument("--timing", action="store_true", default=argparse.SUPPRESS,
                   help="report wall-clock times (off by default for byte-identical output)")


def _param_flags(p: argparse.ArgumentParser, s: bool = True) -> None:
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    if s:
        p.add_argument("--s", type=int, default=1)


def _code_flags(p: argparse.ArgumentParser, locality_flags: bool = True) -> None:
    p.add_argument("--code", required=True, help="code file written by 'construct'")
    if locality_flags:
        p.add_argument("--r", type=int)
        p.add_argument("--delta", type=int)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lrcmr", description=__doc__.splitlines()[0])
    ap.add_argument("--format", choices=("json", "csv", "human"), default="json")
    ap.add_argument("--jobs", type=int, default=None)
    ap.add_argument("--timing", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a code and write it to a file")
    p.add_argument("--family", choices=("cyclic-mr", "quasi-cyclic-mr"), required=True)
    _param_flags(p)
    p.add_argument("--literal-lambda", action="store_true", help="quasi-cyclic family: lambda = alpha**s")
    p.add_argument("--output")
    p.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="check a property of a stored code").add_subparsers(dest="what", required=True)
    p = v.add_parser("locality")
    _code_flags(p)
    p.set_defaults(func=cmd_verify_locality)
    p = v.add_parser("mr")
    _code_flags(p)
    p.add_argument("--mode", choices=("definition", "fastpath", "both"), default="both")
    p.add_argument("--h", type=int, default=2)
    p.set_defaults(func=cmd_verify_mr)
    p = v.add_parser("cyclic")
    _code_flags(p, locality_flags=False)
    p.set_defaults(func=cmd_verify_cyclic)
    p = v.add_parser("optimal")
    _code_flags(p)
    p.set_defaults(func=cmd_verify_optimal)
    for q in (v.choices.values()):
        _common(q)

    p = sub.add_parser("mindist", help="exact minimum distance")
    _code_flags(p, locality_flags=False)
    p.add_argument("--cap", type=int)
    p.add_argument("--method", choices=("auto", "subsets", "enumerate"), default="auto")
    p.set_defaults(func=cmd_mindist)

    b = sub.add_parser("bounds", help="field-size and length bounds").add_subparsers(dest="what", required=True)
    p = b.add_parser("field")
    for f in ("n", "k", "r", "delta"):
        p.add_argument(f"--{f}", type=int, required=True)
    p.add_argument("--q", type=int)
    p.add_argument("--mr", action="store_true", help="also apply the q >= n-1 floor for r = 2 MR codes")
    p.set_defaults(func=cmd_bounds_field)
    p = b.add_parser("length")
    for f in ("q", "d", "r", "delta", "k"):
        p.add_argument(f"--{f}", type=int, required=True)
    p.set_defaults(func=cmd_bounds_length)
    p = b.add_parser("sweep")
    p.add_argument("--q-max", type=int, default=16)
    p.add_argument("--b-max", type=int, default=3)
    p.add_argument("--r", type=int, nargs="+", default=[2, 3])
    p.add_argument("--delta", type=int, nargs="+", default=[2, 3])
    p.set_defaults(func=cmd_bounds_sweep)
    for q in b.choices.values():
        _common(q)

    e = sub.add_parser("equiv", help="permutation equivalence").add_subparsers(dest="what", required=True)
    p = e.add_parser("sufficient")
    _param_flags(p)
    p.add_argument("--output")
    p.set_defaults(func=cmd_equiv_sufficient)
    p = e.add_parser("necessary")
    _param_flags(p)
    p.set_defaults(func=cmd_equiv_necessary)
    p = e.add_parser("build-perm")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--multiplier", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--t", type=int, nargs="+")
    p.add_argument("--z", type=int, nargs="+")
    p.add_argument("--code", help="apply the permutation to this code")
    p.add_argument("--output")
    p.set_defaults(func=cmd_equiv_build_perm)
    p = e.add_parser("search")
    _code_flags(p, locality_flags=False)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--limit", type=int, default=equiv.PSI_SEARCH_LIMIT)
    p.set_defaults(func=cmd_equiv_search)
    for q in e.choices.values():
        _common(q)

    p = sub.add_parser("repair", help="local repair, escalating to global erasure decoding")
    _code_flags(p)
    p.add_argument("--word", required=True, help="comma-separated symbols, '?' marks an erasure")
    p.set_defaults(func=cmd_repair)

    p = sub.add_parser("repro", help="run acceptance checks")
    p.add_argument("criteria", nargs="*", metavar="N", help="criterion numbers or 'all' (default: all)")
    p.add_argument("--full", action="store_true", help="criterion 11: also check the full reduced pattern family")
    p.set_defaults(func=cmd_repro)

    for name in ("construct", "mindist", "repair", "repro"):
        _common(sub.choices[name])
    return ap


# -- output -----------------------------------------------------------------------


def _emit(rep: Report, fmt: str, out) -> None:
    if fmt == "json":
        out.write(dumps(rep.to_json()))
    elif fmt == "csv":
        rows = rep.rows
        if rows is None:
            rows = [{"name": c["name"], "pass": c["pass"], "witness": json.dumps(c["witness"])} for c in rep.checks]
            if not rows:
                rows = [{"key": k, "value": json.dumps(v)} for k, v in rep.results.items()]
        buf = io.StringIO()
        if rows:
            cols = bounds.CSV_COLUMNS if rep.command.startswith("bounds") else list(rows[0])
            w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
            w.writeheader()
            w.writerows(rows)
        out.write(buf.getvalue())
    else:
        out.write(f"{rep.command}\n")
        if rep.rows is not None and rep.command == "repro":
            for r in rep.rows:
                out.write(f"  criterion {r['criterion']:2d}  {'PASS' if r['pass'] else 'FAIL'}  {r['title']}\n")
        else:
            for k, v in rep.results.items():
                out.write(f"  {k}: {json.dumps(v)}\n")
            for c in rep.checks:
                out.write(f"  {'PASS' if c['pass'] else 'FAIL'}  {c['name']}\n")


def _inputs(args) -> dict:
    skip = {"func", "format", "jobs", "timing", "command", "what"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    args = ap.parse_args(argv)
    jobs = args.jobs if args.jobs is not None else (int(os.environ["LRCMR_JOBS"]) if os.environ.get("LRCMR_JOBS") else None)
    kernels.set_jobs(jobs)
    command = " ".join(x for x in (args.command, getattr(args, "what", None)) if x)
    rep = Report(command, _inputs(args))
    t0 = time.perf_counter()
    try:
        args.func(args, rep)
    except (LrcMrError, ValueError, OSError) as exc:
        rep.results = {"error": type(exc).__name__, "message": str(exc)}
        _emit(rep, "json" if args.format == "csv" else args.format, out)
        return 2
    if args.timing:
        rep.runtime_ms = int(round((time.perf_counter() - t0) * 1000))
    _emit(rep, args.format, out)
    return 0 if rep.ok else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
