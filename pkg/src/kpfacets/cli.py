"""``kpfacets`` command line: check, gen, solve, gu.

Exit codes: 0 when the question was answered (whatever the answer), 2 on
input errors, 3 when the two engines disagree. ``--exit-verdict`` maps a
yes/no answer to 0/1 instead.
"""
from __future__ import annotations

import argparse
import sys
import time
from typing import Optional, Sequence

from . import oracle, reductions
from .core import Inequality, KnapsackInstance, normalize
from .exact_linalg import IncrementalBasis
from .problemfile import (
    ProblemFile,
    ProblemFileError,
    dumps,
    emit,
    enc_int,
    enc_rational,
    encode_point,
    loads,
)
from .recognizer import NotFullDimensional, check_facet, check_validity, face_dimension

EXIT_OK = 0
EXIT_NO = 1
EXIT_INPUT = 2
EXIT_MISMATCH = 3

CHECK_EPILOG = """\
Only inequalities with nonnegative integer data are handled, so the
nonnegativity facets x_i >= 0 are never reported as facets.
"""


class InputError(Exception):
    pass


def _read(path: str) -> ProblemFile:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    return loads(text)


def _oracle_certificate(report: oracle.OracleReport, n: int) -> list:
    basis = IncrementalBasis(n + 1)
    chosen = []
    for p in report.tight_points:
        if basis.add(p + (1,)):
            chosen.append(p)
            if len(chosen) == n:
                break
    return chosen


def _oracle_violation(instance: KnapsackInstance, ineq: Inequality, limit: int):
    for x in oracle.enumerate_feasible(instance, limit):
        if ineq.value(x) > ineq.beta:
            return x
    return None


def _run_check(pf: ProblemFile, what: str, engine: str, threads: int, limit: int) -> tuple[dict, Optional[bool], bool]:
    """Returns (verdict section, yes/no answer or None, engines agree)."""
    pf.require("instance", "inequality")
    inst, ineq = pf.instance, pf.inequality
    if inst.n != ineq.n:
        raise InputError(f"instance has dimension {inst.n}, inequality {ineq.n}")
    if what in ("facet", "dim") and not inst.full_dimensional():
        raise InputError(f"not full-dimensional: max a_i = {max(inst.a)} exceeds b = {inst.b}")
    use_xp = engine in ("xp", "both")
    use_oracle = engine in ("oracle", "both")
    out: dict = {}
    xp_ans = or_ans = None

    if what == "dim" and use_xp and normalize(inst, ineq).tail:
        # the basic-solution dimension count assumes every coefficient positive
        out["notes"] = ["zero-coefficient tail present: dimension computed by the oracle"]
        use_xp, use_oracle = False, True

    if use_oracle:
        try:
            report = oracle.brute_analyze(inst, ineq, limit)
        except oracle.OracleLimitError as exc:
            raise InputError(str(exc)) from exc

    if what == "valid":
        if use_xp:
            v = check_validity(inst, ineq)
            xp_ans = v.valid
            out["xp"] = {"valid": v.valid, "violation": encode_point(v.violation) if v.violation else None}
        if use_oracle:
            or_ans = report.valid
            viol = None if report.valid else _oracle_violation(inst, ineq, limit)
            out["oracle"] = {"valid": report.valid, "violation": encode_point(viol) if viol else None}
    elif what == "facet":
        if use_xp:
            v = check_facet(inst, ineq, threads=threads)
            xp_ans = v.is_facet
            out["xp"] = {
                "is_facet": v.is_facet,
                "reason": v.reason,
                "certificate": [encode_point(p) for p in v.certificate] if v.certificate else None,
                "violation": encode_point(v.violation) if v.violation else None,
                "face_dim": v.face_dim,
                "candidates_examined": v.candidates_examined,
            }
        if use_oracle:
            or_ans = report.is_facet
            cert = _oracle_certificate(report, inst.n) if report.is_facet else None
            out["oracle"] = {
                "is_facet": report.is_facet,
                "valid": report.valid,
                "face_dim": report.face_dim,
                "certificate": [encode_point(p) for p in cert] if cert else None,
            }
    else:
        if use_xp:
            if not check_validity(inst, ineq).valid:
                xp_ans = None
                out["xp"] = {"valid": False, "face_dim": None}
            else:
                xp_ans = face_dimension(inst, ineq)
                out["xp"] = {"valid": True, "face_dim": xp_ans}
        if use_oracle:
            or_ans = report.face_dim if report.valid else None
            out["oracle"] = {"valid": report.valid, "face_dim": or_ans}

    agree = not (use_xp and use_oracle) or xp_ans == or_ans
    answer = xp_ans if use_xp else or_ans
    if what == "dim":
        answer = None
    return out, answer, agree


def cmd_check(args) -> int:
    t0 = time.perf_counter()
    pf = _read(args.file)
    verdict, answer, agree = _run_check(pf, args.what, args.engine, args.threads, args.oracle_limit)
    doc = {
        "command": {"name": "check", "what": args.what, "engine": args.engine, "file": args.file},
        "engine": args.engine,
        "verdict": verdict,
        "agree": agree,
    }
    if answer is not None:
        doc["answer"] = answer
    _finish(doc, args, t0)
    if not agree:
        print("engine disagreement: xp and oracle verdicts differ", file=sys.stderr)
        return EXIT_MISMATCH
    return _exit(args, answer)


GEN_KINDS = ("evc2css", "css2support", "css2facets", "css2ek", "part2member")


def generate(kind: str, pf: ProblemFile) -> ProblemFile:
    out = ProblemFile()
    if kind == "evc2css":
        pf.require("evc")
        out.css, notes = reductions.evc_to_css(pf.evc)
        out.notes = notes
    elif kind == "css2support":
        pf.require("css")
        out.inequality, out.instance = reductions.css_to_supporting(pf.css)
    elif kind == "css2facets":
        pf.require("css")
        out.inequality, out.instance, params = reductions.css_to_facets(pf.css)
        out.params = {"L": params.L, "r": params.r, "N": params.N, "substituted": params.substituted}
        out.notes = list(params.notes)
    elif kind == "css2ek":
        pf.require("css")
        c, out.instance, L = reductions.css_to_ek(pf.css)
        out.ek = (c, L)
    elif kind == "part2member":
        pf.require("partition")
        out.point, out.instance = reductions.partition_to_membership(pf.partition)
    else:  # argparse restricts choices
        raise InputError(f"unknown generator {kind}")
    return out


def cmd_gen(args) -> int:
    pf = _read(args.file)
    sys.stdout.write(emit(generate(args.kind, pf)))
    return EXIT_OK


SOLVE_KINDS = ("css", "evc", "partition", "ek", "membership")


def solve(kind: str, pf: ProblemFile, limit: int) -> dict:
    if kind == "css":
        pf.require("css")
        wit = oracle.css_witness(pf.css, limit)
        return {"answer": wit is not None, "witness": {"subset": list(wit)} if wit is not None else None}
    if kind == "evc":
        pf.require("evc")
        cover = oracle.minimum_vertex_cover(pf.evc, limit)
        yes = len(cover) == pf.evc.k
        return {"answer": yes, "min_cover_size": len(cover), "witness": {"cover": list(cover)} if yes else None}
    if kind == "partition":
        pf.require("partition")
        wit = oracle.partition_witness(pf.partition, limit)
        return {"answer": wit is not None, "witness": {"subset": list(wit)} if wit is not None else None}
    if kind == "ek":
        pf.require("ek", "instance")
        c, L = pf.ek
        best, x = oracle.knapsack_max(c, pf.instance, limit)
        return {"answer": best == L, "max": enc_int(best), "witness": {"argmax": encode_point(x)} if best == L else None}
    if kind == "membership":
        pf.require("point", "instance")
        if len(pf.point) != pf.instance.n:
            raise InputError(f"point has dimension {len(pf.point)}, instance {pf.instance.n}")
        weights = oracle.check_membership(pf.point, pf.instance, limit)
        pts = oracle.enumerate_feasible(pf.instance, limit)
        if weights is None:
            return {"answer": False, "witness": None}
        combo = [{"point": encode_point(p), "weight": enc_rational(wt)} for p, wt in zip(pts, weights) if wt]
        return {"answer": True, "witness": {"combination": combo}}
    raise InputError(f"unknown solver {kind}")


def cmd_solve(args) -> int:
    t0 = time.perf_counter()
    pf = _read(args.file)
    try:
        verdict = solve(args.kind, pf, args.oracle_limit)
    except oracle.OracleLimitError as exc:
        raise InputError(str(exc)) from exc
    doc = {"command": {"name": "solve", "kind": args.kind, "file": args.file}, "engine": "oracle", "verdict": verdict}
    _finish(doc, args, t0)
    return _exit(args, verdict["answer"])


def cmd_gu(args) -> int:
    if args.action == "terms":
        doc = {"terms": [enc_int(f) for f in reductions.gu_sequence(args.values[0]).terms]}
    else:
        if len(args.values) != 2:
            raise InputError("gu decompose needs R and TAU")
        r, tau = args.values
        subset = reductions.gu_decompose(r, tau)
        f = reductions.gu_sequence(2 * r + 1)
        doc = {"r": r, "tau": enc_int(tau), "subset": list(subset), "terms": [enc_int(f[j]) for j in subset]}
    sys.stdout.write(dumps(doc))
    return EXIT_OK


def _finish(doc: dict, args, t0: float) -> None:
    if not args.no_timing:
        doc["timing"] = {"seconds": round(time.perf_counter() - t0, 6)}
    sys.stdout.write(dumps(doc))


def _exit(args, answer: Optional[bool]) -> int:
    if args.exit_verdict and answer is not None:
        return EXIT_OK if answer else EXIT_NO
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--oracle-limit", type=int, default=oracle.DEFAULT_LIMIT, help="max dimension/items for exhaustive engines")
    common.add_argument("--no-timing", action="store_true", help="omit the timing field (byte-stable output)")
    common.add_argument("--exit-verdict", action="store_true", help="exit 0 for yes, 1 for no")

    p = argparse.ArgumentParser(prog="kpfacets", description="Knapsack facet recognition and hardness-reduction generators.")
    sub = p.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("check", parents=[common], help="decide validity / facet / face dimension", epilog=CHECK_EPILOG)
    c.add_argument("file", help="problem file with instance and inequality sections ('-' for stdin)")
    c.add_argument("--what", choices=("valid", "facet", "dim"), default="facet")
    c.add_argument("--engine", choices=("xp", "oracle", "both"), default="xp")
    c.add_argument("--threads", type=int, default=1)
    c.set_defaults(func=cmd_check)

    g = sub.add_parser("gen", parents=[common], help="build a reduction instance")
    g.add_argument("kind", choices=GEN_KINDS)
    g.add_argument("file")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", parents=[common], help="answer a source problem by enumeration")
    s.add_argument("kind", choices=SOLVE_KINDS)
    s.add_argument("file")
    s.set_defaults(func=cmd_solve)

    u = sub.add_parser("gu", parents=[common], help="Gu sequence terms or a subset-sum decomposition")
    u.add_argument("action", choices=("terms", "decompose"))
    u.add_argument("values", type=int, nargs="+", metavar="N", help="M for terms; R TAU for decompose")
    u.set_defaults(func=cmd_gu)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ProblemFileError, NotFullDimensional, oracle.OracleLimitError, ValueError) as exc:
        print(f"kpfacets: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
