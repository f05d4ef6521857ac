"""ograph: command-line front end.

Exit codes: 0 pass, 1 violation found, 2 invalid input."""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from . import __version__
from . import boundary as bd
from . import conditions as cond
from . import ordinal as od
from . import patheng as pe
from .presentation import PresentationError, build, load, validate
from .report import Report
from .shift import ShiftError, is_cancellative, shift_v
from .starops import actions, correspondence, reps
from .starops.laurent import LaurentError

PASS, FAIL, INVALID = 0, 1, 2


class Invalid(Exception):
    pass


class Outcome:
    def __init__(self, status: str, lines: List[str] = (), findings: List[dict] = (), result=None):
        self.status = status
        self.lines = list(lines)
        self.findings = sorted(findings, key=lambda f: (f["subject"], f["check"]))
        self.result = result

    @property
    def code(self) -> int:
        if self.status == "invalid":
            return INVALID
        return FAIL if self.status == "fail" else PASS


def _styled(text: str, ok: bool) -> str:
    if os.environ.get("ORDGRAPH_COLOR", "auto") == "never" or not sys.stdout.isatty():
        return text
    return f"\x1b[{32 if ok else 31}m{text}\x1b[0m"


def _load(path: str):
    try:
        return load(path)
    except PresentationError as exc:
        findings = [{"check": f.check, "subject": f.subject, "witness": f.detail} for f in exc.findings]
        raise Invalid(str(exc), findings) from None


def _ordinal(text: str) -> od.Ordinal:
    try:
        return od.parse(text)
    except od.OrdinalError as exc:
        raise Invalid(f"bad ordinal {text!r}: {exc}") from None


def _from_report(report: Report, extra: List[str] = ()) -> Outcome:
    status = "pass" if report.passed else "fail"
    findings = [c.as_dict() for c in report.checks if not c.ok]
    lines = list(extra) + [f"{len(report.checks)} checks, {len(report.failures)} failed"]
    return Outcome(status, lines, findings)


# -- commands -------------------------------------------------------------------

def cmd_validate(args) -> Outcome:
    try:
        p = build(_read_json(args.file))
    except PresentationError as exc:
        raise Invalid(str(exc)) from None
    findings = validate(p)
    if findings:
        return Outcome("invalid", [], [{"check": f.check, "subject": f.subject, "witness": f.detail}
                                       for f in findings])
    counts = [f"level {k}: {len(p.names(k))} generators" for k in p.levels()]
    return Outcome("pass", counts)


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise Invalid(f"cannot read {path}: {exc}") from None


def cmd_check(args) -> Outcome:
    p = _load(args.file)
    if args.what == "regular":
        k = args.alpha if args.alpha is not None else 0
        if not 0 <= k <= p.max_level + 1:
            raise Invalid(f"--alpha must lie in 0..{p.max_level + 1}")
        rows, table = [], []
        for v in p.vertices:
            r = cond.regularity(p, v, k)
            word = "regular" if r.regular else "not regular"
            rows.append(f"{v}: {word} (row count {r.row_count})")
            table.append({"vertex": v, "regular": r.regular, "row_count": r.row_count})
        return Outcome("pass", rows, result=table)
    if args.what == "condition-c":
        w = cond.condition_c(p)
        if w is None:
            return Outcome("pass", ["condition (C) holds"])
        return Outcome("fail", [], [{"check": "condition-c", "subject": w.atom,
                                     "witness": f"level {w.level}; {pe.format_path(w.loop)}"}])
    if args.max_n is not None and args.max_n < 1:
        raise Invalid("--max-n must be at least 1")
    res = cond.condition_s(p, args.max_n)
    if res.ok:
        return Outcome(f"verified_up_to({res.verified_up_to})")
    return Outcome("fail", [], [{"check": "condition-s", "subject": "{" + ",".join(res.component) + "}",
                                 "witness": f"level {res.level}, n={res.n}"}])


def cmd_ordinal(args) -> Outcome:
    a = _ordinal(args.a)
    if args.op == "parse":
        return Outcome("pass", [od.format(a)], result=od.format(a))
    if args.b is None:
        raise Invalid(f"{args.op} needs two operands")
    b = _ordinal(args.b)
    if args.op == "add":
        out = od.format(od.add(a, b))
    elif args.op == "mul":
        out = od.format(od.mul(a, b))
    elif args.op == "cmp":
        out = od.cmp(a, b)
    else:
        try:
            out = od.format(od.left_sub(a, b))
        except od.OrdinalError as exc:
            raise Invalid(str(exc)) from None
    return Outcome("pass", [out], result=out)


def cmd_path(args) -> Outcome:
    p = _load(args.file)
    need = {"normalize": 1, "degree": 1, "compose": 2, "head": 2, "tail": 2, "divides": 2}[args.op]
    if len(args.args) != need:
        raise Invalid(f"path {args.op} takes {need} argument(s)")
    try:
        a = pe.parse_path(p, args.args[0])
        if args.op in ("normalize",):
            out = pe.format_path(a)
        elif args.op == "degree":
            out = od.format(pe.degree(p, a))
        elif args.op == "compose":
            out = pe.format_path(pe.compose(p, a, pe.parse_path(p, args.args[1])))
        elif args.op == "divides":
            out = str(pe.divides(p, a, pe.parse_path(p, args.args[1]))).lower()
        else:
            beta = _ordinal(args.args[1])
            fn = pe.head if args.op == "head" else pe.tail
            out = pe.format_path(fn(p, a, beta))
    except (pe.PathError, KeyError, ValueError) as exc:
        if isinstance(exc, Invalid):
            raise
        raise Invalid(str(exc)) from None
    return Outcome("pass", [out], result=out)


def cmd_boundary(args) -> Outcome:
    p = _load(args.file)
    if args.vertex not in p.vertices:
        raise Invalid(f"unknown vertex {args.vertex!r}")
    if args.maximal:
        out = bd.format_star(bd.maximal_extension(p, args.vertex))
        return Outcome("pass", [out], result=[out])
    if args.prefix < 0 or args.cycle < 0:
        raise Invalid("bounds must be non-negative")
    found = [bd.format_star(f) for f in bd.enumerate_boundary(p, args.vertex, args.prefix, args.cycle)]
    return Outcome("pass", found, result=found)


def cmd_shift(args) -> Outcome:
    p = _load(args.file)
    try:
        f = bd.parse_star(p, args.path)
    except (pe.PathError, ValueError) as exc:
        raise Invalid(str(exc)) from None
    if not 0 <= args.alpha <= p.max_level:
        raise Invalid(f"--alpha must lie in 0..{p.max_level}")
    try:
        v = shift_v(p, f, args.alpha)
    except ShiftError:
        w = is_cancellative(p, f, args.alpha)
        return Outcome("fail", [], [{"check": "cancellative", "subject": bd.format_star(f),
                                     "witness": f"eps={od.format(w.eps)}, beta={od.format(w.beta)}"}])
    return Outcome("pass", [str(v)], result=v)


def cmd_rep(args) -> Outcome:
    p = _load(args.file)
    try:
        if args.op in ("verify", "correspondence"):
            if not args.rep:
                raise Invalid(f"rep {args.op} needs a representation file")
            rep = reps.load_rep(args.rep)
        if args.op == "verify":
            levels = [int(x) for x in args.levels.split(",")] if args.levels else None
            return _from_report(reps.verify_ck(p, rep, levels, parallel=args.parallel))
        if args.op == "correspondence":
            k = args.alpha if args.alpha is not None else 0
            small = rep.restrict(correspondence.algebra_generators(p, k))
            report = correspondence.verify_correspondence(p, k, small, rep, samples=args.samples,
                                                          seed=args.seed, parallel=args.parallel)
            return _from_report(report)
        samples_paths = [f for v in p.vertices
                         for f in bd.enumerate_boundary(p, v, args.prefix, args.cycle)]
        if args.op == "tau":
            return _from_report(actions.verify_tau(p, samples_paths, parallel=args.parallel),
                                [f"{len(samples_paths)} boundary samples"])
        zeta = args.zeta if args.zeta is not None else p.max_level + 1
        if not 1 <= zeta <= p.max_level + 1:
            raise Invalid(f"--zeta must lie in 1..{p.max_level + 1}")
        samples = actions.shift_samples(p, zeta, args.prefix, args.cycle, args.radius)
        return _from_report(actions.verify_pi(p, samples, zeta, parallel=args.parallel),
                            [f"{len(samples)} basis samples"])
    except (reps.RepError, LaurentError) as exc:
        raise Invalid(str(exc)) from None


# -- plumbing ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ograph", description="Exact checks for finitely presented ordinal graphs.")
    ap.add_argument("--version", action="version", version=f"ograph {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="structured output")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="load and validate a presentation")
    s.add_argument("file")
    s.set_defaults(run=cmd_validate)

    s = sub.add_parser("check", parents=[common], help="regularity and conditions (C), (S)")
    s.add_argument("what", choices=["regular", "condition-c", "condition-s"])
    s.add_argument("file")
    s.add_argument("--alpha", type=int)
    s.add_argument("--max-n", type=int)
    s.set_defaults(run=cmd_check)

    s = sub.add_parser("ordinal", parents=[common], help="ordinal arithmetic")
    s.add_argument("op", choices=["add", "mul", "sub", "cmp", "parse"])
    s.add_argument("a")
    s.add_argument("b", nargs="?")
    s.set_defaults(run=cmd_ordinal)

    s = sub.add_parser("path", parents=[common], help="path normal forms and factorization")
    s.add_argument("op", choices=["normalize", "degree", "compose", "head", "tail", "divides"])
    s.add_argument("file")
    s.add_argument("args", nargs="*")
    s.set_defaults(run=cmd_path)

    s = sub.add_parser("boundary", parents=[common], help="list boundary paths from a vertex")
    s.add_argument("file")
    s.add_argument("vertex")
    s.add_argument("--prefix", type=int, default=1)
    s.add_argument("--cycle", type=int, default=2)
    s.add_argument("--maximal", action="store_true", help="print the greedy maximal extension")
    s.set_defaults(run=cmd_boundary)

    s = sub.add_parser("shift", parents=[common], help="shift function v(f)_k")
    s.add_argument("file")
    s.add_argument("path")
    s.add_argument("--alpha", type=int, required=True)
    s.set_defaults(run=cmd_shift)

    s = sub.add_parser("rep", parents=[common], help="representation checks")
    s.add_argument("op", choices=["verify", "correspondence", "tau", "pi"])
    s.add_argument("file")
    s.add_argument("rep", nargs="?")
    s.add_argument("--levels", help="comma-separated levels for verify")
    s.add_argument("--alpha", type=int, help="correspondence level k")
    s.add_argument("--zeta", type=int)
    s.add_argument("--samples", type=int, default=20)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--prefix", type=int, default=2)
    s.add_argument("--cycle", type=int, default=2)
    s.add_argument("--radius", type=int, default=2)
    s.add_argument("--parallel", action="store_true")
    s.set_defaults(run=cmd_rep)
    return ap


def _emit(args, argv: List[str], out: Outcome):
    if args.json:
        doc = {"tool": f"ograph {__version__}", "command": argv, "status": out.status,
               "findings": out.findings}
        if out.result is not None:
            doc["result"] = out.result
        print(json.dumps(doc, sort_keys=True, indent=2))
        return
    bare = args.command in ("ordinal", "path", "boundary", "shift") and out.status == "pass"
    if not bare:
        print(_styled(f"status: {out.status}", out.code == PASS))
    for line in out.lines:
        print(line)
    for f in out.findings:
        w = f.get("witness")
        print(f"{f['check']} {f['subject']}" + (f": {w}" if w else ""))


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    as_json = "--json" in argv
    args = build_parser().parse_args([a for a in argv if a != "--json"])
    args.json = as_json
    try:
        out = args.run(args)
    except Invalid as exc:
        findings = exc.args[1] if len(exc.args) > 1 else []
        out = Outcome("invalid", [str(exc.args[0])], findings)
    _emit(args, argv, out)
    return out.code


if __name__ == "__main__":
    sys.exit(main())
