"""Command-line front end.

Exit codes: 0 Holds (or a report carrying a finding), 1 Fails,
4 Inconclusive, 2 bad input, 3 evaluation failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .domains import DomainSpace, in_domain, transform
from .duals import (
    THEOREMS,
    DualKind,
    check_class,
    class_oracle,
    compare,
    dual_membership,
    dual_oracle,
    matrix_class,
    transfer_check,
)
from .documents import load_matrix, load_sequence
from .errors import FuzzySeqError
from .fuzzy_core import format_number
from .inf_matrix import image, toeplitz_audit, truncate
from .seq_spaces import SPACE_NAMES, in_c, in_space
from .verdict import DEFAULT_POLICY, Status, TruncationPolicy, _jsonable

EXIT_CODES = {Status.HOLDS: 0, Status.FAILS: 1, Status.INCONCLUSIVE: 4}
EXIT_PARSE = 2
EXIT_EVAL = 3
MAX_SHOW = 64
MODE_ENV = "FUZZYSEQ_MODE"


class InputError(Exception):
    pass


def _mode(args) -> str:
    mode = os.environ.get(MODE_ENV) or args.mode
    if mode not in ("float", "rational"):
        raise InputError(f"mode must be 'float' or 'rational', got {mode!r}")
    return mode


def _policy(args) -> TruncationPolicy:
    ladder = DEFAULT_POLICY.ladder
    if args.ladder:
        try:
            ladder = tuple(int(x) for x in args.ladder.split(","))
        except ValueError:
            raise InputError(f"--ladder must be comma-separated integers, got {args.ladder!r}") from None
    try:
        return TruncationPolicy(ladder, args.tol, args.window)
    except FuzzySeqError as exc:
        raise InputError(str(exc)) from exc


# -- commands -------------------------------------------------------------
#
# Each command takes (args, exact, policy) and returns a report dict. The
# loading of documents happens in a ``prepare`` step so bad input maps to
# exit code 2 and evaluation failures to 3.


def _show(args, exact, policy):
    if not 1 <= args.n <= MAX_SHOW:
        raise InputError(f"--n must be between 1 and {MAX_SHOW} for show")
    A = load_matrix(args.matrix, exact)
    return lambda: {"matrix": A.name, "n": args.n, "block": truncate(A, args.n)}


def _transform(args, exact, policy):
    if args.n < 1:
        raise InputError("--n must be positive")
    s = load_sequence(args.seq, exact)
    steps = []
    for ref in args.matrix:
        if ref in ("phi", "psi"):
            steps.append((ref, lambda x, m="omega" if ref == "phi" else "gamma": transform(x, m, "abs")))
        else:
            A = load_matrix(ref, exact)
            steps.append((A.name, lambda x, A=A: image(A, x)))

    def run():
        out = s
        for _, step in steps:
            out = step(out)
        return {
            "matrices": [name for name, _ in steps],
            "n": args.n,
            "spreads": s.spreads.to_dict(),
            "centers": out.centers(args.n),
        }

    return run


def _space_test(args, exact, policy):
    if args.space not in SPACE_NAMES:
        raise InputError(f"--space must be one of {SPACE_NAMES}")
    s = load_sequence(args.seq, exact)

    def run():
        if args.space == "c":
            verdict, limit = in_c(s, policy)
            return {"space": "c", "verdict": verdict, "limit": limit}
        return {"space": args.space, "verdict": in_space(s, args.space, policy, args.p)}

    return run


def _domain_test(args, exact, policy):
    space = DomainSpace.parse(args.space)
    s = load_sequence(args.seq, exact)
    return lambda: {
        "space": space.name,
        "transform": args.transform,
        "verdict": in_domain(s, space, policy, args.transform),
    }


def _dual_test(args, exact, policy):
    space = DomainSpace.parse(args.space)
    try:
        kind = DualKind(args.kind)
    except ValueError:
        raise InputError(f"--kind must be one of {[k.value for k in DualKind]}") from None
    a = load_sequence(args.a, exact)

    def run():
        report = dual_membership(a, space, kind, policy)
        out = report.to_dict()
        out["verdict"] = report.verdict
        if args.oracle:
            oracle = dual_oracle(a, space, kind, policy=policy, transform_mode=args.transform)
            out["oracle"] = oracle
            out["oracle_transform"] = args.transform
            found = compare(oracle, report.verdict, {"space": space.name, "kind": kind.value})
            if found:
                out["finding"] = found["finding"]
        return out

    return run


def _class_check(args, exact, policy):
    A = load_matrix(args.matrix, exact)
    cls = matrix_class(args.cls)

    def run():
        report = check_class(A, cls, policy)
        out = report.to_dict()
        out["verdict"] = report.overall
        if args.oracle:
            oracle = class_oracle(A, cls, policy=policy)
            out["oracle"] = oracle
            found = compare(oracle, report.overall, {"matrix": A.name, "class": cls.label})
            if found:
                out["finding"] = found["finding"]
        return out

    return run


def _transfer_check(args, exact, policy):
    if args.theorem not in THEOREMS:
        raise InputError(f"--theorem must be one of {list(THEOREMS)}")
    if args.n < 1:
        raise InputError("--n must be positive")
    P = load_matrix(args.matrix, exact)
    x = load_sequence(args.seq, exact)

    def run():
        report = transfer_check(P, args.theorem, x, args.n)
        out = report.to_dict()
        out["status"] = report.status
        return out

    return run


def _toeplitz_audit(args, exact, policy):
    A = load_matrix(args.matrix, exact)

    def run():
        report = toeplitz_audit(A, policy)
        report["status"] = report["regular"]
        return report

    return run


COMMANDS = {
    "show": _show,
    "transform": _transform,
    "space-test": _space_test,
    "domain-test": _domain_test,
    "dual-test": _dual_test,
    "class-check": _class_check,
    "transfer-check": _transfer_check,
    "toeplitz-audit": _toeplitz_audit,
}


# -- parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fuzzyseq", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", default="float", help="float or rational (FUZZYSEQ_MODE overrides)")
    common.add_argument("--ladder", help="comma-separated cutoffs, e.g. 16,32,64,128,256")
    common.add_argument("--tol", type=float, default=DEFAULT_POLICY.tol)
    common.add_argument("--window", type=int, default=DEFAULT_POLICY.stabilization_window)
    common.add_argument("--json", action="store_true", help="print the JSON report instead of text")
    common.add_argument("--out", help="also write the JSON report to this file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("show", parents=[common], help="print a leading block of a matrix")
    p.add_argument("--matrix", required=True)
    p.add_argument("--n", type=int, default=4)

    p = sub.add_parser("transform", parents=[common], help="apply matrices (or phi/psi) to a sequence")
    p.add_argument("--matrix", action="append", required=True, help="repeatable; applied in order")
    p.add_argument("--seq", required=True)
    p.add_argument("--n", type=int, default=10)

    p = sub.add_parser("space-test", parents=[common], help="membership in a classical space")
    p.add_argument("--seq", required=True)
    p.add_argument("--space", required=True, help=", ".join(SPACE_NAMES))
    p.add_argument("--p", type=float, default=1.0, help="exponent for lp")

    p = sub.add_parser("domain-test", parents=[common], help="membership in an omega/gamma domain")
    p.add_argument("--seq", required=True)
    p.add_argument("--space", required=True, help="int-linf, int-c, int-c0, diff-linf, diff-c, diff-c0")
    p.add_argument("--transform", choices=("raw", "abs"), default="raw")

    p = sub.add_parser("dual-test", parents=[common], help="membership of a in an alpha/beta/gamma dual")
    p.add_argument("--a", required=True)
    p.add_argument("--space", required=True)
    p.add_argument("--kind", required=True, help="alpha_r, beta_r or gamma_r")
    p.add_argument("--oracle", action="store_true", help="cross-check against sample members")
    p.add_argument("--transform", choices=("raw", "abs"), default="raw", help="domain reading for the oracle corpus")

    p = sub.add_parser("class-check", parents=[common], help="check a matrix against a class (X:Y)")
    p.add_argument("--matrix", required=True)
    p.add_argument("--class", dest="cls", required=True, help='e.g. "linf:linf"')
    p.add_argument("--oracle", action="store_true", help="cross-check against sample members")

    p = sub.add_parser("transfer-check", parents=[common], help="two-sided transfer identity")
    p.add_argument("--matrix", required=True)
    p.add_argument("--theorem", required=True, help="omega-source, gamma-source, omega-target, gamma-target")
    p.add_argument("--seq", required=True)
    p.add_argument("--n", type=int, default=16)

    p = sub.add_parser("toeplitz-audit", parents=[common], help="classical regularity conditions")
    p.add_argument("--matrix", required=True)
    return parser


# -- output ---------------------------------------------------------------


def _status(report: dict) -> Status | None:
    status = report.get("status")
    if status is None and "verdict" in report:
        status = report["verdict"].status
    return Status(status) if status is not None else None


def exit_code(report: dict, command: str) -> int:
    status = _status(report)
    if status is None:
        return 0
    # A discrepancy is a successful analysis; the audit keeps its own
    # status so a non-regular matrix exits 1.
    if report.get("finding") and command != "toeplitz-audit":
        return 0
    return EXIT_CODES[status]


def _text(report: dict, mode: str) -> str:
    lines = [f"mode: {mode}"]
    command = report["command"]
    if command == "show":
        block = report["block"]
        cells = [[format_number(x) for x in row] for row in block]
        width = max(len(c) for row in cells for c in row)
        lines.append(f"{report['matrix']} leading {report['n']}x{report['n']} block:")
        lines += ["  " + " ".join(c.rjust(width) for c in row) for row in cells]
        return "\n".join(lines)
    if command == "transform":
        lines.append(f"{' -> '.join(report['matrices'])} applied, spreads {report['spreads']}")
        lines += [f"  {k:>4}  {format_number(c)}" for k, c in enumerate(report["centers"], 1)]
        return "\n".join(lines)
    status = _status(report)
    lines.append(f"{command}: {status.value if status else 'done'}")
    skip = {"command", "mode", "status", "policy", "lhs", "rhs"}
    for key, value in report.items():
        if key in skip:
            continue
        rendered = _jsonable(value)
        if isinstance(rendered, dict) and "status" in rendered:
            rendered = rendered["status"]
        elif isinstance(rendered, (dict, list)):
            rendered = json.dumps(rendered)
            if len(rendered) > 160:
                rendered = rendered[:157] + "..."
        lines.append(f"  {key}: {rendered}")
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        mode = _mode(args)
        exact = mode == "rational"
        policy = _policy(args)
        run = COMMANDS[args.command](args, exact, policy)
    except (InputError, FuzzySeqError, ValueError, KeyError) as exc:
        print(f"fuzzyseq: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        body = run()
    except (FuzzySeqError, ArithmeticError, ValueError, RuntimeError) as exc:
        print(f"fuzzyseq: evaluation failed: {exc}", file=sys.stderr)
        return EXIT_EVAL
    report = {"command": args.command, "mode": mode, "policy": policy.to_dict(), **body}
    status = _status(report)
    if status is not None:
        report["status"] = status.value
    rendered = _jsonable(report)
    if args.out:
        Path(args.out).write_text(json.dumps(rendered, indent=2) + "\n")
    print(json.dumps(rendered, indent=2) if args.json else _text(report, mode))
    return exit_code(report, args.command)


if __name__ == "__main__":
    sys.exit(main())
