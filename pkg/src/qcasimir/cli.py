"""Command line front end.

Every subcommand builds one report: a JSON document with the tool version,
the configuration echo, one row per check and summary counts.  Without
``--out`` the JSON goes to stdout and the text summary to stderr; with
``--out`` the JSON is written to the file and the summary to stdout.

Exit status: 0 when no gating row fails, 1 on a failing check, 2 on bad
flags or unreadable input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .casimir import CasimirError, CentralExpr
from .qscalar import ScalarSyntaxError, parse_rational
from .rmatrix import RMatrixError
from .suites import (SUITES, Row, RunConfig, Setting, braid_rows, cutjoin_rows,
                     idempotent_rows, run_suite, spectrum_rows, summarize, trace_rows)
from .tensor import DEFAULT_CAP, SizeCapError
from .young import IdempotentError, Partition

__all__ = ["main", "run", "execute", "build_parser", "text_summary"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _common(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group()
    src.add_argument("--preset", default="standard", choices=["standard", "multiparameter"],
                     help="built-in symmetry (default: standard)")
    src.add_argument("--file", help="R-matrix JSON document")
    p.add_argument("--n", type=int, default=2, help="dimension N of V for presets (default 2)")
    p.add_argument("--q", action="append", help="value of q, repeatable (default 7/5, 2, 13/7)")
    p.add_argument("--max-k", type=int, default=4, help="largest platform length (default 4)")
    p.add_argument("--out", help="write the JSON report here")
    p.add_argument("--caps", type=int, default=DEFAULT_CAP,
                   help=f"bound on N^k for returned operators (default {DEFAULT_CAP})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcasimir",
                                     description="Exact checks for q-Casimir and cut-and-join operators.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate-r", help="braid and Hecke residuals")
    _common(p)
    p = sub.add_parser("rank", help="rank, Hilbert coefficients and trace convention")
    _common(p)
    p = sub.add_parser("idempotents", help="primitive idempotent residuals")
    _common(p)
    p.add_argument("--k", type=int, help="only this platform length")
    p = sub.add_parser("casimir-spectrum", help="lambda-characters of a central element")
    _common(p)
    p.add_argument("--k", type=int, required=True, help="platform length")
    p.add_argument("--expr", default="trL", help="trL | e:J | p:J | s:LAMBDA (default trL)")
    p = sub.add_parser("check", help="run check suites")
    _common(p)
    p.add_argument("--suite", action="append", choices=list(SUITES) + ["all"],
                   help="suite to run, repeatable (default all)")
    p = sub.add_parser("cutjoin", help="normal-ordered cut-and-join operator")
    _common(p)
    p.add_argument("--delta", required=True, help="partition, e.g. 2 or 1,1 or 3")
    p.add_argument("--k", type=int, help="platform length for the identity check")
    p.add_argument("--spectrum", help="partition lambda whose eigenvalue is reported")
    return parser


def _config(args, suites=SUITES) -> RunConfig:
    try:
        qs = tuple(parse_rational(t) for t in args.q) if args.q else None
    except (ScalarSyntaxError, ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad --q value: {exc}") from exc
    if args.file is not None and not Path(args.file).is_file():
        raise UsageError(f"cannot read R-matrix file {args.file!r}")
    try:
        kw = {"qs": qs} if qs else {}
        return RunConfig(preset=args.preset, file=args.file, N=args.n, max_k=args.max_k,
                         suites=tuple(suites), cap=args.caps, out=args.out, **kw)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _settings(cfg: RunConfig, word_k: int | None = None) -> list[Setting]:
    out = []
    for q in cfg.qs:
        try:
            out.append(Setting(cfg, q, word_k))
        except (RMatrixError, OSError, ValueError) as exc:
            raise UsageError(f"cannot build the symmetry at q = {q}: {exc}") from exc
    return out


def _guarded(name: str, s: Setting, fn) -> list[Row]:
    """Run one suite; algebraic failures become FAIL rows, not crashes."""
    try:
        return fn()
    except (RMatrixError, IdempotentError, CasimirError, SizeCapError, ArithmeticError) as exc:
        return [s.row(name, "error", {}, {"error": f"{type(exc).__name__}: {exc}"}, "FAIL")]


def _partition(text: str, flag: str) -> Partition:
    try:
        return Partition(text)
    except ValueError as exc:
        raise UsageError(f"bad {flag} value {text!r}: {exc}") from exc


def run(argv=None) -> tuple[int, dict]:
    """Parse ``argv`` and execute; returns (exit status, report)."""
    return execute(build_parser().parse_args(argv))


def execute(args: argparse.Namespace) -> tuple[int, dict]:
    cmd = args.command
    suites = SUITES
    if cmd == "check" and args.suite and "all" not in args.suite:
        suites = tuple(s for s in SUITES if s in args.suite)
    cfg = _config(args, suites if cmd == "check" else ())
    rows: list[Row] = []
    if cmd == "cutjoin":
        delta = _partition(args.delta, "--delta")
        lam = _partition(args.spectrum, "--spectrum") if args.spectrum else None
        need = max([delta.weight, args.k or 0, lam.weight if lam else 0])
        settings = _settings(cfg, word_k=need)
    else:
        settings = _settings(cfg)
    for s in settings:
        if cmd == "validate-r":
            rows += _guarded("braid", s, lambda: braid_rows(s))
        elif cmd == "rank":
            rows += [r for r in _guarded("trace", s, lambda: trace_rows(s))
                     if r.check in ("rank", "trace-data", "error")]
        elif cmd == "idempotents":
            ks = [args.k] if args.k is not None else None
            rows += _guarded("idempotents", s, lambda: idempotent_rows(s, ks))
        elif cmd == "casimir-spectrum":
            try:
                x = CentralExpr.parse(args.expr)
            except ValueError as exc:
                raise UsageError(f"bad --expr value {args.expr!r}: {exc}") from exc
            rows += _guarded("spectrum", s, lambda: spectrum_rows(s, x, ks=[args.k]))
        elif cmd == "check":
            for name in cfg.suites:
                rows += _guarded(name, s, lambda: run_suite(name, s))
        elif cmd == "cutjoin":
            ks = [args.k] if args.k is not None else None
            rows += _guarded("cutjoin", s, lambda: cutjoin_rows(
                s, deltas=[delta], ks=ks, lambdas=[lam] if lam is not None else None))
    summary = summarize(rows)
    report = {
        "tool": "qcasimir",
        "version": __version__,
        "command": cmd,
        "config": cfg.echo(),
        "rows": [r.as_dict() for r in rows],
        "summary": summary,
    }
    return (EXIT_OK if summary["ok"] else EXIT_FAIL), report


def _brief(values: dict, params: dict) -> str:
    parts = []
    for key, v in values.items():
        if v is None or key in params:
            continue
        if isinstance(v, (list, dict)) and len(json.dumps(v)) > 60:
            continue
        parts.append(f"{key}={json.dumps(v) if not isinstance(v, str) else v}")
    return " ".join(parts)


def text_summary(report: dict) -> str:
    lines = []
    for r in report["rows"]:
        params = " ".join(f"{k}={v}" for k, v in r["params"].items())
        lines.append(f"{r['status']:<11} {r['suite']:<12} {r['check']:<22} {params}  {_brief(r['values'], r['params'])}")
    s = report["summary"]
    counts = ", ".join(f"{k} {s[k]}" for k in ("PASS", "FAIL", "EVIDENCE", "DISCREPANCY",
                                                "UNANCHORED", "INFO") if s[k])
    lines.append(f"summary: {counts or 'no rows'}; evidence mismatches {s['evidence_mismatch']}")
    return "\n".join(lines)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        status, report = execute(args)
    except UsageError as exc:
        print(f"qcasimir: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    doc = json.dumps(report, indent=2) + "\n"
    summary = text_summary(report)
    if args.out:
        try:
            Path(args.out).write_text(doc)
        except OSError as exc:
            print(f"qcasimir: error: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_USAGE
        print(summary)
    else:
        sys.stdout.write(doc)
        print(summary, file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
