"""Command line entry point: ``reeskit run|repro|repl``."""

from __future__ import annotations

import argparse
import difflib
import json
import logging
import sys
from pathlib import Path

from .errors import ReesError
from .scenario import BUILTIN, Scenario, builtin, golden_report, run_scenario

log = logging.getLogger("reeskit")

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


def _field_arg(text: str) -> tuple[int, int]:
    try:
        parts = [int(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected p or p,k, got {text!r}") from None
    if len(parts) not in (1, 2):
        raise argparse.ArgumentTypeError(f"expected p or p,k, got {text!r}")
    return parts[0], parts[1] if len(parts) == 2 else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="reeskit", description="Weighted Rees algebras through monoidal transformations.")
    ap.add_argument("--verbose", action="store_true", help="log each step to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a scenario file and print its report")
    run.add_argument("file", type=Path)
    run.add_argument("--field", type=_field_arg, help="override the base field, e.g. 2 or 2,3")
    run.add_argument("--report", type=Path, help="write the report here instead of stdout")
    run.add_argument("--verbose", action="store_true", default=argparse.SUPPRESS)

    repro = sub.add_parser("repro", help="rerun a built-in example and diff it against its golden report")
    repro.add_argument("name", choices=BUILTIN)
    repro.add_argument("--report", type=Path, help="also write the fresh report here")
    repro.add_argument("--verbose", action="store_true", default=argparse.SUPPRESS)

    sub.add_parser("repl", help="interactive stepping loop")
    return ap


def _emit(text: str, path: Path | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text, encoding="utf-8")


def cmd_run(args) -> int:
    try:
        s = Scenario.load(args.file)
        if args.field:
            s = s.with_field(*args.field)
        report = run_scenario(s, log=log.info)
    except (OSError, json.JSONDecodeError, KeyError, ValueError, ReesError) as exc:
        print(f"reeskit: invalid scenario: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(report.text, args.report)
    if args.report is not None:
        print(report.lines[-1])
    return EXIT_OK if report.ok else EXIT_MISMATCH


def cmd_repro(args) -> int:
    report = run_scenario(builtin(args.name), log=log.info)
    if args.report is not None:
        args.report.write_text(report.text, encoding="utf-8")
    golden = golden_report(args.name)
    if report.text == golden and report.ok:
        print(f"{args.name}: matches golden report ({len(report.lines)} lines)")
        return EXIT_OK
    diff = difflib.unified_diff(golden.splitlines(keepends=True), report.text.splitlines(keepends=True),
                                fromfile=f"{args.name}.golden.txt", tofile=f"{args.name} (this run)")
    sys.stdout.writelines(diff)
    print(f"{args.name}: verdict {report.verdict}, report differs from golden" if report.text != golden
          else f"{args.name}: verdict {report.verdict}")
    return EXIT_MISMATCH


def cmd_repl(args) -> int:
    from .repl import Repl

    return Repl().loop()


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.verbose:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(message)s"))
        log.handlers[:] = [handler]
        log.setLevel(logging.INFO)
    return {"run": cmd_run, "repro": cmd_repro, "repl": cmd_repl}[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
