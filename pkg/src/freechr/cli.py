"""Command-line front end: ``freechr run --example gcd --query "6, 9"``."""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from typing import Optional

from . import library
from .engine import DEFAULT_MAX_STEPS, run
from .errors import ChrError, DslError, EvaluationError, OracleBudgetExceeded, StepBudgetExceeded, ValueSyntaxError
from .oracle import DEFAULT_CAP, SoundnessMonitor, Status, reachable
from .state import ExecState
from .textlang import load_file
from .values import parse_values, render

EXIT_OK = 0
EXIT_EVAL = 1
EXIT_CONFIG = 2
EXIT_BUDGET = 3
EXIT_UNSOUND = 4


def format_store(s: ExecState) -> str:
    return "{" + ", ".join(render(v) for v in s.store_values()) + "}"


@dataclass
class RunConfig:
    program: str  # builtin name or path
    builtin: bool
    query: list = field(default_factory=list)
    max_steps: int = DEFAULT_MAX_STEPS
    trace_path: Optional[str] = None
    snapshots: bool = False
    verbose: int = 0
    check_soundness: bool = False
    oracle_depth: int = 0
    oracle_budget: int = DEFAULT_CAP


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="freechr", description="Run ground CHR programs.")
    sub = ap.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", help="run a program on a query")
    src = r.add_mutually_exclusive_group(required=True)
    src.add_argument("--example", choices=sorted(library.BUILTINS), help="built-in program")
    src.add_argument("--program", metavar="PATH", help="rule file")
    r.add_argument("--query", default="", help='comma-separated values, e.g. "6, 9"')
    r.add_argument("--trace", metavar="PATH", help="write a JSON-lines trace")
    r.add_argument("--snapshots", action="store_true", help="include state snapshots in the trace")
    r.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS, metavar="N")
    r.add_argument("--check-soundness", action="store_true",
                   help="check every step against the multiset semantics")
    r.add_argument("--oracle-depth", type=int, default=0, metavar="N",
                   help="also check the final store is reachable in at most N rule applications")
    r.add_argument("--oracle-budget", type=int, default=DEFAULT_CAP, metavar="N",
                   help="assignments the oracle may enumerate per step")
    r.add_argument("-v", "--verbose", action="count", default=0)
    return ap


def _config(args) -> RunConfig:
    if args.max_steps < 1:
        raise ValueError("--max-steps must be at least 1")
    return RunConfig(
        program=args.example or args.program,
        builtin=args.example is not None,
        query=parse_values(args.query),
        max_steps=args.max_steps,
        trace_path=args.trace,
        snapshots=args.snapshots,
        verbose=args.verbose,
        check_soundness=args.check_soundness,
        oracle_depth=args.oracle_depth,
        oracle_budget=args.oracle_budget,
    )


def execute(cfg: RunConfig, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        p = library.BUILTINS[cfg.program]() if cfg.builtin else load_file(cfg.program)
    except (DslError, OSError) as e:
        print(f"freechr: cannot load program: {e}", file=err)
        return EXIT_CONFIG

    monitor = SoundnessMonitor(p, cfg.oracle_budget) if cfg.check_soundness else None
    try:
        s, trace = run(p, cfg.query, cfg.max_steps, snapshots=cfg.snapshots,
                       monitors=[monitor] if monitor else [])
    except StepBudgetExceeded as e:
        print(f"freechr: {e}; partial store {format_store(e.state)}", file=err)
        if cfg.trace_path:
            e.trace.write(cfg.trace_path)
            print(f"freechr: partial trace ({len(e.trace.events)} events) written to {cfg.trace_path}",
                  file=err)
        return EXIT_BUDGET
    except EvaluationError as e:
        print(f"freechr: evaluation error: {e}", file=err)
        return EXIT_EVAL

    print(format_store(s), file=out)
    if cfg.trace_path:
        trace.write(cfg.trace_path)
    if cfg.verbose:
        print(f"freechr: {trace.step} steps, {len(trace.apply_events())} rule applications, "
              f"index {s.index}", file=err)

    code = EXIT_OK
    if monitor is not None:
        fails = monitor.failures
        print(f"soundness: {monitor.count(Status.PASS)} pass, "
              f"{monitor.count(Status.UNVERIFIED)} unverified, {len(fails)} fail", file=err)
        for v in fails:
            print("  " + v.describe(), file=err)
        if fails:
            code = EXIT_UNSOUND
    if cfg.oracle_depth > 0:
        applies = len(trace.apply_events())
        try:
            ok = reachable(p, cfg.query, s.store.values(), cfg.oracle_depth, cfg.oracle_budget)
        except OracleBudgetExceeded as e:
            print(f"end-to-end: unverified ({e})", file=err)
        else:
            if ok:
                print("end-to-end: pass", file=err)
            elif applies > cfg.oracle_depth:
                print(f"end-to-end: unverified (run used {applies} applications)", file=err)
            else:
                print("end-to-end: fail (final store not reachable)", file=err)
                code = EXIT_UNSOUND
    return code


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_CONFIG
    try:
        cfg = _config(args)
    except (ValueSyntaxError, ValueError) as e:
        print(f"freechr: invalid configuration: {e}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return execute(cfg)
    except ChrError as e:
        print(f"freechr: {e}", file=sys.stderr)
        return EXIT_EVAL


if __name__ == "__main__":
    sys.exit(main())
