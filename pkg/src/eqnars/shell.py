"""Line-oriented front end and command-line interface.

A Shell owns one Engine and feeds it parsed input lines: events are
stamped and processed immediately, bare numbers advance idle cycles,
``*`` commands mutate the configuration.  Parse errors are reported on a
diagnostic stream and the offending line is skipped.
"""

from __future__ import annotations

import argparse
import sys
from typing import Iterable, Optional, TextIO

from .config import Config
from .engine import Engine
from .narsese import (
    BeliefInput,
    BlankInput,
    CommandInput,
    CommentInput,
    CycleInput,
    GoalInput,
    ParseError,
    parse_line,
)


class Shell:
    def __init__(
        self,
        cfg: Optional[Config] = None,
        out: Optional[TextIO] = None,
        err: Optional[TextIO] = None,
    ):
        self.transcript: list[str] = []
        self.errors: list[str] = []
        self._out = out
        self._err = err
        self.engine = Engine(cfg, sink=self._sink)

    def _sink(self, line: str) -> None:
        self.transcript.append(line)
        if self._out is not None:
            print(line, file=self._out)

    def _warn(self, message: str) -> None:
        self.errors.append(message)
        if self._err is not None:
            print(message, file=self._err)

    def run_line(self, text: str, lineno: Optional[int] = None) -> list[str]:
        """Process one input line; returns the transcript lines it emitted."""
        start = len(self.transcript)
        try:
            parsed = parse_line(text)
        except ParseError as exc:
            where = f"line {lineno}: " if lineno is not None else ""
            self._warn(f"{where}{exc}")
            return []
        if isinstance(parsed, BeliefInput):
            self.engine.input_belief(parsed.term, parsed.truth)
        elif isinstance(parsed, GoalInput):
            self.engine.input_goal(parsed.term, parsed.truth)
        elif isinstance(parsed, CycleInput):
            self.engine.cycles(parsed.count)
        elif isinstance(parsed, CommandInput):
            self.engine.apply_command(parsed.name, parsed.args)
        elif isinstance(parsed, (CommentInput, BlankInput)):
            pass
        return self.transcript[start:]

    def run_lines(self, lines: Iterable[str]) -> list[str]:
        for lineno, line in enumerate(lines, start=1):
            self.run_line(line.rstrip("\n"), lineno)
        return self.transcript

    def run_script(self, path: str) -> list[str]:
        with open(path, "r", encoding="utf-8") as fh:
            return self.run_lines(fh)


def _base_config(args: argparse.Namespace) -> Config:
    cfg = Config()
    if getattr(args, "seed", None) is not None:
        cfg.seed = args.seed
    if getattr(args, "volume", None) is not None:
        cfg.volume = args.volume
    if getattr(args, "threshold", None) is not None:
        cfg.decision_threshold = args.threshold
    return cfg


def _cmd_run(args: argparse.Namespace) -> int:
    shell = Shell(_base_config(args), out=sys.stdout, err=sys.stderr)
    try:
        shell.run_script(args.script)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if shell.errors and args.strict:
        return 1
    return 0


def _cmd_repl(args: argparse.Namespace) -> int:
    shell = Shell(_base_config(args), out=sys.stdout, err=sys.stderr)
    interactive = sys.stdin.isatty()
    while True:
        if interactive:
            try:
                line = input("eqnars> ")
            except (EOFError, KeyboardInterrupt):
                print()
                return 0
        else:
            line = sys.stdin.readline()
            if not line:
                return 0
            line = line.rstrip("\n")
        if line.strip() in ("exit", "quit"):
            return 0
        shell.run_line(line)


def _cmd_harness(args: argparse.Namespace) -> int:
    from .harness import run_fixture

    report = run_fixture(args.fixture, cfg=_base_config(args))
    for line in report.format_report():
        print(line)
    if args.emit_transcript:
        with open(args.emit_transcript, "w", encoding="utf-8") as fh:
            fh.write("\n".join(report.transcript) + "\n")
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="eqnars", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=None, help="RNG seed (default 0)")
        p.add_argument("--volume", type=int, default=None, help="output volume 0-100")
        p.add_argument("--threshold", type=float, default=None, help="decision threshold")

    p_run = sub.add_parser("run", help="run a .nal script and print the transcript")
    p_run.add_argument("script")
    p_run.add_argument("--strict", action="store_true", help="nonzero exit on parse errors")
    common(p_run)
    p_run.set_defaults(func=_cmd_run)

    p_repl = sub.add_parser("repl", help="interactive session")
    common(p_repl)
    p_repl.set_defaults(func=_cmd_repl)

    p_harness = sub.add_parser("harness", help="fixture runner")
    harness_sub = p_harness.add_subparsers(dest="harness_command", required=True)
    p_hrun = harness_sub.add_parser("run", help="run a fixture with expectation directives")
    p_hrun.add_argument("fixture")
    p_hrun.add_argument("--emit-transcript", default=None, metavar="PATH")
    common(p_hrun)
    p_hrun.set_defaults(func=_cmd_harness)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
