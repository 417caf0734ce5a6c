"""Command-line front end.

Exit codes: 0 success or positive verdict, 1 domain error or negative
verdict, 2 inconclusive analysis, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bench as benchmod
from . import kernel as kernels
from .accs import correspondence_check, encode, parse_process
from .coherence import is_coherent
from .core import structure_size
from .errors import Inconclusive, RevStructError
from .reach import reachable_bfs, reachable_coherent
from .semantics import Policy, backward_normal_form, enabled_steps, run
from .syntax import parse_structure, parse_trace, print_trace
from .traces import DEFAULT_BOUND, perm_equiv, standardize

EXIT_OK, EXIT_NO, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


class Output:
    """Collects text lines or a JSON record for one command."""

    def __init__(self, command: str, fmt: str, stdout):
        self.command = command
        self.json = fmt == "json"
        self.stdout = stdout

    def text(self, line: str = "") -> None:
        if not self.json:
            print(line, file=self.stdout)

    def record(self, verdict: str, **data) -> None:
        if self.json:
            print(json.dumps({"command": self.command, "verdict": verdict, **data}), file=self.stdout)


def _read(path: str, stdin) -> str:
    if path == "-":
        return stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise RevStructError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str, text: str, stdout) -> None:
    if path == "-":
        stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {text!r}")
    return value


def _sizes(text: str) -> list[int]:
    try:
        sizes = [int(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list: {text!r}") from None
    if not sizes or min(sizes) < 2:
        raise argparse.ArgumentTypeError("sizes must be integers >= 2")
    return sizes


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    parser = _Parser(prog="revstruct", description="Reversible structures workbench.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("parse", parents=[common], help="parse a structure and print it canonically")
    p.add_argument("file")
    p = sub.add_parser("print", parents=[common], help="canonical form of a structure, trace or process")
    p.add_argument("file")
    p.add_argument("--kind", choices=("structure", "trace", "process"), default="structure")
    p = sub.add_parser("step", parents=[common], help="list enabled steps")
    p.add_argument("file")
    p = sub.add_parser("run", parents=[common], help="run under a policy")
    p.add_argument("file")
    p.add_argument("--policy", default="first", help="first | random:SEED | forward | backward | interactive")
    p.add_argument("--fuel", type=_positive_int, default=100)
    p.add_argument("--emit-trace", metavar="OUT")
    p = sub.add_parser("nf", parents=[common], help="backward normal form")
    p.add_argument("file")
    p = sub.add_parser("standardize", parents=[common], help="standardize a trace")
    p.add_argument("trace")
    p = sub.add_parser("equiv", parents=[common], help="permutation equivalence of two traces")
    p.add_argument("trace1")
    p.add_argument("trace2")
    p.add_argument("--bound", type=_positive_int, default=DEFAULT_BOUND)
    p = sub.add_parser("coherent", parents=[common], help="coherence report")
    p.add_argument("file")
    p = sub.add_parser("reach", parents=[common], help="reachability query")
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    p.add_argument("--oracle", action="store_true", help="explicit-state search instead of the coherent procedure")
    p.add_argument("--max-states", type=_positive_int, default=10_000)
    p.add_argument("--witness", metavar="OUT")
    p.add_argument("--kernel", choices=("auto", "compiled", "python"), default="auto")
    p = sub.add_parser("compile", parents=[common], help="encode a linear asynchronous process")
    p.add_argument("file")
    p.add_argument("-o", "--output", default="-")
    p = sub.add_parser("correspond", parents=[common], help="encoding correspondence check")
    p.add_argument("file")
    p.add_argument("--max-states", type=_positive_int, default=10_000)
    p = sub.add_parser("bench", parents=[common], help="scaling table for coherent reachability")
    p.add_argument("--family", choices=("chain",), default="chain")
    p.add_argument("--sizes", type=_sizes, default=list(benchmod.DEFAULT_SIZES))
    p.add_argument("--kernel", choices=("auto", "compiled", "python", "both"), default="auto")
    p.add_argument("--repeat", type=_positive_int, default=3)
    return parser


def _interactive_chooser(stdin, stdout):
    def choose(state, labels):
        print(f"state: {state}", file=stdout)
        for i, t in enumerate(labels):
            print(f"  [{i}] {t}", file=stdout)
        while True:
            print("choose index (q to stop): ", end="", file=stdout, flush=True)
            line = stdin.readline()
            if not line or line.strip() in ("q", "quit"):
                return None
            try:
                index = int(line)
            except ValueError:
                continue
            if 0 <= index < len(labels):
                return index

    return choose


def _cmd_parse(args, out, stdin):
    s = parse_structure(_read(args.file, stdin))
    out.text(str(s))
    out.record("ok", structure=str(s), size=structure_size(s))
    return EXIT_OK


def _cmd_print(args, out, stdin):
    text = _read(args.file, stdin)
    if args.kind == "trace":
        rendered = print_trace(parse_trace(text)).rstrip("\n")
    elif args.kind == "process":
        rendered = parse_process(text).text
    else:
        rendered = str(parse_structure(text))
    out.text(rendered)
    out.record("ok", kind=args.kind, text=rendered)
    return EXIT_OK


def _cmd_step(args, out, stdin):
    labels = enabled_steps(parse_structure(_read(args.file, stdin)))
    for t in labels:
        out.text(str(t))
    out.record("ok", steps=[str(t) for t in labels])
    return EXIT_OK


def _cmd_run(args, out, stdin):
    if args.policy == "interactive" and args.file == "-":
        raise UsageError("revstruct run: interactive mode reads choices from standard input; pass a file")
    chooser = _interactive_chooser(stdin, out.stdout) if args.policy == "interactive" else None
    try:
        policy = Policy.parse(args.policy, chooser)
    except ValueError as exc:
        raise UsageError(f"revstruct run: {exc}") from None
    s = parse_structure(_read(args.file, stdin))
    trace = run(s, policy, args.fuel)
    final = trace.info["final"]
    if args.emit_trace:
        _write(args.emit_trace, print_trace(trace), out.stdout)
    for t in trace.steps:
        out.text(str(t))
    out.text(f"final: {final}")
    out.text(f"steps: {len(trace)} ({trace.info['stop']})")
    out.record("ok", final=str(final), steps=[str(t) for t in trace.steps], stop=trace.info["stop"])
    return EXIT_OK


def _cmd_nf(args, out, stdin):
    s = parse_structure(_read(args.file, stdin))
    nf, trace = backward_normal_form(s)
    out.text(f"nf: {nf}")
    for t in trace.steps:
        out.text(str(t))
    out.record("ok", nf=str(nf), steps=[str(t) for t in trace.steps])
    return EXIT_OK


def _cmd_standardize(args, out, stdin):
    trace = parse_trace(_read(args.trace, stdin))
    std = standardize(trace)
    stuck = std.info["stuck"]
    out.text(print_trace(std).rstrip("\n"))
    for i in stuck:
        out.text(f"# stuck adjacency at steps {i + 1},{i + 2}: {std.steps[i]} ; {std.steps[i + 1]}")
    out.record("ok", trace=print_trace(std), stuck=[i + 1 for i in stuck])
    return EXIT_OK


def _cmd_equiv(args, out, stdin):
    t1 = parse_trace(_read(args.trace1, stdin))
    t2 = parse_trace(_read(args.trace2, stdin))
    same = perm_equiv(t1, t2, args.bound)
    verdict = "equivalent" if same else "not-equivalent"
    out.text(verdict)
    out.record(verdict)
    return EXIT_OK if same else EXIT_NO


def _cmd_coherent(args, out, stdin):
    report = is_coherent(parse_structure(_read(args.file, stdin)))
    verdict = "coherent" if report.coherent else "incoherent"
    out.text(verdict)
    for v in report.violations:
        out.text(f"violation {v}")
    out.record(verdict, violations=[str(v) for v in report.violations])
    return EXIT_OK if report.coherent else EXIT_NO


def _cmd_reach(args, out, stdin):
    source = parse_structure(_read(args.source, stdin))
    target = parse_structure(_read(args.target, stdin))
    try:
        if args.oracle:
            answer = reachable_bfs(source, target, max(args.max_states, 1))
        else:
            answer = reachable_coherent(source, target, kernel=args.kernel)
    except Inconclusive as exc:
        out.text(f"inconclusive: {exc}")
        out.record("inconclusive", explored=exc.explored, bound=exc.bound)
        return EXIT_INCONCLUSIVE
    verdict = "reachable" if answer.reachable else "unreachable"
    out.text(verdict)
    data = {"explored": answer.stats.explored}
    if answer.witness is not None:
        out.text(f"witness length: {len(answer.witness)}")
        data["witness_length"] = len(answer.witness)
        if args.witness:
            _write(args.witness, print_trace(answer.witness), out.stdout)
    out.record(verdict, **data)
    return EXIT_OK if answer.reachable else EXIT_NO


def _cmd_compile(args, out, stdin):
    enc = encode(parse_process(_read(args.file, stdin)))
    if args.output != "-":
        _write(args.output, str(enc.structure) + "\n", out.stdout)
    else:
        out.text(str(enc.structure))
    for t, a in enc.trigger_map:
        out.text(f"trigger {t} -> {a}?")
    out.record("ok", structure=str(enc.structure), triggers=dict(enc.trigger_map))
    return EXIT_OK


def _cmd_correspond(args, out, stdin):
    p = parse_process(_read(args.file, stdin))
    try:
        report = correspondence_check(p, max(args.max_states, 1))
    except Inconclusive as exc:
        out.text(f"inconclusive: {exc}")
        out.record("inconclusive", bound=exc.bound)
        return EXIT_INCONCLUSIVE
    verdict = "pass" if report.passed else "fail"
    out.text(verdict)
    out.text(f"rccs states: {report.states_rccs}, encoding states: {report.states_encoding}")
    for obs in sorted(report.observables_rccs):
        out.text("observable: {" + ", ".join(obs) + "}")
    for f in report.failures:
        out.text(f"failure: {f}")
    out.record(
        verdict,
        states_rccs=report.states_rccs,
        states_encoding=report.states_encoding,
        observables=[list(o) for o in sorted(report.observables_rccs)],
        failures=report.failures,
    )
    return EXIT_OK if report.passed else EXIT_NO


def _cmd_bench(args, out, stdin):
    if args.kernel == "both":
        which = ["python"] + (["compiled"] if kernels.COMPILED_AVAILABLE else [])
    else:
        which = [args.kernel]
    for k in which:
        rows = benchmod.bench_chain(args.sizes, kernel=k, repeat=max(args.repeat, 1))
        slope = benchmod.loglog_slope(rows) if len(rows) > 1 else float("nan")
        out.text(benchmod.format_table(rows))
        out.text(f"log-log slope ({rows[0].kernel}): {slope:.3f}")
        out.record(
            "ok",
            kernel=rows[0].kernel,
            slope=slope,
            rows=[{"n": r.n, "size": r.size, "steps": r.steps, "seconds": r.seconds} for r in rows],
        )
    return EXIT_OK


COMMANDS = {
    "parse": _cmd_parse,
    "print": _cmd_print,
    "step": _cmd_step,
    "run": _cmd_run,
    "nf": _cmd_nf,
    "standardize": _cmd_standardize,
    "equiv": _cmd_equiv,
    "coherent": _cmd_coherent,
    "reach": _cmd_reach,
    "compile": _cmd_compile,
    "correspond": _cmd_correspond,
    "bench": _cmd_bench,
}


def main(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        out = Output(args.command, args.format, stdout)
        return COMMANDS[args.command](args, out, stdin)
    except UsageError as exc:
        print(exc, file=stderr)
        return EXIT_USAGE
    except Inconclusive as exc:
        print(f"inconclusive: {exc}", file=stderr)
        return EXIT_INCONCLUSIVE
    except RevStructError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_NO
    except SystemExit as exc:  # --help
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
