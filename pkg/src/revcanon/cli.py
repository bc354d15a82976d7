"""Command-line interface.

Exit codes: 0 success (or equivalent), 1 inequivalent, 2 usage error,
3 parse error, 4 width cap exceeded, 5 trace verification failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .canon import gray_path, validate_canonical
from .core import Circuit, WidthCapError
from .fmt import (
    ParseError,
    format_trace,
    parse_circuit,
    parse_real,
    parse_trace,
    print_circuit,
    render_ascii,
    format_permutation_table,
)
from .normalize import canonicalize, equivalent
from .rules import ALL_RULES, RULE_DOCS, RewriteTrace, TraceReplayError, optimize, replay
from .sim import simulate

EXIT_OK = 0
EXIT_INEQUIVALENT = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_WIDTH_CAP = 4
EXIT_TRACE = 5


def _load_circuit(path: str) -> Circuit:
    text = Path(path).read_text(encoding="utf-8")
    if path.endswith(".real"):
        return parse_real(text)
    return parse_circuit(text)


def _resolve_path(name: str, width: int):
    if name != "gray":
        raise argparse.ArgumentTypeError(f"unknown path {name!r}; only 'gray' is built in")
    return gray_path(width)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--max-sim-width",
        type=int,
        default=16,
        metavar="N",
        help="simulation width cap (default 16)",
    )
    common.add_argument(
        "--max-canon-width",
        type=int,
        default=8,
        metavar="N",
        help="canonicalization width cap (default 8)",
    )

    parser = argparse.ArgumentParser(
        prog="revcanon",
        description="Rewrite, canonicalize, and compare reversible circuits.",
        parents=[common],
    )
    parser.add_argument("--version", action="version", version=f"revcanon {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sim", parents=[common], help="print the permutation table")
    p.add_argument("file")

    p = sub.add_parser("canon", parents=[common], help="print the canonical form")
    p.add_argument("file")
    p.add_argument("--path", default="gray", help="Hamiltonian path (default: gray)")
    p.add_argument("--trace", metavar="OUT", help="write the rewrite trace here")
    p.add_argument(
        "--form",
        action="store_true",
        help="print the block summary instead of the circuit",
    )

    p = sub.add_parser("equiv", parents=[common], help="decide circuit equivalence")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--path", default="gray")
    p.add_argument("--certificate", metavar="OUT", help="write the proof trace here")

    p = sub.add_parser("opt", parents=[common], help="greedy gate-count reduction")
    p.add_argument("file")
    p.add_argument("--budget", type=int, default=200, help="commutation move budget")
    p.add_argument("--trace", metavar="OUT", help="write the rewrite trace here")

    p = sub.add_parser("render", parents=[common], help="draw the circuit")
    p.add_argument("file")
    p.add_argument("--ascii", action="store_true", help="plain ASCII symbols")

    p = sub.add_parser("rules", parents=[common], help="rule catalog documentation")
    p.add_argument("action", choices=["list", "show"])
    p.add_argument("id", nargs="?", help="rule id for 'show'")

    p = sub.add_parser("replay", parents=[common], help="verify a trace against a circuit")
    p.add_argument("file")
    p.add_argument("trace")
    return parser


def _cmd_sim(args) -> int:
    c = _load_circuit(args.file)
    perm = simulate(c, max_width=args.max_sim_width)
    sys.stdout.write(format_permutation_table(list(perm.images), c.width))
    return EXIT_OK


def _cmd_canon(args) -> int:
    c = _load_circuit(args.file)
    path = _resolve_path(args.path, c.width)
    form, trace = canonicalize(c, path, max_canon_width=args.max_canon_width)
    if args.trace:
        Path(args.trace).write_text(format_trace(trace.steps), encoding="utf-8")
    if args.form:
        sys.stdout.write(form.serialize() + "\n")
    else:
        from .canon import delta_gates

        sys.stdout.write(print_circuit(form.to_circuit(delta_gates(path))))
    return EXIT_OK


def _cmd_equiv(args) -> int:
    a = _load_circuit(args.a)
    b = _load_circuit(args.b)
    path = _resolve_path(args.path, a.width)
    result = equivalent(a, b, path, max_canon_width=args.max_canon_width)
    if result.equivalent:
        print("equivalent")
        if args.certificate and result.certificate is not None:
            Path(args.certificate).write_text(
                format_trace(result.certificate.steps), encoding="utf-8"
            )
        return EXIT_OK
    out_a = simulate(a, max_width=args.max_sim_width)(result.witness)
    out_b = simulate(b, max_width=args.max_sim_width)(result.witness)
    print(f"inequivalent: input {result.witness} -> {out_a} vs {out_b}")
    return EXIT_INEQUIVALENT


def _cmd_opt(args) -> int:
    c = _load_circuit(args.file)
    reduced, trace = optimize(c, budget=args.budget)
    sys.stdout.write(print_circuit(reduced))
    if args.trace:
        Path(args.trace).write_text(format_trace(trace.steps), encoding="utf-8")
    else:
        sys.stdout.write(format_trace(trace.steps))
    return EXIT_OK


def _cmd_render(args) -> int:
    c = _load_circuit(args.file)
    sys.stdout.write(render_ascii(c, ascii_only=args.ascii))
    return EXIT_OK


def _cmd_rules(args) -> int:
    if args.action == "list":
        for rule in ALL_RULES:
            kind = "basic" if rule in ("R1", "R2", "R3", "R4", "R5") else "derived"
            print(f"{rule:4} [{kind}]  {RULE_DOCS[rule]}")
        return EXIT_OK
    if not args.id:
        print("rules show requires a rule id", file=sys.stderr)
        return EXIT_USAGE
    rule = args.id.upper()
    if rule not in RULE_DOCS:
        print(f"unknown rule {args.id!r}", file=sys.stderr)
        return EXIT_USAGE
    print(f"{rule}: {RULE_DOCS[rule]}")
    return EXIT_OK


def _cmd_replay(args) -> int:
    c = _load_circuit(args.file)
    steps = parse_trace(Path(args.trace).read_text(encoding="utf-8"), c.width)
    try:
        final = replay(RewriteTrace(c, steps))
    except TraceReplayError as exc:
        print(f"trace invalid at step {exc.step_index}: {exc.reason}", file=sys.stderr)
        return EXIT_TRACE
    sys.stdout.write(print_circuit(final))
    return EXIT_OK


_COMMANDS = {
    "sim": _cmd_sim,
    "canon": _cmd_canon,
    "equiv": _cmd_equiv,
    "opt": _cmd_opt,
    "render": _cmd_render,
    "rules": _cmd_rules,
    "replay": _cmd_replay,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except argparse.ArgumentTypeError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except WidthCapError as exc:
        print(f"width cap: {exc}", file=sys.stderr)
        return EXIT_WIDTH_CAP
    except FileNotFoundError as exc:
        print(f"no such file: {exc.filename}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
