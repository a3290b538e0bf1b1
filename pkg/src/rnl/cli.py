"""Command-line front end.

Subcommands: synth (generate designs to netlist files), cost (measure a
file), sim (pulse a sequential circuit), verify (run checkers), report
(comparison tables and scaling data, optionally with figures).

State is printed most significant bit on the left; internally bit 0 is
the least significant stage.  Set RNL_COLOR=0 to disable ANSI styling.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import baselines
from .generators import (
    ASYNC,
    SYNC,
    CounterSpec,
    build_clocked_t_ff,
    build_counter,
    build_ms_t_ff,
    build_t_ff,
    predict_cost,
)
from .metrics import measure
from .netlist import Netlist, NetlistFormatError, parse_document, roles_from_document
from .sequential import SequentialCircuit, flatten, pulse, serialize
from .verify import (
    VerificationReport,
    check_decompositions,
    check_reversible,
    check_theorems,
    counting_check_results,
)
from . import sequential

KINDS = ("tff", "ctff-a", "ctff-b", "mstff", "counter")


def _color_enabled() -> bool:
    if os.environ.get("RNL_COLOR", "") == "0":
        return False
    return sys.stdout.isatty()


def _mark(passed: bool) -> str:
    text = "PASS" if passed else "FAIL"
    if _color_enabled():
        code = "32" if passed else "31"
        return f"\x1b[{code}m{text}\x1b[0m"
    return text


def _load_file(path: str) -> Netlist | SequentialCircuit:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    doc = parse_document(text)
    if doc.is_sequential:
        return sequential.parse(text)
    in_roles, out_roles = roles_from_document(doc)
    return Netlist(doc.line_count, in_roles, out_roles, tuple(doc.gates))


def _as_netlist(obj: Netlist | SequentialCircuit) -> Netlist:
    return flatten(obj) if isinstance(obj, SequentialCircuit) else obj


def _build_kind(args) -> SequentialCircuit:
    if args.kind == "counter":
        return build_counter(CounterSpec(args.bits, args.mode))
    if args.kind == "tff":
        return build_t_ff()
    if args.kind == "mstff":
        return build_ms_t_ff()
    return build_clocked_t_ff(args.kind.split("-")[1])


def _print_report(report, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report.as_dict(), indent=2))
    elif fmt == "csv":
        print(report.as_csv())
    else:
        print(report.as_text())


def cmd_synth(args) -> int:
    circuit = _build_kind(args)
    text = serialize(circuit)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(text)
    print(measure(flatten(circuit)).as_text())
    return 0


def cmd_cost(args) -> int:
    report = measure(_as_netlist(_load_file(args.path)))
    _print_report(report, args.format)
    return 0


def cmd_sim(args) -> int:
    loaded = _load_file(args.path)
    if not isinstance(loaded, SequentialCircuit):
        raise NetlistFormatError("not sequential: file has no feedback state", 1)
    inputs = {}
    for item in args.set or ():
        name, _, value = item.partition("=")
        if value not in ("0", "1"):
            raise ValueError(f"--set expects name=0 or name=1, got {item!r}")
        inputs[name] = int(value)
    state = loaded.initial_state()
    print(f"0 {state.as_binary()}")
    for t in range(1, args.pulses + 1):
        trace: list[tuple[int, int, int]] | None = [] if args.trace else None
        state = pulse(loaded, state, inputs, trace=trace)
        print(f"{t} {state.as_binary()}")
        if trace:
            for idx, old, new in trace:
                print(f"  stage {idx}: {old}->{new}")
    return 0


def _print_verification(report: VerificationReport, fmt: str) -> int:
    if fmt == "json":
        print(json.dumps(report.as_dict(), indent=2))
    else:
        print(report.subject)
        for check in report.checks:
            line = f"  {_mark(check.passed)} {check.name}"
            if check.detail:
                line += f" ({check.detail})"
            print(line)
    return 0 if report.all_passed else 1


def cmd_verify(args) -> int:
    if args.gates:
        return _print_verification(check_decompositions(), args.format)
    if args.theorems:
        return _print_verification(check_theorems(args.max_bits), args.format)
    loaded = _load_file(args.path)
    if isinstance(loaded, SequentialCircuit):
        report = check_reversible(flatten(loaded), subject=args.path)
        if args.pulses:
            report.checks.extend(
                counting_check_results(loaded, len(loaded.stages), args.pulses)
            )
    else:
        report = check_reversible(loaded, subject=args.path)
    return _print_verification(report, args.format)


def _table_rows(title: str, proposed, cited) -> list[tuple[str, int, int, int]]:
    rows = [("Proposed", proposed.quantum_cost, proposed.delay, proposed.garbage)]
    rows += [(b.citation, b.quantum_cost, b.delay, b.garbage) for b in cited]
    return rows


def _render_table(title: str, rows, fmt: str) -> list[str]:
    if fmt == "csv":
        return [f"{title},{name},{qc},{d},{g}" for name, qc, d, g in rows]
    width = max(len(r[0]) for r in rows)
    out = [title, f"{'design':<{width}}  quantum_cost  delay  garbage"]
    for name, qc, d, g in rows:
        out.append(f"{name:<{width}}  {qc:>12}  {d:>5}  {g:>7}")
    out.append("")
    return out


def _all_tables():
    ctff = measure(flatten(build_clocked_t_ff()))
    mstff = measure(flatten(build_ms_t_ff()))
    async4 = measure(flatten(build_counter(CounterSpec(4, ASYNC))))
    sync4 = measure(flatten(build_counter(CounterSpec(4, SYNC))))
    for (title, cited), proposed in (
        (baselines.CLOCKED_T_FF, ctff),
        (baselines.MASTER_SLAVE_T_FF, mstff),
        (baselines.ASYNC_COUNTER_4BIT, async4),
        (baselines.SYNC_COUNTER_4BIT, sync4),
    ):
        yield title, _table_rows(title, proposed, cited)


def cmd_report(args) -> int:
    if args.tables:
        if args.format == "csv":
            print("table,design,quantum_cost,delay,garbage")
        for i, (title, rows) in enumerate(_all_tables()):
            for line in _render_table(title, rows, args.format):
                print(line)
            if args.figures:
                from . import figures

                path = figures.figure_path(
                    args.figures, f"comparison_{i + 1}_{title.replace(' ', '_')}.png"
                )
                figures.save_comparison_chart(title, rows, path)
                print(f"wrote {path}", file=sys.stderr)
        return 0

    modes = [ASYNC, SYNC] if args.mode == "both" else [args.mode]
    rows: list[tuple[str, int, int, int | None]] = []
    for mode in modes:
        lo = 1
        for n in range(lo, args.max_bits + 1):
            spec = CounterSpec(n, mode)
            got = measure(flatten(build_counter(spec)))
            want = predict_cost(spec)
            rows.append((mode, n, got.quantum_cost, want.quantum if want.applicable else None))
    if args.format == "csv":
        print("mode,bits,quantum_cost,predicted_quantum_cost")
        for mode, n, qc, pred in rows:
            print(f"{mode},{n},{qc},{'' if pred is None else pred}")
    else:
        print("mode   bits  quantum_cost  predicted")
        for mode, n, qc, pred in rows:
            print(f"{mode:<5}  {n:>4}  {qc:>12}  {'-' if pred is None else pred:>9}")
    if args.figures:
        from . import figures

        path = figures.figure_path(args.figures, "scaling.png")
        figures.save_scaling_chart(rows, path)
        print(f"wrote {path}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rnl",
        description="Reversible sequential circuit toolkit: synthesize, "
        "measure, simulate and verify T flip-flops and counters.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="generate a design and write a netlist file")
    p.add_argument("--kind", required=True, choices=KINDS)
    p.add_argument("--bits", type=int, help="counter width (counter only)")
    p.add_argument("--mode", choices=(ASYNC, SYNC), help="counter clocking (counter only)")
    p.add_argument("--out", required=True, help="output netlist path")
    p.set_defaults(fn=cmd_synth)

    p = sub.add_parser("cost", help="measure a netlist file")
    p.add_argument("path")
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.set_defaults(fn=cmd_cost)

    p = sub.add_parser("sim", help="pulse a sequential circuit")
    p.add_argument("path")
    p.add_argument("--pulses", type=int, default=0)
    p.add_argument("--trace", action="store_true", help="print per-stage firings")
    p.add_argument(
        "--set",
        action="append",
        metavar="NAME=BIT",
        help="hold a named input at 0/1 during every pulse (repeatable)",
    )
    p.set_defaults(fn=cmd_sim)

    p = sub.add_parser("verify", help="run verification checks")
    p.add_argument("path", nargs="?", help="netlist file for --exhaustive")
    p.add_argument("--theorems", action="store_true", help="sweep counter formulas")
    p.add_argument("--max-bits", type=int, default=16)
    p.add_argument("--exhaustive", action="store_true", help="reversibility of a file")
    p.add_argument("--gates", action="store_true", help="builtin gate decompositions")
    p.add_argument("--pulses", type=int, default=0, help="also check counting (with a file)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("report", help="comparison tables and scaling data")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--tables", action="store_true", help="literature comparison tables")
    group.add_argument("--scaling", action="store_true", help="cost vs. counter width")
    p.add_argument("--max-bits", type=int, default=16)
    p.add_argument("--mode", choices=(ASYNC, SYNC, "both"), default="both")
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.add_argument("--figures", metavar="DIR", help="also render figures into DIR")
    p.set_defaults(fn=cmd_report)

    return parser


def _validate(parser: argparse.ArgumentParser, args) -> None:
    if args.command == "synth":
        if args.kind == "counter":
            if args.bits is None or args.mode is None:
                parser.error("--kind counter requires --bits and --mode")
            if args.bits < 1:
                parser.error("--bits must be >= 1")
        elif args.bits is not None or args.mode is not None:
            parser.error("--bits/--mode only apply to --kind counter")
    if args.command == "sim" and args.pulses < 0:
        parser.error("--pulses must be >= 0")
    if args.command == "verify":
        chosen = sum(map(bool, (args.theorems, args.exhaustive, args.gates)))
        if chosen != 1:
            parser.error("choose exactly one of --theorems, --exhaustive, --gates")
        if args.exhaustive and not args.path:
            parser.error("--exhaustive needs a netlist file")
        if not args.exhaustive and args.path:
            parser.error("a file argument only applies to --exhaustive")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(parser, args)
    try:
        return args.fn(args)
    except (NetlistFormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
