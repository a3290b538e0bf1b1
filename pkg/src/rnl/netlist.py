"""Combinational cascade circuit model and its text serialization.

A netlist places gate instances in order on L lines.  Every line carries
exactly one input role (named primary input, or a constant 0/1 ancilla)
and exactly one output role (named primary output, garbage, feedback
source, or internally consumed).  Fan-out is forbidden: a value needed in
two places must be copied explicitly through FG/DFG gates on constant-0
ancilla lines.

The file format is line-oriented UTF-8; `#` starts a comment::

    .rnl 1
    .lines <L>
    .input <idx> <name>
    .const <idx> <0|1>
    .output <idx> <name>
    .garbage <idx>
    .consumed <idx>
    .feedback <out_idx> <in_idx> <init_bit>              # sequential files only
    .clock <idx>                                          # sequential files only
    .stage <i> <global|q<j>> <rise|fall> [<start> <end>]  # sequential files only
    gate <NAME> <idx> [<idx> [<idx>]]
    .end

Every line index must get exactly one input directive and either one
output directive or appear as a feedback source.  Line indices are
0-based.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .gatelib import GATES, GateDef

INPUT = "input"
CONST = "const"
OUTPUT = "output"
GARBAGE = "garbage"
CONSUMED = "consumed"
FEEDBACK = "feedback"


@dataclass(frozen=True)
class InputRole:
    """Input role of a line: a named primary input or a constant ancilla."""

    kind: str
    name: str = ""
    value: int = 0

    @classmethod
    def primary(cls, name: str) -> "InputRole":
        return cls(INPUT, name=name)

    @classmethod
    def const(cls, value: int) -> "InputRole":
        return cls(CONST, value=value & 1)


@dataclass(frozen=True)
class OutputRole:
    """Output role of a line.

    `feedback` marks a line whose final value re-enters the circuit as
    next-pulse state; `consumed` marks a value used by another structure
    inside the same cascade (neither is garbage).
    """

    kind: str
    name: str = ""

    @classmethod
    def primary(cls, name: str) -> "OutputRole":
        return cls(OUTPUT, name=name)

    @classmethod
    def garbage(cls) -> "OutputRole":
        return cls(GARBAGE)

    @classmethod
    def consumed(cls) -> "OutputRole":
        return cls(CONSUMED)

    @classmethod
    def feedback_source(cls) -> "OutputRole":
        return cls(FEEDBACK)


@dataclass(frozen=True)
class GateInstance:
    """One placed gate: a GateDef applied to an ordered tuple of lines."""

    gate: GateDef
    lines: tuple[int, ...]


@dataclass(frozen=True)
class Netlist:
    """An ordered cascade of gate instances on `line_count` lines."""

    line_count: int
    input_roles: tuple[InputRole, ...]
    output_roles: tuple[OutputRole, ...]
    gates: tuple[GateInstance, ...]

    def __post_init__(self):
        if self.line_count < 1:
            raise ValueError("a netlist needs at least one line")
        if len(self.input_roles) != self.line_count:
            raise ValueError("one input role per line required")
        if len(self.output_roles) != self.line_count:
            raise ValueError("one output role per line required")

    def free_input_lines(self) -> tuple[int, ...]:
        """Indices of non-constant input lines, in line order."""
        return tuple(
            i for i, r in enumerate(self.input_roles) if r.kind == INPUT
        )

    def lines_with_output_kind(self, kind: str) -> tuple[int, ...]:
        return tuple(
            i for i, r in enumerate(self.output_roles) if r.kind == kind
        )

    def run_gates(self, values: list[int], gates: Iterable[GateInstance] | None = None) -> list[int]:
        """Apply gate instances to a mutable line-value vector, no role checks."""
        for inst in self.gates if gates is None else gates:
            out = inst.gate.apply([values[l] for l in inst.lines])
            for l, b in zip(inst.lines, out):
                values[l] = b
        return values

    def eval(self, inputs: Sequence[int]) -> tuple[int, ...]:
        """Evaluate the cascade on a full line-value vector.

        Raises ValueError on length mismatch or when a constant line does
        not carry its declared value.
        """
        if len(inputs) != self.line_count:
            raise ValueError(
                f"expected {self.line_count} input bits, got {len(inputs)}"
            )
        for i, role in enumerate(self.input_roles):
            if role.kind == CONST and (inputs[i] & 1) != role.value:
                raise ValueError(
                    f"line {i} is constant {role.value} but input has {inputs[i]}"
                )
        return tuple(self.run_gates([b & 1 for b in inputs]))

    def validate(self) -> list[str]:
        """Check the structural invariants; returns one message per violation."""
        problems: list[str] = []
        for i, role in enumerate(self.input_roles):
            if role.kind not in (INPUT, CONST):
                problems.append(f"line {i}: unknown input role {role.kind!r}")
            if role.kind == CONST and role.value not in (0, 1):
                problems.append(f"line {i}: constant value must be 0 or 1")
        for i, role in enumerate(self.output_roles):
            if role.kind not in (OUTPUT, GARBAGE, CONSUMED, FEEDBACK):
                problems.append(f"line {i}: unknown output role {role.kind!r}")
        for g, inst in enumerate(self.gates):
            if inst.gate.name not in GATES:
                problems.append(f"gate {g}: unknown gate {inst.gate.name!r}")
            if len(inst.lines) != inst.gate.arity:
                problems.append(
                    f"gate {g}: {inst.gate.name} takes {inst.gate.arity} lines,"
                    f" got {len(inst.lines)}"
                )
            if len(set(inst.lines)) != len(inst.lines):
                problems.append(f"gate {g}: duplicate line in {inst.lines}")
            for l in inst.lines:
                if not 0 <= l < self.line_count:
                    problems.append(f"gate {g}: line {l} out of range")
        return problems


def empty_netlist(line_count: int, names: Sequence[str] | None = None) -> Netlist:
    """Wire-only identity netlist; inputs pass straight to outputs."""
    if names is None:
        names = [f"x{i}" for i in range(line_count)]
    return Netlist(
        line_count=line_count,
        input_roles=tuple(InputRole.primary(n) for n in names),
        output_roles=tuple(OutputRole.primary(n) for n in names),
        gates=(),
    )


class NetlistFormatError(ValueError):
    """Malformed netlist text; carries the 1-based line and column."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass
class ParsedDocument:
    """Raw directive content of one file, before role reconciliation."""

    line_count: int | None = None
    inputs: dict[int, str] = field(default_factory=dict)
    consts: dict[int, int] = field(default_factory=dict)
    outputs: dict[int, str] = field(default_factory=dict)
    garbage: set[int] = field(default_factory=set)
    consumed: set[int] = field(default_factory=set)
    feedbacks: list[tuple[int, int, int]] = field(default_factory=list)
    clock: int | None = None
    stages: list[tuple[int, int | None, str, tuple[int, int] | None]] = field(
        default_factory=list
    )
    gates: list[GateInstance] = field(default_factory=list)
    saw_end: bool = False

    @property
    def is_sequential(self) -> bool:
        return bool(self.feedbacks) or self.clock is not None or bool(self.stages)


def _tokens_with_columns(raw: str) -> list[tuple[str, int]]:
    toks = []
    col = 0
    while col < len(raw):
        if raw[col].isspace():
            col += 1
            continue
        if raw[col] == "#":
            break
        start = col
        while col < len(raw) and not raw[col].isspace():
            col += 1
        toks.append((raw[start:col], start + 1))
    return toks


def _parse_int(tok: str, lineno: int, col: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise NetlistFormatError(f"{what} must be an integer, got {tok!r}", lineno, col)


def parse_document(text: str) -> ParsedDocument:
    """Tokenize a netlist file into a ParsedDocument, checking syntax only."""
    doc = ParsedDocument()
    declared_in: dict[int, tuple[int, int]] = {}
    declared_out: dict[int, tuple[int, int]] = {}

    def check_index(idx: int, lineno: int, col: int) -> None:
        if doc.line_count is None:
            raise NetlistFormatError(".lines must come first", lineno, col)
        if not 0 <= idx < doc.line_count:
            raise NetlistFormatError(
                f"line index {idx} out of range 0..{doc.line_count - 1}", lineno, col
            )

    def claim_input(idx: int, lineno: int, col: int) -> None:
        if idx in declared_in:
            raise NetlistFormatError(
                f"line {idx} already has an input role", lineno, col
            )
        declared_in[idx] = (lineno, col)

    def claim_output(idx: int, lineno: int, col: int) -> None:
        if idx in declared_out:
            raise NetlistFormatError(
                f"line {idx} already has an output role", lineno, col
            )
        declared_out[idx] = (lineno, col)

    lines = text.splitlines()
    saw_magic = False
    for lineno, raw in enumerate(lines, start=1):
        if doc.saw_end:
            toks = _tokens_with_columns(raw)
            if toks:
                raise NetlistFormatError("content after .end", lineno, toks[0][1])
            continue
        toks = _tokens_with_columns(raw)
        if not toks:
            continue
        (word, col0), rest = toks[0], toks[1:]

        def need(n: int, usage: str) -> None:
            if len(rest) != n:
                raise NetlistFormatError(f"expected `{usage}`", lineno, col0)

        if not saw_magic:
            if word != ".rnl":
                raise NetlistFormatError("file must start with `.rnl 1`", lineno, col0)
            need(1, ".rnl 1")
            if rest[0][0] != "1":
                raise NetlistFormatError(
                    f"unsupported format version {rest[0][0]!r}", lineno, rest[0][1]
                )
            saw_magic = True
            continue

        if word == ".lines":
            need(1, ".lines <count>")
            if doc.line_count is not None:
                raise NetlistFormatError("duplicate .lines", lineno, col0)
            count = _parse_int(rest[0][0], lineno, rest[0][1], "line count")
            if count < 1:
                raise NetlistFormatError("line count must be >= 1", lineno, rest[0][1])
            doc.line_count = count
        elif word == ".input":
            need(2, ".input <idx> <name>")
            idx = _parse_int(rest[0][0], lineno, rest[0][1], "line index")
            check_index(idx, lineno, rest[0][1])
            claim_input(idx, lineno, col0)
            doc.inputs[idx] = rest[1][0]
        elif word == ".const":
            need(2, ".const <idx> <0|1>")
            idx = _parse_int(rest[0][0], lineno, rest[0][1], "line index")
            check_index(idx, lineno, rest[0][1])
            if rest[1][0] not in ("0", "1"):
                raise NetlistFormatError(
                    f"constant must be 0 or 1, got {rest[1][0]!r}", lineno, rest[1][1]
                )
            claim_input(idx, lineno, col0)
            doc.consts[idx] = int(rest[1][0])
        elif word == ".output":
            need(2, ".output <idx> <name>")
            idx = _parse_int(rest[0][0], lineno, rest[0][1], "line index")
            check_index(idx, lineno, rest[0][1])
            claim_output(idx, lineno, col0)
            doc.outputs[idx] = rest[1][0]
        elif word == ".garbage":
            need(1, ".garbage <idx>")
            idx = _parse_int(rest[0][0], lineno, rest[0][1], "line index")
            check_index(idx, lineno, rest[0][1])
            claim_output(idx, lineno, col0)
            doc.garbage.add(idx)
        elif word == ".consumed":
            need(1, ".consumed <idx>")
            idx = _parse_int(rest[0][0], lineno, rest[0][1], "line index")
            check_index(idx, lineno, rest[0][1])
            claim_output(idx, lineno, col0)
            doc.consumed.add(idx)
        elif word == ".feedback":
            need(3, ".feedback <out_idx> <in_idx> <init_bit>")
            src = _parse_int(rest[0][0], lineno, rest[0][1], "source index")
            dst = _parse_int(rest[1][0], lineno, rest[1][1], "destination index")
            check_index(src, lineno, rest[0][1])
            check_index(dst, lineno, rest[1][1])
            if rest[2][0] not in ("0", "1"):
                raise NetlistFormatError(
                    f"init bit must be 0 or 1, got {rest[2][0]!r}", lineno, rest[2][1]
                )
            claim_output(src, lineno, col0)
            doc.feedbacks.append((src, dst, int(rest[2][0])))
        elif word == ".clock":
            need(1, ".clock <idx>")
            if doc.clock is not None:
                raise NetlistFormatError("duplicate .clock", lineno, col0)
            idx = _parse_int(rest[0][0], lineno, rest[0][1], "line index")
            check_index(idx, lineno, rest[0][1])
            doc.clock = idx
        elif word == ".stage":
            if len(rest) not in (3, 5):
                raise NetlistFormatError(
                    "expected `.stage <i> <global|q<j>> <rise|fall> [<start> <end>]`",
                    lineno,
                    col0,
                )
            idx = _parse_int(rest[0][0], lineno, rest[0][1], "stage index")
            src_tok = rest[1][0]
            if src_tok == "global":
                src: int | None = None
            elif src_tok.startswith("q"):
                src = _parse_int(src_tok[1:], lineno, rest[1][1], "stage reference")
            else:
                raise NetlistFormatError(
                    f"clock source must be `global` or `q<j>`, got {src_tok!r}",
                    lineno,
                    rest[1][1],
                )
            if rest[2][0] not in ("rise", "fall"):
                raise NetlistFormatError(
                    f"trigger must be rise or fall, got {rest[2][0]!r}",
                    lineno,
                    rest[2][1],
                )
            grange = None
            if len(rest) == 5:
                start = _parse_int(rest[3][0], lineno, rest[3][1], "range start")
                end = _parse_int(rest[4][0], lineno, rest[4][1], "range end")
                if start < 0 or end < start:
                    raise NetlistFormatError(
                        "gate range must satisfy 0 <= start <= end", lineno, rest[3][1]
                    )
                grange = (start, end)
            doc.stages.append((idx, src, rest[2][0], grange))
        elif word == "gate":
            if not 2 <= len(rest) <= 4:
                raise NetlistFormatError(
                    "expected `gate <NAME> <idx> [<idx> [<idx>]]`", lineno, col0
                )
            name = rest[0][0]
            gdef = GATES.get(name)
            if gdef is None:
                raise NetlistFormatError(
                    f"unknown gate {name!r} (known: {', '.join(sorted(GATES))})",
                    lineno,
                    rest[0][1],
                )
            idxs = []
            for tok, tcol in rest[1:]:
                idx = _parse_int(tok, lineno, tcol, "line index")
                check_index(idx, lineno, tcol)
                idxs.append(idx)
            if len(idxs) != gdef.arity:
                raise NetlistFormatError(
                    f"{name} takes {gdef.arity} line indices, got {len(idxs)}",
                    lineno,
                    col0,
                )
            # duplicate line indices are accepted here and reported by
            # Netlist.validate; they make the instance ill-formed, not the file
            doc.gates.append(GateInstance(gdef, tuple(idxs)))
        elif word == ".end":
            need(0, ".end")
            doc.saw_end = True
        else:
            raise NetlistFormatError(f"unknown directive {word!r}", lineno, col0)

    if not saw_magic:
        raise NetlistFormatError("file must start with `.rnl 1`", max(len(lines), 1))
    if not doc.saw_end:
        raise NetlistFormatError("missing .end", len(lines) or 1)
    if doc.line_count is None:
        raise NetlistFormatError("missing .lines", len(lines) or 1)

    feedback_sources = {src for src, _, _ in doc.feedbacks}
    for i in range(doc.line_count):
        if i not in declared_in:
            raise NetlistFormatError(
                f"line {i} has no input role (.input/.const)", len(lines)
            )
        if i not in declared_out and i not in feedback_sources:
            raise NetlistFormatError(
                f"line {i} has no output role (.output/.garbage/.consumed/.feedback)",
                len(lines),
            )
    return doc


def roles_from_document(doc: ParsedDocument) -> tuple[tuple[InputRole, ...], tuple[OutputRole, ...]]:
    in_roles = []
    out_roles = []
    feedback_sources = {src for src, _, _ in doc.feedbacks}
    for i in range(doc.line_count):
        if i in doc.inputs:
            in_roles.append(InputRole.primary(doc.inputs[i]))
        else:
            in_roles.append(InputRole.const(doc.consts[i]))
        if i in doc.outputs:
            out_roles.append(OutputRole.primary(doc.outputs[i]))
        elif i in doc.garbage:
            out_roles.append(OutputRole.garbage())
        elif i in doc.consumed:
            out_roles.append(OutputRole.consumed())
        else:
            assert i in feedback_sources
            out_roles.append(OutputRole.feedback_source())
    return tuple(in_roles), tuple(out_roles)


def parse(text: str) -> Netlist:
    """Parse a combinational netlist file.

    Sequential directives (.feedback/.clock/.stage) are rejected here; use
    sequential.parse for circuits with state.
    """
    doc = parse_document(text)
    if doc.is_sequential:
        raise NetlistFormatError(
            "file contains sequential directives; use the sequential loader", 1
        )
    in_roles, out_roles = roles_from_document(doc)
    return Netlist(doc.line_count, in_roles, out_roles, tuple(doc.gates))


def serialize_core(netlist: Netlist) -> list[str]:
    """Directive lines for the combinational part, without .end."""
    out = [".rnl 1", f".lines {netlist.line_count}"]
    for i, role in enumerate(netlist.input_roles):
        if role.kind == INPUT:
            out.append(f".input {i} {role.name}")
    for i, role in enumerate(netlist.input_roles):
        if role.kind == CONST:
            out.append(f".const {i} {role.value}")
    for i, role in enumerate(netlist.output_roles):
        if role.kind == OUTPUT:
            out.append(f".output {i} {role.name}")
    for i, role in enumerate(netlist.output_roles):
        if role.kind == GARBAGE:
            out.append(f".garbage {i}")
    for i, role in enumerate(netlist.output_roles):
        if role.kind == CONSUMED:
            out.append(f".consumed {i}")
    return out


def serialize_gates(netlist: Netlist) -> list[str]:
    return [
        "gate " + inst.gate.name + " " + " ".join(str(l) for l in inst.lines)
        for inst in netlist.gates
    ]


def serialize(netlist: Netlist) -> str:
    """Canonical text form of a combinational netlist."""
    for i, role in enumerate(netlist.output_roles):
        if role.kind == FEEDBACK:
            raise ValueError(
                f"line {i} is a feedback source; serialize via the sequential module"
            )
    lines = serialize_core(netlist) + serialize_gates(netlist) + [".end"]
    return "\n".join(lines) + "\n"
