"""Clocked circuits: flip-flop stages, feedback state, pulse simulation.

A SequentialCircuit wraps a combinational core whose state lines appear
as named inputs (driven from feedback, not by the user) and as feedback
sources on the output side.  Level-sensitive update equations are lifted
to edge semantics: per global clock pulse each stage fires at most once,
evaluating its gates with its clock carrier asserted.

Firing order within one pulse:

1. globally clocked rise-triggered stages fire against the pre-pulse
   state (all at once for fully synchronous circuits),
2. globally clocked fall-triggered stages fire next and see the updated
   state (this realizes master-slave behavior),
3. ripple stages fire in ascending order when the stage they are clocked
   from made the transition named by their trigger edge.
"""
from __future__ import annotations

from dataclasses import dataclass

from .netlist import (
    CONST,
    FEEDBACK,
    INPUT,
    GateInstance,
    Netlist,
    NetlistFormatError,
    parse_document,
    roles_from_document,
    serialize_core,
    serialize_gates,
)

RISE = "rise"
FALL = "fall"


@dataclass(frozen=True)
class Feedback:
    """State wire: the source line's final value feeds the destination
    line's input on the next pulse, starting from `init`."""

    source: int
    dest: int
    init: int = 0


@dataclass(frozen=True)
class StageBinding:
    """One flip-flop stage of a sequential circuit.

    Attributes:
        index: stage position, 0 is the least significant bit.
        q_feedback: index into the circuit's feedback list holding this
            stage's Q.
        clock_source: None for the global clock, otherwise the stage index
            whose Q output clocks this stage (must be < index).
        trigger: RISE or FALL; which transition of the clock source fires
            this stage.
        gate_range: (start, end) slice of core gates owned by the stage;
            evaluated in isolation when the stage fires individually.
    """

    index: int
    q_feedback: int
    clock_source: int | None
    trigger: str
    gate_range: tuple[int, int]


@dataclass(frozen=True)
class CounterState:
    """State bits (LSB first) plus the number of pulses applied so far."""

    bits: tuple[int, ...]
    pulse_count: int = 0

    def as_binary(self) -> str:
        """Human-readable rendering, most significant bit on the left."""
        return "".join(str(b) for b in reversed(self.bits))


@dataclass(frozen=True)
class SequentialCircuit:
    """Combinational core plus feedback wiring, clocking and stage metadata."""

    core: Netlist
    feedbacks: tuple[Feedback, ...]
    clock_line: int | None
    stages: tuple[StageBinding, ...]

    def __post_init__(self):
        for fb in self.feedbacks:
            if self.core.input_roles[fb.dest].kind == CONST:
                raise ValueError(f"feedback destination {fb.dest} is a constant line")
            if self.core.output_roles[fb.source].kind != FEEDBACK:
                raise ValueError(
                    f"feedback source {fb.source} lacks the feedback output role"
                )
        for i, stage in enumerate(self.stages):
            if stage.index != i:
                raise ValueError("stages must be listed LSB first by index")
            if stage.clock_source is not None and stage.clock_source >= stage.index:
                raise ValueError(
                    f"stage {stage.index} clocked from a non-earlier stage"
                )

    def initial_state(self) -> CounterState:
        return CounterState(tuple(fb.init for fb in self.feedbacks), 0)

    def stage_gates(self, stage: StageBinding) -> tuple[GateInstance, ...]:
        start, end = stage.gate_range
        return self.core.gates[start:end]

    def stage_clock_carrier(self, stage: StageBinding) -> int | None:
        """Line asserted to 1 while the stage fires.

        Globally clocked stages use the circuit's clock line; ripple stages
        use the first input of their own clocked gate, which carries the
        copied Q of the previous stage.
        """
        if stage.clock_source is None:
            return self.clock_line
        for inst in self.stage_gates(stage):
            if inst.gate.arity == 3:
                return inst.lines[0]
        raise ValueError(f"stage {stage.index} has no clocked gate")


def _base_values(
    circuit: SequentialCircuit, bits: tuple[int, ...], inputs: dict[str, int]
) -> list[int]:
    values = [0] * circuit.core.line_count
    for i, role in enumerate(circuit.core.input_roles):
        if role.kind == CONST:
            values[i] = role.value
        elif role.kind == INPUT and role.name in inputs:
            values[i] = inputs[role.name] & 1
    for fb, bit in zip(circuit.feedbacks, bits):
        values[fb.dest] = bit
    return values


def _fire_stage(
    circuit: SequentialCircuit,
    stage: StageBinding,
    bits: list[int],
    inputs: dict[str, int],
) -> tuple[int, int]:
    """Evaluate one stage's gates with its clock asserted; returns (old, new) Q."""
    values = _base_values(circuit, tuple(bits), inputs)
    carrier = circuit.stage_clock_carrier(stage)
    if carrier is not None:
        values[carrier] = 1
    circuit.core.run_gates(values, circuit.stage_gates(stage))
    fb = circuit.feedbacks[stage.q_feedback]
    old = bits[stage.index]
    new = values[fb.source]
    bits[stage.index] = new
    return old, new


def _fire_whole_core(
    circuit: SequentialCircuit, bits: list[int], inputs: dict[str, int]
) -> list[tuple[int, int]]:
    """Single full-core evaluation with the global clock asserted."""
    values = _base_values(circuit, tuple(bits), inputs)
    if circuit.clock_line is not None:
        values[circuit.clock_line] = 1
    circuit.core.run_gates(values)
    changes = []
    for stage in circuit.stages:
        fb = circuit.feedbacks[stage.q_feedback]
        changes.append((bits[stage.index], values[fb.source]))
        bits[stage.index] = values[fb.source]
    return changes


def pulse(
    circuit: SequentialCircuit,
    state: CounterState,
    inputs: dict[str, int] | None = None,
    trace: list[tuple[int, int, int]] | None = None,
) -> CounterState:
    """Apply one global clock pulse and return the successor state.

    `inputs` assigns values to named primary inputs other than the clock
    (unmentioned ones default to 0).  If `trace` is given, every firing is
    appended as (stage index, old Q, new Q).
    """
    if len(state.bits) != len(circuit.stages):
        raise ValueError(
            f"state has {len(state.bits)} bits, circuit has {len(circuit.stages)} stages"
        )
    inputs = inputs or {}
    bits = list(state.bits)
    transitions: dict[int, str | None] = {}

    def record(stage: StageBinding, old: int, new: int) -> None:
        if (old, new) == (1, 0):
            transitions[stage.index] = FALL
        elif (old, new) == (0, 1):
            transitions[stage.index] = RISE
        else:
            transitions[stage.index] = None
        if trace is not None:
            trace.append((stage.index, old, new))

    global_rise = [s for s in circuit.stages if s.clock_source is None and s.trigger == RISE]
    global_fall = [s for s in circuit.stages if s.clock_source is None and s.trigger == FALL]
    ripple = [s for s in circuit.stages if s.clock_source is not None]

    if global_rise and not global_fall and not ripple:
        # Fully synchronous: one pass over the core, every stage sees the
        # pre-pulse state.
        for stage, (old, new) in zip(
            circuit.stages, _fire_whole_core(circuit, bits, inputs)
        ):
            record(stage, old, new)
    else:
        for stage in global_rise:
            old, new = _fire_stage(circuit, stage, bits, inputs)
            record(stage, old, new)
        for stage in global_fall:
            old, new = _fire_stage(circuit, stage, bits, inputs)
            record(stage, old, new)
        for stage in ripple:
            if transitions.get(stage.clock_source) == stage.trigger:
                old, new = _fire_stage(circuit, stage, bits, inputs)
                record(stage, old, new)

    return CounterState(tuple(bits), state.pulse_count + 1)


def run(
    circuit: SequentialCircuit,
    pulses: int,
    inputs: dict[str, int] | None = None,
) -> list[CounterState]:
    """Pulse `pulses` times from the initial state; returns pulses+1 states."""
    if pulses < 0:
        raise ValueError("pulse count must be >= 0")
    states = [circuit.initial_state()]
    for _ in range(pulses):
        states.append(pulse(circuit, states[-1], inputs))
    return states


def flatten(circuit: SequentialCircuit) -> Netlist:
    """The combinational core with state lines exposed as free inputs.

    Feedback destinations already carry named input roles and feedback
    sources their output role, so the stored core is directly usable for
    metrics and reversibility checks.
    """
    return circuit.core


def serialize(circuit: SequentialCircuit) -> str:
    """Canonical text form including feedback, clock and stage directives."""
    lines = serialize_core(circuit.core)
    if circuit.clock_line is not None:
        lines.append(f".clock {circuit.clock_line}")
    for fb in circuit.feedbacks:
        lines.append(f".feedback {fb.source} {fb.dest} {fb.init}")
    for st in circuit.stages:
        src = "global" if st.clock_source is None else f"q{st.clock_source}"
        start, end = st.gate_range
        lines.append(f".stage {st.index} {src} {st.trigger} {start} {end}")
    lines += serialize_gates(circuit.core) + [".end"]
    return "\n".join(lines) + "\n"


def parse(text: str) -> SequentialCircuit:
    """Parse a sequential netlist file.

    Raises NetlistFormatError when the file has no sequential directives.
    """
    doc = parse_document(text)
    if not doc.is_sequential:
        raise NetlistFormatError(
            "not sequential: no .feedback/.clock/.stage directives", 1
        )
    if not doc.feedbacks or not doc.stages:
        raise NetlistFormatError(
            "sequential file needs at least one .feedback and one .stage", 1
        )
    in_roles, out_roles = roles_from_document(doc)
    core = Netlist(doc.line_count, in_roles, out_roles, tuple(doc.gates))
    feedbacks = tuple(Feedback(*fb) for fb in doc.feedbacks)

    seen = {s[0] for s in doc.stages}
    if len(seen) != len(doc.stages):
        raise NetlistFormatError("duplicate .stage index", 1)
    if seen and (min(seen) != 0 or max(seen) != len(seen) - 1):
        raise NetlistFormatError("stage indices must be contiguous from 0", 1)
    if len(doc.stages) > len(feedbacks):
        raise NetlistFormatError(
            "every stage needs a .feedback pair holding its state bit", 1
        )
    stages = []
    for index, src, trigger, gate_range in sorted(doc.stages, key=lambda s: s[0]):
        if gate_range is None:
            gate_range = (0, len(core.gates))
        stages.append(
            StageBinding(
                index=index,
                q_feedback=index,
                clock_source=src,
                trigger=trigger,
                gate_range=gate_range,
            )
        )
    return SequentialCircuit(core, feedbacks, doc.clock, tuple(stages))
