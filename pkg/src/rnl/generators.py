"""Constructors for the flip-flop and counter designs, plus closed-form costs.

All generated cascades are chains: every consecutive gate pair shares a
line, so logical depth equals total quantum cost.  Garbage is confined to
the second output of each stage's Peres gate (the clock-xor-toggle line),
one line per stage.

Counter construction
--------------------
Ripple (async): stage i is a Peres-gate T stage with its toggle input
tied to constant 1.  Interior stages copy the new Q twice through a DFG
(one copy is the stage output, one clocks the next stage on the falling
edge); the last stage needs a single FG copy.  Inventory: n PG,
(n-1) DFG, 1 FG; quantum cost 6n-1.

Synchronous: every stage is clocked from the global line.  The toggle
condition of stage i is the AND of all lower Q values, accumulated by a
Toffoli chain over the pre-pulse state; each accumulated carry is copied
once so the chain can keep it while the stage's Peres gate consumes it.
Clock buffers (FG copies of the clock) thread the stage column so the
whole cascade stays a chain.  Inventory for n >= 3: n PG, (n-2) TG,
(2n-2) FG; quantum cost 11n-12.
"""
from __future__ import annotations

from dataclasses import dataclass

from .gatelib import DFG, FG, MPG, PG, TG
from .metrics import measure
from .netlist import GateInstance, InputRole, Netlist, OutputRole
from .sequential import (
    FALL,
    RISE,
    Feedback,
    SequentialCircuit,
    StageBinding,
    flatten,
)

ASYNC = "async"
SYNC = "sync"

VARIANT_A = "a"
VARIANT_B = "b"


@dataclass(frozen=True)
class CounterSpec:
    """Width and clocking mode of a counter to generate."""

    bits: int
    mode: str

    def __post_init__(self):
        if self.bits < 1:
            raise ValueError("counter needs at least one bit")
        if self.mode not in (ASYNC, SYNC):
            raise ValueError(f"mode must be {ASYNC!r} or {SYNC!r}")


@dataclass(frozen=True)
class PredictedCost:
    """Closed-form resource prediction for a counter.

    `applicable` is False where no closed form exists (synchronous
    counters below 3 bits); those values are measured from the actual
    construction instead.
    """

    gates: int
    garbage: int
    quantum: int
    applicable: bool = True


class _Builder:
    """Accumulates lines and gates, then assembles the circuit."""

    def __init__(self):
        self.input_roles: list[InputRole] = []
        self.output_roles: list[OutputRole | None] = []
        self.gates: list[GateInstance] = []
        self.feedbacks: list[Feedback] = []
        self.stages: list[StageBinding] = []

    def line(self, role: InputRole, out: OutputRole | None = None) -> int:
        self.input_roles.append(role)
        self.output_roles.append(out)
        return len(self.input_roles) - 1

    def set_output(self, line: int, role: OutputRole) -> None:
        self.output_roles[line] = role

    def gate(self, gdef, *lines: int) -> int:
        self.gates.append(GateInstance(gdef, tuple(lines)))
        return len(self.gates) - 1

    def state_line(self, name: str, init: int = 0) -> int:
        q = self.line(InputRole.primary(name), OutputRole.feedback_source())
        self.feedbacks.append(Feedback(q, q, init))
        return q

    def build(self, clock_line: int | None) -> SequentialCircuit:
        assert all(r is not None for r in self.output_roles)
        core = Netlist(
            line_count=len(self.input_roles),
            input_roles=tuple(self.input_roles),
            output_roles=tuple(self.output_roles),
            gates=tuple(self.gates),
        )
        return SequentialCircuit(
            core, tuple(self.feedbacks), clock_line, tuple(self.stages)
        )


def build_t_ff() -> SequentialCircuit:
    """Unclocked T flip-flop: one Feynman gate, Q toggles whenever T is 1."""
    b = _Builder()
    t = b.line(InputRole.primary("t"), OutputRole.primary("t"))
    q = b.state_line("q0")
    b.gate(FG, t, q)
    b.stages.append(StageBinding(0, 0, None, RISE, (0, 1)))
    return b.build(clock_line=None)


def build_clocked_t_ff(variant: str = VARIANT_A) -> SequentialCircuit:
    """Level-clocked T flip-flop: Q <- (T and CLK) xor Q.

    A Peres gate computes the toggle; a Feynman gate copies the new Q to
    the stage output.  The two variants share the cascade and differ in
    the edge their stage fires on: `a` (rising) suits synchronous use,
    `b` (falling) ripple use, where the next stage is clocked from a copy
    of this stage's Q.
    """
    if variant not in (VARIANT_A, VARIANT_B):
        raise ValueError(f"variant must be {VARIANT_A!r} or {VARIANT_B!r}")
    b = _Builder()
    clk = b.line(InputRole.primary("clk"), OutputRole.consumed())
    t = b.line(InputRole.primary("t"), OutputRole.garbage())
    q = b.state_line("q0")
    out = b.line(InputRole.const(0), OutputRole.primary("q"))
    b.gate(PG, clk, t, q)
    b.gate(FG, q, out)
    trigger = RISE if variant == VARIANT_A else FALL
    b.stages.append(StageBinding(0, 0, None, trigger, (0, 2)))
    return b.build(clock_line=clk)


def build_ms_t_ff() -> SequentialCircuit:
    """Master-slave T flip-flop, edge-triggered overall.

    The master is a modified Peres gate whose complemented first output
    turns the clock line into an active-low carrier for the slave, at no
    extra gate cost.  Two Feynman gates form the slave's toggle input
    (master Q xor slave Q) so the slave copies the master on the inactive
    clock phase.  State bit 0 is the master, bit 1 the externally visible
    slave Q.
    """
    b = _Builder()
    clk = b.line(InputRole.primary("clk"), OutputRole.consumed())
    t = b.line(InputRole.primary("t"), OutputRole.garbage())
    qm = b.state_line("qm")
    ts = b.line(InputRole.const(0), OutputRole.garbage())
    qs = b.state_line("qs")
    b.gate(MPG, clk, t, qm)   # master toggles; clk line now carries not-CLK
    b.gate(FG, qm, ts)        # ts <- master Q
    b.gate(FG, qs, ts)        # ts <- master Q xor slave Q
    b.gate(PG, clk, ts, qs)   # slave toggles on the complemented phase
    b.stages.append(StageBinding(0, 0, None, RISE, (0, 1)))
    b.stages.append(StageBinding(1, 1, None, FALL, (1, 4)))
    return b.build(clock_line=clk)


def _build_async_counter(n: int) -> SequentialCircuit:
    b = _Builder()
    clk = b.line(InputRole.primary("clk"), OutputRole.consumed())
    carrier = clk
    for i in range(n):
        t = b.line(InputRole.const(1), OutputRole.garbage())
        q = b.state_line(f"q{i}")
        out = b.line(InputRole.const(0), OutputRole.primary(f"q{i}"))
        start = len(b.gates)
        b.gate(PG, carrier, t, q)
        if i < n - 1:
            nxt = b.line(InputRole.const(0), OutputRole.consumed())
            b.gate(DFG, q, out, nxt)
            carrier = nxt
        else:
            b.gate(FG, q, out)
        b.stages.append(
            StageBinding(
                index=i,
                q_feedback=i,
                clock_source=None if i == 0 else i - 1,
                trigger=RISE if i == 0 else FALL,
                gate_range=(start, len(b.gates)),
            )
        )
    return b.build(clock_line=clk)


def _build_sync_counter(n: int) -> SequentialCircuit:
    b = _Builder()
    clk = b.line(InputRole.primary("clk"), OutputRole.consumed())
    qs = [b.state_line(f"q{i}") for i in range(n)]
    t0 = b.line(InputRole.const(1), OutputRole.garbage())

    # Toggle feeds: toggles[i] is consumed by stage i's Peres gate.
    toggles = {0: t0}
    if n >= 2:
        t1 = b.line(InputRole.const(0), OutputRole.garbage())
        b.gate(FG, qs[0], t1)
        toggles[1] = t1
    # Toffoli chain accumulates Q0..Q(i-1); every carry that the chain
    # still needs after stage i consumes it is copied first.
    anded = toggles.get(1)
    for i in range(2, n):
        carry = b.line(InputRole.const(0), OutputRole.garbage())
        b.gate(TG, anded, qs[i - 1], carry)
        toggles[i] = carry
        if i < n - 1:
            keep = b.line(InputRole.const(0), OutputRole.consumed())
            b.gate(FG, carry, keep)
            anded = keep

    # Stage column, most significant first.  The top stage takes the
    # global clock directly; each lower stage gets a buffered copy, which
    # threads the column into a single dependency chain.
    stage_meta: dict[int, tuple[int, int]] = {}
    carrier = clk
    for i in range(n - 1, -1, -1):
        start = len(b.gates)
        if i < n - 1:
            buffered = b.line(InputRole.const(0), OutputRole.consumed())
            b.gate(FG, carrier, buffered)
            carrier = buffered
        b.gate(PG, carrier, toggles[i], qs[i])
        stage_meta[i] = (start, len(b.gates))
    # The least significant stage's new Q is tapped as the one primary
    # output line; higher Q values are observable through the state.
    out0 = b.line(InputRole.const(0), OutputRole.primary("q0"))
    b.gate(FG, qs[0], out0)
    start, _ = stage_meta[0]
    stage_meta[0] = (start, len(b.gates))

    for i in range(n):
        b.stages.append(
            StageBinding(
                index=i,
                q_feedback=i,
                clock_source=None,
                trigger=RISE,
                gate_range=stage_meta[i],
            )
        )
    return b.build(clock_line=clk)


def build_counter(spec: CounterSpec) -> SequentialCircuit:
    """Generate an n-bit counter in the requested clocking mode."""
    if spec.mode == ASYNC:
        return _build_async_counter(spec.bits)
    return _build_sync_counter(spec.bits)


def predict_cost(spec: CounterSpec) -> PredictedCost:
    """Closed-form gate/garbage/quantum-cost prediction for a counter.

    Ripple counters: 2n gates, n garbage, quantum cost 6n-1 for every
    n >= 1.  Synchronous counters: 4n-4 gates, n garbage, quantum cost
    11n-12 for n >= 3; smaller widths have no closed form and report the
    measured values with applicable=False.
    """
    n = spec.bits
    if spec.mode == ASYNC:
        return PredictedCost(gates=2 * n, garbage=n, quantum=6 * n - 1)
    if n >= 3:
        return PredictedCost(gates=4 * n - 4, garbage=n, quantum=11 * n - 12)
    report = measure(flatten(_build_sync_counter(n)))
    return PredictedCost(
        gates=report.gates,
        garbage=report.garbage,
        quantum=report.quantum_cost,
        applicable=False,
    )
