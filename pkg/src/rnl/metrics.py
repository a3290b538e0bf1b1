"""Cost metrics for netlists: gate count, quantum cost, delay, garbage.

Delay is logical depth: the heaviest path through the gate-dependency
graph, where a gate depends on every earlier gate it shares a line with
and each gate weighs its own quantum cost.  Gates on disjoint lines may
overlap in time; the primitives inside one gate may not.  Under this
model a cascade in which every consecutive gate pair shares a line (a
chain) has delay equal to its total quantum cost, which is exactly the
regime all generators in this package produce.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass

from .netlist import CONST, GARBAGE, Netlist


@dataclass(frozen=True)
class CostReport:
    """The four standard metrics plus the constant-input count."""

    gates: int
    quantum_cost: int
    delay: int
    garbage: int
    constants: int

    def as_dict(self) -> dict[str, int]:
        return asdict(self)

    def as_csv(self, header: bool = True) -> str:
        row = f"{self.gates},{self.quantum_cost},{self.delay},{self.garbage},{self.constants}"
        if header:
            return "gates,quantum_cost,delay,garbage,constants\n" + row
        return row

    def as_text(self) -> str:
        return "\n".join(f"{k} {v}" for k, v in self.as_dict().items())


def gate_count(netlist: Netlist) -> int:
    """Number of gate instances."""
    return len(netlist.gates)


def quantum_cost(netlist: Netlist) -> int:
    """Sum of the instances' quantum costs."""
    return sum(inst.gate.quantum_cost for inst in netlist.gates)


def delay(netlist: Netlist) -> int:
    """Heaviest dependency-path weight, in unit-primitive time steps."""
    depth_on_line = [0] * netlist.line_count
    best = 0
    for inst in netlist.gates:
        d = inst.gate.quantum_cost + max(
            (depth_on_line[l] for l in inst.lines), default=0
        )
        for l in inst.lines:
            depth_on_line[l] = d
        best = max(best, d)
    return best


def garbage_count(netlist: Netlist) -> int:
    """Number of lines whose output role is garbage."""
    return sum(1 for r in netlist.output_roles if r.kind == GARBAGE)


def constant_count(netlist: Netlist) -> int:
    """Number of constant (ancilla) input lines."""
    return sum(1 for r in netlist.input_roles if r.kind == CONST)


def measure(netlist: Netlist) -> CostReport:
    """All metrics of one netlist."""
    return CostReport(
        gates=gate_count(netlist),
        quantum_cost=quantum_cost(netlist),
        delay=delay(netlist),
        garbage=garbage_count(netlist),
        constants=constant_count(netlist),
    )
