"""rnl: reversible netlist toolkit.

Build, measure, simulate and verify reversible sequential circuits:
T flip-flops and n-bit ripple/synchronous counters assembled from the
standard reversible gate library (NOT, FG, DFG, PG, MPG, TG), with
quantum cost, logical depth and garbage accounting.
"""
from .gatelib import (
    GATES,
    GateDef,
    PrimitiveKind,
    QuantumPrimitive,
    apply_gate,
    builtin_gates,
    decomposition_unitary,
)
from .generators import (
    ASYNC,
    SYNC,
    CounterSpec,
    PredictedCost,
    build_clocked_t_ff,
    build_counter,
    build_ms_t_ff,
    build_t_ff,
    predict_cost,
)
from .metrics import CostReport, delay, gate_count, garbage_count, measure, quantum_cost
from .netlist import (
    GateInstance,
    InputRole,
    Netlist,
    NetlistFormatError,
    OutputRole,
    empty_netlist,
)
from .netlist import parse as parse_netlist
from .netlist import serialize as serialize_netlist
from .sequential import (
    CounterState,
    Feedback,
    SequentialCircuit,
    StageBinding,
    flatten,
    pulse,
    run,
)
from .sequential import parse as parse_sequential
from .sequential import serialize as serialize_sequential
from .verify import (
    VerificationReport,
    check_counting,
    check_decompositions,
    check_equivalent,
    check_reversible,
    check_theorems,
)

__version__ = "0.1.0"

__all__ = [
    "ASYNC",
    "SYNC",
    "CostReport",
    "CounterSpec",
    "CounterState",
    "Feedback",
    "GATES",
    "GateDef",
    "GateInstance",
    "InputRole",
    "Netlist",
    "NetlistFormatError",
    "OutputRole",
    "PredictedCost",
    "PrimitiveKind",
    "QuantumPrimitive",
    "SequentialCircuit",
    "StageBinding",
    "VerificationReport",
    "apply_gate",
    "build_clocked_t_ff",
    "build_counter",
    "build_ms_t_ff",
    "build_t_ff",
    "builtin_gates",
    "check_counting",
    "check_decompositions",
    "check_equivalent",
    "check_reversible",
    "check_theorems",
    "decomposition_unitary",
    "delay",
    "empty_netlist",
    "flatten",
    "gate_count",
    "garbage_count",
    "measure",
    "parse_netlist",
    "parse_sequential",
    "predict_cost",
    "pulse",
    "quantum_cost",
    "run",
    "serialize_netlist",
    "serialize_sequential",
]
