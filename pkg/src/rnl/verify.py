"""Independent checkers: reversibility, equivalence, formula sweeps, counting.

Every check is deterministic and exhaustive within its stated bound;
nothing is sampled.  Results come back as data (VerificationReport), so
callers decide how to render or fail.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .gatelib import UNITARY_ATOL, builtin_gates, decomposition_unitary
from .generators import ASYNC, SYNC, CounterSpec, build_counter, predict_cost
from .metrics import measure
from .netlist import CONST, Netlist
from .sequential import SequentialCircuit, flatten, run

#: Largest free-input count check_reversible will enumerate (2^24 cases).
EXHAUSTIVE_LIMIT = 24


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class VerificationReport:
    """Outcome of one verification run over a named subject."""

    subject: str
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(CheckResult(name, passed, detail))

    def as_dict(self) -> dict:
        return {
            "subject": self.subject,
            "all_passed": self.all_passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail}
                for c in self.checks
            ],
        }


def _free_assignments(netlist: Netlist):
    free = netlist.free_input_lines()
    base = [
        role.value if role.kind == CONST else 0
        for role in netlist.input_roles
    ]
    for pattern in range(1 << len(free)):
        values = base.copy()
        for pos, line in enumerate(free):
            values[line] = (pattern >> pos) & 1
        yield pattern, values


def check_reversible(netlist: Netlist, subject: str = "netlist") -> VerificationReport:
    """Exhaustively confirm that no two free-input assignments collide.

    The full output vector is compared, garbage lines included: garbage
    exists precisely to keep the map injective.  A fragment that reuses a
    line inside one gate instance (collapsing two inputs) fails here.
    Refuses (raises) above EXHAUSTIVE_LIMIT free inputs rather than
    silently sampling.
    """
    free = netlist.free_input_lines()
    if len(free) > EXHAUSTIVE_LIMIT:
        raise ValueError(
            f"{len(free)} free inputs exceeds the exhaustive bound {EXHAUSTIVE_LIMIT}"
        )
    report = VerificationReport(subject)
    seen: dict[tuple[int, ...], int] = {}
    for pattern, values in _free_assignments(netlist):
        key = netlist.eval(values)
        if key in seen:
            report.add(
                "injective",
                False,
                f"free patterns {seen[key]:b} and {pattern:b} collide on {key}",
            )
            return report
        seen[key] = pattern
    report.add("injective", True, f"{1 << len(free)} assignments, all distinct")
    return report


def check_equivalent(
    netlist: Netlist,
    reference: Callable[..., Sequence[int] | int],
    output_lines: Sequence[int],
    subject: str = "netlist",
) -> VerificationReport:
    """Exhaustively compare designated output lines against a truth function.

    `reference` receives the free-input bits in line order and must return
    the expected bits for `output_lines` (a bare int for a single line).
    """
    free = netlist.free_input_lines()
    if len(free) > EXHAUSTIVE_LIMIT:
        raise ValueError(
            f"{len(free)} free inputs exceeds the exhaustive bound {EXHAUSTIVE_LIMIT}"
        )
    report = VerificationReport(subject)
    for pattern, values in _free_assignments(netlist):
        args = [values[l] for l in free]
        expected = reference(*args)
        if isinstance(expected, int):
            expected = (expected,)
        out = netlist.eval(values)
        got = tuple(out[l] for l in output_lines)
        if got != tuple(expected):
            report.add(
                "equivalent",
                False,
                f"inputs {tuple(args)}: expected {tuple(expected)}, got {got}",
            )
            return report
    report.add("equivalent", True, f"{1 << len(free)} assignments match")
    return report


def check_theorems(max_bits: int) -> VerificationReport:
    """Measured counter costs must equal the closed forms, width by width.

    The constructions realize the bounds with equality, so the sweep
    asserts ==, and additionally that delay equals quantum cost.
    """
    if max_bits < 4:
        raise ValueError("sweep needs max_bits >= 4")
    report = VerificationReport(f"counter formulas up to {max_bits} bits")
    for mode, lo in ((ASYNC, 1), (SYNC, 3)):
        for n in range(lo, max_bits + 1):
            spec = CounterSpec(n, mode)
            got = measure(flatten(build_counter(spec)))
            want = predict_cost(spec)
            ok = (
                got.gates == want.gates
                and got.garbage == want.garbage
                and got.quantum_cost == want.quantum
                and got.delay == got.quantum_cost
            )
            report.add(
                f"{mode} n={n}",
                ok,
                f"measured (g={got.gates}, b={got.garbage}, qc={got.quantum_cost},"
                f" delay={got.delay}) vs predicted (g={want.gates}, b={want.garbage},"
                f" qc={want.quantum})",
            )
    return report


def check_counting(spec: CounterSpec, pulses: int) -> VerificationReport:
    """The state sequence must track the pulse count modulo 2^bits."""
    if pulses < 1:
        raise ValueError("need at least one pulse")
    circuit = build_counter(spec)
    report = VerificationReport(f"{spec.mode} {spec.bits}-bit counting, {pulses} pulses")
    report.checks.extend(counting_check_results(circuit, spec.bits, pulses))
    return report


def counting_check_results(
    circuit: SequentialCircuit, bits: int, pulses: int
) -> list[CheckResult]:
    states = run(circuit, pulses)
    modulus = 1 << bits
    for t, state in enumerate(states):
        expected = tuple(((t % modulus) >> i) & 1 for i in range(bits))
        if state.bits != expected:
            return [
                CheckResult(
                    "counts modulo 2^n",
                    False,
                    f"after {t} pulses expected {expected}, got {state.bits}",
                )
            ]
    return [CheckResult("counts modulo 2^n", True, f"{pulses} pulses tracked")]


def check_decompositions() -> VerificationReport:
    """Every built-in gate's primitive list must realize its permutation.

    Checks, per gate: the permutation is a bijection, the decomposition
    length equals the declared quantum cost, the composed unitary is
    unitary, and it equals the permutation matrix entrywise.
    """
    report = VerificationReport("builtin gate decompositions")
    for gate in sorted(builtin_gates(), key=lambda g: g.name):
        bijective = len(set(gate.permutation)) == len(gate.permutation)
        length_ok = len(gate.decomposition) == gate.quantum_cost
        u = decomposition_unitary(gate)
        eye = np.eye(1 << gate.arity)
        unitary_ok = np.allclose(u @ u.conj().T, eye, atol=UNITARY_ATOL)
        matches = np.allclose(u, gate.permutation_matrix(), atol=UNITARY_ATOL)
        report.add(
            gate.name,
            bijective and length_ok and unitary_ok and matches,
            f"cost {gate.quantum_cost}, {len(gate.decomposition)} primitives,"
            f" unitary={unitary_ok}, matches permutation={matches}",
        )
    return report
