"""Tests for the verification checkers, positive and negative."""
from dataclasses import replace

import pytest

from rnl.gatelib import FG, TG
from rnl.generators import (
    ASYNC,
    SYNC,
    CounterSpec,
    build_clocked_t_ff,
    build_counter,
    build_t_ff,
)
from rnl.netlist import GateInstance, InputRole, Netlist, OutputRole
from rnl.sequential import RISE, flatten
from rnl.verify import (
    check_counting,
    check_decompositions,
    check_equivalent,
    check_reversible,
    check_theorems,
    counting_check_results,
)


def and_fragment_with_shared_garbage():
    """AND-like fragment whose operand line doubles as its own garbage.

    The Toffoli instance reuses line 1 as both control and target, so the
    outputs (a, ab xor b) collapse the b input whenever a is 1.  validate
    flags the duplicate line; eval still runs and loses information.
    """
    return Netlist(
        line_count=2,
        input_roles=(InputRole.primary("a"), InputRole.primary("b")),
        output_roles=(OutputRole.primary("a"), OutputRole.garbage()),
        gates=(GateInstance(TG, (0, 1, 1)),),
    )


class TestCheckReversible:
    def test_t_ff_core_passes(self):
        assert check_reversible(flatten(build_t_ff())).all_passed

    def test_async_4bit_core_passes(self):
        core = flatten(build_counter(CounterSpec(4, ASYNC)))
        report = check_reversible(core)
        assert report.all_passed
        assert "32 assignments" in report.checks[0].detail

    def test_information_losing_fragment_fails(self):
        fragment = and_fragment_with_shared_garbage()
        assert fragment.validate()  # ill-formed instance is reported as data
        report = check_reversible(fragment)
        assert not report.all_passed
        assert "collide" in report.checks[0].detail

    def test_clocked_t_ff_core_passes_thanks_to_garbage(self):
        # with CLK=0 the toggle input survives only on the garbage line
        report = check_reversible(flatten(build_clocked_t_ff()))
        assert report.all_passed

    def test_refuses_oversized_enumeration(self):
        big = Netlist(
            line_count=25,
            input_roles=tuple(InputRole.primary(f"x{i}") for i in range(25)),
            output_roles=tuple(OutputRole.primary(f"x{i}") for i in range(25)),
            gates=(GateInstance(FG, (0, 1)),),
        )
        with pytest.raises(ValueError):
            check_reversible(big)


class TestCheckEquivalent:
    def test_clocked_core_matches_toggle_equation(self):
        core = flatten(build_clocked_t_ff())
        # free inputs in line order: clk, t, q
        report = check_equivalent(
            core, lambda clk, t, q: (t & clk) ^ q, output_lines=[2]
        )
        assert report.all_passed

    def test_t_ff_matches_xor(self):
        core = flatten(build_t_ff())
        report = check_equivalent(core, lambda t, q: t ^ q, output_lines=[1])
        assert report.all_passed

    def test_wrong_reference_fails(self):
        core = flatten(build_clocked_t_ff())
        report = check_equivalent(core, lambda clk, t, q: t ^ q, output_lines=[2])
        assert not report.all_passed
        assert "expected" in report.checks[0].detail

    def test_multi_line_comparison(self):
        core = flatten(build_t_ff())
        report = check_equivalent(
            core, lambda t, q: (t, t ^ q), output_lines=[0, 1]
        )
        assert report.all_passed


class TestCheckTheorems:
    def test_full_sweep_passes(self):
        report = check_theorems(16)
        assert report.all_passed
        # async rows 1..16 plus sync rows 3..16
        assert len(report.checks) == 16 + 14

    def test_named_rows_present(self):
        report = check_theorems(4)
        names = [c.name for c in report.checks]
        assert "async n=4" in names
        assert "sync n=4" in names

    def test_async_16_cost(self):
        report = check_theorems(16)
        row = next(c for c in report.checks if c.name == "async n=16")
        assert row.passed
        assert "qc=95" in row.detail

    def test_small_sweep_rejected(self):
        with pytest.raises(ValueError):
            check_theorems(3)


class TestCheckCounting:
    def test_async_4bit_48_pulses(self):
        assert check_counting(CounterSpec(4, ASYNC), 48).all_passed

    def test_sync_3bit_24_pulses(self):
        assert check_counting(CounterSpec(3, SYNC), 24).all_passed

    def test_miswired_rising_ripple_fails(self):
        circuit = build_counter(CounterSpec(3, ASYNC))
        bad_stages = tuple(
            s if s.clock_source is None else replace(s, trigger=RISE)
            for s in circuit.stages
        )
        broken = replace(circuit, stages=bad_stages)
        results = counting_check_results(broken, 3, 24)
        assert not all(r.passed for r in results)

    def test_zero_pulses_rejected(self):
        with pytest.raises(ValueError):
            check_counting(CounterSpec(2, ASYNC), 0)


class TestCheckDecompositions:
    def test_all_gates_pass(self):
        report = check_decompositions()
        assert report.all_passed
        assert len(report.checks) == 6

    def test_costs_reported_per_gate(self):
        report = check_decompositions()
        by_name = {c.name: c for c in report.checks}
        assert "cost 1, 1 primitives" in by_name["FG"].detail
        assert "cost 5, 5 primitives" in by_name["TG"].detail
        assert "cost 4, 4 primitives" in by_name["MPG"].detail

    def test_report_serializes(self):
        data = check_decompositions().as_dict()
        assert data["all_passed"] is True
        assert {c["name"] for c in data["checks"]} == {
            "NOT", "FG", "DFG", "PG", "MPG", "TG",
        }
