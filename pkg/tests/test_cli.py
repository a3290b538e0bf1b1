"""Tests for the command-line interface."""
import json

import pytest

from rnl.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSynth:
    def test_counter_writes_file_and_prints_cost(self, tmp_path, capsys):
        out = tmp_path / "async4.rnl"
        code, stdout, _ = run_cli(
            capsys, "synth", "--kind", "counter", "--bits", "4",
            "--mode", "async", "--out", str(out),
        )
        assert code == 0
        assert "quantum_cost 23" in stdout
        assert out.read_text().startswith(".rnl 1")

    def test_tff_reports_no_garbage(self, tmp_path, capsys):
        code, stdout, _ = run_cli(
            capsys, "synth", "--kind", "tff", "--out", str(tmp_path / "t.rnl")
        )
        assert code == 0
        assert "garbage 0" in stdout

    def test_zero_bits_is_usage_error(self, tmp_path, capsys):
        with pytest.raises(SystemExit) as err:
            main(["synth", "--kind", "counter", "--bits", "0",
                  "--mode", "sync", "--out", str(tmp_path / "x.rnl")])
        assert err.value.code == 2

    def test_counter_flags_rejected_for_other_kinds(self, tmp_path, capsys):
        with pytest.raises(SystemExit):
            main(["synth", "--kind", "tff", "--bits", "3",
                  "--out", str(tmp_path / "x.rnl")])

    def test_counter_without_bits_rejected(self, tmp_path):
        with pytest.raises(SystemExit):
            main(["synth", "--kind", "counter", "--out", str(tmp_path / "x.rnl")])


@pytest.fixture
def mstff_file(tmp_path, capsys):
    path = tmp_path / "mstff.rnl"
    main(["synth", "--kind", "mstff", "--out", str(path)])
    capsys.readouterr()
    return path


@pytest.fixture
def async4_file(tmp_path, capsys):
    path = tmp_path / "async4.rnl"
    main(["synth", "--kind", "counter", "--bits", "4", "--mode", "async",
          "--out", str(path)])
    capsys.readouterr()
    return path


class TestCost:
    def test_csv_row(self, mstff_file, capsys):
        code, stdout, _ = run_cli(capsys, "cost", str(mstff_file), "--format", "csv")
        assert code == 0
        assert "10,10,2" in stdout

    def test_json_fields(self, mstff_file, capsys):
        code, stdout, _ = run_cli(capsys, "cost", str(mstff_file), "--format", "json")
        data = json.loads(stdout)
        assert data == {
            "gates": 4, "quantum_cost": 10, "delay": 10,
            "garbage": 2, "constants": 1,
        }

    def test_empty_netlist_reports_zeros(self, tmp_path, capsys):
        path = tmp_path / "empty.rnl"
        path.write_text(".rnl 1\n.lines 1\n.input 0 a\n.output 0 a\n.end\n")
        code, stdout, _ = run_cli(capsys, "cost", str(path))
        assert code == 0
        assert "gates 0" in stdout
        assert "quantum_cost 0" in stdout

    def test_malformed_file_fails_to_stderr(self, tmp_path, capsys):
        path = tmp_path / "bad.rnl"
        path.write_text(".rnl 1\n.lines 2\ngate WAT 0 1\n.end\n")
        code, stdout, stderr = run_cli(capsys, "cost", str(path))
        assert code == 1
        assert "error:" in stderr
        assert "unknown gate" in stderr

    def test_missing_file(self, capsys):
        code, _, stderr = run_cli(capsys, "cost", "/nonexistent/x.rnl")
        assert code == 1
        assert "error:" in stderr

    def test_synth_cost_round_trip_agrees(self, async4_file, capsys):
        code, stdout, _ = run_cli(capsys, "cost", str(async4_file))
        assert code == 0
        assert "quantum_cost 23" in stdout
        assert "delay 23" in stdout
        assert "garbage 4" in stdout


class TestSim:
    def test_async4_five_pulses(self, async4_file, capsys):
        code, stdout, _ = run_cli(capsys, "sim", str(async4_file), "--pulses", "5")
        lines = stdout.strip().splitlines()
        assert code == 0
        assert len(lines) == 6
        assert lines[0].split() == ["0", "0000"]
        assert lines[-1].split() == ["5", "0101"]

    def test_sync3_wraps(self, tmp_path, capsys):
        path = tmp_path / "sync3.rnl"
        main(["synth", "--kind", "counter", "--bits", "3", "--mode", "sync",
              "--out", str(path)])
        capsys.readouterr()
        code, stdout, _ = run_cli(capsys, "sim", str(path), "--pulses", "8")
        assert code == 0
        assert stdout.strip().splitlines()[-1].split() == ["8", "000"]

    def test_zero_pulses_prints_initial_only(self, async4_file, capsys):
        code, stdout, _ = run_cli(capsys, "sim", str(async4_file))
        assert code == 0
        assert stdout.strip().splitlines() == ["0 0000"]

    def test_trace_shows_stage_firings(self, async4_file, capsys):
        code, stdout, _ = run_cli(
            capsys, "sim", str(async4_file), "--pulses", "2", "--trace"
        )
        assert code == 0
        assert "stage 0: 1->0" in stdout
        assert "stage 1: 0->1" in stdout

    def test_combinational_file_is_not_sequential(self, tmp_path, capsys):
        path = tmp_path / "comb.rnl"
        path.write_text(".rnl 1\n.lines 1\n.input 0 a\n.output 0 a\n.end\n")
        code, _, stderr = run_cli(capsys, "sim", str(path), "--pulses", "1")
        assert code == 1
        assert "not sequential" in stderr

    def test_set_drives_named_inputs(self, tmp_path, capsys):
        path = tmp_path / "tff.rnl"
        main(["synth", "--kind", "tff", "--out", str(path)])
        capsys.readouterr()
        code, stdout, _ = run_cli(
            capsys, "sim", str(path), "--pulses", "3", "--set", "t=1"
        )
        assert code == 0
        states = [line.split()[1] for line in stdout.strip().splitlines()]
        assert states == ["0", "1", "0", "1"]

    def test_set_rejects_non_bits(self, tmp_path, capsys):
        path = tmp_path / "tff.rnl"
        main(["synth", "--kind", "tff", "--out", str(path)])
        capsys.readouterr()
        code, _, stderr = run_cli(
            capsys, "sim", str(path), "--pulses", "1", "--set", "t=maybe"
        )
        assert code == 1
        assert "--set expects" in stderr


class TestVerify:
    def test_theorem_sweep_exits_zero(self, capsys):
        code, stdout, _ = run_cli(capsys, "verify", "--theorems", "--max-bits", "16")
        assert code == 0
        assert "async n=16" in stdout
        assert "FAIL" not in stdout

    def test_gates_lists_all_six(self, capsys):
        code, stdout, _ = run_cli(capsys, "verify", "--gates")
        assert code == 0
        for name in ("NOT", "FG", "DFG", "PG", "MPG", "TG"):
            assert name in stdout

    def test_exhaustive_on_generated_design(self, async4_file, capsys):
        code, stdout, _ = run_cli(capsys, "verify", str(async4_file), "--exhaustive")
        assert code == 0
        assert "PASS" in stdout

    def test_exhaustive_failure_exits_nonzero(self, tmp_path, capsys):
        # AND-like fragment reusing a line inside one gate loses information
        path = tmp_path / "lossy.rnl"
        path.write_text(
            ".rnl 1\n.lines 2\n.input 0 a\n.input 1 b\n"
            ".output 0 a\n.garbage 1\ngate TG 0 1 1\n.end\n"
        )
        code, stdout, _ = run_cli(capsys, "verify", str(path), "--exhaustive")
        assert code == 1
        assert "FAIL" in stdout

    def test_json_format(self, capsys):
        code, stdout, _ = run_cli(capsys, "verify", "--gates", "--format", "json")
        data = json.loads(stdout)
        assert code == 0
        assert data["all_passed"] is True

    def test_mode_selection_required(self, capsys):
        with pytest.raises(SystemExit):
            main(["verify"])

    def test_conflicting_modes_rejected(self, capsys):
        with pytest.raises(SystemExit):
            main(["verify", "--gates", "--theorems"])


class TestReport:
    def test_tables_match_stored_baselines(self, capsys):
        code, stdout, _ = run_cli(capsys, "report", "--tables", "--format", "csv")
        assert code == 0
        lines = stdout.strip().splitlines()
        assert lines[0] == "table,design,quantum_cost,delay,garbage"
        body = "\n".join(lines)
        assert "clocked T flip-flop,Proposed,5,5,1" in body
        assert "clocked T flip-flop,Chuang 2008,6,6,2" in body
        assert "clocked T flip-flop,Thapliyal 2010,6,6,2" in body
        assert "master-slave T flip-flop,Proposed,10,10,2" in body
        assert "master-slave T flip-flop,Thapliyal 2010,11,11,3" in body
        assert "master-slave T flip-flop,Thapliyal 2007,17,17,4" in body
        assert "4-bit asynchronous counter,Proposed,23,23,4" in body
        assert "4-bit asynchronous counter,Rajmohan 2011,55,55,12" in body
        assert "4-bit synchronous counter,Proposed,32,32,4" in body
        assert "4-bit synchronous counter,Khan 2011,35,35,4" in body

    def test_tables_text_golden(self, capsys):
        code, first, _ = run_cli(capsys, "report", "--tables")
        code2, second, _ = run_cli(capsys, "report", "--tables")
        assert code == code2 == 0
        assert first == second  # byte-identical, no timestamps
        assert "Proposed" in first

    def test_scaling_single_async_row(self, capsys):
        code, stdout, _ = run_cli(
            capsys, "report", "--scaling", "--max-bits", "1",
            "--mode", "async", "--format", "csv",
        )
        assert code == 0
        lines = stdout.strip().splitlines()
        assert lines == [
            "mode,bits,quantum_cost,predicted_quantum_cost",
            "async,1,5,5",
        ]

    def test_scaling_includes_predictions(self, capsys):
        code, stdout, _ = run_cli(
            capsys, "report", "--scaling", "--max-bits", "4", "--format", "csv"
        )
        assert code == 0
        assert "async,4,23,23" in stdout
        assert "sync,4,32,32" in stdout
        assert "sync,2,11," in stdout  # no closed form below 3 bits

    def test_figures_written(self, tmp_path, capsys):
        figdir = tmp_path / "figs"
        code, _, stderr = run_cli(
            capsys, "report", "--tables", "--figures", str(figdir)
        )
        assert code == 0
        written = sorted(p.name for p in figdir.iterdir())
        assert len(written) == 4
        assert all(name.endswith(".png") for name in written)
        assert "wrote" in stderr

    def test_scaling_figure(self, tmp_path, capsys):
        figdir = tmp_path / "figs"
        code, _, _ = run_cli(
            capsys, "report", "--scaling", "--max-bits", "6",
            "--figures", str(figdir),
        )
        assert code == 0
        assert (figdir / "scaling.png").exists()

    def test_tables_and_scaling_conflict(self):
        with pytest.raises(SystemExit):
            main(["report", "--tables", "--scaling"])
