"""CLI behavior: outputs, exit codes, determinism, file emission."""

import json
import subprocess
import sys

import pytest
from click.testing import CliRunner

from qbsc.cli import main
from qbsc.qasm import parse


@pytest.fixture()
def runner():
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(main, list(args), catch_exceptions=False)


class TestCompare:
    def test_greater(self, runner):
        result = invoke(runner, "compare", "--a", "700", "--b", "420")
        assert result.exit_code == 0
        assert "class: Greater" in result.output

    def test_equal_flags(self, runner):
        result = invoke(runner, "compare", "--a", "0", "--b", "0")
        assert result.exit_code == 0
        assert "class: Equal" in result.output
        assert "r0: 0" in result.output and "r1: 0" in result.output

    def test_binary_operands(self, runner):
        result = invoke(runner, "compare", "--a", "bin:01", "--b", "bin:11")
        assert result.exit_code == 0
        assert "class: Less" in result.output
        assert "n: 2" in result.output

    def test_json_format(self, runner):
        result = invoke(runner, "compare", "--a", "6", "--b", "7", "--format", "json")
        payload = json.loads(result.output)
        assert payload["class"] == "Less"
        assert payload["resources"]["ancilla"] == 2

    def test_resource_summary_reflects_early_verdict(self, runner):
        # 700 > 420 is decided at the first block: 14 of the body's 145 units
        result = invoke(runner, "compare", "--a", "700", "--b", "420",
                        "--format", "json")
        resources = json.loads(result.output)["resources"]
        assert resources["static_cost"] == 145
        assert resources["executed_cost"] == 14

    def test_invalid_operand_exits_2(self, runner):
        result = runner.invoke(main, ["compare", "--a", "0b1", "--b", "1"])
        assert result.exit_code == 2

    def test_dense_backend_flag(self, runner):
        result = invoke(runner, "compare", "--a", "3", "--b", "1", "--backend", "dense")
        assert "backend: dense" in result.output

    def test_dense_backend_cap_exits_3(self, runner):
        result = runner.invoke(main, ["compare", "--a", str(2**99), "--b", "1",
                                      "--backend", "dense"])
        assert result.exit_code == 3


class TestVerify:
    def test_single_width(self, runner):
        result = invoke(runner, "verify", "--max-bits", "1")
        assert result.exit_code == 0
        assert "4 pairs, 0 mismatches" in result.output

    def test_exhaustive_totals(self, runner):
        result = invoke(runner, "verify", "--max-bits", "3", "--format", "json")
        payload = json.loads(result.output)
        assert payload["pairs"] == 4 + 16 + 64
        assert payload["mismatches"] == 0

    def test_random_widths_use_doubling_ladder(self, runner):
        result = invoke(runner, "verify", "--max-bits", "24", "--exhaustive-limit", "4",
                        "--samples", "5", "--format", "json")
        payload = json.loads(result.output)
        sampled = [row["n"] for row in payload["per_n"] if row["n"] > 4]
        assert sampled == [5, 10, 20, 24]
        assert payload["pairs"] == 4 + 16 + 64 + 256 + 4 * 5
        assert payload["mismatches"] == 0

    def test_build_accepts_emit_alias(self, runner):
        result = invoke(runner, "build", "--a", "1", "--b", "0", "--emit", "json")
        assert json.loads(result.output)["qubits"] == 4

    def test_both_variants(self, runner):
        result = invoke(runner, "verify", "--max-bits", "2", "--variant", "both",
                        "--format", "json")
        payload = json.loads(result.output)
        assert payload["pairs"] == 2 * (4 + 16)

    def test_bad_range_exits_2(self, runner):
        result = runner.invoke(main, ["verify", "--max-bits", "0"])
        assert result.exit_code == 2


class TestSweep:
    def test_cost_row(self, runner):
        result = invoke(runner, "sweep", "--metric", "cost", "--n", "80")
        assert "Proposed,80,Equal,cost,1120" in result.output

    def test_header(self, runner):
        result = invoke(runner, "sweep", "--metric", "cost", "--n", "80")
        assert result.output.splitlines()[0] == "method,n,case,metric,value"

    def test_ancilla_at_one(self, runner):
        result = invoke(runner, "sweep", "--metric", "ancilla", "--n", "1")
        assert "Xia,1,-,ancilla,1" in result.output
        assert "Proposed,1,-,ancilla,2" in result.output

    def test_notes_go_to_stderr_not_stdout(self, runner):
        result = runner.invoke(main, ["sweep", "--metric", "delay", "--n", "2"],
                               catch_exceptions=False)
        assert "note:" not in result.stdout

    def test_json_format(self, runner):
        result = invoke(runner, "sweep", "--metric", "delay", "--n", "1",
                        "--method", "Xia", "--format", "json")
        payload = json.loads(result.output)
        assert payload == [{"method": "Xia", "n": 1, "case": "-",
                            "metric": "delay", "value": 33}]

    def test_bad_width_exits_2(self, runner):
        result = runner.invoke(main, ["sweep", "--metric", "cost", "--n", "0"])
        assert result.exit_code == 2


class TestCensus:
    def test_width_ten_x_count(self, runner):
        result = invoke(runner, "census", "--n", "10")
        assert "Proposed,10,-,x,45" in result.output
        assert "Proposed,10,-,ccx,20" in result.output
        assert "Proposed,10,-,block_measures,20" in result.output

    def test_default_grid_covers_one_to_hundred(self, runner):
        result = invoke(runner, "census")
        assert "Proposed,1,-,x,4" in result.output
        assert "Proposed,100,-,x,450" in result.output


class TestBuildAndExport:
    def test_build_summary(self, runner):
        result = invoke(runner, "build", "--a", "5", "--b", "3")
        assert "qubits: 8" in result.output
        assert "blocks_1bc: 3" in result.output

    def test_build_json_is_circuit_schema(self, runner):
        result = invoke(runner, "build", "--a", "1", "--b", "0", "--format", "json")
        payload = json.loads(result.output)
        assert payload["qubits"] == 4 and payload["clbits"] == 2
        assert any(entry.get("g") == "ccx" for entry in payload["instr"])

    def test_export_parses_back(self, runner):
        result = invoke(runner, "export", "--a", "2", "--b", "3")
        circuit = parse(result.output)
        assert circuit.num_qubits == 6

    def test_out_writes_file_atomically(self, runner, tmp_path):
        target = tmp_path / "sweep.csv"
        result = invoke(runner, "sweep", "--metric", "cost", "--n", "80",
                        "--out", str(target))
        assert result.exit_code == 0
        assert result.output == ""
        assert "Proposed,80,Equal,cost,1120" in target.read_text()
        assert not list(tmp_path.glob(".qbsc-*"))  # no temp litter


class TestDeterminism:
    @pytest.mark.parametrize("args", [
        ("compare", "--a", "700", "--b", "420", "--format", "json"),
        ("sweep", "--metric", "cost"),
        ("sweep", "--metric", "delay", "--format", "json"),
        ("census", "--n", "7"),
        ("verify", "--max-bits", "4", "--format", "json"),
    ])
    def test_identical_invocations_are_byte_identical(self, runner, args):
        first = invoke(runner, *args).stdout_bytes
        second = invoke(runner, *args).stdout_bytes
        assert first == second

    def test_module_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "qbsc", "compare", "--a", "9", "--b", "4"],
            capture_output=True, text=True)
        assert proc.returncode == 0
        assert "class: Greater" in proc.stdout
