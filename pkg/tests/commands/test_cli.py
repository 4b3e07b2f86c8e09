import json
import logging

import pytest
from click.testing import CliRunner

from main import cli
from models.runs import OutputFormat, PropagatorRow, ReportRow, WaveguideRow
from services.emit import parse_rows

runner = CliRunner(mix_stderr=False)


def invoke(*args):
    return runner.invoke(cli, list(args))


def error_document(result):
    """The JSON error object written as the last line of standard error"""
    return json.loads(result.stderr.strip().splitlines()[-1])


@pytest.mark.parametrize(
    "args",
    [
        ("report",),
        ("propagator", "--count", "3"),
        ("window",),
        ("--format", "json", "waveguide"),
        ("nearfield", "--omega-rad-s", "9e9"),
    ],
)
def test_deterministic_output(args):
    """Test two consecutive runs print byte-identical output"""
    first, second = invoke(*args), invoke(*args)
    assert first.exit_code == 0
    assert first.stdout_bytes == second.stdout_bytes


class TestReportCommand:
    """Test suite for the report command"""

    def test_report_rows(self):
        """Test the report parses back into ReportRow"""
        result = invoke("report")
        assert result.exit_code == 0
        rows = parse_rows(result.stdout, ReportRow, OutputFormat.CSV)
        assert rows[0].quantity == "electron_compton_wavelength"
        assert any(row.quantity == "observability_threshold" for row in rows)

    def test_byte_identical_reruns(self):
        """Test two runs print the same bytes"""
        assert invoke("report").stdout_bytes == invoke("report").stdout_bytes


class TestPropagatorCommand:
    """Test suite for the propagator command"""

    def test_closed_form_sweep(self):
        """Test a short closed-form sweep"""
        result = invoke("propagator", "--method", "closed_form", "--count", "5")
        assert result.exit_code == 0
        rows = parse_rows(result.stdout, PropagatorRow, OutputFormat.CSV)
        assert len(rows) == 5
        assert rows[0].z == pytest.approx(0.1)
        assert rows[-1].z == pytest.approx(10.0)

    def test_both_methods_deterministic(self):
        """Test closed form and quadrature rows repeat byte for byte"""
        args = ("propagator", "--start", "0.5", "--stop", "2", "--count", "3")
        first, second = invoke(*args), invoke(*args)
        assert first.exit_code == 0
        assert first.stdout == second.stdout
        rows = parse_rows(first.stdout, PropagatorRow, OutputFormat.CSV)
        methods = [row.method.value for row in rows]
        assert methods == ["closed_form", "quadrature"] * 3

    def test_invalid_variable_is_usage_error(self):
        """Test exit code 2 and a message naming the valid variables"""
        result = invoke("propagator", "--variable", "omega")
        assert result.exit_code == 2
        document = error_document(result)
        assert document["error"] == "SweepError"
        assert "z, dr, dt, rapidity" in document["message"]
        assert result.stdout == ""

    def test_timelike_sweep_is_domain_error(self):
        """Test exit code 3 for a time sweep at zero distance"""
        result = invoke(
            "propagator",
            "--variable",
            "dt",
            "--start",
            "1e-21",
            "--stop",
            "2e-21",
            "--spacing",
            "linear",
        )
        assert result.exit_code == 3
        assert error_document(result)["error"] == "DomainError"

    def test_exhausted_budget_is_convergence_error(self):
        """Test exit code 4 with the best estimate when the budget runs out"""
        result = invoke(
            "propagator", "--method", "quadrature", "--max-evals", "1000", "--count=2"
        )
        assert result.exit_code == 4
        document = error_document(result)
        assert document["error"] == "ConvergenceError"
        assert document["evaluations"] >= 1000
        assert "best_estimate_re" in document

    def test_far_tail_rows_positive(self):
        """Test quadrature rows out to z = 60 are positive and match the closed form"""
        result = invoke(
            "propagator", "--start", "20", "--stop", "60", "--count", "3", "--spacing", "linear"
        )
        assert result.exit_code == 0
        rows = parse_rows(result.stdout, PropagatorRow, OutputFormat.CSV)
        for closed, quad in zip(rows[::2], rows[1::2]):
            assert quad.amplitude_re > 0.0
            assert quad.amplitude_re == pytest.approx(closed.amplitude_re, rel=1e-6)

    def test_real_axis_far_tail_is_convergence_error(self):
        """Test exit code 4 when real-axis cancellation exceeds the tolerance"""
        result = invoke(
            "propagator",
            "--method",
            "quadrature",
            "--contour",
            "real_axis",
            "--start",
            "20",
            "--stop",
            "40",
            "--count",
            "2",
            "--max-evals",
            "200000",
        )
        assert result.exit_code == 4
        assert result.stdout == ""
        assert float(error_document(result)["error_bound"]) > 1e-9

    def test_invalid_sweep_range(self):
        """Test start >= stop is reported as a usage error"""
        result = invoke("propagator", "--start", "2", "--stop", "1")
        assert result.exit_code == 2
        assert error_document(result)["error"] == "ValidationError"

    def test_two_particle_sources(self):
        """Test the electron and a cutoff together are rejected"""
        result = invoke("propagator", "--electron", "--cutoff-rad-s", "9.49e9")
        assert result.exit_code == 2


class TestWindowCommand:
    """Test suite for the window command"""

    def test_default_sweep(self):
        """Test the default sweep is 21 electron distances"""
        result = invoke("window")
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert lines[0] == "dt,dr,interval_sq,z,causal_class,in_window"
        assert len(lines) == 22

    def test_half_range_is_usage_error(self):
        """Test --start without --stop"""
        result = invoke("window", "--start", "0")
        assert result.exit_code == 2
        assert "--start and --stop" in result.stderr


class TestWaveguideCommand:
    """Test suite for the waveguide command"""

    def test_json_output(self):
        """Test the JSON form of the default sweep"""
        result = invoke("--format", "json", "waveguide")
        assert result.exit_code == 0
        documents = json.loads(result.stdout)
        assert len(documents) == 9
        assert [d["character"] for d in documents].count("at_cutoff") == 1

    def test_ghz_angular_flag(self):
        """Test 9.49 'GHz' means 9.49e9 rad/s"""
        ghz = invoke("waveguide", "--cutoff-ghz-angular", "9.49").stdout
        rad = invoke("waveguide", "--cutoff-rad-s", "9.49e9").stdout
        ghz_rows = parse_rows(ghz, WaveguideRow, OutputFormat.CSV)
        rad_rows = parse_rows(rad, WaveguideRow, OutputFormat.CSV)
        assert [r.bound_mm for r in ghz_rows] == pytest.approx(
            [r.bound_mm for r in rad_rows], rel=1e-15
        )
        assert ghz_rows[0].bound_mm == pytest.approx(31.6, rel=5e-3)

    def test_both_frequency_units(self):
        """Test both cutoff flags together"""
        result = invoke(
            "waveguide", "--cutoff-ghz-angular", "9.49", "--cutoff-rad-s", "9.49e9"
        )
        assert result.exit_code == 2

    def test_output_file(self, tmp_path):
        """Test --output writes the same text to a file"""
        target = tmp_path / "waveguide.csv"
        to_file = invoke("--output", str(target), "waveguide")
        assert to_file.exit_code == 0
        assert to_file.stdout == ""
        assert target.read_text(encoding="utf-8") == invoke("waveguide").stdout


class TestScenarioFile:
    """Test suite for --config scenario files"""

    @pytest.fixture
    def scenario(self, tmp_path):
        """Scenario sweeping absolute frequency, emitted as JSON"""
        path = tmp_path / "scenario.env"
        path.write_text(
            "format=json\nvariable=omega\nstart=1e9\nstop=2e10\ncount=3\n",
            encoding="utf-8",
        )
        return path

    def test_scenario_defaults(self, scenario):
        """Test scenario entries act as flag defaults"""
        result = invoke("--config", str(scenario), "waveguide")
        assert result.exit_code == 0
        assert [d["omega"] for d in json.loads(result.stdout)] == [1e9, 1.05e10, 2e10]

    def test_flags_win(self, scenario):
        """Test command-line flags override the scenario"""
        result = invoke(
            "--config", str(scenario), "--format", "csv", "waveguide", "--count", "5"
        )
        assert result.exit_code == 0
        assert len(result.stdout.splitlines()) == 6

    def test_unknown_key_warns(self, tmp_path, caplog):
        """Test a misspelt scenario key is logged and otherwise ignored"""
        path = tmp_path / "typo.env"
        path.write_text("cuttoff-rad-s=1e10\nformat=json\n", encoding="utf-8")
        with caplog.at_level(logging.WARNING, logger="main"):
            result = invoke("--config", str(path), "waveguide")
        assert result.exit_code == 0
        assert "cuttoff-rad-s" in caplog.text
        assert "format" not in caplog.text

    def test_missing_file(self, tmp_path):
        """Test a scenario path that does not exist"""
        assert invoke("--config", str(tmp_path / "absent.env"), "report").exit_code == 2


class TestNearfieldCommand:
    """Test suite for the nearfield command"""

    def test_default_grid(self):
        """Test the static field on the default 11x11 grid"""
        result = invoke("nearfield")
        assert result.exit_code == 0
        assert len(result.stdout.splitlines()) == 1 + 121

    def test_width_and_cutoff_conflict(self):
        """Test --width-m and a cutoff together"""
        result = invoke("nearfield", "--width-m", "0.1", "--cutoff-rad-s", "1e10")
        assert result.exit_code == 2

    def test_above_cutoff_rejected(self):
        """Test a propagating frequency is refused"""
        result = invoke("nearfield", "--omega-rad-s", "1e10")
        assert result.exit_code == 2

    def test_too_small_grid(self):
        """Test fewer than three points per axis"""
        result = invoke("nearfield", "--nx", "2")
        assert result.exit_code == 2
        assert error_document(result)["error"] == "SweepError"
