"""
Integration tests for the command-line interface
Tests simulate, spectrum, table1, examples and the medium command group
"""

import csv

import pytest
import yaml

from app.commands.examples import get_examples
from app.utils.validators import validate_config

# 11 bins over 5-6 THz, 0-20 degree search: quick to simulate
FAST_SCENARIO = {
    "band": {"f_start_thz": 5.0, "bandwidth_thz": 1.0},
    "estimator": {"snapshots": 5, "angle_min_deg": 0.0, "angle_max_deg": 20.0},
    "sweep": {"axis": "distance_m", "values": [0.5, 1.0], "runs": 3, "seed": 4},
}


def write_yaml(path, data):
    path.write_text(yaml.safe_dump(data, sort_keys=False))
    return str(path)


def read_csv(path):
    with open(path, newline="") as f:
        return list(csv.DictReader(f))


class TestBandwidthTableCommand:
    """table1 / bandwidth-table command tests"""

    def test_writes_table(self, runner, tmp_path):
        """Test 30 rows with the documented header"""
        out = tmp_path / "bandwidth_table.csv"
        result = runner.invoke(args=["bandwidth-table", "--out", str(out)])
        assert result.exit_code == 0, result.output
        lines = out.read_text().splitlines()
        assert lines[0] == "n,fc_thz,tp_ps,fl_thz,fh_thz,b3db_thz,flag"
        assert len(lines) == 31
        assert "30 rows written to" in result.output
        assert result.output.count("differs from the published cell") == 3

    def test_default_location(self, runner, app):
        """Test the table lands in OUTPUT_DIR by default"""
        result = runner.invoke(args=["bandwidth-table"])
        assert result.exit_code == 0, result.output
        rows = read_csv(f"{app.config['OUTPUT_DIR']}/bandwidth_table.csv")
        assert rows[0]["n"] == "1" and rows[0]["fc_thz"] == "2.0"
        assert rows[0]["flag"] == "published_b3db_3.27"

    def test_table1_name(self, runner, tmp_path):
        """Test table1 and bandwidth-table write the same table"""
        first = tmp_path / "table1.csv"
        second = tmp_path / "bandwidth_table.csv"
        assert runner.invoke(args=["table1", "--out", str(first)]).exit_code == 0
        assert runner.invoke(args=["bandwidth-table", "--out", str(second)]).exit_code == 0
        assert first.read_bytes() == second.read_bytes()


class TestExamplesCommand:
    """examples command tests"""

    def test_list(self, runner):
        """Test every preset is listed"""
        result = runner.invoke(args=["examples"])
        assert result.exit_code == 0
        for key in get_examples():
            assert key in result.output

    def test_dump_preset(self, runner):
        """Test a preset prints as a loadable scenario"""
        result = runner.invoke(args=["examples", "noiseless_oracle"])
        assert result.exit_code == 0
        raw = yaml.safe_load(result.output)
        assert raw["medium"]["profile"] == "vacuum"

    def test_unknown_preset(self, runner):
        """Test unknown presets fail with exit status 1"""
        result = runner.invoke(args=["examples", "nonexistent"])
        assert result.exit_code == 1
        assert "Unknown example" in result.output

    def test_all_presets_validate(self, app):
        """Test every preset is a valid scenario"""
        with app.app_context():
            for key, preset in get_examples().items():
                assert validate_config(preset["config"]) is not None, key


class TestSimulateCommand:
    """simulate command tests"""

    def test_outputs(self, runner, tmp_path):
        """Test rmse, runs, spectra and manifest files are written"""
        config = write_yaml(tmp_path / "fast.yaml", FAST_SCENARIO)
        out = tmp_path / "run"
        result = runner.invoke(args=["simulate", config, "--out", str(out)])
        assert result.exit_code == 0, result.output

        rmse_rows = read_csv(out / "rmse.csv")
        assert list(rmse_rows[0]) == ["sweep_value", "rmse_deg", "stderr_deg", "n_run", "seed"]
        assert [r["sweep_value"] for r in rmse_rows] == ["0.5", "1.0"]
        assert all(r["n_run"] == "3" and r["seed"] == "4" for r in rmse_rows)

        runs = read_csv(out / "runs.csv")
        assert len(runs) == 6
        assert list(runs[0]) == ["sweep_value", "run_index", "estimate_deg"]

        spectrum = read_csv(out / "spectra" / "point_001.csv")
        assert len(spectrum) == 2001
        assert list(spectrum[0]) == ["theta_deg", "value"]

        manifest = yaml.safe_load((out / "manifest.yaml").read_text())
        assert manifest["config"]["sweep"]["seed"] == 4
        assert "distance_m=0.5: RMSE" in result.output

    def test_manifest_rerun_is_identical(self, runner, tmp_path):
        """Test rerunning a manifest reproduces the results byte for byte"""
        config = write_yaml(tmp_path / "fast.yaml", FAST_SCENARIO)
        first, second = tmp_path / "first", tmp_path / "second"
        assert runner.invoke(args=["simulate", config, "--out", str(first), "--no-spectra"]).exit_code == 0
        result = runner.invoke(args=["simulate", str(first / "manifest.yaml"), "--out", str(second),
                                     "--no-spectra"])
        assert result.exit_code == 0, result.output
        assert (first / "rmse.csv").read_bytes() == (second / "rmse.csv").read_bytes()
        assert (first / "runs.csv").read_bytes() == (second / "runs.csv").read_bytes()

    def test_workers_do_not_change_results(self, runner, tmp_path):
        """Test --workers leaves per-run estimates unchanged"""
        config = write_yaml(tmp_path / "fast.yaml", FAST_SCENARIO)
        serial, threaded = tmp_path / "serial", tmp_path / "threaded"
        runner.invoke(args=["simulate", config, "--out", str(serial), "--no-spectra"])
        result = runner.invoke(args=["simulate", config, "--out", str(threaded), "--no-spectra",
                                     "--workers", "2"])
        assert result.exit_code == 0, result.output
        assert (serial / "runs.csv").read_bytes() == (threaded / "runs.csv").read_bytes()

    def test_seed_override(self, runner, tmp_path):
        """Test --seed replaces sweep.seed"""
        config = write_yaml(tmp_path / "fast.yaml", FAST_SCENARIO)
        out = tmp_path / "seeded"
        result = runner.invoke(args=["simulate", config, "--out", str(out), "--no-spectra", "--seed", "9"])
        assert result.exit_code == 0, result.output
        assert all(r["seed"] == "9" for r in read_csv(out / "rmse.csv"))

    def test_two_axis_sweep(self, runner, tmp_path):
        """Test two-axis sweeps add the secondary_value column"""
        scenario = {**FAST_SCENARIO, "sweep": {**FAST_SCENARIO["sweep"], "values": [1.0],
                                               "secondary_axis": "order", "secondary_values": [1, 2]}}
        out = tmp_path / "grid"
        result = runner.invoke(args=["simulate", write_yaml(tmp_path / "grid.yaml", scenario),
                                     "--out", str(out), "--no-spectra"])
        assert result.exit_code == 0, result.output
        rows = read_csv(out / "rmse.csv")
        assert list(rows[0])[:2] == ["sweep_value", "secondary_value"]
        assert [r["secondary_value"] for r in rows] == ["1.0", "2.0"]

    def test_noiseless_oracle(self, runner, tmp_path):
        """Test noise-free vacuum runs recover every swept angle"""
        scenario = {**get_examples()["noiseless_oracle"]["config"],
                    "band": {"f_start_thz": 5.0, "bandwidth_thz": 1.0}}
        out = tmp_path / "oracle"
        result = runner.invoke(args=["simulate", write_yaml(tmp_path / "oracle.yaml", scenario),
                                     "--out", str(out), "--no-spectra"])
        assert result.exit_code == 0, result.output
        rows = read_csv(out / "rmse.csv")
        assert len(rows) == 6
        assert all(float(r["rmse_deg"]) < 1e-9 for r in rows)

    @pytest.mark.parametrize("scenario, field", [
        ({"scenario": {"doa_deg": 95}}, "scenario.doa_deg"),
        ({"pulse": {"shape": "sinc"}}, "pulse.shape"),
        ({"scenario": {"distance_m": 1e-5}}, "scenario.distance_m"),
    ])
    def test_invalid_config(self, runner, tmp_path, scenario, field):
        """Test invalid scenarios exit with status 1 and name the field"""
        out = tmp_path / "bad"
        result = runner.invoke(args=["simulate", write_yaml(tmp_path / "bad.yaml", scenario), "--out", str(out)])
        assert result.exit_code == 1
        assert field in result.output
        assert not (out / "rmse.csv").exists()

    def test_missing_config(self, runner, tmp_path):
        """Test a missing scenario file exits with status 1"""
        result = runner.invoke(args=["simulate", str(tmp_path / "absent.yaml")])
        assert result.exit_code == 1

    def test_invalid_workers(self, runner, tmp_path):
        """Test zero workers is rejected"""
        config = write_yaml(tmp_path / "fast.yaml", FAST_SCENARIO)
        result = runner.invoke(args=["simulate", config, "--workers", "0"])
        assert result.exit_code == 1
        assert "sweep.workers" in result.output


class TestSpectrumCommand:
    """spectrum command tests"""

    def test_spectrum_and_tensor(self, runner, tmp_path):
        """Test the spectrum CSV and the snapshot tensor dump"""
        config = write_yaml(tmp_path / "fast.yaml", FAST_SCENARIO)
        out, tensor = tmp_path / "spectrum.csv", tmp_path / "tensor.txt"
        result = runner.invoke(args=["spectrum", config, "--out", str(out), "--tensor", str(tensor),
                                     "--point", "1"])
        assert result.exit_code == 0, result.output
        rows = read_csv(out)
        assert len(rows) == 2001
        assert float(rows[0]["theta_deg"]) == 0.0 and float(rows[-1]["theta_deg"]) == 20.0
        assert all(float(r["value"]) > 0 for r in rows)
        assert "Peak at" in result.output

        lines = tensor.read_text().splitlines()
        assert lines[0].split()[:3] == ["8", "5", "11"]
        assert len(lines) == 1 + 8 * 5 * 11

    def test_point_out_of_range(self, runner, tmp_path):
        """Test a sweep point index past the sweep fails"""
        config = write_yaml(tmp_path / "fast.yaml", FAST_SCENARIO)
        result = runner.invoke(args=["spectrum", config, "--point", "5"])
        assert result.exit_code == 1
        assert "point" in result.output


class TestMediumCommands:
    """medium command group tests"""

    def test_inspect_preset(self, runner):
        """Test inspecting the bundled atmosphere"""
        result = runner.invoke(args=["medium", "inspect", "--preset", "summer_air"])
        assert result.exit_code == 0
        assert "f_min:     0.5 THz" in result.output
        assert "f_max:     12 THz" in result.output

    def test_inspect_needs_one_source(self, runner):
        """Test inspect requires exactly one of PATH and --preset"""
        result = runner.invoke(args=["medium", "inspect"])
        assert result.exit_code == 2

    def test_inspect_bad_file(self, runner, tmp_path):
        """Test parse errors exit with status 1 and name the line"""
        path = tmp_path / "bad.csv"
        path.write_text("1e12,0.1\n2e12,-1\n")
        result = runner.invoke(args=["medium", "inspect", str(path)])
        assert result.exit_code == 1
        assert "bad.csv:2:" in result.output

    def test_inspect_undecodable_file(self, runner, tmp_path):
        """Test a non-UTF-8 profile exits with status 1 and no traceback"""
        path = tmp_path / "binary.csv"
        path.write_bytes(b"1e12,0.0\n\xff\xfe,1.0\n1e13,0.0\n")
        result = runner.invoke(args=["medium", "inspect", str(path)])
        assert result.exit_code == 1
        assert "binary.csv" in result.output
        assert "Traceback" not in result.output
        assert not isinstance(result.exception, UnicodeDecodeError)

    def test_synth_then_mix(self, runner, tmp_path):
        """Test synthesized profiles mix into a loadable profile"""
        a, b, mixed = tmp_path / "a.csv", tmp_path / "b.csv", tmp_path / "mixed.csv"
        assert runner.invoke(args=["medium", "synth", "constant", "--k0", "2", "--out", str(a)]).exit_code == 0
        assert runner.invoke(args=["medium", "synth", "lorentzian_lines", "--line", "3", "0.02", "4",
                                   "--out", str(b)]).exit_code == 0
        result = runner.invoke(args=["medium", "mix", "--part", str(a), "0.25", "--part", str(b), "0.75",
                                     "--out", str(mixed), "--name", "blend"])
        assert result.exit_code == 0, result.output
        inspected = runner.invoke(args=["medium", "inspect", str(mixed)])
        assert "name:      blend" in inspected.output

    def test_mix_bad_fractions(self, runner, tmp_path):
        """Test fractions not summing to 1 exit with status 1"""
        a = tmp_path / "a.csv"
        runner.invoke(args=["medium", "synth", "vacuum", "--out", str(a)])
        result = runner.invoke(args=["medium", "mix", "--part", str(a), "0.5", "--out", str(tmp_path / "m.csv")])
        assert result.exit_code == 1

    def test_file_profile_in_simulation(self, runner, tmp_path):
        """Test a scenario can use a synthesized profile file"""
        runner.invoke(args=["medium", "synth", "constant", "--k0", "0.5", "--out", str(tmp_path / "air.csv")])
        scenario = {**FAST_SCENARIO, "medium": {"profile": "file", "path": "air.csv"}}
        out = tmp_path / "file-run"
        result = runner.invoke(args=["simulate", write_yaml(tmp_path / "file.yaml", scenario),
                                     "--out", str(out), "--no-spectra"])
        assert result.exit_code == 0, result.output
        assert len(read_csv(out / "rmse.csv")) == 2
