import contextlib
import io
import json
import math
import os
import shutil
import tempfile
import unittest

import yaml

from mmwave_lab import cli
from mmwave_lab.results import read_results


def run_cli(*argv):
    """Run main() and return (exit code, stdout text)."""
    out = io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(io.StringIO()):
        code = cli.main(list(argv))
    return code, out.getvalue()


class TestPointCommand(unittest.TestCase):

    def test_siso_vacuum_anchor(self):
        """Test a vacuum SISO point at 20 dB reports 6.6582 bit/s/Hz"""
        code, text = run_cli("point", "--n", "1", "--k", "0", "--snr-db", "20", "--trials", "500")
        report = json.loads(text)

        self.assertEqual(code, cli.EXIT_OK)
        self.assertAlmostEqual(report["mean_capacity_bps_hz"], math.log2(101), places=9)
        self.assertAlmostEqual(report["mean_capacity_bps_hz"], 6.6582, places=4)
        self.assertEqual(report["ci_low"], report["mean_capacity_bps_hz"])
        self.assertEqual(report["ci_high"], report["mean_capacity_bps_hz"])
        self.assertEqual(report["budget"], "snr_db=20.0")
        self.assertEqual(report["sky_noise_psd_w_per_hz"], 0.0)

    def test_report_fields(self):
        """Test the point report carries exactly the documented fields"""
        code, text = run_cli("point", "--n", "2", "--k", "0.01", "--trials", "100")
        self.assertEqual(list(json.loads(text)), cli.POINT_FIELDS)

    def test_saturated_two_by_two(self):
        """Test strong absorption lets a 2x2 link carry twice the SISO ensemble capacity"""
        code, text = run_cli("point", "--n", "2", "--k", "1.0", "--snr-db", "20", "--trials", "5000")
        report = json.loads(text)

        self.assertEqual(code, cli.EXIT_OK)
        ratio = report["ensemble_capacity_bps_hz"] / report["siso_ensemble_bps_hz"]
        self.assertAlmostEqual(ratio, 2.0, delta=0.1)

    def test_constant_power_budget(self):
        """Test --power-w switches to the constant-power budget"""
        code, text = run_cli("point", "--n", "1", "--k", "0", "--power-w", "1", "--trials", "10")
        report = json.loads(text)
        self.assertTrue(report["budget"].startswith("power_w=1.0;noise_w="))
        self.assertGreater(report["path_loss_db"], 100.0)

    def test_preset_without_data_warns(self):
        """Test a preset point falls back to synthetic spectra with a warning"""
        with self.assertLogs(level="WARNING") as logs:
            out = io.StringIO()
            args = cli.build_parser().parse_args(["point", "--preset", "USA model, tropics", "--trials", "20"])
            code = cli.cmd_point(args, out)
        self.assertEqual(code, cli.EXIT_OK)
        self.assertTrue(any("SYNTHETIC" in line for line in logs.output))
        self.assertGreater(json.loads(out.getvalue())["k_per_m"], 0.0)

    def test_usage_errors_exit_2(self):
        """Test negative k and conflicting media are rejected by the parser"""
        for argv in (["point", "--k", "-1"], ["point", "--k", "0.1", "--preset", "USA model, tropics"]):
            with self.subTest(argv=argv):
                with self.assertRaises(SystemExit) as ctx:
                    run_cli(*argv)
                self.assertEqual(ctx.exception.code, 2)

    def test_unknown_preset_exit_3(self):
        """Test an unknown preset name maps to the lookup exit code"""
        code, _ = run_cli("point", "--preset", "Mars", "--trials", "10")
        self.assertEqual(code, cli.EXIT_DATA)

    def test_uncovered_frequency_exit_3(self):
        """Test a carrier outside the spectra maps to the range exit code"""
        code, text = run_cli("point", "--preset", "USA model, tropics", "--f", "300e9", "--trials", "10")
        self.assertEqual(code, cli.EXIT_DATA)
        self.assertEqual(text, "")


class TestPresetsCommand(unittest.TestCase):

    def test_lists_presets(self):
        """Test all five mixtures are printed with full-precision fractions"""
        code, text = run_cli("presets")

        self.assertEqual(code, cli.EXIT_OK)
        self.assertTrue(text.startswith("5 built-in gas mixtures"))
        self.assertIn("USA model, tropics", text)
        self.assertIn("2.590000", text)
        self.assertIn("(0.20900001)", text)


class TestSweepCommand(unittest.TestCase):

    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.temp_dir)

    def write_config(self, name, experiment, **extra):
        config = {"experiment": experiment, "output_path": os.path.join(self.temp_dir, name + ".csv")}
        config.update(extra)
        config_file = os.path.join(self.temp_dir, name + ".yaml")
        with open(config_file, "w") as f:
            yaml.dump(config, f)
        return config_file, config["output_path"]

    def test_output_independent_of_workers(self):
        """Test result files are byte-identical for 1 and 8 workers"""
        config_file, output = self.write_config(
            "absorption",
            {"variable": "absorption", "grid": [0.0, 1e-3, 2.7e-2, 0.4], "geometry": {"n": 2}},
            trials=1100,
            seed=17,
        )
        contents = []
        for workers in ("1", "8"):
            code, _ = run_cli("--workers", workers, "sweep", config_file)
            self.assertEqual(code, cli.EXIT_OK)
            with open(output, "rb") as f:
                contents.append(f.read())
        self.assertEqual(contents[0], contents[1])
        self.assertEqual(len(read_results(output)), 4)

    def test_vacuum_frequency_sweep_is_flat(self):
        """Test a vacuum 3x3 frequency sweep writes a flat capacity column"""
        config_file, output = self.write_config(
            "vacuum",
            {
                "variable": "frequency",
                "grid": {"start": 50e9, "stop": 200e9, "step": 10e9},
                "atmosphere": {"k_per_m": 0.0},
            },
            trials=20,
        )
        code, _ = run_cli("sweep", config_file)
        records = read_results(output)

        self.assertEqual(code, cli.EXIT_OK)
        self.assertEqual(len(records), 16)
        means = [record["mean_capacity_bps_hz"] for record in records]
        self.assertLessEqual(max(means) - min(means), 1e-4)
        self.assertTrue(all(record["snr_db_or_power_mode"] == "snr_db=20.0" for record in records))

    def test_missing_spectrum_exit_2(self):
        """Test a missing spectrum file exits 2 without writing output"""
        config_file, output = self.write_config(
            "missing",
            {"variable": "frequency", "grid": [60e9], "atmosphere": {"preset": "USA model, tropics"}},
            data_paths=[os.path.join(self.temp_dir, "nope.csv")],
        )
        code, _ = run_cli("sweep", config_file)
        self.assertEqual(code, cli.EXIT_CONFIG)
        self.assertFalse(os.path.exists(output))

    def test_non_utf8_spectrum_exit_2(self):
        """Test an undecodable spectrum file exits 2 without writing output"""
        spectrum = os.path.join(self.temp_dir, "o2.csv")
        with open(spectrum, "wb") as f:
            f.write(b"# species: O2\nfrequency_hz,k_per_m\n5.0e10,0\n6.0e10,\xff\xfe\n")
        config_file, output = self.write_config(
            "undecodable",
            {"variable": "frequency", "grid": [55e9], "atmosphere": {"mixture": {"O2": 0.209}}},
            data_paths=[spectrum],
        )
        code, _ = run_cli("sweep", config_file)
        self.assertEqual(code, cli.EXIT_CONFIG)
        self.assertFalse(os.path.exists(output))

    def test_uncovered_grid_exit_3(self):
        """Test a grid beyond the spectra exits 3 without writing output"""
        config_file, output = self.write_config(
            "uncovered",
            {"variable": "frequency", "grid": [60e9, 250e9], "atmosphere": {"preset": "USA model, tropics"}},
        )
        code, _ = run_cli("sweep", config_file)
        self.assertEqual(code, cli.EXIT_DATA)
        self.assertFalse(os.path.exists(output))

    def test_missing_config_exit_2(self):
        """Test a config path that does not exist"""
        code, _ = run_cli("sweep", os.path.join(self.temp_dir, "absent.yaml"))
        self.assertEqual(code, cli.EXIT_CONFIG)


class TestValidateCommand(unittest.TestCase):

    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.temp_dir)

    def write(self, name, experiment):
        config_file = os.path.join(self.temp_dir, name)
        with open(config_file, "w") as f:
            yaml.dump({"experiment": experiment, "output_path": "unused.csv"}, f)
        return config_file

    def test_exit_codes(self):
        """Test validate reports each file and returns the worst exit code"""
        valid = self.write("valid.yaml", {"variable": "absorption", "grid": [0.0, 1.0]})
        bad_variable = self.write("bad.yaml", {"variable": "distance", "grid": [1.0]})
        uncovered = self.write(
            "uncovered.yaml",
            {"variable": "frequency", "grid": [10e9, 20e9], "atmosphere": {"preset": "USA model, tropics"}},
        )

        code, text = run_cli("validate", valid)
        self.assertEqual(code, cli.EXIT_OK)
        self.assertIn("[VALID]", text)

        code, text = run_cli("validate", valid, bad_variable)
        self.assertEqual(code, cli.EXIT_CONFIG)
        self.assertIn("[INVALID]", text)

        code, text = run_cli("validate", valid, bad_variable, uncovered)
        self.assertEqual(code, cli.EXIT_DATA)
        self.assertEqual(text.count("[INVALID]"), 2)

    def test_exit_code_mapping(self):
        """Test error classes map onto disjoint exit codes"""
        from mmwave_lab.errors import ConfigError, FrequencyRangeError, NumericalError, SpeciesLookupError

        self.assertEqual(cli.exit_code_for(ConfigError("x")), cli.EXIT_CONFIG)
        self.assertEqual(cli.exit_code_for(FileNotFoundError("x")), cli.EXIT_CONFIG)
        self.assertEqual(cli.exit_code_for(FrequencyRangeError("x")), cli.EXIT_DATA)
        self.assertEqual(cli.exit_code_for(SpeciesLookupError("x")), cli.EXIT_DATA)
        self.assertEqual(cli.exit_code_for(NumericalError("x")), cli.EXIT_NUMERICAL)
        self.assertIsNone(cli.exit_code_for(RuntimeError("x")))

    def test_script_expands_globs(self):
        """Test validate_config.py expands patterns and returns the worst code"""
        import validate_config

        self.write("a.yaml", {"variable": "absorption", "grid": [0.0, 1.0]})
        self.write("b.yaml", {"variable": "absorption", "grid": [0.5]})
        out = io.StringIO()
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(io.StringIO()):
            code = validate_config.main([os.path.join(self.temp_dir, "*.yaml")])
        self.assertEqual(code, cli.EXIT_OK)
        self.assertEqual(out.getvalue().count("[VALID]"), 2)

        self.write("c.yaml", {"variable": "distance", "grid": [1.0]})
        with contextlib.redirect_stdout(io.StringIO()), contextlib.redirect_stderr(io.StringIO()):
            self.assertEqual(validate_config.main([os.path.join(self.temp_dir, "*.yaml")]), cli.EXIT_CONFIG)
            self.assertEqual(validate_config.main([os.path.join(self.temp_dir, "none-*.yaml")]), cli.EXIT_CONFIG)
            self.assertEqual(validate_config.main([]), cli.EXIT_CONFIG)


if __name__ == "__main__":
    unittest.main()
