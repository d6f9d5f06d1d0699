"""Config parsing, CSV round-trip, and manifest tests.

Floats are serialized at 17 significant digits, so every CSV round-trip is
checked for bit-exact equality, NaN slots included.
"""
import json

import numpy as np
import pytest

from nqho import (
    ConfigError,
    OutputError,
    RunConfig,
    StepConfig,
    WaveField,
    make_grid,
    power_curve_from_samples,
    read_config_file,
    read_table,
    write_beta_history,
    write_curve,
    write_manifest,
    write_profile,
)
from nqho.io import config_to_dict


class TestCsvRoundTrip:
    def test_profile_bit_exact(self, tmp_path):
        g = make_grid(128, 9.0)
        rng = np.random.default_rng(5)
        f = WaveField(rng.normal(size=128) + 1j * rng.normal(size=128), g)
        path = tmp_path / "profile.csv"
        write_profile(f, path)
        cols = read_table(path)
        assert list(cols) == ["x", "re", "im", "abs"]
        assert np.array_equal(cols["x"], g.nodes)
        assert np.array_equal(cols["re"], f.values.real)
        assert np.array_equal(cols["im"], f.values.imag)
        assert np.array_equal(cols["abs"], np.abs(f.values))

    def test_curve_bit_exact_with_nan(self, tmp_path):
        mu = np.arange(1.0, 8.0)
        powers = (mu - 4.0) ** 2
        conv = np.ones(7, dtype=bool)
        conv[3] = False
        curve = power_curve_from_samples(mu, powers, conv)
        path = tmp_path / "curve.csv"
        write_curve(curve, path)
        cols = read_table(path)
        assert np.array_equal(cols["mu"], mu)
        assert np.array_equal(cols["power"], powers)
        assert np.array_equal(cols["converged"], conv.astype(float))
        # NaN round-trips as NaN, finite slopes bit-exact
        assert np.array_equal(np.isnan(cols["slope"]), np.isnan(curve.slopes))
        finite = np.isfinite(curve.slopes)
        assert np.array_equal(cols["slope"][finite], curve.slopes[finite])

    def test_beta_history(self, tmp_path):
        history = np.array([0.5, 0.75, 0.8125])
        path = tmp_path / "beta.csv"
        write_beta_history(history, path)
        cols = read_table(path)
        assert np.array_equal(cols["iteration"], [0.0, 1.0, 2.0])
        assert np.array_equal(cols["beta"], history)

    def test_seventeen_digit_pathological_values(self, tmp_path):
        g = make_grid(4, 1.0)
        vals = np.array([0.1, 1.0 / 3.0, np.pi, 2e-100], dtype=complex)
        path = tmp_path / "p.csv"
        write_profile(WaveField(vals, g), path)
        assert np.array_equal(read_table(path)["re"], vals.real)

    def test_ragged_row_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("a,b\n1.0,2.0\n3.0\n")
        with pytest.raises(OutputError):
            read_table(path)

    def test_missing_file_rejected(self, tmp_path):
        with pytest.raises(OutputError):
            read_table(tmp_path / "absent.csv")

    def test_unwritable_path_rejected(self, tmp_path):
        g = make_grid(4, 1.0)
        f = WaveField(np.zeros(4, dtype=complex), g)
        with pytest.raises(OutputError):
            write_profile(f, tmp_path / "no" / "such" / "dir" / "p.csv")


class TestConfigFile:
    def test_full_typed_parse(self, tmp_path):
        path = tmp_path / "run.ini"
        path.write_text(
            "[run]\n"
            "mode = propagate\n"
            "output_dir = out\n"
            "[grid]\n"
            "n_points = 512\n"
            "half_length = 14.0\n"
            "[model]\n"
            "alpha = 0.5\n"
            "sigma = 2\n"
            "p_shift = 150\n"
            "mu = 10.8\n"
            "[initial]\n"
            "hump_centers = -10, 10\n"
            "hump_width_scale = 1.5\n"
            "[srm]\n"
            "tolerance = 1e-12\n"
            "max_iterations = 500\n"
            "parity = odd\n"
            "[propagation]\n"
            "dt = 1e-4\n"
            "t_final = 2.0\n"
            "record_every = 10\n"
            "normalize_input = true\n"
            "symmetrized = false\n"
            "window_half_width = 4.0\n"
            "profile_times = 0.0, 1.0, 2.0\n"
            "initial_source = guess\n"
            "[scan]\n"
            "mu_min = 1.0\n"
            "mu_max = 30.0\n"
            "n_samples = 11\n"
        )
        cfg = read_config_file(path)
        assert cfg["run"] == {"mode": "propagate", "output_dir": "out"}
        assert cfg["grid"] == {"n_points": 512, "half_length": 14.0}
        assert cfg["model"]["sigma"] == 2.0
        assert cfg["initial"]["hump_centers"] == (-10.0, 10.0)
        assert cfg["srm"]["parity"] == "odd"
        assert cfg["propagation"]["normalize_input"] is True
        assert cfg["propagation"]["symmetrized"] is False
        assert cfg["propagation"]["profile_times"] == (0.0, 1.0, 2.0)
        assert cfg["scan"]["n_samples"] == 11

    def test_unknown_section_rejected(self, tmp_path):
        path = tmp_path / "run.ini"
        path.write_text("[plotting]\ncolor = red\n")
        with pytest.raises(ConfigError, match="plotting"):
            read_config_file(path)

    def test_unknown_key_rejected(self, tmp_path):
        path = tmp_path / "run.ini"
        path.write_text("[grid]\nn_pts = 512\n")
        with pytest.raises(ConfigError, match="n_pts"):
            read_config_file(path)

    def test_bad_value_rejected_with_location(self, tmp_path):
        path = tmp_path / "run.ini"
        path.write_text("[grid]\nn_points = many\n")
        with pytest.raises(ConfigError, match="n_points"):
            read_config_file(path)

    def test_bad_boolean_rejected(self, tmp_path):
        path = tmp_path / "run.ini"
        path.write_text("[propagation]\nsymmetrized = maybe\n")
        with pytest.raises(ConfigError):
            read_config_file(path)

    def test_malformed_file_rejected(self, tmp_path):
        path = tmp_path / "run.ini"
        path.write_text("mode = solve\n")  # key before any section header
        with pytest.raises(ConfigError):
            read_config_file(path)

    def test_missing_file_rejected(self, tmp_path):
        with pytest.raises(ConfigError):
            read_config_file(tmp_path / "absent.ini")


class TestRunConfig:
    def test_defaults_valid(self):
        cfg = RunConfig()
        assert cfg.mode == "solve"
        assert cfg.grid.n_points == 1024

    def test_bad_mode_rejected(self):
        with pytest.raises(ConfigError):
            RunConfig(mode="simulate")

    def test_bad_initial_source_rejected(self):
        with pytest.raises(ConfigError):
            RunConfig(propagation=StepConfig(initial_source="random"))

    def test_config_to_dict_serializable(self):
        d = config_to_dict(RunConfig())
        assert json.dumps(d)  # round-trips through JSON
        assert d["initial"]["hump_centers"] == [0.0]


class TestManifest:
    def test_manifest_contents(self, tmp_path):
        path = tmp_path / "run_manifest.json"
        results = {
            "residual": np.float64(1.5e-11),
            "iterations": np.int64(81),
            "converged": np.bool_(True),
            "betas": np.array([1.0, 2.0]),
        }
        write_manifest(path, RunConfig(), results)
        payload = json.loads(path.read_text())
        assert payload["config"]["mode"] == "solve"
        assert payload["results"]["iterations"] == 81
        assert payload["results"]["converged"] is True
        assert payload["results"]["betas"] == [1.0, 2.0]
        assert set(payload["versions"]) == {"package", "numpy", "python"}
        assert "created_utc" in payload

    def test_unwritable_manifest_rejected(self, tmp_path):
        with pytest.raises(OutputError):
            write_manifest(tmp_path / "no" / "m.json", RunConfig(), {})
