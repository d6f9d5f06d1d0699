"""Run configuration, CSV export/import, and run manifests.

Config files are flat INI text (key = value under sections) so sweeps stay
diff-friendly and hand-editable.  Data files are CSV with a header row and
floats serialized at 17 significant digits, which round-trips IEEE doubles
bit-exactly.  Every run writes a JSON manifest recording all inputs, library
versions, and convergence diagnostics; data files themselves carry no
timestamps so identical configs produce byte-identical data.
"""
from __future__ import annotations

import configparser
import dataclasses
import json
import platform
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .model import InitialCondition, ModelParams
from .spectral import WaveField
from .ssfm import PropagationRecord
from .stability import PowerCurve

MODES = ("solve", "propagate", "vk-scan", "oracle")
INITIAL_SOURCES = ("srm", "guess")


class ConfigError(ValueError):
    """Malformed or contradictory run configuration (CLI exit code 3)."""


class OutputError(RuntimeError):
    """File output failure, reported with path context (CLI exit code 4)."""


@dataclass(frozen=True)
class GridConfig:
    n_points: int = 1024
    half_length: float = 20.0


@dataclass(frozen=True)
class SolverConfig:
    tolerance: float = 1e-15
    max_iterations: int = 10_000
    parity: str = "none"


@dataclass(frozen=True)
class StepConfig:
    dt: float = 5e-5
    t_final: float = 1.0
    record_every: int = 1
    normalize_input: bool = False
    symmetrized: bool = False
    window_half_width: float = 5.0
    profile_times: tuple[float, ...] = ()
    initial_source: str = "srm"


@dataclass(frozen=True)
class ScanConfig:
    mu_min: float = 0.5
    mu_max: float = 50.0
    n_samples: int = 101


@dataclass(frozen=True)
class SweepEntry:
    """One solve of a parameter sweep: a label plus model-parameter overrides."""

    label: str
    alpha: float | None = None
    sigma: float | None = None


@dataclass(frozen=True)
class RunConfig:
    """Complete description of one CLI run; determinism contract boundary."""

    mode: str = "solve"
    grid: GridConfig = field(default_factory=GridConfig)
    model: ModelParams = field(
        default_factory=lambda: ModelParams(alpha=1.0, sigma=1.0, p_shift=30.0, mu=10.8)
    )
    initial: InitialCondition = field(
        default_factory=lambda: InitialCondition(hump_centers=(0.0,))
    )
    srm: SolverConfig = field(default_factory=SolverConfig)
    propagation: StepConfig = field(default_factory=StepConfig)
    scan: ScanConfig = field(default_factory=ScanConfig)
    sweep: tuple[SweepEntry, ...] = ()
    output_dir: str = "."
    preset: str | None = None

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.propagation.initial_source not in INITIAL_SOURCES:
            raise ConfigError(
                f"initial_source must be one of {INITIAL_SOURCES}, "
                f"got {self.propagation.initial_source!r}"
            )


# INI schema: section -> key -> (python type, RunConfig path).  Booleans use
# configparser's true/false/yes/no/1/0; lists are comma-separated.
_SCHEMA: dict[str, dict[str, str]] = {
    "run": {"mode": "str", "preset": "str", "output_dir": "str"},
    "grid": {"n_points": "int", "half_length": "float"},
    "model": {"alpha": "float", "sigma": "float", "p_shift": "float", "mu": "float"},
    "initial": {"hump_centers": "floats", "hump_width_scale": "float"},
    "srm": {"tolerance": "float", "max_iterations": "int", "parity": "str"},
    "propagation": {
        "dt": "float",
        "t_final": "float",
        "record_every": "int",
        "normalize_input": "bool",
        "symmetrized": "bool",
        "window_half_width": "float",
        "profile_times": "floats",
        "initial_source": "str",
    },
    "scan": {"mu_min": "float", "mu_max": "float", "n_samples": "int"},
}


def read_config_file(path: str | Path) -> dict[str, dict[str, object]]:
    """Parse an INI config into {section: {key: typed value}}.

    Unknown sections or keys, and values that fail to parse under the schema,
    raise ConfigError with the offending location.
    """
    parser = configparser.ConfigParser(interpolation=None)
    try:
        with open(path, "r", encoding="utf-8") as fh:
            parser.read_file(fh)
    except OSError as err:
        raise ConfigError(f"cannot read config file {path}: {err}") from err
    except configparser.Error as err:
        raise ConfigError(f"malformed config file {path}: {err}") from err

    out: dict[str, dict[str, object]] = {}
    for section in parser.sections():
        if section not in _SCHEMA:
            raise ConfigError(f"{path}: unknown config section [{section}]")
        out[section] = {}
        for key, raw in parser.items(section):
            kind = _SCHEMA[section].get(key)
            if kind is None:
                raise ConfigError(f"{path}: unknown key {key!r} in section [{section}]")
            try:
                out[section][key] = _parse_value(raw, kind)
            except ValueError as err:
                raise ConfigError(
                    f"{path}: bad value for [{section}] {key} = {raw!r}: {err}"
                ) from err
    return out


def _parse_value(raw: str, kind: str):
    raw = raw.strip()
    if kind == "str":
        return raw
    if kind == "int":
        return int(raw)
    if kind == "float":
        return float(raw)
    if kind == "bool":
        lowered = raw.lower()
        if lowered in ("1", "true", "yes", "on"):
            return True
        if lowered in ("0", "false", "no", "off"):
            return False
        raise ValueError("expected a boolean (true/false)")
    if kind == "floats":
        if not raw:
            return ()
        return tuple(float(tok) for tok in raw.split(","))
    raise AssertionError(f"unhandled schema kind {kind}")


def config_to_dict(config: RunConfig) -> dict:
    """JSON-serializable view of a RunConfig (tuples become lists)."""
    return json.loads(json.dumps(dataclasses.asdict(config), default=list))


# ---------------------------------------------------------------------------
# CSV export / import


def _fmt(value: float) -> str:
    # 17 significant digits: lossless for IEEE doubles.
    return format(float(value), ".17g")


def _write_rows(path: str | Path, header: list[str], rows) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(",".join(header) + "\n")
            for row in rows:
                fh.write(",".join(row) + "\n")
    except OSError as err:
        raise OutputError(f"cannot write {path}: {err}") from err


def write_profile(fld: WaveField, path: str | Path) -> None:
    """Profile CSV: columns x, re, im, abs."""
    x = fld.grid.nodes
    v = fld.values
    mags = np.abs(v)  # vectorized: bit-identical to np.abs on read-back
    _write_rows(
        path,
        ["x", "re", "im", "abs"],
        (
            [_fmt(x[i]), _fmt(v[i].real), _fmt(v[i].imag), _fmt(mags[i])]
            for i in range(x.size)
        ),
    )


def write_curve(curve: PowerCurve, path: str | Path) -> None:
    """Power-curve CSV: columns mu, power, slope, converged (1/0)."""
    _write_rows(
        path,
        ["mu", "power", "slope", "converged"],
        (
            [
                _fmt(curve.mu_values[i]),
                _fmt(curve.powers[i]),
                _fmt(curve.slopes[i]),
                "1" if curve.converged_flags[i] else "0",
            ]
            for i in range(curve.mu_values.size)
        ),
    )


def write_record(record: PropagationRecord, path: str | Path) -> None:
    """Trajectory CSV: t, total_power, peak_amplitude, peak_location, windowed_power."""
    _write_rows(
        path,
        ["t", "total_power", "peak_amplitude", "peak_location", "windowed_power"],
        (
            [
                _fmt(record.times[i]),
                _fmt(record.total_power[i]),
                _fmt(record.peak_amplitude[i]),
                _fmt(record.peak_location[i]),
                _fmt(record.windowed_power[i]),
            ]
            for i in range(record.times.size)
        ),
    )


def write_beta_history(history: np.ndarray, path: str | Path) -> None:
    """Solver diagnostic CSV: iteration, beta."""
    _write_rows(
        path,
        ["iteration", "beta"],
        ([str(i), _fmt(b)] for i, b in enumerate(np.asarray(history))),
    )


def read_table(path: str | Path) -> dict[str, np.ndarray]:
    """Read any of the CSVs written above into {column: float array}."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            header = fh.readline().strip().split(",")
            rows = [line.strip().split(",") for line in fh if line.strip()]
    except OSError as err:
        raise OutputError(f"cannot read {path}: {err}") from err
    cols = {name: np.empty(len(rows)) for name in header}
    for r, row in enumerate(rows):
        if len(row) != len(header):
            raise OutputError(f"{path}: row {r + 2} has {len(row)} fields, expected {len(header)}")
        for name, tok in zip(header, row):
            cols[name][r] = float(tok)
    return cols


def write_manifest(path: str | Path, config: RunConfig, results: dict) -> None:
    """JSON manifest: full inputs, versions, clock, and run diagnostics."""
    payload = {
        "config": config_to_dict(config),
        "versions": {
            "package": _package_version(),
            "numpy": np.__version__,
            "python": platform.python_version(),
        },
        "created_utc": datetime.now(timezone.utc).isoformat(),
        "results": results,
    }
    try:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True, default=_json_default)
            fh.write("\n")
    except OSError as err:
        raise OutputError(f"cannot write {path}: {err}") from err


def _json_default(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    raise TypeError(f"cannot serialize {type(obj)}")


def _package_version() -> str:
    from . import __version__

    return __version__
