"""Command-line front end.

Modes
-----
solve       stationary-profile solve (optionally a parameter sweep) ->
            profile CSV(s) + beta-history CSV(s)
propagate   split-step time evolution of a solved or raw initial field ->
            trajectory CSV (+ stored profile CSVs)
vk-scan     power-vs-eigenvalue sweep with slope classification -> curve CSV
oracle      linear-limit validation report (sigma = 0 analytic modes)

Every run writes run_manifest.json (inputs, versions, diagnostics).  Exit
codes: 0 success, 2 solver non-convergence/blow-up, 3 config error, 4 I/O
error.
"""
from __future__ import annotations

import argparse
import dataclasses
import sys
import time
from pathlib import Path

import numpy as np

from . import io as io_mod
from .io import (
    ConfigError,
    GridConfig,
    OutputError,
    RunConfig,
    ScanConfig,
    SolverConfig,
    StepConfig,
)
from .model import (
    InitialCondition,
    ModelParams,
    build_initial_guess,
    linear_eigenvalue,
    linear_mode,
    stationary_residual,
)
from .presets import get_preset
from .spectral import compute_power, make_grid
from .srm import SrmConfig, SrmError, srm_solve
from .ssfm import PropagationConfig, PropagationError, propagate
from .stability import vk_scan

EXIT_OK = 0
EXIT_NONCONVERGENCE = 2
EXIT_CONFIG = 3
EXIT_IO = 4

# CLI override flag -> (config section, key).  Used both for argparse setup
# and for the preset-conflict check.
_OVERRIDES = {
    "alpha": ("model", "alpha", float),
    "sigma": ("model", "sigma", float),
    "mu": ("model", "mu", float),
    "p_shift": ("model", "p_shift", float),
    "dt": ("propagation", "dt", float),
    "t_final": ("propagation", "t_final", float),
    "n_points": ("grid", "n_points", int),
    "half_length": ("grid", "half_length", float),
    "tolerance": ("srm", "tolerance", float),
    "max_iterations": ("srm", "max_iterations", int),
    "parity": ("srm", "parity", str),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nqho",
        description=(
            "Stationary-soliton solver, split-step propagator, and "
            "slope-criterion stability scans for the trapped cubic "
            "Schrodinger model"
        ),
    )
    parser.add_argument("--config", metavar="PATH", help="INI run configuration")
    parser.add_argument("--preset", metavar="NAME", help="named preset (fig1..fig13)")
    parser.add_argument("--output", metavar="DIR", help="output directory (default .)")
    parser.add_argument(
        "--mode", choices=io_mod.MODES, help="run mode (solve/propagate/vk-scan/oracle)"
    )
    for flag, (_, _, typ) in _OVERRIDES.items():
        parser.add_argument(
            f"--{flag.replace('_', '-')}",
            dest=f"ov_{flag}",
            type=typ,
            default=None,
            metavar=flag.upper(),
        )
    return parser


def _assemble_config(args: argparse.Namespace) -> RunConfig:
    """Merge defaults, config file, preset, and CLI overrides into a RunConfig."""
    file_settings: dict[str, dict[str, object]] = {}
    if args.config:
        file_settings = io_mod.read_config_file(args.config)

    preset_name = args.preset or file_settings.get("run", {}).get("preset")
    cli_overrides = {
        flag: getattr(args, f"ov_{flag}")
        for flag in _OVERRIDES
        if getattr(args, f"ov_{flag}") is not None
    }

    if preset_name:
        config = get_preset(str(preset_name))
        # A preset fixes every numerical parameter; explicit numeric settings
        # alongside it are rejected rather than silently reconciled.
        if cli_overrides:
            raise ConfigError(
                f"preset {preset_name!r} fixes all numerical parameters; "
                f"conflicting overrides: {', '.join(sorted(cli_overrides))}"
            )
        numeric_sections = [s for s in file_settings if s != "run"]
        if numeric_sections:
            raise ConfigError(
                f"preset {preset_name!r} fixes all numerical parameters; "
                f"remove config sections: {', '.join(sorted(numeric_sections))}"
            )
        if args.mode and args.mode != config.mode:
            raise ConfigError(
                f"preset {preset_name!r} runs in mode {config.mode!r}; "
                f"--mode {args.mode!r} conflicts"
            )
        run_section = file_settings.get("run", {})
        if "mode" in run_section and run_section["mode"] != config.mode:
            raise ConfigError(
                f"preset {preset_name!r} runs in mode {config.mode!r}; "
                f"config mode {run_section['mode']!r} conflicts"
            )
        output = args.output or run_section.get("output_dir") or "."
        return dataclasses.replace(config, output_dir=str(output))

    # No preset: start from defaults, layer file settings, then CLI flags.
    merged: dict[str, dict[str, object]] = {s: dict(kv) for s, kv in file_settings.items()}
    for flag, value in cli_overrides.items():
        section, key, _ = _OVERRIDES[flag]
        merged.setdefault(section, {})[key] = value

    run_kv = merged.pop("run", {})
    mode = args.mode or run_kv.get("mode") or "solve"
    output = args.output or run_kv.get("output_dir") or "."

    defaults = RunConfig()
    try:
        grid = _merge_dc(defaults.grid, merged.pop("grid", {}))
        model = _merge_dc(defaults.model, merged.pop("model", {}))
        initial = _merge_dc(defaults.initial, merged.pop("initial", {}))
        srm = _merge_dc(defaults.srm, merged.pop("srm", {}))
        step = _merge_dc(defaults.propagation, merged.pop("propagation", {}))
        scan = _merge_dc(defaults.scan, merged.pop("scan", {}))
        return RunConfig(
            mode=str(mode),
            grid=grid,
            model=model,
            initial=initial,
            srm=srm,
            propagation=step,
            scan=scan,
            output_dir=str(output),
            preset=None,
        )
    except ConfigError:
        raise
    except ValueError as err:
        raise ConfigError(str(err)) from err


def _merge_dc(base, updates: dict):
    return dataclasses.replace(base, **updates) if updates else base


def _srm_config(config: RunConfig, model: ModelParams | None = None) -> SrmConfig:
    return SrmConfig(
        params=model or config.model,
        initial=config.initial,
        tolerance=config.srm.tolerance,
        max_iterations=config.srm.max_iterations,
        parity=config.srm.parity,
    )


def _sweep_models(config: RunConfig) -> list[tuple[str, ModelParams]]:
    if not config.sweep:
        return [("", config.model)]
    out = []
    for entry in config.sweep:
        model = config.model
        if entry.alpha is not None:
            model = dataclasses.replace(model, alpha=entry.alpha)
        if entry.sigma is not None:
            model = dataclasses.replace(model, sigma=entry.sigma)
        out.append((entry.label, model))
    return out


def _run_solve(config: RunConfig, out_dir: Path) -> tuple[int, dict]:
    grid = make_grid(config.grid.n_points, config.grid.half_length)
    status = EXIT_OK
    diagnostics = []
    for label, model in _sweep_models(config):
        suffix = f"_{label}" if label else ""
        t0 = time.perf_counter()
        try:
            result = srm_solve(_srm_config(config, model), grid)
        except SrmError as err:
            io_mod.write_beta_history(err.beta_history, out_dir / f"beta_history{suffix}.csv")
            diagnostics.append(
                {
                    "label": label or "solution",
                    "error": str(err),
                    "iterations": err.iterations,
                    "converged": False,
                    "wall_seconds": time.perf_counter() - t0,
                }
            )
            status = EXIT_NONCONVERGENCE
            print(f"solve{' ' + label if label else ''}: ERROR {err}", file=sys.stderr)
            continue
        io_mod.write_profile(result.profile, out_dir / f"profile{suffix}.csv")
        io_mod.write_beta_history(result.beta_history, out_dir / f"beta_history{suffix}.csv")
        diagnostics.append(
            {
                "label": label or "solution",
                "converged": result.converged,
                "iterations": result.iterations,
                "beta": result.beta,
                "final_beta_change": result.final_beta_change,
                "residual": result.residual,
                "power": compute_power(result.profile),
                "peak_amplitude": float(np.max(np.abs(result.profile.values))),
                "wall_seconds": time.perf_counter() - t0,
            }
        )
        if not result.converged:
            status = EXIT_NONCONVERGENCE
        tag = "converged" if result.converged else "NOT converged"
        print(
            f"solve{' ' + label if label else ''}: {tag} in {result.iterations} "
            f"iterations, residual {result.residual:.3e}"
        )
    return status, {"solves": diagnostics}


def _initial_field_for_propagation(config: RunConfig, grid):
    if config.propagation.initial_source == "guess":
        return build_initial_guess(grid, config.initial), {"initial_source": "guess"}
    result = srm_solve(_srm_config(config), grid)
    info = {
        "initial_source": "srm",
        "srm_converged": result.converged,
        "srm_iterations": result.iterations,
        "srm_residual": result.residual,
    }
    if not result.converged:
        raise SrmError(
            f"stationary solve for the initial condition did not converge "
            f"({result.iterations} iterations, final change {result.final_beta_change:.3e})",
            beta_history=result.beta_history,
            iterations=result.iterations,
        )
    return result.profile, info


def _run_propagate(config: RunConfig, out_dir: Path) -> tuple[int, dict]:
    grid = make_grid(config.grid.n_points, config.grid.half_length)
    t0 = time.perf_counter()
    try:
        initial, info = _initial_field_for_propagation(config, grid)
    except SrmError as err:
        print(f"propagate: initial solve failed: {err}", file=sys.stderr)
        io_mod.write_beta_history(err.beta_history, out_dir / "beta_history.csv")
        return EXIT_NONCONVERGENCE, {"error": str(err), "initial_source": "srm"}
    step = config.propagation
    prop_config = PropagationConfig(
        params=config.model,
        dt=step.dt,
        t_final=step.t_final,
        record_every=step.record_every,
        normalize_input=step.normalize_input,
        symmetrized=step.symmetrized,
        window_half_width=step.window_half_width,
        profile_times=step.profile_times,
    )
    try:
        record = propagate(initial, prop_config)
    except PropagationError as err:
        print(f"propagate: {err}", file=sys.stderr)
        return EXIT_NONCONVERGENCE, {**info, "error": str(err)}
    io_mod.write_record(record, out_dir / "record.csv")
    for t, fld in zip(record.stored_times, record.profiles):
        io_mod.write_profile(fld, out_dir / f"profile_t{t:g}.csv")
    peak = record.peak_amplitude
    results = {
        **info,
        "steps": int(round(step.t_final / step.dt)),
        "snapshots": int(record.times.size),
        "power_drift": float(
            np.max(np.abs(record.total_power - record.total_power[0]))
            / record.total_power[0]
        ),
        "peak_min": float(peak.min()),
        "peak_max": float(peak.max()),
        "peak_relative_oscillation": float((peak.max() - peak.min()) / peak.mean()),
        "wall_seconds": time.perf_counter() - t0,
    }
    print(
        f"propagate: {results['snapshots']} snapshots to t = {step.t_final:g}, "
        f"power drift {results['power_drift']:.3e}, "
        f"peak oscillation {results['peak_relative_oscillation']:.1%}"
    )
    return EXIT_OK, results


def _run_vk_scan(config: RunConfig, out_dir: Path) -> tuple[int, dict]:
    grid = make_grid(config.grid.n_points, config.grid.half_length)
    t0 = time.perf_counter()
    curve = vk_scan(
        (config.scan.mu_min, config.scan.mu_max),
        config.scan.n_samples,
        _srm_config(config),
        grid,
    )
    io_mod.write_curve(curve, out_dir / "curve.csv")
    n_conv = int(np.count_nonzero(curve.converged_flags))
    results = {
        "samples": int(curve.mu_values.size),
        "converged_samples": n_conv,
        "stable_intervals": [list(pair) for pair in curve.stable_intervals],
        "wall_seconds": time.perf_counter() - t0,
    }
    print(
        f"vk-scan: {n_conv}/{curve.mu_values.size} samples converged, "
        f"negative-slope intervals: {curve.stable_intervals or 'none'}"
    )
    return EXIT_OK, results


def _run_oracle(config: RunConfig, out_dir: Path) -> tuple[int, dict]:
    """Linear-limit validation: analytic modes must be stationary (sigma = 0)."""
    grid = make_grid(config.grid.n_points, config.grid.half_length)
    rows = []
    worst_residual = 0.0
    for n in range(6):
        mode_field = linear_mode(grid, n)
        eig = linear_eigenvalue(n)
        params = ModelParams(alpha=1.0, sigma=0.0, p_shift=config.model.p_shift, mu=-eig)
        residual = stationary_residual(mode_field, params)
        worst_residual = max(worst_residual, residual)
        drift = float("nan")
        if n <= 3:
            # Propagate the mode to t = 1 with the symmetrized composition and
            # compare |psi| against the analytic stationary modulus.
            prop = propagate(
                mode_field,
                PropagationConfig(
                    params=params,
                    dt=config.propagation.dt,
                    t_final=1.0,
                    record_every=100_000,
                    symmetrized=True,
                    profile_times=(1.0,),
                ),
            )
            final = prop.profiles[-1]
            drift = float(
                np.max(np.abs(np.abs(final.values) - np.abs(mode_field.values)))
            )
        rows.append((n, eig, residual, drift))
    io_mod._write_rows(
        out_dir / "oracle_report.csv",
        ["n", "eigenvalue", "stationary_residual", "modulus_drift_t1"],
        (
            [str(n), io_mod._fmt(e), io_mod._fmt(r), io_mod._fmt(d)]
            for n, e, r, d in rows
        ),
    )
    ok = worst_residual <= 1e-8
    print(
        f"oracle: worst sigma=0 stationary residual {worst_residual:.3e} "
        f"({'OK' if ok else 'FAILED'}, bound 1e-8); report written"
    )
    return (EXIT_OK if ok else EXIT_NONCONVERGENCE), {
        "worst_residual": worst_residual,
        "rows": [list(r) for r in rows],
    }


def run(config: RunConfig) -> int:
    """Execute a RunConfig; returns the process exit code."""
    out_dir = Path(config.output_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as err:
        print(f"cannot create output directory {out_dir}: {err}", file=sys.stderr)
        return EXIT_IO
    dispatch = {
        "solve": _run_solve,
        "propagate": _run_propagate,
        "vk-scan": _run_vk_scan,
        "oracle": _run_oracle,
    }
    try:
        status, results = dispatch[config.mode](config, out_dir)
        io_mod.write_manifest(out_dir / "run_manifest.json", config, results)
    except OutputError as err:
        print(str(err), file=sys.stderr)
        return EXIT_IO
    return status


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = _assemble_config(args)
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
