"""Pseudospectral soliton toolkit for the trapped cubic Schrodinger model
(nonlinear quantum harmonic oscillator).

Three capabilities, composable from the library or the `nqho` CLI:

  * stationary self-localized profiles via spectral renormalization
    (:mod:`nqho.srm`),
  * time evolution via split-step Fourier integration (:mod:`nqho.ssfm`),
  * slope-criterion (Vakhitov-Kolokolov) stability scans
    (:mod:`nqho.stability`),

built on a shared grid/transform layer (:mod:`nqho.spectral`) and model
definitions with analytic linear-limit oracles (:mod:`nqho.model`).
"""

from .spectral import (
    GridSpec,
    WaveField,
    compute_power,
    forward_transform,
    inverse_transform,
    make_grid,
    spectral_second_derivative,
)
from .model import (
    InitialCondition,
    ModelParams,
    build_initial_guess,
    hermite,
    linear_eigenvalue,
    linear_mode,
    potential,
    stationary_residual,
)
from .srm import (
    DivergenceError,
    InadmissibleBetaError,
    LinearProblemError,
    SrmConfig,
    SrmError,
    SrmResult,
    apply_iteration_operator,
    parity_project,
    solve_beta,
    srm_solve,
)
from .ssfm import (
    PropagationConfig,
    PropagationError,
    PropagationRecord,
    linear_step,
    nonlinear_step,
    propagate,
)
from .stability import (
    STABLE_CANDIDATE,
    UNKNOWN,
    UNSTABLE,
    PowerCurve,
    classify_slope,
    power_curve_from_samples,
    vk_scan,
)
from .io import (
    ConfigError,
    GridConfig,
    OutputError,
    RunConfig,
    ScanConfig,
    SolverConfig,
    StepConfig,
    SweepEntry,
    read_config_file,
    read_table,
    write_beta_history,
    write_curve,
    write_manifest,
    write_profile,
    write_record,
)
from .presets import PRESETS, get_preset

__version__ = "0.1.0"

__all__ = [
    "GridSpec", "WaveField", "make_grid", "forward_transform",
    "inverse_transform", "compute_power", "spectral_second_derivative",
    "ModelParams", "InitialCondition", "potential", "build_initial_guess",
    "stationary_residual", "hermite", "linear_mode", "linear_eigenvalue",
    "SrmConfig", "SrmResult", "SrmError", "LinearProblemError",
    "InadmissibleBetaError", "DivergenceError", "apply_iteration_operator",
    "solve_beta", "srm_solve", "parity_project",
    "PropagationConfig", "PropagationRecord", "PropagationError",
    "nonlinear_step", "linear_step", "propagate",
    "PowerCurve", "power_curve_from_samples", "vk_scan", "classify_slope",
    "STABLE_CANDIDATE", "UNSTABLE", "UNKNOWN",
    "RunConfig", "GridConfig", "SolverConfig", "StepConfig", "ScanConfig",
    "SweepEntry", "ConfigError", "OutputError", "read_config_file",
    "read_table", "write_profile", "write_curve", "write_record",
    "write_beta_history", "write_manifest",
    "PRESETS", "get_preset",
    "__version__",
]
