"""High-order discontinuous Galerkin solvers for the nonlinear Dirac equation.

Three time discretizations of the same spatial operator — method-of-lines
Runge-Kutta, one-step Lax-Wendroff, and a two-stage fourth-order scheme —
plus solitary-wave initial data, conservation diagnostics, and an
operation-count model for comparing the schemes' per-step cost.
"""

from .cost import compare_schemes, cost_table, op_count, predicted_ops
from .diagnostics import (
    charge_deviation,
    count_local_maxima,
    order_table,
    probe_charge_density,
    relative_drift,
    total_charge,
    total_energy,
)
from .errors import (
    BlowupError,
    ConfigError,
    DiracDGError,
    DomainError,
    InsufficientLevels,
    NoConvergence,
    Unsupported,
)
from .integrators import cfl_dt, default_mu, evolve, rk4_step, tvd_rk3_step
from .lwdg import lwdg_step
from .mesh import DGSpace1D, DGSpace2D, Grid1D, Grid2D, convergence_orders
from .model import (
    NLDModel,
    charge_density,
    complex_to_real,
    energy_density,
    real_to_complex,
    rho,
)
from .runner import (
    PRESETS,
    RunConfig,
    WaveSpec,
    converge_study,
    load_config,
    preset_config,
    run_simulation,
    save_config,
)
from .semidiscrete import dqdt_semidiscrete, rkdg_residual
from .tsdg import tsdg_step
from .waves import (
    MMSSource,
    WaveProfile,
    decay_rate,
    load_profile,
    mms_state,
    profile_charge,
    save_profile,
    solve_standing_wave,
    superposed_real,
    superposed_state,
    wave_state,
)

__version__ = "0.1.0"

__all__ = [
    "BlowupError", "ConfigError", "DiracDGError", "DomainError",
    "InsufficientLevels", "NoConvergence", "Unsupported",
    "NLDModel", "rho", "charge_density", "energy_density",
    "complex_to_real", "real_to_complex",
    "Grid1D", "Grid2D", "DGSpace1D", "DGSpace2D", "convergence_orders",
    "rkdg_residual", "dqdt_semidiscrete",
    "rk4_step", "tvd_rk3_step", "evolve", "cfl_dt", "default_mu",
    "lwdg_step", "tsdg_step",
    "WaveProfile", "solve_standing_wave", "wave_state", "superposed_state",
    "superposed_real", "profile_charge", "decay_rate",
    "save_profile", "load_profile", "MMSSource", "mms_state",
    "total_charge", "total_energy", "relative_drift", "charge_deviation",
    "probe_charge_density", "order_table", "count_local_maxima",
    "op_count", "predicted_ops", "compare_schemes", "cost_table",
    "RunConfig", "WaveSpec", "PRESETS", "preset_config",
    "run_simulation", "converge_study", "save_config", "load_config",
    "__version__",
]
