"""Approximate-eigenstructure error bounds for LTV channels with compactly
supported spreading functions, plus a Monte-Carlo verification harness."""

from .channel import (
    CellSpreading,
    ChannelMatrix,
    apply_channel,
    channel_matrix,
    lambda_value,
    sample_cell_spreading,
    spreading_from_matrix,
    spreading_norm,
    weyl_symbol,
)
from .core_tf import (
    AmbiguitySurface,
    Signal,
    TFGrid,
    TFShift,
    TimeGrid,
    ambiguity,
    ambiguity_surface,
    commutation_defect,
    default_grid,
    dual_grid,
    make_gaussian,
    shift,
    symplectic_fourier,
)
from .error_bounds import (
    BoundReport,
    C2_MEASURE_LIMIT,
    ErrorConfig,
    ambiguity_mass_check,
    c2_feasibility,
    error_ep,
    fidelity_bounds,
    full_report,
    general_bound,
    kozek_simplified,
    necessary_u_bound,
    r_inf_bound,
    rho_bar_inf,
    thm2_bound,
)
from .experiment import ExperimentConfig, TrialRecord, emit_csv, read_csv, run_experiment

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
