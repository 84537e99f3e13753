"""Mean-field toolkit for two-color photoassociative transfer in an
atom-molecule Bose-Einstein condensate.

The package integrates the three-mode mean-field equations (atomic,
excited-molecular, and stable-molecular amplitudes) under a delayed pair of
Gaussian pulses with a time-dependent two-photon detuning, solves the
coherent-population-trapping (dark-state) branch, analyzes its linear
stability, and sweeps/optimizes the atom-to-molecule conversion efficiency
over detuning and pulse delay.

All frequencies are angular rates in rad/us and all times are in us.
"""

from .config import RunConfig, parse_config, parse_quantity
from .cpt import (
    CptPoint,
    chemical_potential,
    cpt_populations,
    cpt_state,
    generalized_delta,
)
from .errors import AmstirapError, ConfigError, DomainError, IntegrationError
from .integrate import (
    DEFAULT_ABSTOL,
    DEFAULT_RELTOL,
    DEFAULT_SAMPLES,
    SolverStats,
    Trajectory,
    efficiency,
    evolve,
)
from .model import (
    State,
    SystemParams,
    atom_number_norm,
    collision_rates_from_density,
    populations,
    rb87_params,
    rhs,
)
from .pulses import PulsePair, coupling_ratio, default_window, delta_schedule, rabi
from .stability import (
    PerturbationGrowth,
    StabilityMap,
    StabilityResult,
    classify,
    default_axes,
    linearize_at_cpt,
    map_scan,
    perturbation_growth,
    rotating_frame_rhs,
)
from .sweep import OptimizeResult, SweepResult, optimize, sweep_eta

__version__ = "0.1.0"

__all__ = [
    "AmstirapError",
    "ConfigError",
    "CptPoint",
    "DEFAULT_ABSTOL",
    "DEFAULT_RELTOL",
    "DEFAULT_SAMPLES",
    "DomainError",
    "IntegrationError",
    "OptimizeResult",
    "PerturbationGrowth",
    "PulsePair",
    "RunConfig",
    "SolverStats",
    "StabilityMap",
    "StabilityResult",
    "State",
    "SweepResult",
    "SystemParams",
    "Trajectory",
    "atom_number_norm",
    "chemical_potential",
    "classify",
    "collision_rates_from_density",
    "coupling_ratio",
    "cpt_populations",
    "cpt_state",
    "default_axes",
    "default_window",
    "delta_schedule",
    "efficiency",
    "evolve",
    "generalized_delta",
    "linearize_at_cpt",
    "map_scan",
    "optimize",
    "parse_config",
    "parse_quantity",
    "perturbation_growth",
    "populations",
    "rabi",
    "rb87_params",
    "rhs",
    "rotating_frame_rhs",
    "sweep_eta",
    "__version__",
]
