"""Steady-state probe transmission in chains of spinning optomechanical
ring resonators: parameters, steady-state and linear-response solvers,
spectrum/metric sweeps, bundled reproduction presets, an HTTP service and
a thin-client CLI."""

__version__ = "0.1.0"

from .analysis import (
    MetricPoint,
    SpectrumResult,
    enhancement_factor,
    gd_enhancement,
    group_delay,
    local_minima,
    nonreciprocity_contrast,
    sweep_metrics,
    sweep_spectrum,
    transmission_at,
)
from .configio import (
    config_from_dict,
    config_to_dict,
    emit_config,
    load_config,
    parse_config,
    save_config,
)
from .errors import (
    ConfigError,
    DegenerateCavity,
    NoConvergence,
    SingularSystem,
    SpinchainError,
    SweepError,
    ZeroBaseline,
)
from .params import (
    ChainConfig,
    DerivedRates,
    DriveSpec,
    ResonatorSpec,
    centrifugal_displacement,
    derived_rates,
    effective_detuning,
    kappa_ex_from_quality,
    omit_pump_frequency,
    sagnac_shift,
)
from .response import (
    ResponsePoint,
    assemble_system,
    closed_form_single,
    omit_window_width_estimate,
    solve_response,
)
from .steady import SingleSteadyResult, SteadyState, solve_steady, solve_steady_single_oracle

__all__ = [
    "__version__",
    "ChainConfig",
    "ConfigError",
    "DegenerateCavity",
    "DerivedRates",
    "DriveSpec",
    "MetricPoint",
    "NoConvergence",
    "ResonatorSpec",
    "ResponsePoint",
    "SingleSteadyResult",
    "SingularSystem",
    "SpectrumResult",
    "SpinchainError",
    "SteadyState",
    "SweepError",
    "ZeroBaseline",
    "assemble_system",
    "centrifugal_displacement",
    "closed_form_single",
    "config_from_dict",
    "config_to_dict",
    "derived_rates",
    "effective_detuning",
    "emit_config",
    "enhancement_factor",
    "gd_enhancement",
    "group_delay",
    "kappa_ex_from_quality",
    "load_config",
    "local_minima",
    "nonreciprocity_contrast",
    "omit_pump_frequency",
    "omit_window_width_estimate",
    "parse_config",
    "save_config",
    "sagnac_shift",
    "solve_response",
    "solve_steady",
    "solve_steady_single_oracle",
    "sweep_metrics",
    "sweep_spectrum",
    "transmission_at",
]
