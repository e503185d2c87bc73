"""Gaussian entanglement and EPR steering in a squeezed, coupled
optomechanical network."""

from .dynamics import EvolutionTrace, evolve, stability_check, steady_state
from .errors import (
    DomainError,
    NumericalError,
    OptoSqueezeError,
    ParseError,
    SpecError,
    UnstableSystem,
    ValidationError,
)
from .measures import (
    NonlocalityReport,
    TwoModeCovariance,
    classify_region,
    log_negativity,
    nonlocality_report,
    reduce_two_mode,
    steering,
    symplectic_eigenvalues,
)
from .model import (
    DerivedParams,
    PhysicalParams,
    build_diffusion,
    build_drift,
    derive_params,
    rwa_validity,
)
from .oracle import OracleReport
from .sweep import Axis, SweepSpec, figure_recipe, find_extremum, run_sweep

__version__ = "0.1.0"

__all__ = [
    "Axis",
    "DerivedParams",
    "DomainError",
    "EvolutionTrace",
    "NonlocalityReport",
    "NumericalError",
    "OptoSqueezeError",
    "OracleReport",
    "ParseError",
    "PhysicalParams",
    "SpecError",
    "SweepSpec",
    "TwoModeCovariance",
    "UnstableSystem",
    "ValidationError",
    "build_diffusion",
    "build_drift",
    "classify_region",
    "derive_params",
    "evolve",
    "figure_recipe",
    "find_extremum",
    "log_negativity",
    "nonlocality_report",
    "reduce_two_mode",
    "run_sweep",
    "rwa_validity",
    "stability_check",
    "steady_state",
    "steering",
    "symplectic_eigenvalues",
]
