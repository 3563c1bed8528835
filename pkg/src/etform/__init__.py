"""Event-triggered distributed formation and tracking control simulator."""

from .estimators import EstimatorKind, EstimatorSlot, Message
from .formation import (
    FormationSpec,
    Gains,
    ReferenceTrajectory,
    SpringMatrix,
    circular_reference,
    potential_energy,
)
from .models import ModelKind, ModelSpec, double_integrator, surface_ship
from .presets import get_preset, preset_names
from .simulation import (
    ConfigError,
    DivergenceError,
    RetriggerError,
    RunResult,
    default_config,
    simulate,
    sweep_rows,
    validate_config,
    write_run_outputs,
    write_sweep_csv,
)
from .triggering import c3, xi_bound

__all__ = [
    "ConfigError",
    "DivergenceError",
    "EstimatorKind",
    "EstimatorSlot",
    "FormationSpec",
    "Gains",
    "Message",
    "ModelKind",
    "ModelSpec",
    "ReferenceTrajectory",
    "RetriggerError",
    "RunResult",
    "SpringMatrix",
    "c3",
    "circular_reference",
    "default_config",
    "double_integrator",
    "get_preset",
    "potential_energy",
    "preset_names",
    "simulate",
    "surface_ship",
    "sweep_rows",
    "validate_config",
    "write_run_outputs",
    "write_sweep_csv",
    "xi_bound",
]

__version__ = "0.1.0"
