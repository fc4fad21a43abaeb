"""Rack force estimation on uneven roads."""

from ._rackforce import (
    Error,
    ModelVariant,
    SlopeMode,
    Axle,
    default_config,
    validate_config,
    normal_force,
    static_deflection,
    effective_profile,
    tire_chain,
    rack_force,
    slip_angle,
    simulate,
    mean_absolute_error,
    run,
    __version__,
)

__all__ = [
    "Error",
    "ModelVariant",
    "SlopeMode",
    "Axle",
    "default_config",
    "validate_config",
    "normal_force",
    "static_deflection",
    "effective_profile",
    "tire_chain",
    "rack_force",
    "slip_angle",
    "simulate",
    "mean_absolute_error",
    "run",
    "__version__",
]
