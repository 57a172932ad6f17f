"""Coupling the motional states of two trapped ions through a conducting wire.

Modules
-------
model
    Configuration types, physical constants and the TOML loader.
electrostatics
    Image-charge fields and the charge induced on a pickup disk.
capnet
    Capacitances, resistances and the charge split across the coupler.
coupling
    Coupling constants, exchange time and the comparison systems.
heating
    Empirical anomalous-heating model and decoherence time.
noise
    Signal voltage and current, Johnson-Nyquist and shot noise.
feasibility
    The two feasibility criteria over the (frequency, distance) plane.
exchange_sim
    Classical and rotating-wave simulations of the state exchange.
cli
    Command-line front end.
"""

__version__ = "0.1.0"

from .model import (  # noqa: E402
    Config,
    ConfigError,
    CouplerGeometry,
    FeasibilityCriteria,
    HeatingModel,
    IonSpecies,
    ModelValidityWarning,
    PhysicalConstants,
    TrapEnvironment,
    beryllium9,
    default_constants,
    dump_config,
    load_config,
    parse_config,
)

__all__ = [
    "__version__",
    "Config",
    "ConfigError",
    "CouplerGeometry",
    "FeasibilityCriteria",
    "HeatingModel",
    "IonSpecies",
    "ModelValidityWarning",
    "PhysicalConstants",
    "TrapEnvironment",
    "beryllium9",
    "default_constants",
    "dump_config",
    "load_config",
    "parse_config",
]
