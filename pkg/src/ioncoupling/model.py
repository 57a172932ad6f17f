"""Shared domain types, physical constants and configuration handling.

Every quantity is a plain SI float. The value types below are frozen
dataclasses whose ``__post_init__`` enforces their invariants, so an
instance that exists is an instance that is valid.

The configuration document is TOML with the sections ``ion``, ``trap``,
``coupler``, ``heating`` and ``criteria``; see :func:`load_config`.
"""

from __future__ import annotations

import math
import sys
import warnings
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Mapping, Optional, Union

from scipy import constants as sc

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover - exercised on 3.10 only
    import tomli as tomllib

import tomli_w

__all__ = [
    "ConfigError",
    "ModelValidityWarning",
    "PhysicalConstants",
    "default_constants",
    "IonSpecies",
    "TrapEnvironment",
    "CouplerGeometry",
    "HeatingModel",
    "FeasibilityCriteria",
    "Config",
    "REFERENCE_ION_MASS",
    "REFERENCE_CHARGE",
    "beryllium9",
    "load_config",
    "parse_config",
    "config_to_dict",
    "dump_config",
]


#: Version of the JSON export layout, written under ``"schema_version"``.
SCHEMA_VERSION = "1.0"


class ConfigError(ValueError):
    """Raised when a document cannot be parsed or a value breaks an invariant."""


class ModelValidityWarning(UserWarning):
    """Issued when inputs leave the range in which a closed form is trusted."""


# ---------------------------------------------------------------------------
# Constants
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PhysicalConstants:
    """CODATA physical constants used by every formula in the package.

    Attributes
    ----------
    epsilon0 : float
        Vacuum permittivity in F/m.
    hbar : float
        Reduced Planck constant in J s.
    h : float
        Planck constant in J s.
    kB : float
        Boltzmann constant in J/K.
    e : float
        Elementary charge in C.
    mu0 : float
        Vacuum permeability in H/m.
    c : float
        Speed of light in m/s.
    """

    epsilon0: float = sc.epsilon_0
    hbar: float = sc.hbar
    h: float = sc.h
    kB: float = sc.k
    e: float = sc.e
    mu0: float = sc.mu_0
    c: float = sc.c

    def __post_init__(self) -> None:
        for f in fields(self):
            if not getattr(self, f.name) > 0:
                raise ConfigError(f"{f.name} must be > 0")
        if abs(self.hbar - self.h / (2 * math.pi)) > 1e-12 * self.hbar:
            raise ConfigError("hbar must equal h/(2 pi)")


_CONSTANTS = PhysicalConstants()


def default_constants() -> PhysicalConstants:
    """Return the CODATA 2018 constant set (``e`` is exact)."""
    return _CONSTANTS


# Values used throughout the reference analysis for a singly charged 9Be+ ion.
REFERENCE_ION_MASS = 1.5e-26
REFERENCE_CHARGE = 1.6e-19


# ---------------------------------------------------------------------------
# Value types
# ---------------------------------------------------------------------------


def _positive(name: str, value: float) -> None:
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
        raise ConfigError(f"{name} must be > 0")


# The rounded charge 1.6e-19 C used in the reference tables sits 0.14 % below
# e, so the integer-multiple check needs a percent-level tolerance.
_CHARGE_MULTIPLE_RTOL = 1e-2


@dataclass(frozen=True)
class IonSpecies:
    """A trapped charged particle.

    Parameters
    ----------
    mass : float
        Mass in kg.
    charge : float
        Signed charge in C. Its magnitude must be an integer multiple of
        the elementary charge.
    label : str
        Free-form identifier.
    """

    mass: float
    charge: float
    label: str = "ion"

    def __post_init__(self) -> None:
        _positive("mass", self.mass)
        if not math.isfinite(self.charge):
            raise ConfigError("charge must be finite")
        n = abs(self.charge) / _CONSTANTS.e
        if abs(n - round(n)) > _CHARGE_MULTIPLE_RTOL * max(round(n), 1):
            raise ConfigError("charge must be an integer multiple of e")

    @property
    def charge_number(self) -> int:
        """Number of elementary charges carried (sign included)."""
        return int(math.copysign(round(abs(self.charge) / _CONSTANTS.e), self.charge))


def beryllium9(charge_state: int = 1, *, rounded: bool = True) -> IonSpecies:
    """Return a 9Be ion.

    With ``rounded`` the rounded mass 1.5e-26 kg and charge unit
    1.6e-19 C of the reference tables are used; otherwise the atomic mass
    and the exact elementary charge.
    """
    if rounded:
        return IonSpecies(REFERENCE_ION_MASS, charge_state * REFERENCE_CHARGE, f"9Be{charge_state}+")
    mass = 9.0121831 * sc.atomic_mass - charge_state * sc.m_e
    return IonSpecies(mass, charge_state * sc.e, f"9Be{charge_state}+")


@dataclass(frozen=True)
class TrapEnvironment:
    """Operating point of the trap.

    Parameters
    ----------
    secular_frequency : float
        Motional frequency f in Hz (not angular).
    ion_distance : float
        Ion height above its pickup disk, d_eq, in m.
    electrode_temperature : float
        Trap electrode temperature T in K.
    motional_bandwidth : float
        Frequency range Δf in Hz over which the motional state is encoded.
    coupler_temperature : float, optional
        Temperature of the coupling wire in K. Defaults to the electrode
        temperature.
    """

    secular_frequency: float
    ion_distance: float
    electrode_temperature: float
    motional_bandwidth: float
    coupler_temperature: Optional[float] = None

    def __post_init__(self) -> None:
        _positive("secular_frequency", self.secular_frequency)
        _positive("ion_distance", self.ion_distance)
        if not self.electrode_temperature >= 0:
            raise ConfigError("electrode_temperature must be >= 0")
        _positive("motional_bandwidth", self.motional_bandwidth)
        if not self.motional_bandwidth < self.secular_frequency:
            raise ConfigError("motional_bandwidth must be < secular_frequency (resolved sidebands)")
        if self.coupler_temperature is None:
            object.__setattr__(self, "coupler_temperature", self.electrode_temperature)
        elif not self.coupler_temperature >= 0:
            raise ConfigError("coupler_temperature must be >= 0")

    @property
    def omega(self) -> float:
        """Angular secular frequency in rad/s."""
        return 2 * math.pi * self.secular_frequency


@dataclass(frozen=True)
class CouplerGeometry:
    """Two pickup disks joined by a thin cylindrical wire.

    Parameters
    ----------
    disk1_radius, disk2_radius : float
        Pickup disk radii in m.
    wire_length : float
        Wire length l_w in m.
    wire_radius : float
        Wire radius a in m.
    disk_thickness : float
        Disk thickness in m (only enters the thick-disk corrections).
    conductivity : float
        Wire conductivity σ in S/m.
    explicit_resistance : float, optional
        Overrides the resistance derived from ``conductivity``.

    Notes
    -----
    ``wire_radius`` above 0.2 of the smaller disk radius leaves the range
    recommended for the ring-of-charge model. The standard 10 µm wire with
    35 µm disks already sits there, so this only emits a
    :class:`ModelValidityWarning` and sets a flag.
    """

    disk1_radius: float
    disk2_radius: float
    wire_length: float
    wire_radius: float
    disk_thickness: float = 1e-6
    conductivity: float = 6.0e7
    explicit_resistance: Optional[float] = None

    def __post_init__(self) -> None:
        for name in ("disk1_radius", "disk2_radius", "wire_length", "wire_radius",
                     "disk_thickness", "conductivity"):
            _positive(name, getattr(self, name))
        if not self.wire_radius < self.wire_length / 10:
            raise ConfigError("wire_radius must be < wire_length/10 (thin-wire capacitance)")
        if self.explicit_resistance is not None and not self.explicit_resistance >= 0:
            raise ConfigError("explicit_resistance must be >= 0")
        if not self.wire_radius_in_model_range:
            warnings.warn(
                "wire_radius exceeds 0.2 x min(disk radius); ring-of-charge model is stretched",
                ModelValidityWarning,
                stacklevel=3,
            )

    @classmethod
    def symmetric(cls, disk_radius: float, wire_length: float = 0.01,
                  wire_radius: float = 10e-6, **kwargs: Any) -> "CouplerGeometry":
        """Build a coupler with two identical disks."""
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ModelValidityWarning)
            return cls(disk_radius, disk_radius, wire_length, wire_radius, **kwargs)

    @property
    def wire_radius_in_model_range(self) -> bool:
        return self.wire_radius <= 0.2 * min(self.disk1_radius, self.disk2_radius)

    # Derived quantities are delegated to capnet; the import is deferred to
    # keep this module free of dependencies on the physics modules.
    def capacitances(self):
        """Return the :class:`~ioncoupling.capnet.CapacitanceTriple`."""
        from . import capnet

        return capnet.CapacitanceTriple(
            capnet.disk_self_capacitance(self.disk1_radius),
            capnet.wire_capacitance(self.wire_length, self.wire_radius),
            capnet.disk_self_capacitance(self.disk2_radius),
        )

    def resistance(self, frequency: float) -> float:
        """Wire resistance in Ω at ``frequency`` (explicit override wins)."""
        if self.explicit_resistance is not None:
            return self.explicit_resistance
        from . import capnet

        return capnet.wire_resistance(self.wire_length, self.wire_radius,
                                      self.conductivity, frequency)


@dataclass(frozen=True)
class HeatingModel:
    """Empirical anomalous-heating law.

    ``dn/dt = A_tilde / (f**alpha_tilde * d**delta) * (1 + (T/T_p)**beta)``

    Parameters
    ----------
    A_tilde : float
        Prefactor in Hz^alpha_tilde m^delta quanta/s.
    alpha_tilde, delta, beta : float
        Frequency, distance and temperature exponents.
    T_p : float
        Activation temperature in K.
    reference_mass, reference_charge : float
        The ion for which ``A_tilde`` was quoted. Other ions scale with
        ``q**2/m`` through the ion-independent ``A = A_tilde 4 m h / q**2``.
    """

    A_tilde: float = 0.012
    alpha_tilde: float = 2.4
    delta: float = 4.0
    beta: float = 1.51
    T_p: float = 10.0
    reference_mass: float = REFERENCE_ION_MASS
    reference_charge: float = REFERENCE_CHARGE

    def __post_init__(self) -> None:
        _positive("A_tilde", self.A_tilde)
        if not self.alpha_tilde > 1:
            raise ConfigError("alpha_tilde must be > 1")
        _positive("T_p", self.T_p)
        _positive("reference_mass", self.reference_mass)
        if not self.reference_charge != 0:
            raise ConfigError("reference_charge must be non-zero")
        for name in ("delta", "beta"):
            if not math.isfinite(getattr(self, name)):
                raise ConfigError(f"{name} must be finite")

    @classmethod
    def from_A(cls, A: float, ion: IonSpecies, **kwargs: Any) -> "HeatingModel":
        """Build the model from the ion-independent constant ``A = Ã·4mh/q²``.

        ``ion`` becomes the reference ion of the returned model.
        """
        _positive("A", A)
        A_tilde = A * ion.charge ** 2 / (4 * ion.mass * _CONSTANTS.h)
        return cls(A_tilde=A_tilde, reference_mass=ion.mass, reference_charge=ion.charge, **kwargs)

    @property
    def A(self) -> float:
        """Ion-independent prefactor ``A_tilde 4 m_ref h / q_ref**2``."""
        return self.A_tilde * 4 * self.reference_mass * _CONSTANTS.h / self.reference_charge ** 2

    def temperature_factor(self, T: float) -> float:
        return 1.0 + (T / self.T_p) ** self.beta


@dataclass(frozen=True)
class FeasibilityCriteria:
    """Thresholds for t_deco/t_ex and V_sig/V_J.N."""

    ratio_threshold: float = 10.0
    snr_threshold: float = 10.0

    def __post_init__(self) -> None:
        _positive("ratio_threshold", self.ratio_threshold)
        _positive("snr_threshold", self.snr_threshold)


@dataclass(frozen=True)
class Config:
    """A complete, validated configuration."""

    ion: IonSpecies
    trap: TrapEnvironment
    coupler: CouplerGeometry
    heating: HeatingModel = field(default_factory=HeatingModel)
    criteria: FeasibilityCriteria = field(default_factory=FeasibilityCriteria)

    def __iter__(self):
        # Allows ``ion, trap, coupler, heating, criteria = load_config(...)``.
        return iter((self.ion, self.trap, self.coupler, self.heating, self.criteria))


# ---------------------------------------------------------------------------
# Config document
# ---------------------------------------------------------------------------

_SECTIONS = ("ion", "trap", "coupler", "heating", "criteria")

# Standard parameter set of the reference analysis.
_DEFAULTS: dict[str, dict[str, Any]] = {
    "ion": {"mass": REFERENCE_ION_MASS, "charge": REFERENCE_CHARGE, "label": "9Be+"},
    "trap": {
        "secular_frequency": 5e6,
        "ion_distance": 50e-6,
        "electrode_temperature": 10.0,
        "motional_bandwidth": 500.0,
    },
    "coupler": {
        "wire_length": 0.01,
        "wire_radius": 10e-6,
        "disk_thickness": 1e-6,
        "conductivity": 6.0e7,
    },
    "heating": {},
    "criteria": {},
}


def _build(cls, section: str, values: Mapping[str, Any]):
    names = {f.name for f in fields(cls)}
    unknown = set(values) - names
    if unknown:
        raise ConfigError(f"[{section}] unknown keys: {', '.join(sorted(unknown))}")
    try:
        return cls(**values)
    except ConfigError as exc:
        raise ConfigError(f"[{section}] {exc}") from None
    except TypeError as exc:
        raise ConfigError(f"[{section}] {exc}") from None


def parse_config(doc: Mapping[str, Any]) -> Config:
    """Validate an already-parsed mapping and build a :class:`Config`.

    Missing optional keys take the standard parameter set (9Be+, 5 MHz,
    50 µm, 10 K, 500 Hz, 1 cm by 10 µm wire). When the disk radii are
    absent they default to ``ion_distance/sqrt(2)``.
    """
    unknown = set(doc) - set(_SECTIONS)
    if unknown:
        raise ConfigError(f"unknown sections: {', '.join(sorted(unknown))}")
    merged = {s: {**_DEFAULTS[s], **dict(doc.get(s, {}))} for s in _SECTIONS}

    ion = _build(IonSpecies, "ion", merged["ion"])
    trap = _build(TrapEnvironment, "trap", merged["trap"])
    coupler = dict(merged["coupler"])
    for key in ("disk1_radius", "disk2_radius"):
        coupler.setdefault(key, trap.ion_distance / math.sqrt(2))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ModelValidityWarning)
        geom = _build(CouplerGeometry, "coupler", coupler)
    heating = _build(HeatingModel, "heating", merged["heating"])
    criteria = _build(FeasibilityCriteria, "criteria", merged["criteria"])
    return Config(ion, trap, geom, heating, criteria)


def load_config(source: Union[str, Path, bytes]) -> Config:
    """Parse a TOML configuration document.

    Parameters
    ----------
    source : str, bytes or Path
        A path to a file, or the document text itself.

    Returns
    -------
    Config
        Unpacks as ``(ion, trap, coupler, heating, criteria)``.

    Raises
    ------
    ConfigError
        On a parse failure or an invariant violation; the message names
        the section and the field.
    """
    if isinstance(source, Path) or (isinstance(source, str) and "\n" not in source
                                    and "=" not in source and Path(source).exists()):
        text = Path(source).read_text()
    elif isinstance(source, bytes):
        text = source.decode()
    else:
        text = str(source)
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"config parse failure: {exc}") from None
    return parse_config(doc)


def config_to_dict(cfg: Config) -> dict[str, dict[str, Any]]:
    """Plain nested-dict view of a configuration (``None`` entries dropped)."""
    out = {}
    for name, obj in zip(_SECTIONS, cfg):
        out[name] = {k: v for k, v in asdict(obj).items() if v is not None}
    return out


def dump_config(cfg: Config) -> str:
    """Serialize to TOML; ``load_config(dump_config(c)) == c``."""
    return tomli_w.dumps(config_to_dict(cfg))
