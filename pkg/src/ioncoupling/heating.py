"""Empirical anomalous-heating model and the decoherence time it implies.

The heating rate of a trapped ion is modelled as

``dn/dt = A_tilde / (f**alpha_tilde * d**delta) * (1 + (T/T_p)**beta)``

where the bracket carries a temperature-independent baseline that
persists at ``T = 0``. Writing ``A = A_tilde 4 m h / q**2`` separates the
charge and mass dependence, and ``S_E = A / (f**alpha d**delta) [...]``
with ``alpha = alpha_tilde - 1`` is the matching electric-field noise
spectral density. The decoherence time is approximated as one over the
heating rate, which is reasonable when a single quantum entering the
mode destroys the stored state.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Dict, Iterable, List, Sequence, Tuple, Union

import numpy as np

from .model import HeatingModel, IonSpecies, default_constants

__all__ = [
    "HeatingMeasurement",
    "HeatingReport",
    "VALIDATED_RANGES",
    "heating_rate",
    "extract_A_tilde",
    "A_from_A_tilde",
    "spectral_density",
    "transition_rate_ground",
    "decoherence_time",
    "validity_flags",
    "heating_report",
    "read_measurements",
    "load_reference_heating",
    "reference_heating_means",
]

_K = default_constants()

#: Parameter ranges covered by the data that fixed the default exponents.
VALIDATED_RANGES: Dict[str, Tuple[float, float]] = {
    "frequency": (470e3, 1.2e6),
    "distance": (29e-6, 83e-6),
    "temperature": (3.0, 300.0),
}


@dataclass(frozen=True)
class HeatingMeasurement:
    """One measured heating rate and its conditions."""

    frequency: float
    distance: float
    temperature: float
    rate: float
    trap_material: str = ""

    def __post_init__(self) -> None:
        for name in ("frequency", "distance", "temperature", "rate"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0")


@dataclass(frozen=True)
class HeatingReport:
    """Heating rate, decoherence time and spectral density at one point."""

    rate: float
    t_deco: float
    S_E: float
    validity_flags: Dict[str, bool] = field(default_factory=dict)

    @property
    def extrapolated(self) -> bool:
        return not all(self.validity_flags.values())


def _check_inputs(f, d, T) -> None:
    if np.any(np.asarray(f) <= 0) or np.any(np.asarray(d) <= 0):
        raise ValueError("f and d must be > 0")
    if np.any(np.asarray(T) < 0):
        raise ValueError("T must be >= 0")


def heating_rate(model: HeatingModel, ion: IonSpecies, f, d, T):
    """Heating rate in quanta/s.

    ``dn/dt = A q^2/(4 m h) / (f^alpha_tilde d^delta) (1 + (T/T_p)^beta)``

    ``A`` is ``model.A``, fixed by ``A_tilde`` and the model's reference
    ion. For the reference ion this is ``A_tilde / (f^alpha_tilde d^delta) [...]``;
    other ions scale as ``q^2/m``.

    Parameters
    ----------
    model : HeatingModel
    ion : IonSpecies
    f, d, T : float or array_like
        Frequency (Hz), distance (m) and electrode temperature (K).
    """
    _check_inputs(f, d, T)
    f = np.asarray(f, dtype=float)
    d = np.asarray(d, dtype=float)
    T = np.asarray(T, dtype=float)
    bracket = 1.0 + (T / model.T_p) ** model.beta
    prefactor = model.A * ion.charge ** 2 / (4 * ion.mass * _K.h)
    out = prefactor / (f ** model.alpha_tilde * d ** model.delta) * bracket
    return out[()] if out.ndim == 0 else out


def A_from_A_tilde(A_tilde: float, ion: IonSpecies) -> float:
    """Charge- and mass-scaled constant ``A = A_tilde 4 m h / q^2``."""
    return A_tilde * 4 * ion.mass * _K.h / ion.charge ** 2


def spectral_density(model: HeatingModel, ion: IonSpecies, f, d, T):
    """Electric-field noise ``S_E = A / (f^alpha d^delta) (1 + (T/T_p)^beta)``.

    ``alpha = alpha_tilde - 1``; units (V/m)^2/Hz. ``S_E`` does not depend
    on the ion; the argument is kept for a uniform call signature.
    """
    _check_inputs(f, d, T)
    f = np.asarray(f, dtype=float)
    d = np.asarray(d, dtype=float)
    T = np.asarray(T, dtype=float)
    A = model.A
    alpha = model.alpha_tilde - 1.0
    out = A / (f ** alpha * d ** model.delta) * (1.0 + (T / model.T_p) ** model.beta)
    return out[()] if out.ndim == 0 else out


def transition_rate_ground(ion: IonSpecies, f, S_E):
    """Ground-state heating rate ``q^2/(4 m hbar omega) S_E`` in quanta/s."""
    f = np.asarray(f, dtype=float)
    if np.any(f <= 0):
        raise ValueError("f must be > 0")
    out = ion.charge ** 2 / (4 * ion.mass * _K.hbar * 2 * np.pi * f) * np.asarray(S_E, dtype=float)
    return out[()] if out.ndim == 0 else out


def decoherence_time(model: HeatingModel, ion: IonSpecies, f, d, T):
    """``t_deco = 1 / (dn/dt)`` in s."""
    rate = heating_rate(model, ion, f, d, T)
    return 1.0 / rate


def extract_A_tilde(meas: HeatingMeasurement, alpha_tilde: float = 2.4, delta: float = 4.0,
                    beta: float = 1.51, T_p: float = 10.0) -> float:
    """Invert the heating law for ``A_tilde`` at fixed exponents.

    ``A_tilde = f^alpha_tilde d^delta / (1 + (T/T_p)^beta) dn/dt``
    """
    bracket = 1.0 + (meas.temperature / T_p) ** beta
    return meas.frequency ** alpha_tilde * meas.distance ** delta / bracket * meas.rate


def validity_flags(f: float, d: float, T: float) -> Dict[str, bool]:
    """``True`` for each parameter inside the validated data range."""
    out = {}
    for name, val in (("frequency", f), ("distance", d), ("temperature", T)):
        lo, hi = VALIDATED_RANGES[name]
        out[name] = bool(lo <= val <= hi)
    return out


def heating_report(model: HeatingModel, ion: IonSpecies, f: float, d: float, T: float) -> HeatingReport:
    """Rate, ``t_deco``, ``S_E`` and range flags at one operating point."""
    rate = float(heating_rate(model, ion, f, d, T))
    return HeatingReport(
        rate=rate,
        t_deco=1.0 / rate,
        S_E=float(spectral_density(model, ion, f, d, T)),
        validity_flags=validity_flags(f, d, T),
    )


# ---------------------------------------------------------------------------
# Data ingestion
# ---------------------------------------------------------------------------

MEASUREMENT_COLUMNS = ("f_Hz", "d_m", "T_K", "rate_quanta_per_s", "material")


def read_measurements(source: Union[str, Path, io.TextIOBase]) -> List[HeatingMeasurement]:
    """Read measurements from CSV with columns
    ``f_Hz, d_m, T_K, rate_quanta_per_s, material``.

    Raises
    ------
    ValueError
        On a missing column or a value that does not parse.
    """
    if isinstance(source, (str, Path)):
        with open(source, newline="") as fh:
            return read_measurements(fh)
    reader = csv.DictReader(source)
    missing = [c for c in MEASUREMENT_COLUMNS[:4] if c not in (reader.fieldnames or [])]
    if missing:
        raise ValueError(f"measurement CSV is missing columns: {', '.join(missing)}")
    out = []
    for lineno, row in enumerate(reader, start=2):
        try:
            out.append(HeatingMeasurement(
                frequency=float(row["f_Hz"]),
                distance=float(row["d_m"]),
                temperature=float(row["T_K"]),
                rate=float(row["rate_quanta_per_s"]),
                trap_material=row.get("material", "") or "",
            ))
        except (TypeError, ValueError) as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    return out


def _opt_float(s: str) -> float:
    return float(s) if s.strip() else math.nan


def load_reference_heating(source: Union[str, Path, None] = None) -> List[dict]:
    """Published ``A_tilde`` values with their experimental conditions.

    With no argument the copy bundled with the package is read. Each row
    has ``column``, ``material``, ``sweep``, ``f_Hz``, ``d_m``, ``T_K``
    and ``A_tilde``; a swept quantity is NaN.
    """
    if source is None:
        text = resources.files("ioncoupling").joinpath("data/reference_heating.csv").read_text()
    else:
        text = Path(source).read_text()
    rows = []
    for row in csv.DictReader(io.StringIO(text)):
        rows.append({
            "column": int(row["column"]),
            "material": row["material"],
            "sweep": row["sweep"],
            "f_Hz": _opt_float(row["f_Hz"]),
            "d_m": _opt_float(row["d_m"]),
            "T_K": _opt_float(row["T_K"]),
            "A_tilde": float(row["A_tilde"]),
        })
    return rows


def reference_heating_means(rows: Iterable[dict] | None = None) -> Dict[str, Tuple[float, float, int]]:
    """Mean, sample standard deviation and count of ``A_tilde`` per material.

    Returns
    -------
    dict
        ``{material: (mean, std, n)}``.
    """
    rows = load_reference_heating() if rows is None else list(rows)
    groups: Dict[str, List[float]] = {}
    for r in rows:
        groups.setdefault(r["material"], []).append(r["A_tilde"])
    out = {}
    for mat, vals in groups.items():
        arr = np.asarray(vals)
        std = float(arr.std(ddof=1)) if arr.size > 1 else 0.0
        out[mat] = (float(arr.mean()), std, int(arr.size))
    return out


def extract_batch(measurements: Sequence[HeatingMeasurement], **exponents) -> np.ndarray:
    """``A_tilde`` for each measurement at common exponents."""
    return np.asarray([extract_A_tilde(m, **exponents) for m in measurements])


__all__.append("extract_batch")
__all__.append("MEASUREMENT_COLUMNS")
