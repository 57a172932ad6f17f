"""Signal and noise magnitudes for the wire coupler.

The signal is the voltage between the two pickup disks and the current
through the wire produced by the ion's zero-point motion (or by a larger
driven amplitude). The noise sources considered are Johnson-Nyquist
voltage across the wire resistance and electronic shot noise, both in
its Poisson form and in the transmission-resolved form that vanishes for
perfectly transmitting channels.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass
from typing import Optional, Sequence

import numpy as np

from .capnet import charge_split
from .electrostatics import ChargeAbovePlane, induced_charge_linear, zero_point_amplitude
from .model import SCHEMA_VERSION, CouplerGeometry, IonSpecies, default_constants

__all__ = [
    "SignalNoiseBudget",
    "johnson_voltage",
    "signal_voltage",
    "signal_current",
    "signal_voltage_closed_form",
    "shot_noise_poisson",
    "shot_noise_monte_carlo",
    "shot_noise_transmission",
    "poisson_spectral_density",
    "fano_factor",
    "landauer_conductance",
    "snr_voltage",
    "signal_noise_budget",
]

_K = default_constants()

SHOT_NOISE_NOTE = "unknown applicability for superconductors"


def johnson_voltage(T: float, R: float, delta_f: float) -> float:
    """RMS Johnson-Nyquist voltage ``sqrt(4 k_B T R delta_f)`` in V."""
    if T < 0 or R < 0 or delta_f < 0:
        raise ValueError("T, R and delta_f must be >= 0")
    return math.sqrt(4 * _K.kB * T * R * delta_f)


def _transfer(ion: IonSpecies, geom: CouplerGeometry, f: float, d: float,
              amplitude: Optional[float]):
    b = zero_point_amplitude(ion, f) if amplitude is None else amplitude
    if not b > 0:
        raise ValueError("amplitude must be > 0")
    Q = induced_charge_linear(ChargeAbovePlane(ion.charge, d), geom.disk1_radius, b)
    caps = geom.capacitances()
    return float(Q), caps


def signal_voltage(ion: IonSpecies, geom: CouplerGeometry, f: float, d: float,
                   amplitude: Optional[float] = None) -> float:
    """Voltage between the two disks, ``2 Q_transf / C_tot`` in V.

    ``Q_transf`` is collected by disk 1 over a full excursion; a fraction
    ``eta`` stays on disk 1 and the disk's potential swings by
    ``eta Q_transf / C_a`` on each side, giving ``2 eta Q_transf / C_a``.
    The magnitude is returned so the value is invariant under the sign of
    the charge.

    Parameters
    ----------
    amplitude : float, optional
        Oscillation amplitude in m. Defaults to the zero-point spread; a
        driven amplitude ``k b_o`` scales the signal by ``k``.
    """
    Q, caps = _transfer(ion, geom, f, d, amplitude)
    split = charge_split(caps, Q)
    return abs(2 * split.on_disk1 / caps.disk1)


def signal_voltage_closed_form(q: float, m: float, f, d, r, C_b: float,
                               amplitude=None):
    """Symmetric-coupler signal voltage in closed form (array friendly).

    ``V_sig = 2 / (2 8 eps0 r + C_b) 2 |q| r^2 / (r^2 + d^2)^(3/2) b``

    with ``b = sqrt(h / (8 pi^2 m f))`` unless ``amplitude`` is given.
    """
    f = np.asarray(f, dtype=float)
    d = np.asarray(d, dtype=float)
    r = np.asarray(r, dtype=float)
    b = np.sqrt(_K.h / (8 * np.pi ** 2 * m * f)) if amplitude is None else amplitude
    out = 2 / (16 * _K.epsilon0 * r + C_b) * 2 * abs(q) * r ** 2 / (r ** 2 + d ** 2) ** 1.5 * b
    return out[()] if np.ndim(out) == 0 else out


def signal_current(ion: IonSpecies, geom: CouplerGeometry, f: float, d: float,
                   amplitude: Optional[float] = None) -> float:
    """Average signal current ``2 f eta Q_transf`` in A (magnitude)."""
    Q, caps = _transfer(ion, geom, f, d, amplitude)
    return abs(2 * f * charge_split(caps, Q).on_disk1)


def shot_noise_poisson(I: float, delta_f: float) -> float:
    """Poisson shot-noise current ``sqrt(2 e I delta_f)`` in A."""
    if I < 0 or delta_f < 0:
        raise ValueError("I and delta_f must be >= 0")
    return math.sqrt(2 * _K.e * I * delta_f)


def shot_noise_monte_carlo(I: float, delta_f: float, n_windows: int = 100_000,
                           rng: np.random.Generator | int | None = 0) -> float:
    """Shot-noise current from simulated Poisson electron arrivals.

    Electrons arrive independently at mean rate ``I/e``. Counting them in
    windows of length ``1/(2 delta_f)`` (the sampling interval that
    resolves bandwidth ``delta_f``) gives a current estimate per window
    whose standard deviation is the shot-noise current.
    """
    if not (I > 0 and delta_f > 0 and n_windows > 1):
        raise ValueError("need I > 0, delta_f > 0, n_windows > 1")
    rng = np.random.default_rng(rng)
    tau = 1 / (2 * delta_f)
    counts = rng.poisson(I * tau / _K.e, size=n_windows)
    return float(np.std(counts * _K.e / tau, ddof=1))


def _check_transmissions(transmissions: Sequence[float]) -> np.ndarray:
    t = np.asarray(transmissions, dtype=float)
    if t.ndim != 1 or t.size == 0:
        raise ValueError("transmissions must be a non-empty sequence")
    if np.any((t < 0) | (t > 1)):
        raise ValueError("each transmission must lie in [0, 1]")
    return t


def landauer_conductance(transmissions: Sequence[float]) -> float:
    """Conductance ``e^2/(pi hbar) sum T_n`` in S (spin-degenerate channels)."""
    t = _check_transmissions(transmissions)
    return _K.e ** 2 / (math.pi * _K.hbar) * float(t.sum())


def fano_factor(transmissions: Sequence[float]) -> float:
    """``sum T_n (1 - T_n) / sum T_n``; zero when no channel transmits."""
    t = _check_transmissions(transmissions)
    total = float(t.sum())
    if total == 0:
        return 0.0
    return float((t * (1 - t)).sum()) / total


def poisson_spectral_density(V: float, transmissions: Sequence[float]) -> float:
    """Poisson density ``2 e <I> = (2 e^3/(pi hbar)) |V| sum T_n``."""
    t = _check_transmissions(transmissions)
    return 2 * _K.e ** 3 / (math.pi * _K.hbar) * abs(V) * float(t.sum())


def shot_noise_transmission(V: float, T: float, transmissions: Sequence[float]) -> float:
    """Transmission-resolved shot-noise spectral density.

    ``S_act = (2 e^3/(pi hbar)) V coth(e V / 2 k_B T) sum T_n (1 - T_n)``

    The prefactor matches :func:`poisson_spectral_density` so that
    ``S_act / S_Poiss`` equals the Fano factor in the low-temperature
    limit. At ``T = 0`` the product ``V coth(...)`` is ``|V|``.
    """
    if T < 0:
        raise ValueError("T must be >= 0")
    t = _check_transmissions(transmissions)
    if V == 0:
        # V coth(eV/2kT) -> 2kT/e as V -> 0
        vcoth = 2 * _K.kB * T / _K.e
    elif T == 0:
        vcoth = abs(V)
    else:
        x = _K.e * V / (2 * _K.kB * T)
        vcoth = abs(V) if abs(x) > 350 else V / math.tanh(x)
    return 2 * _K.e ** 3 / (math.pi * _K.hbar) * vcoth * float((t * (1 - t)).sum())


def snr_voltage(ion: IonSpecies, geom: CouplerGeometry, f: float, d: float, T: float,
                R: Optional[float] = None, delta_f: float = 500.0,
                amplitude: Optional[float] = None) -> float:
    """``V_sig / V_JN``.

    ``R`` defaults to the geometry's wire resistance at ``f``. When the
    Johnson-Nyquist voltage is zero (``T = 0`` or ``R = 0``) the ratio is
    ``inf``; :class:`SignalNoiseBudget` records that as a flag.
    """
    if R is None:
        R = geom.resistance(f)
    v_sig = signal_voltage(ion, geom, f, d, amplitude)
    v_jn = johnson_voltage(T, R, delta_f)
    if v_jn == 0:
        return math.inf
    return v_sig / v_jn


@dataclass(frozen=True)
class SignalNoiseBudget:
    """Signal and noise magnitudes at one operating point."""

    v_sig: float
    v_jn: float
    i_sig: float
    i_shot_poisson: float
    snr_voltage: float
    i_shot_perfect_transmission: float = 0.0
    snr_infinite: bool = False
    shot_noise_note: str = SHOT_NOISE_NOTE

    ROW_LABELS = (
        ("v_jn", "Johnson-Nyquist voltage (V)"),
        ("v_sig", "signal voltage (V)"),
        ("i_sig", "signal current (A)"),
        ("i_shot_poisson", "shot noise, Poisson (A)"),
        ("i_shot_perfect_transmission", "shot noise, perfect transmission (A)"),
        ("snr_voltage", "V_sig/V_JN"),
    )

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        d = {"schema_version": SCHEMA_VERSION, **self.to_dict()}
        if math.isinf(d["snr_voltage"]):
            d["snr_voltage"] = "inf"
        return json.dumps(d, indent=2, sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["quantity", "value"])
        for key, label in self.ROW_LABELS:
            w.writerow([label, f"{getattr(self, key):.5e}"])
        w.writerow(["shot noise note", self.shot_noise_note])
        return buf.getvalue()


def signal_noise_budget(ion: IonSpecies, geom: CouplerGeometry, f: float, d: float, T: float,
                        delta_f: float, R: Optional[float] = None,
                        amplitude: Optional[float] = None) -> SignalNoiseBudget:
    """Collect the signal and noise magnitudes into one record."""
    if R is None:
        R = geom.resistance(f)
    v_sig = signal_voltage(ion, geom, f, d, amplitude)
    v_jn = johnson_voltage(T, R, delta_f)
    i_sig = signal_current(ion, geom, f, d, amplitude)
    snr = math.inf if v_jn == 0 else v_sig / v_jn
    return SignalNoiseBudget(
        v_sig=v_sig,
        v_jn=v_jn,
        i_sig=i_sig,
        i_shot_poisson=shot_noise_poisson(i_sig, delta_f),
        snr_voltage=snr,
        snr_infinite=math.isinf(snr),
    )
