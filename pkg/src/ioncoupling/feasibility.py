"""Where in the (frequency, distance) plane is state transfer feasible?

Two criteria must hold together. The decoherence time must exceed the
exchange time by a margin (``t_deco/t_ex >= 10`` by default) and the
signal voltage must exceed the Johnson-Nyquist voltage by a margin
(``V_sig/V_JN >= 10``). The first ratio grows as ``f**(alpha_tilde - 1)``
and the second falls as ``f**(-1/2)``, so at fixed distance the feasible
frequencies form an interval bounded by two contour lines.

The module also holds three engineering checks: the inductance that
would put the coupler on resonance, the quarter-wavelength rule for
when the wire must be treated as a transmission line, and two
literature estimates of how fast the wire itself decoheres.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np
from scipy import optimize

from .capnet import wire_capacitance
from .coupling import optimal_disk_radius
from .heating import VALIDATED_RANGES
from .model import SCHEMA_VERSION, Config, CouplerGeometry, HeatingModel, IonSpecies, default_constants
from .noise import johnson_voltage, signal_voltage_closed_form

__all__ = [
    "GridSpec",
    "FeasibilityPoint",
    "FeasibilityMap",
    "WireDecoherenceEstimates",
    "disk_radius_for",
    "ratio_deco_ex",
    "ratio_deco_ex_simplified",
    "snr_symmetric",
    "contour_frequency_ratio",
    "contour_frequency_snr",
    "feasibility_map",
    "resonance_inductance",
    "transmission_line_needed",
    "thermal_occupation",
    "wire_decoherence_estimates",
]

_K = default_constants()

RADIUS_MODES = ("d/sqrt2", "optimal", "geometry")


def disk_radius_for(d: float, geom: CouplerGeometry, mode: str = "optimal") -> float:
    """Disk radius used at distance ``d``.

    ``"optimal"`` maximises the coupling for the geometry's wire,
    ``"d/sqrt2"`` is the small-wire optimum and ``"geometry"`` takes the
    configured disk-1 radius unchanged.
    """
    if mode == "optimal":
        C_b = wire_capacitance(geom.wire_length, geom.wire_radius)
        return optimal_disk_radius(d, C_b)
    if mode == "d/sqrt2":
        return d / math.sqrt(2)
    if mode == "geometry":
        return geom.disk1_radius
    raise ValueError(f"radius mode must be one of {RADIUS_MODES}")


def _wire_term(r, C_b):
    # (r / (2r + C_b/(8 eps0))) * r^2, without the d dependence
    return r / (2 * r + C_b / (8 * _K.epsilon0)) * r ** 2


def ratio_deco_ex(model: HeatingModel, geom: CouplerGeometry, f, d, T,
                  r=None, radius_mode: str = "optimal"):
    """``t_deco / t_ex`` for a symmetric coupler.

    ``h f^(alpha_tilde-1) d^(delta+1) / (2 A pi^3 eps0 [1 + (T/T_p)^beta])
    [r/(2r + C_b/(8 eps0))] [r^2/(d^2 + r^2)^3]``

    It depends on neither the ion's mass nor its charge because both
    ``t_deco`` and ``t_ex`` scale as ``m/q^2``.

    Parameters
    ----------
    f, d, T : float or array_like
        Broadcast together.
    r : float or array_like, optional
        Disk radius. When omitted it is chosen by ``radius_mode`` at each
        ``d`` (see :func:`disk_radius_for`).
    """
    f = np.asarray(f, dtype=float)
    d = np.asarray(d, dtype=float)
    T = np.asarray(T, dtype=float)
    if r is None:
        r = np.vectorize(lambda dd: disk_radius_for(float(dd), geom, radius_mode))(d)
    r = np.asarray(r, dtype=float)
    C_b = wire_capacitance(geom.wire_length, geom.wire_radius)
    bracket = model.temperature_factor(T)
    out = (_K.h * f ** (model.alpha_tilde - 1) * d ** (model.delta + 1)
           / (2 * model.A * np.pi ** 3 * _K.epsilon0 * bracket)
           * _wire_term(r, C_b) / (d ** 2 + r ** 2) ** 3)
    return out[()] if out.ndim == 0 else out


def ratio_deco_ex_simplified(model: HeatingModel, f, d, T):
    """Small-wire limit with ``r = d/sqrt(2)``:
    ``h f^(alpha_tilde-1) d^(delta-3) / (27 A pi^3 eps0 [1 + (T/T_p)^beta])``."""
    f = np.asarray(f, dtype=float)
    d = np.asarray(d, dtype=float)
    out = (_K.h * f ** (model.alpha_tilde - 1) * d ** (model.delta - 3)
           / (27 * model.A * np.pi ** 3 * _K.epsilon0 * model.temperature_factor(np.asarray(T, float))))
    return out[()] if out.ndim == 0 else out


def snr_symmetric(ion: IonSpecies, geom: CouplerGeometry, f, d, T: float, R: float,
                  delta_f: float, r=None, radius_mode: str = "optimal", amplitude=None):
    """``V_sig/V_JN`` for a symmetric coupler (array friendly).

    ``inf`` where the Johnson-Nyquist voltage vanishes.
    """
    d = np.asarray(d, dtype=float)
    if r is None:
        r = np.vectorize(lambda dd: disk_radius_for(float(dd), geom, radius_mode))(d)
    C_b = wire_capacitance(geom.wire_length, geom.wire_radius)
    v_sig = signal_voltage_closed_form(ion.charge, ion.mass, f, d, r, C_b, amplitude)
    v_jn = johnson_voltage(T, R, delta_f)
    with np.errstate(divide="ignore"):
        out = np.asarray(v_sig, dtype=float) / v_jn if v_jn > 0 else np.full(np.shape(v_sig), np.inf)
    return out[()] if np.ndim(out) == 0 else out


def contour_frequency_ratio(d: float, model: HeatingModel, geom: CouplerGeometry, T: float,
                            threshold: float = 10.0, r: Optional[float] = None,
                            radius_mode: str = "optimal") -> float:
    """Frequency at which ``t_deco/t_ex`` equals ``threshold`` at distance ``d``.

    The ratio is ``K f^(alpha_tilde - 1)``, so the contour is
    ``(threshold / K)^(1/(alpha_tilde - 1))``.
    """
    if not threshold > 0:
        raise ValueError("threshold must be > 0")
    K = float(ratio_deco_ex(model, geom, 1.0, d, T, r=r, radius_mode=radius_mode))
    return (threshold / K) ** (1 / (model.alpha_tilde - 1))


def contour_frequency_snr(d: float, ion: IonSpecies, geom: CouplerGeometry, T: float,
                          R: Optional[float], delta_f: float, threshold: float = 10.0,
                          r: Optional[float] = None, radius_mode: str = "optimal",
                          f_bracket: Tuple[float, float] = (1.0, 1e12)) -> float:
    """Frequency at which ``V_sig/V_JN`` equals ``threshold`` at distance ``d``.

    With a fixed resistance the ratio is ``K f^(-1/2)`` and the contour is
    ``(K/threshold)^2``. With ``R=None`` the wire resistance depends on
    frequency through the skin effect and the contour is found by a
    bracketed root search.

    Returns
    -------
    float
        Hz; ``inf`` when the Johnson-Nyquist voltage is zero.
    """
    if not threshold > 0:
        raise ValueError("threshold must be > 0")
    if r is None:
        r = disk_radius_for(d, geom, radius_mode)
    if R is not None:
        K = float(snr_symmetric(ion, geom, 1.0, d, T, R, delta_f, r=r))
        return math.inf if math.isinf(K) else (K / threshold) ** 2

    def g(logf):
        f = math.exp(logf)
        return math.log(float(snr_symmetric(ion, geom, f, d, T, geom.resistance(f), delta_f, r=r))
                        / threshold)

    if T == 0:
        return math.inf
    lo, hi = map(math.log, f_bracket)
    if g(lo) * g(hi) > 0:
        raise ValueError("SNR contour not bracketed by f_bracket")
    root = optimize.brentq(g, lo, hi, xtol=1e-14, rtol=4e-15, maxiter=500)
    return math.exp(root)


# ---------------------------------------------------------------------------
# Map
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GridSpec:
    """Log-spaced grid over frequency (Hz) and distance (m)."""

    f_min: float = 0.5e6
    f_max: float = 20e6
    d_min: float = 30e-6
    d_max: float = 500e-6
    nf: int = 200
    nd: int = 200

    def __post_init__(self) -> None:
        if not (0 < self.f_min < self.f_max and 0 < self.d_min < self.d_max):
            raise ValueError("grid needs 0 < min < max on both axes")
        if not (self.nf >= 1 and self.nd >= 1):
            raise ValueError("grid must be non-empty")

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        """Parse ``f_min,f_max,d_min,d_max,nf,nd``."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 6:
            raise ValueError("grid must be f_min,f_max,d_min,d_max,nf,nd")
        try:
            return cls(float(parts[0]), float(parts[1]), float(parts[2]), float(parts[3]),
                       int(parts[4]), int(parts[5]))
        except ValueError as exc:
            raise ValueError(f"invalid grid: {exc}") from None

    def frequencies(self) -> np.ndarray:
        return np.geomspace(self.f_min, self.f_max, self.nf)

    def distances(self) -> np.ndarray:
        return np.geomspace(self.d_min, self.d_max, self.nd)


@dataclass(frozen=True)
class FeasibilityPoint:
    f: float
    d: float
    ratio_deco_ex: float
    snr: float
    feasible: bool
    flags: Tuple[str, ...] = ()


@dataclass
class FeasibilityMap:
    """Both criteria evaluated on a grid, plus the two contour lines.

    Arrays are indexed ``[i_d, i_f]``. Contours are ``(d, f)`` pairs
    ordered by distance.
    """

    grid: GridSpec
    f: np.ndarray
    d: np.ndarray
    ratio: np.ndarray
    snr: np.ndarray
    feasible: np.ndarray
    extrapolated: np.ndarray
    contour_ratio: np.ndarray
    contour_snr: np.ndarray
    thresholds: Tuple[float, float]
    metadata: Dict[str, object] = field(default_factory=dict)

    @property
    def any_feasible(self) -> bool:
        return bool(self.feasible.any())

    def point(self, i_d: int, i_f: int) -> FeasibilityPoint:
        return FeasibilityPoint(
            f=float(self.f[i_f]), d=float(self.d[i_d]),
            ratio_deco_ex=float(self.ratio[i_d, i_f]), snr=float(self.snr[i_d, i_f]),
            feasible=bool(self.feasible[i_d, i_f]), flags=self._flags(i_d, i_f),
        )

    def _flags(self, i_d: int, i_f: int) -> Tuple[str, ...]:
        out = []
        lo, hi = VALIDATED_RANGES["frequency"]
        if not lo <= self.f[i_f] <= hi:
            out.append("f_extrapolated")
        lo, hi = VALIDATED_RANGES["distance"]
        if not lo <= self.d[i_d] <= hi:
            out.append("d_extrapolated")
        if np.isinf(self.snr[i_d, i_f]):
            out.append("snr_infinite")
        return tuple(out)

    def points(self):
        for i_d in range(self.d.size):
            for i_f in range(self.f.size):
                yield self.point(i_d, i_f)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["f_Hz", "d_m", "ratio_deco_ex", "snr", "feasible", "flags"])
        for p in self.points():
            w.writerow([f"{p.f:.5e}", f"{p.d:.5e}", f"{p.ratio_deco_ex:.5e}", f"{p.snr:.5e}",
                        int(p.feasible), ";".join(p.flags)])
        return buf.getvalue()

    @staticmethod
    def contour_csv(contour: np.ndarray) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["d_m", "f_Hz"])
        for d, f in contour:
            w.writerow([f"{d:.5e}", f"{f:.5e}"])
        return buf.getvalue()

    def to_dict(self) -> dict:
        def num(v):
            return float(f"{v:.5e}") if np.isfinite(v) else str(float(v))

        def enc(a):
            return [[num(v) for v in row] for row in a]

        return {
            "schema_version": SCHEMA_VERSION,
            "grid": {"f_min": self.grid.f_min, "f_max": self.grid.f_max,
                     "d_min": self.grid.d_min, "d_max": self.grid.d_max,
                     "nf": self.grid.nf, "nd": self.grid.nd, "sampling": "log"},
            "thresholds": {"ratio_deco_ex": self.thresholds[0], "snr": self.thresholds[1]},
            "f_Hz": [float(f"{v:.5e}") for v in self.f],
            "d_m": [float(f"{v:.5e}") for v in self.d],
            "ratio_deco_ex": enc(self.ratio),
            "snr": enc(self.snr),
            "feasible": self.feasible.astype(int).tolist(),
            "contour_ratio": enc(self.contour_ratio),
            "contour_snr": enc(self.contour_snr),
            "metadata": self.metadata,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def feasibility_map(cfg: Config, grid: GridSpec | None = None, R: Optional[float] = None,
                    radius_mode: str = "d/sqrt2", amplitude: Optional[float] = None) -> FeasibilityMap:
    """Evaluate both criteria over a log grid and extract the contours.

    Parameters
    ----------
    cfg : Config
        Ion, trap temperatures and bandwidth, wire, heating model and
        thresholds. The heating ratio uses the electrode temperature and
        the noise uses the coupler temperature.
    grid : GridSpec, optional
        Defaults to 200 x 200 over [0.5, 20] MHz x [30, 500] µm.
    R : float, optional
        Wire resistance. Defaults to the geometry's explicit resistance,
        or to the skin-effect resistance at each frequency.
    radius_mode : str
        Disk radius rule at each distance (see :func:`disk_radius_for`).
    """
    grid = grid or GridSpec()
    ion, trap, geom, model, crit = cfg
    fs, ds = grid.frequencies(), grid.distances()
    r = np.asarray([disk_radius_for(float(d), geom, radius_mode) for d in ds])
    if R is None:
        R = geom.explicit_resistance
    F, D = np.meshgrid(fs, ds)
    Rg = r[:, None]
    ratio = np.asarray(ratio_deco_ex(model, geom, F, D, trap.electrode_temperature, r=Rg))
    T_c = trap.coupler_temperature
    if R is not None:
        snr = np.asarray(snr_symmetric(ion, geom, F, D, T_c, R, trap.motional_bandwidth, r=Rg,
                                       amplitude=amplitude))
    else:
        snr = np.empty_like(F)
        for j, f in enumerate(fs):
            snr[:, j] = snr_symmetric(ion, geom, f, ds, T_c, geom.resistance(f),
                                      trap.motional_bandwidth, r=r, amplitude=amplitude)
    feasible = (ratio >= crit.ratio_threshold) & (snr >= crit.snr_threshold)
    f_lo, f_hi = VALIDATED_RANGES["frequency"]
    d_lo, d_hi = VALIDATED_RANGES["distance"]
    extrap = ~((F >= f_lo) & (F <= f_hi) & (D >= d_lo) & (D <= d_hi))
    c_ratio = np.asarray([[d, contour_frequency_ratio(d, model, geom, trap.electrode_temperature,
                                                      crit.ratio_threshold, r=rr)]
                          for d, rr in zip(ds, r)])
    if amplitude is None:
        c_snr = np.asarray([[d, contour_frequency_snr(d, ion, geom, T_c, R, trap.motional_bandwidth,
                                                      crit.snr_threshold, r=rr)]
                            for d, rr in zip(ds, r)])
    else:
        c_snr = np.empty((0, 2))
    return FeasibilityMap(
        grid=grid, f=fs, d=ds, ratio=ratio, snr=snr, feasible=feasible, extrapolated=extrap,
        contour_ratio=c_ratio, contour_snr=c_snr,
        thresholds=(crit.ratio_threshold, crit.snr_threshold),
        metadata={"radius_mode": radius_mode,
                  "resistance": "skin-effect" if R is None else R,
                  "ratio_note": "t_deco/t_ex without any display scaling"},
    )


# ---------------------------------------------------------------------------
# Engineering checks
# ---------------------------------------------------------------------------


def resonance_inductance(f: float, C_total: float) -> float:
    """Inductance ``1/(omega^2 C_total)`` that resonates the coupler at ``f`` (H)."""
    if not (f > 0 and C_total > 0):
        raise ValueError("f and C_total must be > 0")
    return 1 / ((2 * math.pi * f) ** 2 * C_total)


def transmission_line_needed(l_w: float, f: float, velocity_factor: float = 0.5) -> bool:
    """True when the wire is longer than a quarter of the guided wavelength."""
    if not (l_w > 0 and f > 0 and 0 < velocity_factor <= 1):
        raise ValueError("need l_w, f > 0 and 0 < velocity_factor <= 1")
    wavelength = velocity_factor * _K.c / f
    return l_w > wavelength / 4


def thermal_occupation(f: float, T: float) -> float:
    """Bose-Einstein occupation ``1/(exp(h f / k_B T) - 1)``."""
    if T == 0:
        return 0.0
    return 1 / math.expm1(_K.h * f / (_K.kB * T))


@dataclass(frozen=True)
class WireDecoherenceEstimates:
    """Two literature estimates of the wire's own decoherence time (s).

    These are order-of-magnitude guides and do not enter the
    feasibility criteria.
    """

    t_power_model: float
    t_qfactor_model: float
    label: str = "literature estimates, not acceptance-bearing"


def wire_decoherence_estimates(T: float, R: float, delta_f: float, f: float, Q_factor: float,
                               n_bar: Optional[float] = None) -> WireDecoherenceEstimates:
    """Decoherence time of the wire from noise power and from its quality factor.

    ``t_power = h f / P_JN`` with ``P_JN = V_JN^2 / R = 4 k_B T delta_f``.

    ``t_qfactor = Q / (omega n_bar)``: with ``n_bar=None`` the
    high-temperature occupation ``k_B T / (hbar omega)`` is used, giving
    ``hbar Q / (k_B T)``; ``n_bar = 1`` gives ``Q / omega``.
    """
    if not (T > 0 and R > 0 and delta_f > 0 and f > 0 and Q_factor > 0):
        raise ValueError("all inputs must be > 0")
    P = johnson_voltage(T, R, delta_f) ** 2 / R
    t_power = _K.h * f / P
    omega = 2 * math.pi * f
    if n_bar is None:
        t_q = _K.hbar * Q_factor / (_K.kB * T)
    else:
        if not n_bar > 0:
            raise ValueError("n_bar must be > 0")
        t_q = Q_factor / (omega * n_bar)
    return WireDecoherenceEstimates(t_power, t_q)
