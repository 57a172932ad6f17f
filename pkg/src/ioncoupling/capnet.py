"""Capacitances, resistances and the charge split of the coupling network.

The coupler is treated as three self-capacitors in electrical contact:
pickup disk 1 (``C_a``), the wire (``C_b``) and pickup disk 2 (``C_c``).
Charge pushed onto the network redistributes until all three sit at the
same potential, which is what :func:`charge_split` computes.

The module also carries the skin-effect wire resistance, the
capacitor-discharge bound on how resistive a pickup disk may be, the
two-fluid superconducting sheet resistance, and the "equivalent circuit"
inductance and capacitance of a trapped ion. The last pair is kept for
comparison with the literature only: that construction does not give
correct coupling constants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

from .model import ConfigError, IonSpecies, default_constants

__all__ = [
    "CapacitanceTriple",
    "ChargeSplit",
    "disk_self_capacitance",
    "disk_self_capacitance_corrected",
    "sphere_self_capacitance",
    "equivalent_sphere_radius",
    "wire_capacitance",
    "skin_depth",
    "wire_resistance",
    "max_drain_resistance",
    "charge_split",
    "ion_equivalent_elements",
    "bcs_gap_over_kB",
    "two_fluid_sheet_resistance",
    "bcs_scaled_sheet_resistance",
    "bcs_sheet_resistance",
]

_K = default_constants()


@dataclass(frozen=True)
class CapacitanceTriple:
    """Self-capacitances (F) of disk 1, the wire and disk 2.

    ``wire`` may be zero to represent the ideal two-disk limit.
    """

    disk1: float
    wire: float
    disk2: float

    def __post_init__(self) -> None:
        if not (self.disk1 > 0 and self.disk2 > 0):
            raise ConfigError("disk capacitances must be > 0")
        if not self.wire >= 0:
            raise ConfigError("wire capacitance must be >= 0")

    @property
    def total(self) -> float:
        return self.disk1 + self.wire + self.disk2

    @property
    def zeta(self) -> float:
        """Fraction of the transferred charge ending on the far disk."""
        return self.disk2 / self.total

    @property
    def eta(self) -> float:
        """Fraction of the transferred charge staying on the near disk."""
        return self.disk1 / self.total


@dataclass(frozen=True)
class ChargeSplit:
    """Charge on each element after redistribution (C)."""

    on_disk1: float
    on_wire: float
    on_disk2: float
    zeta: float
    eta: float


def disk_self_capacitance(r: float) -> float:
    """Thin conducting disk: ``C_d = 8 eps0 r`` (F)."""
    if not r > 0:
        raise ValueError("r must be > 0")
    return 8 * _K.epsilon0 * r


def disk_self_capacitance_corrected(r: float, thickness: float) -> float:
    """Disk of finite thickness: ``4 pi eps0 (2r/pi) (1 + 0.26 sqrt((t/2)/r))``.

    Reduces to ``8 eps0 r`` when the thickness goes to zero.
    """
    if not r > 0 or thickness < 0:
        raise ValueError("need r > 0 and thickness >= 0")
    return 4 * math.pi * _K.epsilon0 * (2 * r / math.pi) * (1 + 0.26 * math.sqrt(thickness / 2 / r))


def sphere_self_capacitance(S: float) -> float:
    """Isolated sphere of radius ``S``: ``4 pi eps0 S`` (F)."""
    if not S > 0:
        raise ValueError("S must be > 0")
    return 4 * math.pi * _K.epsilon0 * S


def equivalent_sphere_radius(r: float, thickness: float) -> float:
    """Radius of the sphere with the same volume as a disk (r, thickness)."""
    if not (r > 0 and thickness > 0):
        raise ValueError("r and thickness must be > 0")
    return (3 / (4 * math.pi) * thickness * math.pi * r ** 2) ** (1 / 3)


def wire_capacitance(l_w: float, a: float) -> float:
    """Thin straight wire: ``C_b = 2 pi eps0 l / ln(l/a)`` (F).

    Raises
    ------
    ValueError
        If ``l_w/a <= 10``, where the thin-wire formula is not trusted.
    """
    if not (l_w > 0 and a > 0):
        raise ValueError("l_w and a must be > 0")
    if l_w / a <= 10:
        raise ValueError("wire_capacitance needs l_w/a > 10 (thin-wire validity)")
    return 2 * math.pi * _K.epsilon0 * l_w / math.log(l_w / a)


def skin_depth(f: float, sigma: float, mu: float = _K.mu0) -> float:
    """Skin depth ``1/sqrt(pi f mu sigma)`` in m."""
    if not (f > 0 and sigma > 0):
        raise ValueError("f and sigma must be > 0")
    return 1 / math.sqrt(math.pi * f * mu * sigma)


def wire_resistance(l_w: float, a: float, sigma: float, f: float) -> float:
    """Resistance (Ω) of a round wire, with the skin effect.

    When the skin depth is at least the radius the current fills the
    cross section and ``R = l/(sigma pi a^2)``; otherwise the current runs
    in an annulus of depth ``delta`` and ``R = l/(sigma (2 pi a delta - pi delta^2))``.
    The two forms coincide at ``delta = a``.
    """
    if not (l_w > 0 and a > 0 and sigma > 0 and f > 0):
        raise ValueError("all inputs must be > 0")
    delta = skin_depth(f, sigma)
    if delta >= a:
        return l_w / (sigma * math.pi * a ** 2)
    return l_w / (sigma * (2 * math.pi * a * delta - math.pi * delta ** 2))


def max_drain_resistance(C: float, f: float, voltage_ratio: float = 10.0) -> float:
    """Largest resistance that still drains ``C`` by ``voltage_ratio`` in half a period.

    From ``V(t) = V0 exp(-t/RC)`` with ``t = 1/(2f)``:
    ``R = t / (C ln(V0/Vf))``.
    """
    if not voltage_ratio > 1:
        raise ValueError("voltage_ratio must be > 1")
    if not (f > 0 and C > 0):
        raise ValueError("f and C must be > 0")
    t = 1 / (2 * f)
    return t / (C * math.log(voltage_ratio))


def charge_split(caps: CapacitanceTriple, Q_transf: float) -> ChargeSplit:
    """Distribute ``Q_transf`` over three connected self-capacitors.

    At equilibrium every element has the same potential, so each carries
    charge in proportion to its capacitance:
    ``Q_c = zeta Q_transf`` with ``zeta = C_c/C_tot`` and
    ``Q_a = eta Q_transf`` with ``eta = C_a/C_tot``. A zero wire
    capacitance is allowed and gives ``zeta = C_c/(C_a + C_c)``.
    """
    if not math.isfinite(Q_transf):
        raise ValueError("Q_transf must be finite")
    total = caps.total
    zeta = caps.disk2 / total
    eta = caps.disk1 / total
    return ChargeSplit(
        on_disk1=eta * Q_transf,
        on_wire=caps.wire / total * Q_transf,
        on_disk2=zeta * Q_transf,
        zeta=zeta,
        eta=eta,
    )


def ion_equivalent_elements(ion: IonSpecies, f: float, d_eq: float, r: float,
                            eta: float) -> Tuple[float, float]:
    """Equivalent-circuit inductance and capacitance of a trapped ion.

    ``L_hyb = 2 d m (r^2 + d^2)^(3/2) / (eta q^2 r^2)`` and
    ``C_hyb = eta q^2 r^2 / (2 d m omega^2 (r^2 + d^2)^(3/2))``.

    These follow the lumped-element construction used in parts of the
    literature. That construction is known to mispredict coupling
    constants; the values are provided for comparison only. For
    ``eta = 0`` the inductance is infinite and the capacitance zero.

    Returns
    -------
    L_hyb : float
        Henry.
    C_hyb : float
        Farad.
    """
    if not (f > 0 and d_eq > 0 and r > 0 and eta >= 0):
        raise ValueError("need f, d_eq, r > 0 and eta >= 0")
    q2 = ion.charge ** 2
    omega = 2 * math.pi * f
    geom = (r ** 2 + d_eq ** 2) ** 1.5
    C_hyb = eta * q2 * r ** 2 / (2 * d_eq * ion.mass * omega ** 2 * geom)
    L_hyb = math.inf if eta == 0 else 2 * d_eq * ion.mass * geom / (eta * q2 * r ** 2)
    return L_hyb, C_hyb


def bcs_gap_over_kB(Tc: float) -> float:
    """``Delta/k_B`` from the weak-coupling estimate ``2 Delta = 3.5 k_B T_c``."""
    if not Tc > 0:
        raise ValueError("Tc must be > 0")
    return 1.75 * Tc


def two_fluid_sheet_resistance(f: float, lambda_L: float, sigma1: float) -> float:
    """Two-fluid surface resistance ``(1/2) (2 pi f)^2 mu0^2 lambda_L^3 sigma1`` (Ω/sq)."""
    if not (f > 0 and lambda_L > 0 and sigma1 > 0):
        raise ValueError("inputs must be > 0")
    return 0.5 * (2 * math.pi * f) ** 2 * _K.mu0 ** 2 * lambda_L ** 3 * sigma1


def bcs_scaled_sheet_resistance(R_ref: float, f_ref: float, T_ref: float,
                                f: float, T: float, Tc: float) -> float:
    """Scale a measured BCS sheet resistance with ``f^2 exp(-Delta/kT)/T``.

    ``Delta`` comes from :func:`bcs_gap_over_kB`. Only the proportionality
    is physical, so a measured anchor ``(R_ref, f_ref, T_ref)`` is required.
    """
    for name, val in (("T", T), ("T_ref", T_ref)):
        if not 0 < val < Tc:
            raise ValueError(f"{name} must satisfy 0 < {name} < Tc (superconducting)")
    gap = bcs_gap_over_kB(Tc)

    def shape(ff, tt):
        return ff ** 2 * math.exp(-gap / tt) / tt

    return R_ref * shape(f, T) / shape(f_ref, T_ref)


def bcs_sheet_resistance(f: float, T: float, Tc: float, lambda_L: float, sigma1: float,
                         reference: Tuple[float, float, float] | None = None) -> Tuple[float, float | None]:
    """Two-fluid sheet resistance plus, optionally, the BCS-scaled value.

    Parameters
    ----------
    f, T, Tc : float
        Frequency (Hz), temperature and critical temperature (K).
    lambda_L, sigma1 : float
        London penetration depth (m) and normal-fluid conductivity (S/m).
    reference : (R_ref, f_ref, T_ref), optional
        Measured sheet resistance anchor for the BCS scaling.

    Returns
    -------
    two_fluid : float
        Ω per square.
    bcs : float or None
        The reference scaled to ``(f, T)``, or ``None`` without a reference.
    """
    if not 0 < T < Tc:
        raise ValueError("T must satisfy 0 < T < Tc (not superconducting otherwise)")
    two = two_fluid_sheet_resistance(f, lambda_L, sigma1)
    bcs = None
    if reference is not None:
        R_ref, f_ref, T_ref = reference
        bcs = bcs_scaled_sheet_resistance(R_ref, f_ref, T_ref, f, T, Tc)
    return two, bcs
