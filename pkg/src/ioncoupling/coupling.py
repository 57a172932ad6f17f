"""Coupling constants between two ions linked by a floating conductor.

The coupling constant ``gamma`` (N/m) is the coefficient of the
``gamma * dx1 * dx2`` term in the two-ion Hamiltonian. For the
pickup-disk coupler it follows from the ring-of-charge field of the
charge that ion 1 pushes onto disk 2 through the wire, and vice versa.

Besides the pickup-disk result the module implements the coupling
constants of six comparison systems from the literature, the exchange
time ``pi omega m / gamma``, the phase picked up during the exchange, and
the direct Coulomb coupling that sets the shortest useful wire.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence, Tuple

import numpy as np
from scipy import optimize

from .capnet import CapacitanceTriple, wire_capacitance
from .model import ConfigError, IonSpecies, default_constants

__all__ = [
    "CouplingResult",
    "SuspendedWireGeometry",
    "TransmissionLineGeometry",
    "RectElectrodeGeometry",
    "gamma_pickup_disk",
    "gamma_symmetric",
    "optimal_disk_radius",
    "exchange_time",
    "rwa_parameter",
    "coupling_result",
    "exchange_phase",
    "full_exchange_gamma",
    "gamma_suspended_wire",
    "gamma_transmission_line",
    "gamma_rect_electrodes",
    "rect_side_matching_disk",
    "ion_capacitance_parallel_plate",
    "gamma_mass_spring",
    "gamma_mass_spring_parallel_plate",
    "gamma_mass_spring_pickup_disk",
    "gamma_mass_spring_suspended_wire",
    "gamma_coulomb",
    "l_coul_bound",
    "coulomb_dominance_cutoff",
    "min_wire_for_dominance",
    "asymptotic_exponent",
]

_K = default_constants()


@dataclass(frozen=True)
class CouplingResult:
    """Coupling constant with the derived exchange time and RWA parameter."""

    gamma: float
    exchange_time: float
    rwa_parameter: float
    system_label: str = "pickup-disk"

    @property
    def rwa_valid(self) -> bool:
        return self.rwa_parameter < 0.1


@dataclass(frozen=True)
class SuspendedWireGeometry:
    """Wire at height ``wire_height`` above a ground plane, ions below it.

    Attributes
    ----------
    wire_height : float
        H, m.
    ion_heights : (float, float)
        Heights of the two ions above the plane, m.
    wire_radius : float
        a, m.
    wire_length : float
        L, m.
    """

    wire_height: float
    ion_heights: Tuple[float, float]
    wire_radius: float
    wire_length: float

    def __post_init__(self) -> None:
        h1, h2 = self.ion_heights
        if not (h1 > 0 and h2 > 0 and self.wire_height > max(h1, h2)):
            raise ConfigError("need wire_height > max(ion_heights) > 0")
        if not 0 < self.wire_radius < self.wire_height:
            raise ConfigError("need 0 < wire_radius < wire_height")
        if not self.wire_length > 0:
            raise ConfigError("wire_length must be > 0")


@dataclass(frozen=True)
class TransmissionLineGeometry:
    """Disk electrodes joined by a coaxial line.

    The total capacitance is ``eps0 4 pi r h / s + pi eps0 L / ln(b/a)``
    with disk radius ``r``, electrode height ``h``, gap ``s``, line length
    ``L`` and outer/inner conductor radii ``b``/``a``.
    """

    disk_radius: float
    electrode_height: float
    gap: float
    line_length: float
    outer_radius: float
    inner_radius: float

    def __post_init__(self) -> None:
        for name in ("disk_radius", "electrode_height", "gap", "line_length",
                     "outer_radius", "inner_radius"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be > 0")
        if not self.outer_radius > self.inner_radius:
            raise ConfigError("outer_radius must exceed inner_radius")

    @property
    def total_capacitance(self) -> float:
        e0 = _K.epsilon0
        return (e0 * 4 * math.pi * self.disk_radius * self.electrode_height / self.gap
                + math.pi * e0 * self.line_length / math.log(self.outer_radius / self.inner_radius))


@dataclass(frozen=True)
class RectElectrodeGeometry:
    """Square electrodes of side ``side`` (a') joined by a wire.

    ``total_capacitance`` is the network capacitance ``2 C_o + C_w`` in F.
    """

    side: float
    ion_distance: float
    total_capacitance: float

    def __post_init__(self) -> None:
        if not self.side >= 0:
            raise ConfigError("side must be >= 0")
        if not (self.ion_distance > 0 and self.total_capacitance > 0):
            raise ConfigError("ion_distance and total_capacitance must be > 0")


# ---------------------------------------------------------------------------
# Pickup-disk coupler
# ---------------------------------------------------------------------------


def gamma_pickup_disk(q: float, d1: float, d2: float, r1: float, r2: float,
                      caps: CapacitanceTriple) -> float:
    """Coupling constant of two ions over two wire-connected pickup disks.

    ``gamma = zeta/(8 pi eps0) [ d1/(d1^2+r1^2)^(3/2) q^2 r2^2/(r2^2+d2^2)^(3/2)
    + d2/(d2^2+r2^2)^(3/2) q^2 r1^2/(r1^2+d1^2)^(3/2) ]``

    with ``zeta = C_c / (C_a + C_b + C_c)``. The two terms share the
    ``1/(8 pi eps0)`` prefactor, which halves the double-counted energy
    and reduces to :func:`gamma_symmetric` for identical sides.
    """
    for name, v in (("d1", d1), ("d2", d2), ("r1", r1), ("r2", r2)):
        if not v > 0:
            raise ValueError(f"{name} must be > 0")
    zeta = caps.zeta
    q2 = q * q
    t1 = d1 / (d1 ** 2 + r1 ** 2) ** 1.5 * q2 * r2 ** 2 / (r2 ** 2 + d2 ** 2) ** 1.5
    t2 = d2 / (d2 ** 2 + r2 ** 2) ** 1.5 * q2 * r1 ** 2 / (r1 ** 2 + d1 ** 2) ** 1.5
    return zeta / (8 * math.pi * _K.epsilon0) * (t1 + t2)


def gamma_symmetric(q: float, d, r, C_b: float):
    """Symmetric pickup-disk coupling with ``C_disk = 8 eps0 r``.

    ``gamma = q^2/(4 pi eps0) * 1/(2 + C_b/(8 eps0 r)) * d r^2/(d^2 + r^2)^3``

    ``d`` and ``r`` may be arrays (broadcast).
    """
    d = np.asarray(d, dtype=float)
    r = np.asarray(r, dtype=float)
    e0 = _K.epsilon0
    g = q * q / (4 * np.pi * e0) / (2 + C_b / (8 * e0 * r)) * d * r ** 2 / (d ** 2 + r ** 2) ** 3
    return g[()] if g.ndim == 0 else g


def optimal_disk_radius(d: float, C_b: float, xtol: float = 1e-12) -> float:
    """Disk radius maximising :func:`gamma_symmetric` at fixed ``d`` and ``C_b``.

    A bounded Brent search on ``[1e-3 d, 10 d]``. The result lies between
    ``d/sqrt(2)`` (wire capacitance negligible) and ``d`` (wire
    capacitance dominant); ``C_b = 0`` returns ``d/sqrt(2)`` directly.
    """
    if not d > 0:
        raise ValueError("d must be > 0")
    if not C_b >= 0:
        raise ValueError("C_b must be >= 0")
    if C_b == 0:
        return d / math.sqrt(2)
    # gamma is scaled to O(1) so the optimiser's relative tolerance works
    scale = gamma_symmetric(1.0, d, d / math.sqrt(2), C_b)
    res = optimize.minimize_scalar(
        lambda r: -gamma_symmetric(1.0, d, r, C_b) / scale,
        bounds=(1e-3 * d, 10 * d),
        method="bounded",
        options={"xatol": xtol, "maxiter": 500},
    )
    return float(res.x)


# ---------------------------------------------------------------------------
# Exchange dynamics
# ---------------------------------------------------------------------------


def exchange_time(gamma: float, ion: IonSpecies, f: float) -> float:
    """State-exchange time ``t_ex = pi omega m / gamma`` (s)."""
    if not gamma > 0:
        raise ValueError("gamma must be > 0")
    return math.pi * 2 * math.pi * f * ion.mass / gamma


def rwa_parameter(gamma: float, ion: IonSpecies, f: float, convention: str = "omega") -> float:
    """Rotating-wave parameter ``gamma / (m omega^2)``; valid below 0.1.

    ``convention="frequency"`` divides by ``m f^2`` instead, the arithmetic
    used in the reference text's worked example. It is 4 pi^2 larger and
    kept only to reproduce that number.
    """
    if convention == "omega":
        return gamma / (ion.mass * (2 * math.pi * f) ** 2)
    if convention == "frequency":
        return gamma / (ion.mass * f ** 2)
    raise ValueError("convention must be 'omega' or 'frequency'")


def coupling_result(gamma: float, ion: IonSpecies, f: float, label: str = "pickup-disk") -> CouplingResult:
    return CouplingResult(gamma, exchange_time(gamma, ion, f), rwa_parameter(gamma, ion, f), label)


def exchange_phase(n: int, ion: IonSpecies, f: float, gamma: float) -> float:
    """Phase ``Theta = n pi (m omega^2 / gamma + 1/2)`` acquired by ``|n>``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return 0.0
    if not gamma > 0:
        raise ValueError("gamma must be > 0")
    return n * math.pi * (ion.mass * (2 * math.pi * f) ** 2 / gamma + 0.5)


def full_exchange_gamma(n: int, j: int, ion: IonSpecies, f: float) -> float:
    """Coupling for which ``Theta`` is a multiple of 2 pi: ``2 n m omega^2/(4j - n)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if 4 * j == n:
        raise ValueError("4j == n has no solution")
    return 2 * n * ion.mass * (2 * math.pi * f) ** 2 / (4 * j - n)


# ---------------------------------------------------------------------------
# Comparison systems
# ---------------------------------------------------------------------------


def gamma_suspended_wire(g: SuspendedWireGeometry, e: float = _K.e) -> float:
    """Wire suspended above a ground plane.

    ``gamma = 2 e^2 H^2/(pi eps0 L) / ln((2H - a)/a) / ((H^2 - h1^2)(H^2 - h2^2))``
    """
    H, a, L = g.wire_height, g.wire_radius, g.wire_length
    h1, h2 = g.ion_heights
    if a >= 2 * H:
        raise ValueError("wire_radius must be < 2 * wire_height")
    return (2 * e * e * H ** 2 / (math.pi * _K.epsilon0 * L) / math.log((2 * H - a) / a)
            / ((H ** 2 - h1 ** 2) * (H ** 2 - h2 ** 2)))


def gamma_transmission_line(r, d, C_total: float, e: float = _K.e):
    """Disks joined by a transmission line: ``e^2 r^4 / (d^2 + r^2)^3 / C_total``."""
    if not C_total > 0:
        raise ValueError("C_total must be > 0")
    r = np.asarray(r, dtype=float)
    d = np.asarray(d, dtype=float)
    g = e * e * r ** 4 / (d ** 2 + r ** 2) ** 3 / C_total
    return g[()] if g.ndim == 0 else g


def gamma_rect_electrodes(g: RectElectrodeGeometry, q: float = _K.e) -> float:
    """Square electrodes: ``16 q^2 a'^2 / (pi^2 (4 d^2 + a'^2)^2) / C_total``."""
    a, d = g.side, g.ion_distance
    return 16 * q * q * a ** 2 / (math.pi ** 2 * (4 * d ** 2 + a ** 2) ** 2) / g.total_capacitance


def rect_side_matching_disk(disk_radius: float) -> float:
    """Side of the square with the same area as a disk of ``disk_radius``."""
    return math.sqrt(math.pi) * disk_radius


def ion_capacitance_parallel_plate(ion: IonSpecies, f: float, d_win: float, alpha: float = 1.0) -> float:
    """Equivalent capacitance of an ion between plates: ``alpha^2 q^2/(m d^2 omega^2)``."""
    if not (f > 0 and d_win > 0):
        raise ValueError("f and d_win must be > 0")
    return alpha ** 2 * ion.charge ** 2 / (ion.mass * d_win ** 2 * (2 * math.pi * f) ** 2)


def gamma_mass_spring(C1: float, C2: float, C: float, ion: IonSpecies, f: float,
                      approximate: bool = False) -> float:
    """Lumped mass-spring coupling ``m w^2 sqrt(C1 C2 / ((C1 + C)(C2 + C)))``.

    With ``approximate=True`` the ``C1, C2 << C`` form ``m w^2 sqrt(C1 C2)/C``
    is returned.
    """
    if not (C1 > 0 and C2 > 0 and C > 0):
        raise ValueError("capacitances must be > 0")
    mw2 = ion.mass * (2 * math.pi * f) ** 2
    if approximate:
        return mw2 * math.sqrt(C1 * C2) / C
    return mw2 * math.sqrt(C1 * C2 / ((C1 + C) * (C2 + C)))


def gamma_mass_spring_parallel_plate(q: float, d_win: float, C: float, alpha: float = 1.0) -> float:
    """Parallel-plate limit of the mass-spring model: ``alpha^2 q^2/(d_win^2 C)``."""
    if not (d_win > 0 and C > 0):
        raise ValueError("d_win and C must be > 0")
    return alpha ** 2 * q * q / (d_win ** 2 * C)


def gamma_mass_spring_pickup_disk(q: float, d: float, r: float, eta: float, C: float) -> float:
    """Mass-spring model applied to a pickup disk:
    ``eta q^2 r^2 / (2 d (r^2 + d^2)^(3/2) C)``."""
    if not (d > 0 and r > 0 and C > 0):
        raise ValueError("d, r and C must be > 0")
    return eta * q * q * r ** 2 / (2 * d * (r ** 2 + d ** 2) ** 1.5 * C)


def gamma_mass_spring_suspended_wire(H: float, h: float, a: float, C: float, e: float = _K.e) -> float:
    """Mass-spring model applied to a suspended wire:
    ``2 e^2 / (ln((2H - a)/a) (H^2 - h^2) C)``."""
    if not (H > h > 0 and 0 < a < 2 * H and C > 0):
        raise ValueError("need H > h > 0, 0 < a < 2H, C > 0")
    return 2 * e * e / (math.log((2 * H - a) / a) * (H ** 2 - h ** 2) * C)


# ---------------------------------------------------------------------------
# Direct Coulomb coupling
# ---------------------------------------------------------------------------


def gamma_coulomb(q1: float, q2: float, separation):
    """Coulomb coupling ``q1 q2 / (2 pi eps0 l^3)`` between two ions."""
    separation = np.asarray(separation, dtype=float)
    if np.any(separation <= 0):
        raise ValueError("separation must be > 0")
    g = q1 * q2 / (2 * np.pi * _K.epsilon0 * separation ** 3)
    return g[()] if g.ndim == 0 else g


def l_coul_bound(t_deco: float, q1: float, q2: float, ion: IonSpecies, f: float) -> float:
    """Largest separation at which Coulomb exchange beats decoherence.

    ``l = (t_deco q1 q2 / (2 pi^2 eps0 m 2 pi f))^(1/3)``
    """
    if not (t_deco > 0 and f > 0):
        raise ValueError("t_deco and f must be > 0")
    return (t_deco * q1 * q2 / (2 * math.pi ** 2 * _K.epsilon0 * ion.mass * 2 * math.pi * f)) ** (1 / 3)


def coulomb_dominance_cutoff(gamma_wire: float, q1: float, q2: float, factor: float = 10.0) -> float:
    """Ion separation above which ``gamma_wire >= factor * gamma_Coulomb``."""
    if not gamma_wire > 0:
        raise ValueError("gamma_wire must be > 0")
    return (factor * q1 * q2 / (2 * math.pi * _K.epsilon0 * gamma_wire)) ** (1 / 3)


def min_wire_for_dominance(d: float, a: float, factor: float = 10.0,
                           l_wire: Sequence[float] | None = None,
                           q: float = _K.e) -> Tuple[np.ndarray, np.ndarray]:
    """Coulomb-separation cutoff as a function of wire length.

    For each wire length the symmetric coupler with ``r = d/sqrt(2)`` is
    evaluated and the separation above which it beats the direct Coulomb
    coupling by ``factor`` is returned. The result does not depend on the
    charge because both couplings scale as ``q^2``.

    Returns
    -------
    l_wire, l_cutoff : ndarray
        Wire lengths and matching minimum ion separations, both in m.
    """
    if l_wire is None:
        l_wire = np.geomspace(11 * a, 0.1, 200)
    l_wire = np.asarray(l_wire, dtype=float)
    r = d / math.sqrt(2)
    cut = np.empty_like(l_wire)
    for i, lw in enumerate(l_wire):
        g = gamma_symmetric(q, d, r, wire_capacitance(lw, a))
        cut[i] = coulomb_dominance_cutoff(g, q, q, factor)
    return l_wire, cut


# ---------------------------------------------------------------------------
# Scaling
# ---------------------------------------------------------------------------


def asymptotic_exponent(func: Callable[[np.ndarray], np.ndarray], lo: float, hi: float,
                        n: int = 50) -> float:
    """Least-squares slope of ``log func(x)`` against ``log x`` on ``[lo, hi]``.

    Raises
    ------
    ValueError
        If ``func`` is non-positive anywhere on the sample.
    """
    x = np.geomspace(lo, hi, n)
    y = np.asarray([func(v) for v in x], dtype=float)
    if np.any(~np.isfinite(y)) or np.any(y <= 0):
        raise ValueError("function must be positive on the sampled range")
    slope, _ = np.polyfit(np.log(x), np.log(y), 1)
    return float(slope)
