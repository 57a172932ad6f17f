"""Image-charge electrostatics of a point charge above a grounded plane.

A charge ``q`` at height ``d`` above an infinite grounded conductor is
replaced by itself plus an image ``-q`` at ``-d``. Everything in this
module follows from that construction: the potential, the induced
surface-charge density and its sensitivity to the charge height, the
charge collected by a disk-shaped region of the plane, and the current
that flows when the charge oscillates.

The module also holds the on-axis field of a ring of charge, used as the
model for the charge sitting on a pickup disk, and the edge-charge
estimate that justifies that ring model for thin and thick disks.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy import integrate

from .model import ConfigError, IonSpecies, ModelValidityWarning, default_constants

__all__ = [
    "SurfacePoint",
    "ChargeAbovePlane",
    "image_potential",
    "surface_charge_density",
    "dsigma_dheight",
    "zero_variation_radius",
    "extremal_radii",
    "zero_point_amplitude",
    "induced_charge_linear",
    "induced_charge_exact",
    "induced_charge_quadrature",
    "plane_induced_charge",
    "average_induced_current",
    "ring_axial_field",
    "edge_charge_fraction",
]

_K = default_constants()


@dataclass(frozen=True)
class SurfacePoint:
    """A point on the plane in cylindrical coordinates."""

    radial: float
    azimuth: float = 0.0

    def __post_init__(self) -> None:
        if not self.radial >= 0:
            raise ConfigError("radial must be >= 0")


@dataclass(frozen=True)
class ChargeAbovePlane:
    """A point charge ``charge`` (C) held at ``height`` (m) above the plane."""

    charge: float
    height: float

    def __post_init__(self) -> None:
        if not self.height > 0:
            raise ConfigError("height must be > 0")


def image_potential(cfg: ChargeAbovePlane, x, y, z):
    """Potential above a grounded plane with a point charge at (0, 0, d).

    Parameters
    ----------
    cfg : ChargeAbovePlane
        Source charge and height.
    x, y, z : float or array_like
        Field point in m. ``z`` must be non-negative.

    Returns
    -------
    float or ndarray
        Potential in V.
    """
    z = np.asarray(z, dtype=float)
    if np.any(z < 0):
        raise ValueError("z < 0 lies inside the conductor; the potential is undefined there")
    q, d = cfg.charge, cfg.height
    rho2 = np.asarray(x, dtype=float) ** 2 + np.asarray(y, dtype=float) ** 2
    v = q / (4 * np.pi * _K.epsilon0) * (
        1 / np.sqrt(rho2 + (z - d) ** 2) - 1 / np.sqrt(rho2 + (z + d) ** 2)
    )
    return v[()] if np.ndim(v) == 0 else v


def surface_charge_density(cfg: ChargeAbovePlane, r):
    """Induced surface charge ``sigma = -q d / (2 pi (r^2 + d^2)^(3/2))`` in C/m^2."""
    r = np.asarray(r, dtype=float)
    q, d = cfg.charge, cfg.height
    s = -q * d / (2 * np.pi * (r ** 2 + d ** 2) ** 1.5)
    return s[()] if s.ndim == 0 else s


def dsigma_dheight(cfg: ChargeAbovePlane, r):
    """Derivative of the induced density with respect to the charge height.

    ``dsigma/dd = A (r^2 - 2 d^2) / (r^2 + d^2)^(5/2)`` with ``A = -q/(2 pi)``,
    in C/m^3. It vanishes on the circle ``r = sqrt(2) d``.
    """
    r = np.asarray(r, dtype=float)
    q, d = cfg.charge, cfg.height
    A = -q / (2 * np.pi)
    s = A * (r ** 2 - 2 * d ** 2) / (r ** 2 + d ** 2) ** 2.5
    return s[()] if s.ndim == 0 else s


def zero_variation_radius(d: float) -> float:
    """Radius ``sqrt(2) d`` where the induced density does not change with d."""
    if not d > 0:
        raise ValueError("d must be > 0")
    return math.sqrt(2) * d


def extremal_radii(d: float) -> Tuple[float, float]:
    """Radii (0, 2d) where ``|dsigma/dd|`` has its local maxima."""
    if not d > 0:
        raise ValueError("d must be > 0")
    return 0.0, 2 * d


def zero_point_amplitude(ion: IonSpecies, f: float) -> float:
    """Ground-state position spread ``b_o = sqrt(hbar / (2 m omega))`` in m."""
    if not f > 0:
        raise ValueError("f must be > 0")
    return math.sqrt(_K.hbar / (2 * ion.mass * 2 * math.pi * f))


def induced_charge_linear(cfg: ChargeAbovePlane, r, amplitude: float):
    """Charge moved onto a grounded disk of radius ``r`` by a full excursion.

    The charge swings from ``d - b`` to ``d + b``; to first order in ``b``
    the disk gains ``Q_transf = 2 q r^2 b / (r^2 + d^2)^(3/2)``.

    Parameters
    ----------
    cfg : ChargeAbovePlane
        Charge at its equilibrium height ``d_eq``.
    r : float or array_like
        Disk radius in m.
    amplitude : float
        Oscillation amplitude ``b`` in m (the zero-point spread by default
        in the callers).

    Warns
    -----
    ModelValidityWarning
        If ``amplitude > 0.01 d_eq`` the linearisation is questionable.
    """
    if amplitude > 0.01 * cfg.height:
        warnings.warn("amplitude > 0.01 d_eq; linearised Q_transf may be inaccurate",
                      ModelValidityWarning, stacklevel=2)
    r = np.asarray(r, dtype=float)
    q, d = cfg.charge, cfg.height
    out = 2 * q * r ** 2 * amplitude / (r ** 2 + d ** 2) ** 1.5
    return out[()] if out.ndim == 0 else out


def induced_charge_exact(cfg: ChargeAbovePlane, r):
    """Total induced charge inside radius ``r``: ``q d / sqrt(r^2 + d^2) - q``."""
    r = np.asarray(r, dtype=float)
    q, d = cfg.charge, cfg.height
    out = q * d / np.sqrt(r ** 2 + d ** 2) - q
    return out[()] if out.ndim == 0 else out


def induced_charge_quadrature(cfg: ChargeAbovePlane, r: float, amplitude: float) -> float:
    """Numerical counterpart of :func:`induced_charge_linear`.

    Integrates ``sigma(d + b) - sigma(d - b)`` over the disk (the charge
    gained as the ion moves from ``d - b`` to ``d + b``), so it is exact
    for any amplitude and is used as an oracle.
    """
    q, d = cfg.charge, cfg.height
    near = ChargeAbovePlane(q, d - amplitude)
    far = ChargeAbovePlane(q, d + amplitude)

    def integrand(rho):
        return 2 * np.pi * rho * (surface_charge_density(far, rho) - surface_charge_density(near, rho))

    # The difference is a small number: integrate in units of q to keep the
    # absolute tolerance meaningful.
    val, _ = integrate.quad(lambda rho: integrand(rho) / q, 0.0, r, epsabs=1e-14, epsrel=1e-12, limit=200)
    return float(val * q)


def plane_induced_charge(cfg: ChargeAbovePlane) -> float:
    """Integral of the induced density over the whole plane (equals ``-q``).

    Uses ``u = (r/d)^2`` so that ``2 pi r sigma dr = pi d^2 sigma du``; the
    integrand is of order one near the origin and its tail decays as
    ``u^(-3/2)``.
    """
    q, d = cfg.charge, cfg.height

    def integrand(u):
        return np.pi * d * d * surface_charge_density(cfg, d * math.sqrt(u)) / abs(q)

    val, _ = integrate.quad(integrand, 0.0, np.inf, epsabs=1e-12, epsrel=1e-10, limit=200)
    return float(val * abs(q))


def average_induced_current(Q_transf: float, f: float) -> Tuple[float, float]:
    """Average and peak current for charge ``Q_transf`` moved twice per period.

    Returns
    -------
    I_av, I_max : float
        ``I_av = 2 f Q_transf`` and ``I_max = (pi/2) I_av`` in A.
    """
    if not f > 0:
        raise ValueError("f must be > 0")
    I_av = 2 * f * Q_transf
    return I_av, math.pi / 2 * I_av


def ring_axial_field(Q: float, ring_radius: float, z):
    """On-axis field ``Q z / (4 pi eps0 (z^2 + R^2)^(3/2))`` of a charged ring, V/m."""
    z = np.asarray(z, dtype=float)
    out = Q * z / (4 * np.pi * _K.epsilon0 * (z ** 2 + ring_radius ** 2) ** 1.5)
    return out[()] if out.ndim == 0 else out


def _q_prime_over_q(a: float, b: float) -> float:
    s = math.sqrt(a ** 2 - (a - b) ** 2)
    return 1.0 / (3 * b / s + 1 - s / a)


def edge_charge_fraction(disk_radius: float, half_thickness: float, annulus: float) -> float:
    """Fraction of a charged disk's charge lying within ``annulus`` of its rim.

    The flat faces carry the thin-disk density ``Q'/(4 pi a sqrt(a^2 - r^2))``
    and the region within ``b`` (the half thickness) of each corner carries
    the corner density ``K / s^(1/3)``; matching the two at ``s = b`` fixes
    ``K`` and the total charge fixes ``Q'``.

    Two regimes are supported:

    * ``annulus <= half_thickness``: everything in the annulus is in the
      corner region. The fraction is the side wall plus the strip of width
      ``annulus`` on both faces.
    * ``annulus >= 2 * half_thickness``: the corner region is a thin sliver
      and the fraction is one minus the face charge inside
      ``radius - annulus``.

    Parameters
    ----------
    disk_radius : float
        Disk radius ``a`` in m.
    half_thickness : float
        Half the disk thickness ``b`` in m.
    annulus : float
        Width of the rim region in m.

    Raises
    ------
    ValueError
        If the geometry falls between the two regimes or outside either.
    """
    a, b, xi = disk_radius, half_thickness, annulus
    if not (0 < b < a):
        raise ValueError("half_thickness must satisfy 0 < b < disk_radius")
    if not (0 < xi <= a):
        raise ValueError("annulus must satisfy 0 < annulus <= disk_radius")
    s = math.sqrt(a ** 2 - (a - b) ** 2)
    qp = _q_prime_over_q(a, b)
    if xi <= b:
        side = 3 * b / (2 * s)
        faces = 1.5 * b ** (1 / 3) * xi ** (2 / 3) / s
        frac = (side + faces) * qp
    elif xi >= 2 * b:
        inner = a - xi
        central = (1 - math.sqrt(a ** 2 - inner ** 2) / a) * qp
        frac = 1 - central
    else:
        raise ValueError(
            "corner-density branch needs annulus <= half_thickness and the central-complement "
            "branch needs annulus >= 2*half_thickness; this geometry satisfies neither"
        )
    if not 0 <= frac <= 1:
        raise ValueError(f"edge-charge model produced fraction {frac:.3g} outside [0, 1]")
    return frac
