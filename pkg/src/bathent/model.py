"""Domain types and unit conventions.

All physics is done in natural units (hbar = c = k_B = 1).  When converting
from SI, lengths stay in meters, the level spacing becomes omega/c (1/m) and
the inverse temperature becomes hbar*c/(k_B*T) (m).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

#: Boundary distance meaning "no reflecting plane".
UNBOUNDED = math.inf


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float = 1.054571817e-34
    k_boltzmann: float = 1.380649e-23
    c_light: float = 2.99792458e8


CODATA = PhysicalConstants()


def _unit_axis(n) -> np.ndarray:
    arr = np.asarray(n, dtype=float).reshape(3)
    if abs(np.linalg.norm(arr) - 1.0) > 1e-12:
        raise ValueError(f"quantization axis must be a unit vector, got |n|={np.linalg.norm(arr)!r}")
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class AtomPairGeometry:
    """Two identical atoms at separation ``L``, both a distance ``z`` from the plate.

    ``z`` may be :data:`UNBOUNDED`.  ``n`` is the common quantization axis.
    """

    omega: float
    L: float
    z: float = UNBOUNDED
    n: np.ndarray = field(default_factory=lambda: np.array([0.0, 0.0, 1.0]))

    def __post_init__(self):
        if not self.omega > 0:
            raise ValueError(f"omega must be positive, got {self.omega!r}")
        if not self.L >= 0:
            raise ValueError(f"L must be non-negative, got {self.L!r}")
        if not (self.z > 0):
            raise ValueError(f"z must be positive or UNBOUNDED, got {self.z!r}")
        object.__setattr__(self, "n", _unit_axis(self.n))

    @property
    def unbounded(self) -> bool:
        return math.isinf(self.z)

    @classmethod
    def from_dimensionless(cls, omegaL: float, zOverL: float = UNBOUNDED, n=(0.0, 0.0, 1.0),
                           z_omega: float | None = None) -> "AtomPairGeometry":
        """Geometry with omega = 1.

        For ``omegaL == 0`` the ratio z/L is meaningless; the boundary distance is
        then ``z_omega`` (in units of 1/omega), or unbounded when not given.
        """
        if omegaL == 0:
            z = UNBOUNDED if z_omega is None else z_omega
        else:
            z = zOverL * omegaL
        return cls(omega=1.0, L=float(omegaL), z=float(z), n=n)


@dataclass(frozen=True)
class ThermalBath:
    beta: float  # may be math.inf (zero temperature)

    def __post_init__(self):
        if not self.beta > 0:
            raise ValueError(f"beta must be positive or inf, got {self.beta!r}")

    @property
    def zero_temperature(self) -> bool:
        return math.isinf(self.beta)


class Dimensionless(NamedTuple):
    omegaL: float
    zOverL: float | None  # None when L == 0; inf when unbounded
    betaOmega: float
    zero_separation: bool
    unbounded: bool


def dimensionless(geometry: AtomPairGeometry, bath: ThermalBath) -> Dimensionless:
    omegaL = geometry.omega * geometry.L
    beta_omega = bath.beta * geometry.omega
    if geometry.L == 0:
        z_over_l = None
    elif geometry.unbounded:
        z_over_l = math.inf
    else:
        z_over_l = geometry.z / geometry.L
    return Dimensionless(omegaL, z_over_l, beta_omega, geometry.L == 0, geometry.unbounded)


def from_si(omega_si: float, L_si: float, z_si: float, T_si: float,
            n=(0.0, 0.0, 1.0), constants: PhysicalConstants = CODATA):
    """Convert SI inputs (rad/s, m, m, K) to natural-unit geometry and bath.

    ``z_si`` may be ``math.inf`` for no boundary; ``T_si == 0`` gives ``beta = inf``.
    """
    for name, val in (("omega_si", omega_si), ("L_si", L_si), ("z_si", z_si), ("T_si", T_si)):
        if val < 0 or math.isnan(val):
            raise ValueError(f"{name} must be non-negative, got {val!r}")
    if omega_si == 0 or z_si == 0:
        raise ValueError("omega_si and z_si must be strictly positive")
    c = constants
    geometry = AtomPairGeometry(omega=omega_si / c.c_light, L=float(L_si), z=float(z_si), n=n)
    beta = math.inf if T_si == 0 else c.hbar * c.c_light / (c.k_boltzmann * T_si)
    return geometry, ThermalBath(beta)


def to_si(geometry: AtomPairGeometry, bath: ThermalBath,
          constants: PhysicalConstants = CODATA) -> tuple[float, float, float, float]:
    """Inverse of :func:`from_si`: returns ``(omega_rad_per_s, L_m, z_m, T_K)``."""
    c = constants
    T = 0.0 if bath.zero_temperature else c.hbar * c.c_light / (c.k_boltzmann * bath.beta)
    return geometry.omega * c.c_light, geometry.L, geometry.z, T


def kelvin_from_beta(beta: float, constants: PhysicalConstants = CODATA) -> float:
    """Temperature in K for an inverse temperature in meters (from_si convention)."""
    if math.isinf(beta):
        return 0.0
    if beta == 0:
        return math.inf
    return constants.hbar * constants.c_light / (constants.k_boltzmann * beta)
