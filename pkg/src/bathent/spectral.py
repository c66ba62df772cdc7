"""Thermal spectral densities near a Dirichlet plane and the Kossakowski coefficients.

Every ``sin(x)/x`` factor goes through :func:`sinc` or one of the cancellation-free
helpers below, so ``L = 0`` and ``z -> 0`` are evaluated analytically.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .model import AtomPairGeometry, ThermalBath

__all__ = [
    "KossakowskiSet", "RatioWarning", "kossakowski", "kossakowski_matrix", "one_minus_sinc",
    "ratio_A_far", "ratio_A_near_boundary", "ratio_A_squared", "ratio_A_squared_dimensionless",
    "ratio_B_squared", "sinc",
    "sinc_diff", "spectral_cross", "spectral_same",
]

_SMALL = 1e-4
_SERIES = 0.5
# z/L below this routes the amplitude ratio through its small-z expansion
NEAR_BOUNDARY_CUTOFF = 1e-6
FAR_FIELD_MIN = 10.0

_LEVI_CIVITA = np.zeros((3, 3, 3))
_LEVI_CIVITA[0, 1, 2] = _LEVI_CIVITA[1, 2, 0] = _LEVI_CIVITA[2, 0, 1] = 1.0
_LEVI_CIVITA[0, 2, 1] = _LEVI_CIVITA[2, 1, 0] = _LEVI_CIVITA[1, 0, 2] = -1.0


class RatioWarning(RuntimeWarning):
    """(A2/A1)^2 came out above one."""


def sinc(x: float) -> float:
    """Unnormalized ``sin(x)/x`` with ``sinc(0) == 1``."""
    x = float(x)
    if abs(x) < _SMALL:
        x2 = x * x
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0
    return math.sin(x) / x


def one_minus_sinc(x: float) -> float:
    """``1 - sinc(x)`` without cancellation for small ``x``."""
    x = abs(float(x))
    if x < _SERIES:
        x2 = x * x
        term, total = x2 / 6.0, 0.0
        # sum_k (-1)^(k+1) x^2k / (2k+1)!
        for k in range(1, 14):
            total += term
            term *= -x2 / ((2 * k + 2) * (2 * k + 3))
        return total
    return 1.0 - math.sin(x) / x


def sinc_diff(a: float, b: float, delta: float | None = None) -> float:
    """``sinc(a) - sinc(b)`` for ``0 <= a <= b``, stable when ``b - a`` is tiny.

    Pass ``delta = b - a`` when it is known more accurately than the rounded ``b``.
    """
    a, b = float(a), float(b)
    if delta is None:
        delta = b - a
    if a == 0.0:
        return one_minus_sinc(b)
    if b < _SERIES:
        # a^2k - b^2k = (a^2 - b^2) * sum_j a^2j b^2(k-1-j)
        d2 = -delta * (a + b)
        a2, b2 = a * a, b * b
        total, fact = 0.0, 6.0
        for k in range(1, 12):
            s = sum(a2**j * b2 ** (k - 1 - j) for j in range(k))
            total += (-1) ** k * d2 * s / fact
            fact *= (2 * k + 2) * (2 * k + 3)
        return total
    return math.sin(a) * delta / (a * b) - 2.0 * math.cos(0.5 * (a + b)) * math.sin(0.5 * delta) / b


def _stretched(a: float, r: float) -> tuple[float, float]:
    """Return ``(a*sqrt(1+4r^2), a*(sqrt(1+4r^2)-1))`` with the difference computed stably."""
    h = 2.0 * a * r
    b = math.hypot(a, h)
    if h > 1e150:
        return b, b - a
    return b, h * h / (b + a) if b + a > 0 else 0.0


def _planck(lam: float, beta: float) -> float:
    """``lam / (1 - exp(-beta*lam))`` including its ``lam -> 0`` and ``beta -> inf`` limits."""
    if math.isinf(beta):
        return lam if lam > 0 else 0.0
    if lam == 0.0:
        return 1.0 / beta
    return lam / -math.expm1(-beta * lam)


def spectral_same(lam: float, bath: ThermalBath, z: float) -> float:
    """Fourier-transformed single-atom Wightman function at frequency ``lam``."""
    boundary = 1.0 if math.isinf(z) else one_minus_sinc(2.0 * z * lam)
    return _planck(lam, bath.beta) * boundary / (2.0 * math.pi)


def _cross_factor(lam: float, z: float, L: float) -> float:
    x = abs(lam) * L
    if math.isinf(z):
        return sinc(x)
    if L == 0.0:
        return one_minus_sinc(2.0 * z * lam)
    far, delta = _stretched(x, z / L)
    return sinc_diff(x, far, delta)


def spectral_cross(lam: float, bath: ThermalBath, z: float, L: float) -> float:
    """Fourier-transformed two-atom cross correlation at frequency ``lam``."""
    if L < 0:
        raise ValueError("L must be non-negative")
    return _planck(lam, bath.beta) * _cross_factor(lam, z, L) / (2.0 * math.pi)


@dataclass(frozen=True)
class KossakowskiSet:
    A1: float
    B1: float
    C1: float
    A2: float
    B2: float
    C2: float

    @property
    def R(self) -> float:
        """``B1/A1``, i.e. tanh(beta*omega/2); zero when the set vanishes."""
        return self.B1 / self.A1 if self.A1 != 0 else 0.0

    def as_array(self) -> np.ndarray:
        return np.array([self.A1, self.B1, self.C1, self.A2, self.B2, self.C2])

    @classmethod
    def zero(cls) -> "KossakowskiSet":
        return cls(0.0, 0.0, 0.0, 0.0, 0.0, 0.0)


def _coth_half(beta_omega: float) -> float:
    if math.isinf(beta_omega):
        return 1.0
    return 1.0 / math.tanh(0.5 * beta_omega)


def kossakowski(geometry: AtomPairGeometry, bath: ThermalBath) -> KossakowskiSet:
    """Dissipator coefficients for the same-atom (1) and cross-atom (2) blocks.

    The unbounded case is the ``z -> inf`` limit of the bounded coefficients, so
    ``C = -A`` holds there as well.
    """
    w, L, z = geometry.omega, geometry.L, geometry.z
    pref = w / (4.0 * math.pi)
    g_same = 1.0 if geometry.unbounded else one_minus_sinc(2.0 * z * w)
    g_cross = _cross_factor(w, z, L)
    coth = _coth_half(bath.beta * w)
    A1, B1 = pref * coth * g_same, pref * g_same
    A2, B2 = pref * coth * g_cross, pref * g_cross
    return KossakowskiSet(A1, B1, -A1, A2, B2, -A2)


def kossakowski_matrix(coeffs: KossakowskiSet, n, pair: Literal["same", "cross"] = "same") -> np.ndarray:
    """3x3 matrix ``A delta_ij - i B eps_ijk n_k + C n_i n_j`` for the chosen atom pair."""
    n = np.asarray(n, dtype=float)
    if pair == "same":
        A, B, C = coeffs.A1, coeffs.B1, coeffs.C1
    elif pair == "cross":
        A, B, C = coeffs.A2, coeffs.B2, coeffs.C2
    else:
        raise ValueError(f"pair must be 'same' or 'cross', got {pair!r}")
    eps_n = np.einsum("ijk,k->ij", _LEVI_CIVITA, n)
    return A * np.eye(3) - 1j * B * eps_n + C * np.outer(n, n)


def _near_boundary_profile(x: float) -> float:
    """``3 (sin x - x cos x) / x^3``; tends to 1 as ``x -> 0``."""
    if x < _SERIES:
        x2 = x * x
        total, xp, fact = 0.0, 1.0, 6.0
        for k in range(1, 12):
            total += (-1) ** (k + 1) * 2 * k * xp / fact
            xp *= x2
            fact *= (2 * k + 2) * (2 * k + 3)
        return 3.0 * total
    return 3.0 * (math.sin(x) - x * math.cos(x)) / x**3


# series of the (z/L)^2 coefficient for small omega*L, in powers x^4, x^6, ...
_CORR_SERIES = (-2 / 175, 2 / 1125, -8 / 67375, 2 / 429975, -2 / 16372125, 2 / 861485625)


def _near_boundary_correction(x: float) -> float:
    if x < _SERIES:
        x2 = x * x
        return sum(c * x2 ** (k + 2) for k, c in enumerate(_CORR_SERIES))
    s, c = math.sin(x), math.cos(x)
    return 18.0 / (5.0 * x**6) * (x * c - s) * (x * (x * x - 15.0) * c + 3.0 * (5.0 - 2.0 * x * x) * s)


def ratio_A_near_boundary(omegaL: float, with_correction: bool = False):
    """Leading ``z/L -> 0`` value of (A2/A1)^2, independent of z.

    With ``with_correction=True`` also returns the coefficient of ``(z/L)^2``.
    """
    if not omegaL > 0:
        raise ValueError(f"omegaL must be positive, got {omegaL!r}")
    lead = _near_boundary_profile(omegaL) ** 2
    if with_correction:
        return lead, _near_boundary_correction(omegaL)
    return lead


def ratio_A_far(omegaL: float, zOverL: float) -> float:
    """Large-``z/L`` expansion of (A2/A1)^2, valid for ``z/L >= 10``."""
    if zOverL < FAR_FIELD_MIN:
        raise ValueError(f"far-field expansion needs z/L >= {FAR_FIELD_MIN}, got {zOverL!r}")
    x = omegaL
    base = sinc(x) ** 2
    if math.isinf(zOverL):
        return base
    sx = math.sin(x)
    far = x * math.sqrt(1.0 + 4.0 * zOverL * zOverL)
    return base + (1.0 / zOverL) * sx / x**3 * (sx * math.sin(2.0 * x * zOverL) - x * math.sin(far))


def _ratio_A_squared(omegaL: float, zOverL: float) -> float:
    if omegaL == 0:
        return 1.0
    if math.isinf(zOverL):
        return sinc(omegaL) ** 2
    if zOverL < NEAR_BOUNDARY_CUTOFF:
        lead, corr = ratio_A_near_boundary(omegaL, with_correction=True)
        return lead + corr * zOverL * zOverL
    far, delta = _stretched(omegaL, zOverL)
    num = sinc_diff(omegaL, far, delta)
    den = one_minus_sinc(2.0 * omegaL * zOverL)
    return (num / den) ** 2


def ratio_A_squared(geometry: AtomPairGeometry) -> float:
    """Temperature-independent (A2/A1)^2; depends only on omega*L and z/L."""
    if geometry.L == 0:
        return 1.0
    omegaL = geometry.omega * geometry.L
    value = _ratio_A_squared(omegaL, geometry.z / geometry.L)
    if value > 1.0 + 1e-12:
        warnings.warn(f"(A2/A1)^2 = {value!r} exceeds 1 at omegaL={omegaL!r}", RatioWarning, stacklevel=2)
    return value


def ratio_A_squared_dimensionless(omegaL: float, zOverL: float) -> float:
    """Same as :func:`ratio_A_squared` but from the two dimensionless groups."""
    if omegaL < 0 or not zOverL > 0:
        raise ValueError("need omegaL >= 0 and zOverL > 0")
    return _ratio_A_squared(float(omegaL), float(zOverL))


def ratio_B_squared(bath: ThermalBath, omega: float) -> float:
    """(B1/A1)^2 = tanh^2(beta*omega/2)."""
    if not omega > 0:
        raise ValueError("omega must be positive")
    if bath.zero_temperature:
        return 1.0
    return math.tanh(0.5 * bath.beta * omega) ** 2
