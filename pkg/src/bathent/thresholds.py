"""Critical temperatures and the boundary-enhancement maximizer."""
from __future__ import annotations

import math
from typing import Callable, NamedTuple

import numpy as np
from scipy import optimize

from .model import CODATA, AtomPairGeometry, PhysicalConstants
from .spectral import ratio_A_squared, ratio_A_squared_dimensionless, sinc

ALWAYS_ENTANGLED = math.inf
RATIO_UNITY_TOL = 1e-12


def bisect(f: Callable[[float], float], lo: float, hi: float, rtol: float = 1e-12,
           max_iter: int = 400) -> float:
    """Root of ``f`` in ``[lo, hi]``; ``f(lo)`` and ``f(hi)`` must differ in sign."""
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise ValueError(f"root not bracketed: f({lo})={flo}, f({hi})={fhi}")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
        if hi - lo <= rtol * abs(mid):
            break
    return 0.5 * (lo + hi)


def critical_beta_omega(ratio_a: float) -> float:
    """beta*omega at which tanh^2(beta*omega/2) = 1 - (A2/A1)^2.

    Returns 0 (infinite critical temperature) when the ratio is within 1e-12 of
    one and ``inf`` (no entanglement at any T > 0) when the ratio is zero.
    """
    target = 1.0 - ratio_a
    if target <= RATIO_UNITY_TOL:
        return 0.0
    if target >= 1.0:
        return math.inf

    def g(x: float) -> float:
        return math.tanh(0.5 * x) ** 2 - target

    hi = 1.0
    while g(hi) < 0:
        hi *= 2.0
        if hi > 1e4:  # tanh^2 == 1 in double precision well before this
            return math.inf
    return bisect(g, 0.0, hi)


def critical_temperature(geometry: AtomPairGeometry, constants: PhysicalConstants | None = None) -> float:
    """Temperature below which entanglement is born immediately.

    In natural units this is ``1/beta``.  Pass ``constants`` when ``geometry`` came
    from :func:`bathent.model.from_si` to get Kelvin.  Returns
    :data:`ALWAYS_ENTANGLED` (``inf``) when (A2/A1)^2 is one.
    """
    x = critical_beta_omega(ratio_A_squared(geometry))
    if x == 0.0:
        return ALWAYS_ENTANGLED
    if math.isinf(x):
        return 0.0
    beta = x / geometry.omega
    if constants is None:
        return 1.0 / beta
    return constants.hbar * constants.c_light / (constants.k_boltzmann * beta)


def critical_temperature_kelvin(omega_rad_per_s: float, ratio_a: float,
                                constants: PhysicalConstants = CODATA) -> float:
    x = critical_beta_omega(ratio_a)
    if x == 0.0:
        return ALWAYS_ENTANGLED
    if math.isinf(x):
        return 0.0
    return constants.hbar * omega_rad_per_s / (constants.k_boltzmann * x)


class MaxRatio(NamedTuple):
    omegaL: float
    ratio: float
    enhancement: float  # ratio minus the unbounded value sinc^2(omegaL)


def boundary_enhancement(omegaL: float, zOverL: float) -> float:
    return ratio_A_squared_dimensionless(omegaL, zOverL) - sinc(omegaL) ** 2


def max_ratio_search(zOverL: float = 1e-4, lo: float = 0.5, hi: float = 4.0,
                     step: float = 1e-3) -> MaxRatio:
    """Locate the omega*L where the boundary raises (A2/A1)^2 the most.

    A uniform grid with spacing ``step`` brackets the peak of
    ``ratio - sinc^2`` and golden-section search refines it.
    """
    grid = np.arange(lo, hi + 0.5 * step, step)
    values = np.array([boundary_enhancement(x, zOverL) for x in grid])
    i = int(np.clip(np.argmax(values), 1, len(grid) - 2))
    best = optimize.golden(lambda x: -boundary_enhancement(x, zOverL),
                           brack=(grid[i - 1], grid[i], grid[i + 1]), tol=1e-10)
    return MaxRatio(float(best), ratio_A_squared_dimensionless(best, zOverL),
                    boundary_enhancement(best, zOverL))
