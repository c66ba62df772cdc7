"""Late-time equilibrium states, their concurrence and the persistence test."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Iterable, Literal

import numpy as np

from .model import AtomPairGeometry, ThermalBath
from .spectral import KossakowskiSet, kossakowski
from .states import BlochState, bloch_to_matrix, concurrence

__all__ = [
    "BranchError", "EquilibriumMismatchWarning", "EquilibriumReport", "ZeroSeparationWarning",
    "asymptotic_state", "asymptotic_state_product_form", "asymptotic_state_zero_sep",
    "boundary_independence_check", "equilibrium_concurrence_zero_sep", "equilibrium_report",
    "persistence_condition",
]

SEPARABLE_TOL = 1e-12
# omega*L below this is handled by the zero-separation branch
ZERO_SEPARATION = 1e-9


class BranchError(ValueError):
    """The finite-separation formula was asked for a zero-separation coefficient set."""


class EquilibriumMismatchWarning(RuntimeWarning):
    pass


class ZeroSeparationWarning(RuntimeWarning):
    pass


@dataclass(frozen=True)
class EquilibriumReport:
    state: BlochState
    concurrence: float
    separable: bool
    branch: Literal["finite-separation", "zero-separation"]
    tau: float


def _denominator(c: KossakowskiSet) -> float:
    A1, B1, A2, B2 = c.A1, c.B1, c.A2, c.B2
    return 2 * A1**3 - A1**2 * A2 - A2 * B1 * B2 + A1 * (B2**2 - A2**2)


def asymptotic_state_product_form(coeffs: KossakowskiSet, n) -> BlochState:
    """Both atoms polarized along ``-R n`` with ``R = B1/A1``."""
    n = np.asarray(n, dtype=float)
    R = coeffs.R
    return BlochState(-R * n, -R * n, R * R * np.outer(n, n))


def asymptotic_state(coeffs: KossakowskiSet, n) -> BlochState:
    """Stationary state for non-zero separation, evaluated term by term.

    The result is cross-checked against :func:`asymptotic_state_product_form`; a
    mismatch beyond the conditioning-adjusted tolerance emits
    :class:`EquilibriumMismatchWarning`.
    """
    n = np.asarray(n, dtype=float)
    A1, B1, A2, B2 = coeffs.A1, coeffs.B1, coeffs.A2, coeffs.B2
    if A1 == A2 and B1 == B2:
        raise BranchError("coefficients describe zero separation; use asymptotic_state_zero_sep")
    den = _denominator(coeffs)
    if den == 0.0 or not math.isfinite(den):
        raise BranchError(f"equilibrium denominator vanishes (A1={A1!r}, A2={A2!r})")
    polar = -(A1 - A2) * B1 * (2 * A1 + A2) / den
    state = BlochState(polar * n, polar * n, (A1 - A2) * B1 * (2 * B1 + B2) / den * np.outer(n, n))

    simple = asymptotic_state_product_form(coeffs, n)
    cond = abs(A1) / abs(A1 - A2)
    tol = max(1e-10, 1e3 * np.finfo(float).eps * cond)
    gap = np.max(np.abs(state.to_vector() - simple.to_vector()))
    if gap > tol:
        warnings.warn(f"closed-form equilibrium differs from product form by {gap:.3e}",
                      EquilibriumMismatchWarning, stacklevel=2)
    return state


def _check_R_tau(R: float, tau: float) -> None:
    if not 0.0 <= R <= 1.0:
        raise ValueError(f"R must lie in [0, 1], got {R!r}")
    if not -3.0 <= tau <= 1.0:
        raise ValueError(f"tau must lie in [-3, 1], got {tau!r}")


def asymptotic_state_zero_sep(R: float, tau: float, n) -> BlochState:
    _check_R_tau(R, tau)
    n = np.asarray(n, dtype=float)
    d = 3.0 + R * R
    polar = -R * (tau + 3.0) / d
    rhoij = ((tau - R * R) * np.eye(3) + R * R * (tau + 3.0) * np.outer(n, n)) / d
    return BlochState(polar * n, polar * n, rhoij)


def equilibrium_concurrence_zero_sep(R: float, tau: float) -> float:
    _check_R_tau(R, tau)
    r2 = R * R
    value = (3.0 - r2) / (2.0 * (3.0 + r2)) * ((5.0 * r2 - 3.0) / (3.0 - r2) - tau)
    return max(value, 0.0)


def persistence_condition(R: float, tau: float) -> bool:
    """True when zero-separation entanglement survives to equilibrium."""
    _check_R_tau(R, tau)
    return tau < (5.0 * R * R - 3.0) / (3.0 - R * R)


def equilibrium_report(geometry: AtomPairGeometry, bath: ThermalBath,
                       initial: BlochState | None = None) -> EquilibriumReport:
    """Pick the branch from the geometry and report the late-time state.

    ``initial`` fixes the conserved ``tau`` in the zero-separation branch; it
    defaults to |e><e| (x) |g><g| (tau = -1).
    """
    coeffs = kossakowski(geometry, bath)
    n = geometry.n
    if geometry.omega * geometry.L < ZERO_SEPARATION:
        if geometry.L != 0:
            warnings.warn(f"omega*L = {geometry.omega * geometry.L:.3e} treated as zero separation",
                          ZeroSeparationWarning, stacklevel=2)
        tau = (initial or BlochState.product(n, -n)).tau
        state = asymptotic_state_zero_sep(coeffs.R, tau, n)
        branch = "zero-separation"
    else:
        state = asymptotic_state(coeffs, n)
        tau = state.tau
        branch = "finite-separation"
    c = concurrence(bloch_to_matrix(state))
    return EquilibriumReport(state, c, c < SEPARABLE_TOL, branch, tau)


def boundary_independence_check(bath: ThermalBath, omega: float, z_samples: Iterable[float],
                                tol: float = 1e-12) -> bool:
    """Check that ``R = B1/A1`` does not depend on the boundary distance."""
    zs = list(z_samples)
    if len(set(zs)) < 2 or not any(math.isinf(z) for z in zs):
        raise ValueError("need at least two distinct z samples including UNBOUNDED")
    Rs = [kossakowski(AtomPairGeometry(omega=omega, L=0.0, z=z), bath).R for z in zs]
    return max(Rs) - min(Rs) <= tol * max(1.0, abs(Rs[0]))
