"""Lindblad evolution of the two-atom Bloch components and the entanglement-birth tests."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .kernels import dopri
from .model import AtomPairGeometry, ThermalBath
from .spectral import KossakowskiSet, kossakowski_matrix, ratio_A_squared, ratio_B_squared
from .states import BlochState, bloch_to_matrix, ppt_min_eigenvalue

__all__ = [
    "IntegrationError", "Trajectory", "WitnessVectors", "birth_witness_slope",
    "creation_condition", "creation_condition_closed", "creation_lhs", "evolve", "lindblad_rhs",
]

Z_AXIS = np.array([0.0, 0.0, 1.0])
_BUFFER = 4096


class IntegrationError(RuntimeError):
    def __init__(self, message, *, t=None, h=None, accepted=0, rejected=0):
        super().__init__(message)
        self.t, self.h = t, h
        self.accepted, self.rejected = accepted, rejected


@dataclass(frozen=True)
class WitnessVectors:
    u: np.ndarray = field(default_factory=lambda: np.array([1.0, -1.0j, 0.0]))
    v: np.ndarray = field(default_factory=lambda: np.array([1.0, -1.0j, 0.0]))

    def __post_init__(self):
        for name in ("u", "v"):
            vec = np.asarray(getattr(self, name), dtype=complex).reshape(3)
            if not np.any(vec):
                raise ValueError(f"witness vector {name} must be nonzero")
            object.__setattr__(self, name, vec)


@dataclass
class Trajectory:
    times: np.ndarray
    components: np.ndarray  # (len(times), 15), layout of BlochState.to_vector
    accepted: int = 0
    rejected: int = 0
    max_local_error: float = 0.0

    @property
    def states(self) -> list[BlochState]:
        return [BlochState.from_vector(c) for c in self.components]

    @property
    def final(self) -> BlochState:
        return BlochState.from_vector(self.components[-1])

    @property
    def tau(self) -> np.ndarray:
        return self.components[:, 6] + self.components[:, 10] + self.components[:, 14]

    @property
    def tau_drift(self) -> float:
        tau = self.tau
        return float(np.max(np.abs(tau - tau[0])))


def _coeff_array(coeffs: KossakowskiSet) -> np.ndarray:
    return np.ascontiguousarray(coeffs.as_array(), dtype=np.float64)


def _axis(n) -> np.ndarray:
    return np.ascontiguousarray(np.asarray(n, dtype=np.float64).reshape(3))


def lindblad_rhs(state: BlochState, coeffs: KossakowskiSet, n=Z_AXIS) -> BlochState:
    """Time derivative of every Bloch component (dissipative part only)."""
    dy = kernels.active().bloch_rhs(np.ascontiguousarray(state.to_vector()), _coeff_array(coeffs), _axis(n))
    return BlochState.from_vector(dy)


def _initial_step(coeffs: np.ndarray, tol: float, span: float) -> float:
    rate = 16.0 * float(np.max(np.abs(coeffs)))
    if rate == 0.0:
        return span
    return min(span, 0.5 * tol**0.2 / rate)


def evolve(initial: BlochState, coeffs: KossakowskiSet, n=Z_AXIS, t_end: float = 1.0,
           tol: float = 1e-10, t_eval=None, max_steps: int = 5_000_000) -> Trajectory:
    """Integrate the Bloch equations from ``t = 0`` to ``t_end`` (units of 1/omega).

    Every accepted step is recorded unless ``t_eval`` is given, in which case the
    trajectory holds exactly those times (plus ``t = 0``).
    """
    if not t_end > 0:
        raise ValueError(f"t_end must be positive, got {t_end!r}")
    if not 1e-12 <= tol <= 1e-4:
        raise ValueError(f"tol must lie in [1e-12, 1e-4], got {tol!r}")
    kern = kernels.active()
    co, axis = _coeff_array(coeffs), _axis(n)
    y = np.ascontiguousarray(initial.to_vector(), dtype=np.float64)
    h = _initial_step(co, tol, t_end)
    times, comps = [np.zeros(1)], [y[None, :].copy()]
    accepted = rejected = 0
    max_err = 0.0
    t = 0.0

    if t_eval is None:
        targets, record = [t_end], True
    else:
        targets = [float(x) for x in np.asarray(t_eval, dtype=float).ravel() if x > 0]
        if any(b <= a for a, b in zip(targets, targets[1:])):
            raise ValueError("t_eval must be strictly increasing")
        if targets and targets[-1] > t_end:
            raise ValueError("t_eval extends beyond t_end")
        record = False

    ts_buf = np.empty(_BUFFER if record else 1)
    ys_buf = np.empty((ts_buf.shape[0], 15))
    for target in targets:
        while True:
            status, count, t, y, h, acc, rej, err = kern.integrate_segment(
                y, t, target, h, tol, co, axis, ts_buf, ys_buf, record)
            accepted += acc
            rejected += rej
            max_err = max(max_err, err)
            if count:
                times.append(ts_buf[:count].copy())
                comps.append(ys_buf[:count].copy())
            if status == dopri.DONE:
                break
            if status != dopri.BUFFER_FULL:
                raise IntegrationError(
                    f"step size underflow at t={t!r} (h={h!r}); system too stiff for tol={tol!r}",
                    t=t, h=h, accepted=accepted, rejected=rejected)
            if accepted + rejected > max_steps:
                raise IntegrationError(f"exceeded {max_steps} steps at t={t!r}", t=t, h=h,
                                       accepted=accepted, rejected=rejected)
        if not record:
            times.append(np.array([t]))
            comps.append(y[None, :].copy())
    return Trajectory(np.concatenate(times), np.concatenate(comps), accepted, rejected, max_err)


def creation_condition(coeffs: KossakowskiSet, witnesses: WitnessVectors | None = None, n=Z_AXIS) -> bool:
    """Entanglement is born near t = 0 iff <u|C11|u><v|C22^T|v> < |<u|Re C12|v>|^2."""
    w = witnesses or WitnessVectors()
    same = kossakowski_matrix(coeffs, n, "same")
    cross = kossakowski_matrix(coeffs, n, "cross")
    lhs = (w.u.conj() @ same @ w.u) * (w.v.conj() @ same.T @ w.v)
    rhs = abs(w.u.conj() @ cross.real @ w.v) ** 2
    return bool(lhs.real < rhs)


def creation_lhs(geometry: AtomPairGeometry, bath: ThermalBath) -> float:
    """(A2/A1)^2 + (B1/A1)^2; entanglement is born when this exceeds one."""
    return ratio_A_squared(geometry) + ratio_B_squared(bath, geometry.omega)


def creation_condition_closed(geometry: AtomPairGeometry, bath: ThermalBath) -> bool:
    return creation_lhs(geometry, bath) > 1.0


def birth_witness_slope(coeffs: KossakowskiSet, n=Z_AXIS, dt: float | None = None,
                        tol: float = 1e-12) -> float:
    """Initial rate of change of the smallest partial-transpose eigenvalue.

    Starts from |e><e| (x) |g><g| along ``n`` and evolves to ``dt`` and ``dt/2``; the
    two forward differences are Richardson-combined to cancel the O(dt) term.
    Negative means entanglement appears immediately.
    """
    if coeffs.A1 == 0.0 and not np.any(coeffs.as_array()):
        return 0.0
    if dt is None:
        dt = 1e-3 / abs(coeffs.A1)
    axis = _axis(n)
    rho0 = BlochState.product(axis, -axis)
    q0 = ppt_min_eigenvalue(bloch_to_matrix(rho0))
    traj = evolve(rho0, coeffs, axis, t_end=dt, tol=tol, t_eval=[0.5 * dt, dt])
    q_half = ppt_min_eigenvalue(bloch_to_matrix(BlochState.from_vector(traj.components[1])))
    q_full = ppt_min_eigenvalue(bloch_to_matrix(BlochState.from_vector(traj.components[2])))
    slope_half = (q_half - q0) / (0.5 * dt)
    slope_full = (q_full - q0) / dt
    return float(2.0 * slope_half - slope_full)
