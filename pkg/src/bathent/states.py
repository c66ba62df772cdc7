"""Two-qubit density matrices and their 15-component Bloch form.

Basis order is |ee>, |eg>, |ge>, |gg> with sigma_3|e> = +|e>.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SIGMA0 = np.eye(2, dtype=complex)
SIGMA = np.array([
    [[0, 1], [1, 0]],
    [[0, -1j], [1j, 0]],
    [[1, 0], [0, -1]],
], dtype=complex)

# sigma_i (x) sigma_0, sigma_0 (x) sigma_i and sigma_i (x) sigma_j
_S_I0 = np.array([np.kron(s, SIGMA0) for s in SIGMA])
_S_0I = np.array([np.kron(SIGMA0, s) for s in SIGMA])
_S_IJ = np.array([[np.kron(a, b) for b in SIGMA] for a in SIGMA])
_SY_SY = np.kron(SIGMA[1], SIGMA[1])

HERMITIAN_TOL = 1e-10
NEGATIVE_TOL = 1e-10


class InvalidStateError(ValueError):
    pass


@dataclass(frozen=True)
class BlochState:
    rho0i: np.ndarray
    rhoi0: np.ndarray
    rhoij: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "rho0i", np.asarray(self.rho0i, dtype=float).reshape(3))
        object.__setattr__(self, "rhoi0", np.asarray(self.rhoi0, dtype=float).reshape(3))
        object.__setattr__(self, "rhoij", np.asarray(self.rhoij, dtype=float).reshape(3, 3))

    @property
    def tau(self) -> float:
        return float(np.trace(self.rhoij))

    def to_vector(self) -> np.ndarray:
        """Flat layout ``[rho0i, rhoi0, rhoij (row-major)]``."""
        return np.concatenate([self.rho0i, self.rhoi0, self.rhoij.ravel()])

    @classmethod
    def from_vector(cls, v) -> "BlochState":
        v = np.asarray(v, dtype=float)
        if v.shape != (15,):
            raise ValueError(f"expected 15 Bloch components, got shape {v.shape}")
        return cls(v[0:3], v[3:6], v[6:15].reshape(3, 3))

    @classmethod
    def maximally_mixed(cls) -> "BlochState":
        return cls(np.zeros(3), np.zeros(3), np.zeros((3, 3)))

    @classmethod
    def product(cls, first, second) -> "BlochState":
        """Product of two single-qubit states given by their Bloch vectors."""
        a, b = np.asarray(first, float), np.asarray(second, float)
        return cls(b, a, np.outer(a, b))

    @classmethod
    def excited_ground(cls) -> "BlochState":
        """|e><e| (x) |g><g| along the third axis."""
        return cls.product([0, 0, 1], [0, 0, -1])


def bloch_to_matrix(state: BlochState) -> np.ndarray:
    rho = np.eye(4, dtype=complex)
    rho += np.einsum("i,iab->ab", state.rho0i, _S_0I)
    rho += np.einsum("i,iab->ab", state.rhoi0, _S_I0)
    rho += np.einsum("ij,ijab->ab", state.rhoij, _S_IJ)
    return rho / 4.0


def check_density_matrix(rho: np.ndarray, tol: float = HERMITIAN_TOL) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise InvalidStateError(f"expected a 4x4 matrix, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > tol:
        raise InvalidStateError("matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > tol:
        raise InvalidStateError(f"trace is {np.trace(rho).real!r}, expected 1")
    return rho


def matrix_to_bloch(rho: np.ndarray) -> BlochState:
    rho = check_density_matrix(rho)
    rho0i = np.einsum("ab,iba->i", rho, _S_0I).real
    rhoi0 = np.einsum("ab,iba->i", rho, _S_I0).real
    rhoij = np.einsum("ab,ijba->ij", rho, _S_IJ).real
    return BlochState(rho0i, rhoi0, rhoij)


def partial_transpose(rho: np.ndarray) -> np.ndarray:
    """Transpose on the second qubit."""
    return np.asarray(rho).reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)


def ppt_min_eigenvalue(rho: np.ndarray) -> float:
    """Smallest eigenvalue of the partial transpose; negative iff entangled."""
    return float(np.linalg.eigvalsh(partial_transpose(rho))[0])


def _psd_sqrt(rho: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(rho)
    if w[0] < -NEGATIVE_TOL:
        raise InvalidStateError(f"density matrix has eigenvalue {w[0]!r}")
    # eigenvalues at rounding level would contribute sqrt(eps) noise
    w = np.where(w > 4 * np.finfo(float).eps * w[-1], w, 0.0)
    return (v * np.sqrt(w)) @ v.conj().T


def concurrence(rho: np.ndarray) -> float:
    """Wootters concurrence.

    The square roots of the eigenvalues of ``rho rho_tilde`` are the singular values
    of ``sqrt(rho) (sy x sy) sqrt(rho)*``, which avoids taking square roots of
    rounding noise for rank-deficient states.
    """
    rho = check_density_matrix(rho)
    rho = 0.5 * (rho + rho.conj().T)
    root = _psd_sqrt(rho)
    lam = np.linalg.svd(root @ _SY_SY @ root.conj(), compute_uv=False)
    return float(max(lam[0] - lam[1] - lam[2] - lam[3], 0.0))


def min_eigenvalue(rho: np.ndarray) -> float:
    return float(np.linalg.eigvalsh(np.asarray(rho))[0])
