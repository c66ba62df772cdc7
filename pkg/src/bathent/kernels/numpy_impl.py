"""Vectorized NumPy RHS of the two-atom Bloch equations."""
import numpy as np

from .dopri import make_integrator

_EYE = np.eye(3)


def bloch_rhs(y, coeffs, n):
    A1, B1, C1, A2, B2, C2 = coeffs
    r0 = y[0:3]
    r1 = y[3:6]
    m = y[6:15].reshape(3, 3)
    tau = m[0, 0] + m[1, 1] + m[2, 2]
    mn = m @ n      # n_k rho_ik
    mtn = m.T @ n   # n_k rho_ki
    nmn = n @ mn
    d0 = -4 * A1 * r0 - 4 * B1 * n - 2 * B2 * n * tau + 2 * B2 * mn - 2 * C1 * r0 + 2 * C1 * n * (n @ r0)
    d1 = -4 * A1 * r1 - 4 * B1 * n - 2 * B2 * n * tau + 2 * B2 * mtn - 2 * C1 * r1 + 2 * C1 * n * (n @ r1)
    dm = (
        -8 * A1 * m - 4 * A2 * m.T + 4 * A2 * tau * _EYE
        - 4 * B1 * (np.outer(n, r0) + np.outer(r1, n))
        - 2 * B2 * (np.outer(n, r1) + np.outer(r0, n))
        + 2 * B2 * (n @ (r1 + r0)) * _EYE
        - 4 * C1 * m - 4 * C2 * m.T
        + 4 * C2 * (np.outer(n, mn) + np.outer(mtn, n) - np.outer(n, n) * tau)
        + 2 * C1 * (np.outer(n, mtn) + np.outer(mn, n))
        + 4 * C2 * (tau - nmn) * _EYE
    )
    return np.concatenate((d0, d1, dm.ravel()))


integrate_segment = make_integrator(bloch_rhs)
