"""Loop-form RHS compiled with numba."""
import numba
import numpy as np

from .dopri import make_integrator


@numba.njit(cache=True)
def bloch_rhs(y, coeffs, n):
    A1, B1, C1, A2, B2, C2 = coeffs[0], coeffs[1], coeffs[2], coeffs[3], coeffs[4], coeffs[5]
    out = np.empty(15)
    tau = y[6] + y[10] + y[14]
    mn = np.zeros(3)
    mtn = np.zeros(3)
    for i in range(3):
        for k in range(3):
            mn[i] += y[6 + 3 * i + k] * n[k]
            mtn[i] += y[6 + 3 * k + i] * n[k]
    n_r0 = n[0] * y[0] + n[1] * y[1] + n[2] * y[2]
    n_r1 = n[0] * y[3] + n[1] * y[4] + n[2] * y[5]
    nmn = n[0] * mn[0] + n[1] * mn[1] + n[2] * mn[2]
    for i in range(3):
        out[i] = (-4 * A1 * y[i] - 4 * B1 * n[i] - 2 * B2 * n[i] * tau + 2 * B2 * mn[i]
                  - 2 * C1 * y[i] + 2 * C1 * n[i] * n_r0)
        out[3 + i] = (-4 * A1 * y[3 + i] - 4 * B1 * n[i] - 2 * B2 * n[i] * tau + 2 * B2 * mtn[i]
                      - 2 * C1 * y[3 + i] + 2 * C1 * n[i] * n_r1)
    for i in range(3):
        for j in range(3):
            mij = y[6 + 3 * i + j]
            mji = y[6 + 3 * j + i]
            v = (-8 * A1 * mij - 4 * A2 * mji
                 - 4 * B1 * (n[i] * y[j] + n[j] * y[3 + i])
                 - 2 * B2 * (n[i] * y[3 + j] + n[j] * y[i])
                 - 4 * C1 * mij - 4 * C2 * mji
                 + 4 * C2 * (n[i] * mn[j] + n[j] * mtn[i] - n[i] * n[j] * tau)
                 + 2 * C1 * (n[i] * mtn[j] + n[j] * mn[i]))
            if i == j:
                v += 4 * A2 * tau + 2 * B2 * (n_r1 + n_r0) + 4 * C2 * (tau - nmn)
            out[6 + 3 * i + j] = v
    return out


integrate_segment = numba.njit(cache=True)(make_integrator(bloch_rhs))
