"""Dormand-Prince 5(4) stepping loop, written in the subset numba can compile."""
import numpy as np

C2, C3, C4, C5 = 1 / 5, 3 / 10, 4 / 5, 8 / 9
A21 = 1 / 5
A31, A32 = 3 / 40, 9 / 40
A41, A42, A43 = 44 / 45, -56 / 15, 32 / 9
A51, A52, A53, A54 = 19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729
A61, A62, A63, A64, A65 = 9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656
B1, B3, B4, B5, B6 = 35 / 384, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84
# fifth minus fourth order weights
E1, E3, E4, E5, E6, E7 = 71 / 57600, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40

SAFETY = 0.9
MIN_FACTOR = 0.2
MAX_FACTOR = 5.0

DONE, BUFFER_FULL, UNDERFLOW, NONFINITE = 0, 1, 2, 3


def make_integrator(rhs):
    """Build ``integrate_segment`` around an RHS ``rhs(y, coeffs, n) -> dy``.

    ``integrate_segment(y, t, t_end, h, tol, coeffs, n, ts_out, ys_out, record)``
    advances ``y`` from ``t`` to ``t_end`` with max-norm local error <= tol.  When
    ``record`` is set each accepted step is written to the output buffers; the call
    returns early with ``BUFFER_FULL`` once they are full.

    Returns ``(status, count, t, y, h, accepted, rejected, max_err)``.
    """

    def integrate_segment(y, t, t_end, h, tol, coeffs, n, ts_out, ys_out, record):
        y = y.copy()
        count = 0
        accepted = 0
        rejected = 0
        max_err = 0.0
        cap = ts_out.shape[0]
        k1 = rhs(y, coeffs, n)
        while t < t_end:
            if record and count >= cap:
                return BUFFER_FULL, count, t, y, h, accepted, rejected, max_err
            last = False
            if h >= t_end - t:
                h = t_end - t
                last = True
            if h <= 8.0 * 2.220446049250313e-16 * max(abs(t), 1.0) or not np.isfinite(h):
                return UNDERFLOW, count, t, y, h, accepted, rejected, max_err
            k2 = rhs(y + h * (A21 * k1), coeffs, n)
            k3 = rhs(y + h * (A31 * k1 + A32 * k2), coeffs, n)
            k4 = rhs(y + h * (A41 * k1 + A42 * k2 + A43 * k3), coeffs, n)
            k5 = rhs(y + h * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4), coeffs, n)
            k6 = rhs(y + h * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 + A65 * k5), coeffs, n)
            y_new = y + h * (B1 * k1 + B3 * k3 + B4 * k4 + B5 * k5 + B6 * k6)
            k7 = rhs(y_new, coeffs, n)
            err_vec = h * (E1 * k1 + E3 * k3 + E4 * k4 + E5 * k5 + E6 * k6 + E7 * k7)
            err = np.max(np.abs(err_vec))
            if not np.isfinite(err):
                if h < 1e-300:
                    return NONFINITE, count, t, y, h, accepted, rejected, max_err
                h *= MIN_FACTOR
                rejected += 1
                continue
            if err <= tol:
                t = t_end if last else t + h
                y = y_new
                k1 = k7
                accepted += 1
                if err > max_err:
                    max_err = err
                if record:
                    ts_out[count] = t
                    ys_out[count, :] = y
                    count += 1
                if err == 0.0:
                    factor = MAX_FACTOR
                else:
                    factor = min(MAX_FACTOR, max(MIN_FACTOR, SAFETY * (tol / err) ** 0.2))
                if not last:
                    h *= factor
                else:
                    h = max(h, h * factor) if factor > 1.0 else h
            else:
                rejected += 1
                h *= max(MIN_FACTOR, SAFETY * (tol / err) ** 0.2)
        return DONE, count, t, y, h, accepted, rejected, max_err

    return integrate_segment
