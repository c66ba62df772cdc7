"""Time the numba and pure-NumPy kernels on the same evolutions.

    python benchmarks/bench_backends.py [--repeat N]

Each backend is warmed up once (numba compiles or loads its cache) before timing.
"""
import argparse
import time

import numpy as np

from bathent import kernels
from bathent.dynamics import evolve
from bathent.model import AtomPairGeometry, ThermalBath
from bathent.spectral import kossakowski
from bathent.states import BlochState

CASES = [
    # (omegaL, zOverL, betaOmega, t_end in units of 1/A1)
    (2.027, 1e-4, 2.9, 30.0),
    (5.0, 0.5, 1.0, 30.0),
    (0.5, 2.0, 10.0, 200.0),
]


def _run_cases(tol):
    steps = 0
    finals = []
    for omegaL, zOverL, betaOmega, span in CASES:
        g = AtomPairGeometry.from_dimensionless(omegaL, zOverL)
        c = kossakowski(g, ThermalBath(betaOmega))
        traj = evolve(BlochState.excited_ground(), c, g.n, t_end=span / c.A1, tol=tol)
        steps += traj.accepted + traj.rejected
        finals.append(traj.components[-1])
    return steps, np.array(finals)


def bench(name, repeat, tol):
    kernels.use(name)
    _run_cases(tol)
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        steps, finals = _run_cases(tol)
        best = min(best, time.perf_counter() - t0)
    return best, steps, finals


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--tol", type=float, default=1e-10)
    args = parser.parse_args()

    results = {name: bench(name, args.repeat, args.tol) for name in kernels.BACKENDS}
    for name, (seconds, steps, _) in results.items():
        print(f"{name:6s} {seconds * 1e3:9.2f} ms  {steps} steps  {seconds / steps * 1e6:8.2f} us/step")
    numba_s, numpy_s = results["numba"][0], results["numpy"][0]
    gap = np.max(np.abs(results["numba"][2] - results["numpy"][2]))
    print(f"speedup {numpy_s / numba_s:.1f}x, max final-state difference {gap:.1e}")


if __name__ == "__main__":
    main()
