"""Canned reproductions of the published curves and the hydrogen-atom estimate."""
from __future__ import annotations

import csv
import io

from .config import fmt
from .model import UNBOUNDED, from_si
from .spectral import ratio_A_squared
from .sweep import FIGURES, SpecError, figure_spec, run_sweep
from .thresholds import critical_beta_omega, critical_temperature_kelvin, max_ratio_search

HYDROGEN_OMEGA = 1e14      # rad/s
HYDROGEN_L = 6.08e-6       # m
NEAR_BOUNDARY_Z_OVER_L = 1e-4
SEARCH_GRID = (0.5, 4.0, 1e-3)


def hydrogen_example() -> tuple[str, str]:
    rows = []
    for case, z in (("unbounded", UNBOUNDED), ("near-boundary", NEAR_BOUNDARY_Z_OVER_L * HYDROGEN_L)):
        geometry, _ = from_si(HYDROGEN_OMEGA, HYDROGEN_L, z, 0.0)
        ratio = ratio_A_squared(geometry)
        rows.append((case, geometry.omega * geometry.L, z / HYDROGEN_L, ratio,
                     critical_beta_omega(ratio), critical_temperature_kelvin(HYDROGEN_OMEGA, ratio)))
    lo, hi, step = SEARCH_GRID
    best = max_ratio_search(NEAR_BOUNDARY_Z_OVER_L, lo, hi, step)
    # temperature the boundary would allow at the optimal separation for this omega
    rows.append(("max-ratio", best.omegaL, NEAR_BOUNDARY_Z_OVER_L, best.ratio,
                 critical_beta_omega(best.ratio), critical_temperature_kelvin(HYDROGEN_OMEGA, best.ratio)))

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["case", "omegaL", "zOverL", "ratioA", "criticalBetaOmega", "criticalTemperatureK"])
    for r in rows:
        w.writerow([r[0]] + [fmt(v) for v in r[1:]])
    summary = (
        f"hydrogen-example: omega={HYDROGEN_OMEGA:g} rad/s L={HYDROGEN_L:g} m "
        f"Tc_unbounded={rows[0][5]:.3f} K Tc_near_boundary={rows[1][5]:.3f} K "
        f"omegaL*={best.omegaL:.4f} ratio*={best.ratio:.4f} "
        f"(grid omegaL in [{lo:g}, {hi:g}] step {step:g} at z/L={NEAR_BOUNDARY_Z_OVER_L:g}, golden-section refined)"
    )
    return buf.getvalue(), summary


def reproduce(name: str) -> tuple[str, str]:
    """Return ``(csv_text, summary_line)`` for one of :data:`FIGURES`."""
    if name == "hydrogen-example":
        return hydrogen_example()
    if name not in FIGURES:
        raise SpecError("figure", f"unknown figure {name!r}; choose from {', '.join(FIGURES)}")
    result = run_sweep(figure_spec(name))
    return result.csv, f"{name}: {result.rows} rows, {result.failed} failed"
