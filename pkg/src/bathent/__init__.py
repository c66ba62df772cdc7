"""Entanglement generation between two atoms in a thermal scalar bath near a reflecting plane."""
from .dynamics import (IntegrationError, Trajectory, WitnessVectors, birth_witness_slope, creation_condition,
                       creation_condition_closed, creation_lhs, evolve, lindblad_rhs)
from .equilibrium import (EquilibriumReport, asymptotic_state, asymptotic_state_zero_sep,
                          boundary_independence_check, equilibrium_concurrence_zero_sep, equilibrium_report,
                          persistence_condition)
from .model import (CODATA, UNBOUNDED, AtomPairGeometry, PhysicalConstants, ThermalBath, dimensionless,
                    from_si, to_si)
from .spectral import (KossakowskiSet, kossakowski, kossakowski_matrix, ratio_A_far, ratio_A_near_boundary,
                       ratio_A_squared, ratio_B_squared, sinc, spectral_cross, spectral_same)
from .states import (BlochState, bloch_to_matrix, concurrence, matrix_to_bloch, partial_transpose,
                     ppt_min_eigenvalue)
from .thresholds import critical_temperature, max_ratio_search

__version__ = "0.1.0"

__all__ = [
    "asymptotic_state",
    "asymptotic_state_zero_sep",
    "AtomPairGeometry",
    "birth_witness_slope",
    "bloch_to_matrix",
    "BlochState",
    "boundary_independence_check",
    "CODATA",
    "concurrence",
    "creation_condition",
    "creation_condition_closed",
    "creation_lhs",
    "critical_temperature",
    "dimensionless",
    "equilibrium_concurrence_zero_sep",
    "equilibrium_report",
    "EquilibriumReport",
    "evolve",
    "from_si",
    "IntegrationError",
    "kossakowski",
    "kossakowski_matrix",
    "KossakowskiSet",
    "lindblad_rhs",
    "matrix_to_bloch",
    "max_ratio_search",
    "partial_transpose",
    "persistence_condition",
    "PhysicalConstants",
    "ppt_min_eigenvalue",
    "ratio_A_far",
    "ratio_A_near_boundary",
    "ratio_A_squared",
    "ratio_B_squared",
    "sinc",
    "spectral_cross",
    "spectral_same",
    "ThermalBath",
    "to_si",
    "Trajectory",
    "UNBOUNDED",
    "WitnessVectors",
]
