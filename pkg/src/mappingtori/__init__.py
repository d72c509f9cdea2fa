"""Chern-Simons partition functions of torus bundles over the circle.

The package computes, exactly up to floating-point summation, the
fixed-point sums, Gauss-sum trace formulas and modular-representation traces
for mapping tori of the 2-torus, for SU(2) and for the classical groups.
"""

from .errors import (
    ConventionError,
    CUnsupported,
    DegenerateFixedSet,
    DomainError,
    IllPosedSum,
    MappingToriError,
    ParabolicMonodromy,
    SingularLattice,
)
from .fixedpoints import FixedPointDatum, cs_invariant, fixed_points, theta_char
from .framing import PhaseComparison, general_phase_check, general_phase_prediction, psi, su2_phase_check
from .gausssums import Phase, lattice_gauss_sum, reciprocity_1d
from .intlinalg import coset_representatives, smith_normal_form
from .modulargroup import Kind, SL2Element, classify, dedekind_sum, rademacher_phi, word_decompose, word_evaluate
from .partition import (
    PartitionResult,
    g_lambda,
    rt_trace_su2,
    z_sqm_general,
    z_sqm_su2,
    z_trace_general_cosets,
    z_trace_general_weights,
    z_trace_su2,
)
from .rootsystems import RootSystem, build

__version__ = "0.1.0"

__all__ = [
    "ConventionError",
    "CUnsupported",
    "DegenerateFixedSet",
    "DomainError",
    "IllPosedSum",
    "MappingToriError",
    "ParabolicMonodromy",
    "SingularLattice",
    "FixedPointDatum",
    "cs_invariant",
    "fixed_points",
    "theta_char",
    "PhaseComparison",
    "general_phase_check",
    "general_phase_prediction",
    "psi",
    "su2_phase_check",
    "Phase",
    "lattice_gauss_sum",
    "reciprocity_1d",
    "coset_representatives",
    "smith_normal_form",
    "Kind",
    "SL2Element",
    "classify",
    "dedekind_sum",
    "rademacher_phi",
    "word_decompose",
    "word_evaluate",
    "PartitionResult",
    "g_lambda",
    "rt_trace_su2",
    "z_sqm_general",
    "z_sqm_su2",
    "z_trace_general_cosets",
    "z_trace_general_weights",
    "z_trace_su2",
    "RootSystem",
    "build",
]
