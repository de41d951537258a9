"""Quantum-walk transport on finite Penrose rhombus lattices.

The package builds decagonal Penrose patches by triangle subdivision,
assembles three-parameter hopping Hamiltonians on their bond families,
and evaluates continuous-time quantum-walk transport: time evolution,
exact long-time averages via eigenspace projectors, return-probability
bounds, and grid sweeps of the mean return probability.
"""

from .ctqw import (
    evolve_distribution,
    lta_diagonal,
    lta_exact,
    lta_numeric,
    return_bound_projector,
    return_bound_quartic,
    return_series,
    snapshot,
    transition_probability,
    verify_zero_state,
)
from .hamiltonian import (
    EDGE_MODEL,
    FULL_MODEL,
    INVERSE_DISTANCE_MODEL,
    PRESETS,
    THIN_MODEL,
    Hamiltonian,
    HoppingModel,
    build,
)
from .lattice import (
    EDGE_LENGTH,
    FAT_DIAGONAL,
    PHI,
    THIN_DIAGONAL,
    BondSet,
    LatticeError,
    PenroseLattice,
    classify_pairs,
    from_json_dict,
    generate,
    load_json,
    resolve_node,
    save_json,
    structural_bonds,
    to_json_dict,
)
from .spectral import SolverError, Spectrum, cluster_eigenvalues, decompose
from .transport import (
    EfficiencyReport,
    SweepGrid,
    alpha_bar,
    alpha_bar_squared_lta,
    average_return_probability,
    default_axis,
    efficiency_report,
    resolve_threads,
    sweep,
    threshold_table,
    zero_state_support_profile,
)

__version__ = "0.1.0"

__all__ = [
    "EDGE_LENGTH",
    "EDGE_MODEL",
    "FAT_DIAGONAL",
    "FULL_MODEL",
    "INVERSE_DISTANCE_MODEL",
    "PHI",
    "PRESETS",
    "THIN_DIAGONAL",
    "THIN_MODEL",
    "BondSet",
    "EfficiencyReport",
    "Hamiltonian",
    "HoppingModel",
    "LatticeError",
    "PenroseLattice",
    "SolverError",
    "Spectrum",
    "SweepGrid",
    "alpha_bar",
    "alpha_bar_squared_lta",
    "average_return_probability",
    "build",
    "classify_pairs",
    "cluster_eigenvalues",
    "decompose",
    "default_axis",
    "efficiency_report",
    "evolve_distribution",
    "from_json_dict",
    "generate",
    "load_json",
    "lta_diagonal",
    "lta_exact",
    "lta_numeric",
    "resolve_node",
    "resolve_threads",
    "return_bound_projector",
    "return_bound_quartic",
    "return_series",
    "save_json",
    "snapshot",
    "structural_bonds",
    "sweep",
    "threshold_table",
    "to_json_dict",
    "transition_probability",
    "verify_zero_state",
    "zero_state_support_profile",
]
