"""Exact odd-cycle homomorphism counts in (eps, d)-dense graphs."""

from .density import (
    DensityCertificate,
    DensityParams,
    DensityStatus,
    MinimizerResult,
    WeightFunction,
    check_density_exact,
    check_density_heuristic,
    lemma_f_verify,
    min_density_ratio,
    weighted_min_exact,
    weighted_min_grid_oracle,
)
from .graph import FamilySpec, Graph, from_edge_list, gen_family, gen_random, induced_edge_count, to_edge_list
from .homcount import (
    WalkTable,
    blakley_roy_check,
    brute_force_cycle_homs,
    count_cycle_homs,
    count_path_homs,
    cycle_homs_via_decomposition,
    walk_table,
)
from .verify import ScanSpec, audit_proof_chain, scan_family, verify_main_theorem

__version__ = "0.1.0"
