"""Kernels of digraphs and specialized equilibria of public-goods games on them."""

from .digraph import (
    CapExceededError,
    CycleParityReport,
    Digraph,
    GraphFormatError,
    cycle_parity,
    in_neighbors,
    is_acyclic,
    out_neighbors,
    parse_digraph,
    parse_json_digraph,
    partial_symmetrizations,
    sample_gnp,
    strongly_connected_components,
    symmetrize,
)
from .dynamics import Analytic, StabilityConfig, StabilityVerdict, iterate_best_response, probe_stability
from .elimination import EliminationTrace, eliminate, lift_equilibrium
from .game import (
    BudgetExhaustedError,
    GameParams,
    best_response,
    contributors_to_profile,
    is_nash,
    is_specialized_profile,
    payoff,
    specialized_equilibria,
)
from .kernels import (
    KernelReport,
    WeightedDigraph,
    enumerate_kernels,
    has_kernel,
    kernel_order,
    verify_kernel,
    verify_weighted_kernel,
)
from .montecarlo import ExperimentConfig, ExperimentResult, run_existence_experiment
from .reciprocity import check_monotonicity, counterexample_interior, orient_from_mis

__version__ = "0.1.0"
