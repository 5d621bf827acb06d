"""Parking functions on ``m`` cars and ``n`` spots: simulation, exact counting,
moments, uniform sampling, and the interval parking function / labelled tree
bijection."""

__version__ = "0.1.0"

from .core import (
    CircularOutcome,
    FailureReport,
    NotParkingFunctionError,
    Outcome,
    conjugate,
    is_parking_function,
    leq_c,
    outcome,
    park,
    park_circular,
    unattempted_spots,
)
from .enumeration import (
    BudgetExceededError,
    completion_thresholds,
    count_pf,
    count_pf_composition,
    count_pf_contiguous,
    count_pf_coord_gap,
    count_pf_gap,
    count_pf_prefix,
    count_pf_two_gaps,
    count_u_parking,
    enumerate_pf,
    gaps_to_prefix,
    is_u_parking_function,
    ps_volume,
)
from .multishuffle import MultiShuffleDecomp, decompose, interleave, is_multishuffle, max_completion
from .moments import (
    AsymptoticContext,
    MomentReport,
    asym_mixed_moment,
    asym_refined,
    asym_special_mn,
    exact_gap_moments,
    exact_mixed_moment,
    exact_moment_coord,
    exact_stat,
    moment_report,
    tree_function_values,
)
from .abel import abel_multinomial
from .coxeter import normal_form, perm_from_normal_form
from .ipf import (
    EdgeLabeledTree,
    IntervalPF,
    SpecOrder,
    count_ipf,
    ipf_to_tree,
    is_ipf,
    tree_to_bipartite,
    tree_to_ipf,
)
from .sampler import McEstimate, SampleConfig, mc_report, sample_ipf_square, sample_pf, sample_pf_batch
