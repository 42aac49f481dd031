"""matchkit: stable-marriage engines across the transferability spectrum.

Engines cover fully non-transferable stability (blocking pairs and
deferred acceptance), fully transferable stability (optimal assignment,
blocking chains, dual cuts), partial-transfer stability parameterized
by two sharing levels, and cooperative-game core verification for five
pairwise bargaining families, plus brute-force oracles and a seeded
plane sweep over the sharing-level square.
"""

from .bargaining import (
    AssumptionReport,
    BargainingModel,
    MODEL_KINDS,
    canonical_fnt_cuts,
    check_assumption,
    in_feasible_set,
    in_interior,
    search_core,
    verify_core_point,
)
from .errors import (
    DimensionMismatchError,
    DomainError,
    InvalidMatchingError,
    MalformedInputError,
    MatchkitError,
    NonFiniteEntryError,
    NotCyclicallyMonotoneError,
    PreconditionError,
    SizeLimitError,
)
from .instances import (
    CutVector,
    Instance,
    Matching,
    Matrix,
    PQParams,
    PreferenceProfile,
    combined_rewards,
    parse_instance,
    parse_matching,
    preference_orders,
    random_instance,
    serialize_instance,
    serialize_matching,
)
from .nontransferable import (
    GaleShapleyResult,
    MenOptimalityReport,
    enumerate_fnt_stable,
    find_fnt_blocking_pairs,
    gale_shapley,
    gale_shapley_detailed,
    verify_men_optimality,
)
from .partial_transfer import (
    PQChainWitness,
    SweepCell,
    SweepReport,
    check_pq_monotonicity,
    clip_p,
    counterexample_instance,
    delta_q,
    delta_r,
    exists_pq_stable,
    find_pq_blocking_chain,
    mixed_instance_stream,
    pq_plane_sweep,
)
from .rng import IntegerRange, SplitMix64, Uniform01, derive_seed
from .tolerance import DEFAULT_EPS, resolve_eps
from .transferable import (
    ChainWitness,
    bruteforce_max_matching,
    chain_potentials,
    check_optimality_of_cuts,
    dual_cuts,
    is_cyclically_monotone,
    optimal_assignment,
    verify_ft_core,
)

__version__ = "0.1.0"

__all__ = [
    "AssumptionReport",
    "BargainingModel",
    "ChainWitness",
    "CutVector",
    "DEFAULT_EPS",
    "DimensionMismatchError",
    "DomainError",
    "GaleShapleyResult",
    "Instance",
    "IntegerRange",
    "InvalidMatchingError",
    "MODEL_KINDS",
    "MalformedInputError",
    "Matching",
    "MatchkitError",
    "Matrix",
    "MenOptimalityReport",
    "NonFiniteEntryError",
    "NotCyclicallyMonotoneError",
    "PQChainWitness",
    "PQParams",
    "PreconditionError",
    "PreferenceProfile",
    "SizeLimitError",
    "SplitMix64",
    "SweepCell",
    "SweepReport",
    "Uniform01",
    "bruteforce_max_matching",
    "canonical_fnt_cuts",
    "chain_potentials",
    "check_assumption",
    "check_optimality_of_cuts",
    "check_pq_monotonicity",
    "clip_p",
    "combined_rewards",
    "counterexample_instance",
    "delta_q",
    "delta_r",
    "derive_seed",
    "dual_cuts",
    "enumerate_fnt_stable",
    "exists_pq_stable",
    "find_fnt_blocking_pairs",
    "find_pq_blocking_chain",
    "gale_shapley",
    "gale_shapley_detailed",
    "in_feasible_set",
    "in_interior",
    "is_cyclically_monotone",
    "mixed_instance_stream",
    "optimal_assignment",
    "parse_instance",
    "parse_matching",
    "pq_plane_sweep",
    "preference_orders",
    "random_instance",
    "resolve_eps",
    "search_core",
    "serialize_instance",
    "serialize_matching",
    "verify_core_point",
    "verify_ft_core",
    "verify_men_optimality",
]
