"""Coordination games with neutral options on finite graphs.

Core objects: :class:`Graph` (bitmask adjacency), strategy profiles (tuples of
small ints), :class:`VertexPartition` (equivalence class of profiles), and the
best-response dynamics in :mod:`coordgame.dynamics`. The catalogue module
enumerates equilibrium partitions of all small connected graphs; experiments
run seeded Monte Carlo sweeps on random graphs.
"""

from .catalogue import (
    CensusEntry,
    CensusSummary,
    build_census,
    enumerate_candidate_partitions,
    enumerate_connected_graphs,
    enumerate_equilibrium_partitions,
    expand,
    partitions_isomorphic,
)
from .dynamics import (
    CYCLE,
    EQUILIBRIUM,
    TIMEOUT,
    Outcome,
    best_response_set,
    payoff,
    random_profile,
    run,
    step,
    verify_cycle,
)
from .experiments import (
    BasinEstimate,
    HeatmapCell,
    SweepRecord,
    basin_sweep,
    connectedness_probability,
    estimate_basin,
    summarize_heatmap,
    threshold_curve,
)
from .formats import Graph6Error, emit_graph6, emit_partition_dot, parse_graph6
from .graphs import (
    Graph,
    complete,
    complete_bipartite,
    cycle,
    er_gnm,
    er_gnp,
    path,
    star,
)
from .isomorphism import canonical_form, graph_isomorphic
from .partitions import (
    VertexPartition,
    has_singleton_part,
    is_equilibrium,
    is_indecomposable,
    profile_to_partition,
    refine_to_connected,
    trivial_partition,
)
from .seeding import DEFAULT_SEED, as_rng, substream

__version__ = "0.1.0"

__all__ = [
    "BasinEstimate",
    "CYCLE",
    "CensusEntry",
    "CensusSummary",
    "DEFAULT_SEED",
    "EQUILIBRIUM",
    "Graph",
    "Graph6Error",
    "HeatmapCell",
    "Outcome",
    "SweepRecord",
    "TIMEOUT",
    "VertexPartition",
    "as_rng",
    "basin_sweep",
    "best_response_set",
    "build_census",
    "canonical_form",
    "complete",
    "complete_bipartite",
    "connectedness_probability",
    "cycle",
    "emit_graph6",
    "emit_partition_dot",
    "enumerate_candidate_partitions",
    "enumerate_connected_graphs",
    "enumerate_equilibrium_partitions",
    "er_gnm",
    "er_gnp",
    "estimate_basin",
    "expand",
    "graph_isomorphic",
    "has_singleton_part",
    "is_equilibrium",
    "is_indecomposable",
    "parse_graph6",
    "partitions_isomorphic",
    "path",
    "payoff",
    "profile_to_partition",
    "random_profile",
    "refine_to_connected",
    "run",
    "star",
    "step",
    "substream",
    "summarize_heatmap",
    "threshold_curve",
    "trivial_partition",
    "verify_cycle",
]
