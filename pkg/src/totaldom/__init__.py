"""Total (k,r)-domination in graphs: exact and randomized constructions, bounds, G(n,p) experiments."""

__version__ = "0.1.0"

from .graph import (
    CAGES,
    INFINITE,
    UNREACHABLE,
    Graph,
    GraphError,
    bfs_distances,
    build_graph,
    diameter,
    girth,
    k_neighborhood,
    lcf_graph,
    load_graph,
    min_degree,
    named_graph,
)
from .domination import (
    CapExceededError,
    DominationInstance,
    DominationResult,
    InfeasibleError,
    dominator_count,
    exact_gamma,
    feasibility,
    greedy_heuristic,
    is_total_kr_dominating,
)
from .random_graph import GnpSpec, bollobas_p, compare_thresholds, sample_gnp, threshold_p
from .construction import ConstructionTrace, chernoff_tail, construct, theorem3_bound
from .bounds import failure_bound, janson_delta, janson_mu, janson_probability_bound
from .experiments import (
    ExperimentReport,
    run_bad_vertex_experiment,
    run_construction_sweep,
    run_threshold_experiment,
)
