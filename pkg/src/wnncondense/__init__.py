"""Nearest-neighbor condensing in metric spaces with weighted-distance
classifiers: greedy and exact condensers, a sample-compression codec,
navigating-net accelerated queries, and an evaluation harness."""

from ._kernels import IMPL_NAME as kernel_impl
from .classifier import (
    ConsistencyReport,
    WeightedCondensedSet,
    classify,
    classify_batch,
    consistency_check,
    generalization_bound,
)
from .compression import (
    CompressionCode,
    ReconstructedWnn,
    encode,
    load_code,
    reconstruct,
    save_code,
)
from .condense import GreedyTrace, greedy_wnn, hart_cnn, mss, rss
from .core import (
    Circle,
    Dataset,
    LabeledPoint,
    Line,
    MetricKind,
    WeightFn,
    decision_boundary_circle,
    distance,
    enemy_distances,
    nearest_enemy_distance,
    weighted_distance,
)
from .datasets import (
    GeneratorSpec,
    SplitSpec,
    gen_bc_friendly,
    gen_blobs,
    gen_circle,
    gen_two_lines,
    generate,
    load_condensed_csv,
    load_csv,
    save_condensed_csv,
    save_csv,
    split,
)
from .evaluate import CondenseReport, evaluate, run_sweep
from .exact import (
    CoverInstance,
    ExactResult,
    IPInstance,
    build_nn_ip,
    build_wnn_cover,
    exact_nn_condense,
    exact_wnn_condense,
    export_lp,
    ip_feasible,
)
from .navnet import (
    NavTree,
    NetHierarchy,
    QueryResult,
    brute_force_wnn,
    build_navigating_net,
    format_hierarchy,
    wnn_query,
    wnn_query_scaled,
)

__version__ = "0.1.0"

__all__ = [
    "Circle",
    "CompressionCode",
    "CondenseReport",
    "ConsistencyReport",
    "CoverInstance",
    "Dataset",
    "ExactResult",
    "GeneratorSpec",
    "GreedyTrace",
    "IPInstance",
    "LabeledPoint",
    "Line",
    "MetricKind",
    "NavTree",
    "NetHierarchy",
    "QueryResult",
    "ReconstructedWnn",
    "SplitSpec",
    "WeightFn",
    "WeightedCondensedSet",
    "brute_force_wnn",
    "build_navigating_net",
    "build_nn_ip",
    "build_wnn_cover",
    "classify",
    "classify_batch",
    "consistency_check",
    "decision_boundary_circle",
    "distance",
    "encode",
    "enemy_distances",
    "evaluate",
    "exact_nn_condense",
    "exact_wnn_condense",
    "export_lp",
    "format_hierarchy",
    "gen_bc_friendly",
    "gen_blobs",
    "gen_circle",
    "gen_two_lines",
    "generalization_bound",
    "generate",
    "greedy_wnn",
    "hart_cnn",
    "ip_feasible",
    "kernel_impl",
    "load_code",
    "load_condensed_csv",
    "load_csv",
    "mss",
    "nearest_enemy_distance",
    "reconstruct",
    "rss",
    "run_sweep",
    "save_code",
    "save_condensed_csv",
    "save_csv",
    "split",
    "weighted_distance",
    "wnn_query",
    "wnn_query_scaled",
]
