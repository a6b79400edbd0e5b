"""Vehicle routing with stochastic demands on tree networks.

A depot-rooted tree, one vehicle of capacity Q, and customers with
random integer demands revealed on arrival.  The library builds fixed
depth-first visiting orders, executes the split and unsplit restocking
policies with a uniformly random initial load, computes lower and
upper bound formulas, evaluates expected costs exactly or by Monte
Carlo, and cross-checks everything against brute-force oracles.
"""

from .bounds import (
    BoundSet,
    bertsimas_lb,
    bound_set,
    clairvoyant_edge_lb,
    tour_floor,
    trace_certificate,
)
from .demand import (
    DemandModel,
    DemandPMF,
    Realization,
    enumerate_joint,
    expectation,
    joint_support_size,
    make_pmf,
    point_model,
    replication_rng,
    sample_realization,
)
from .errors import (
    BadCapacityError,
    BadParamsError,
    CycleOrForestError,
    InconsistentRealizationError,
    InstanceSyntaxError,
    InvalidOrderError,
    MassAtZeroError,
    NegativeMassError,
    NonpositiveLengthError,
    NotNormalizedError,
    OutOfRangeError,
    SchemaError,
    TooLargeError,
    TreeVrpsdError,
    UnknownVertexError,
    ValidationError,
)
from .evaluator import (
    Estimate,
    EvalReport,
    evaluate,
    exact_expected_cost,
    monte_carlo_cost,
)
from .instance_io import (
    GeneratorParams,
    InstanceDocument,
    generate,
    generate_document,
    parse_document,
    parse_instance,
    parse_pmf_spec,
    serialize_document,
    serialize_instance,
    write_corpus,
)
from .oracle import (
    PartitionSolution,
    expected_clairvoyant_lb,
    optimal_unsplit_partition,
)
from .policy import (
    RunTrace,
    WalkGeometry,
    arithmetic_breakpoints,
    breakpoint_probability_exact,
    format_trace,
    run_split,
    run_unsplit,
)
from .tree import (
    TreeInstance,
    build_tree,
    closed_walk_length,
    check_preorder,
    dfs_order,
    path_distance,
)

__version__ = "0.1.0"

__all__ = [
    "BadCapacityError",
    "BadParamsError",
    "BoundSet",
    "CycleOrForestError",
    "DemandModel",
    "DemandPMF",
    "Estimate",
    "EvalReport",
    "GeneratorParams",
    "InconsistentRealizationError",
    "InstanceDocument",
    "InstanceSyntaxError",
    "InvalidOrderError",
    "MassAtZeroError",
    "NegativeMassError",
    "NonpositiveLengthError",
    "NotNormalizedError",
    "OutOfRangeError",
    "PartitionSolution",
    "Realization",
    "RunTrace",
    "SchemaError",
    "TooLargeError",
    "TreeInstance",
    "TreeVrpsdError",
    "UnknownVertexError",
    "ValidationError",
    "WalkGeometry",
    "arithmetic_breakpoints",
    "bertsimas_lb",
    "bound_set",
    "breakpoint_probability_exact",
    "build_tree",
    "check_preorder",
    "clairvoyant_edge_lb",
    "closed_walk_length",
    "dfs_order",
    "enumerate_joint",
    "evaluate",
    "exact_expected_cost",
    "expectation",
    "expected_clairvoyant_lb",
    "format_trace",
    "generate",
    "generate_document",
    "joint_support_size",
    "make_pmf",
    "monte_carlo_cost",
    "optimal_unsplit_partition",
    "parse_document",
    "parse_instance",
    "parse_pmf_spec",
    "path_distance",
    "point_model",
    "replication_rng",
    "run_split",
    "run_unsplit",
    "sample_realization",
    "serialize_document",
    "serialize_instance",
    "tour_floor",
    "trace_certificate",
    "write_corpus",
]
