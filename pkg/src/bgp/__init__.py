"""Min-max balanced connected graph partition.

Partition a connected graph's vertices into k nonempty parts, each inducing a
connected subgraph, minimizing the largest part. Local-improvement
approximations for k=3 (ratio 3/2), any fixed k>=3 (ratio k/2), and k=4
(ratio 24/13), with machine-checkable certificates, an exact brute-force
oracle for small instances, graph generators, and a ratio benchmark harness.
"""

from .approx3 import StallStructure3, approx3, try_merge3, try_pull3
from .approx4 import (
    BalancedCut,
    StallStructure4,
    StarCenter,
    approx4,
    bipartition_or_star,
    classify_case,
    try_bridge1,
    try_bridge2,
    try_bridge3,
    try_merge4,
    try_pull4,
)
from .approxk import approx_k
from .bench import BenchRow, RatioReport, claimed_ratio, ratio_report, run_algorithm
from .cli import emit_dot
from .errors import (
    BgpError,
    DegenerateSubset,
    DisconnectedInput,
    DisconnectedSubset,
    EmptySubset,
    InstanceTooLarge,
    InvalidSpec,
    KTooLarge,
    KTooSmall,
    MalformedEdge,
    MismatchedShape,
    NTooSmall,
    OverlappingSets,
    StructureViolation,
    SubsetTooSmall,
)
from .generators import CASE_FAMILIES, FAMILIES, GeneratorSpec, generate, generate_with_partition
from .graph import (
    Graph,
    VertexSet,
    boundary_vertices,
    build_graph,
    components_of_subset,
    format_edge_list,
    is_connected_subset,
    most_balanced_tree_cut,
    parse_edge_list,
    parts_adjacent,
    spanning_tree,
)
from .oracle import exact_opt, enumerate_connected_partitions, oracle_limit
from .partition import (
    Certificate,
    Move,
    OpRecord,
    Partition,
    PartitionRank,
    PartitionResult,
    better_than,
    check_feasible,
    feasibility_error,
    initial_partition,
    lower_bound,
    rank,
)
from .verify import certificate_error, verify_certificate

__all__ = [name for name in dir() if not name.startswith("_")]
