"""Flow-based hypergraph partition refinement."""

from hyperflow._core import (
    Hypergraph,
    ParseError,
    Partition,
    connectivity_metric,
    greedy_initial_partition,
    imbalance,
    parse_hmetis_file,
    parse_partition_file,
    refine,
    write_partition_file,
)

__all__ = [
    "Hypergraph",
    "ParseError",
    "Partition",
    "connectivity_metric",
    "greedy_initial_partition",
    "imbalance",
    "parse_hmetis_file",
    "parse_partition_file",
    "refine",
    "write_partition_file",
]
