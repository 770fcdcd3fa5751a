"""Find induced non-shortest paths (trails) between two graph vertices,
or certify that none exist."""

from .graph import (
    Graph,
    GraphError,
    Path,
    bfs_heights,
    is_induced_path,
    load_graph,
    parse_edgelist,
    format_edgelist,
    verify_trail,
)
from .oracle import find_trail_brute
from .straight import StraightContext, build_straight_context, is_uv_straight, twist_pair
from .straighten import straighten
from .trailblazer import SweepConfig, TrailReport, run_pipeline

__all__ = [
    "Graph",
    "GraphError",
    "Path",
    "StraightContext",
    "SweepConfig",
    "TrailReport",
    "bfs_heights",
    "build_straight_context",
    "find_trail_brute",
    "format_edgelist",
    "is_induced_path",
    "is_uv_straight",
    "load_graph",
    "parse_edgelist",
    "run_pipeline",
    "straighten",
    "twist_pair",
    "verify_trail",
]

__version__ = "0.1.0"
