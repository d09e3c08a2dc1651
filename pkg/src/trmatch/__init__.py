"""Time-respecting subgraph matching in directed temporal networks."""

from .constraints import (
    Threshold,
    embedding_time_respecting,
    node_precedence_ok,
    node_window_ok,
    pair_time_respecting,
)
from .danalysis import (
    DeltaDistribution,
    DSchedule,
    adjacent_deltas,
    derive_schedule,
    detect_elbow,
)
from .engine import (
    Embedding,
    SearchStats,
    Strategy,
    embedding_json,
    enumerate_bruteforce,
    extract_max_trs,
    match_static,
    match_time_and_topology,
    match_time_then_topology,
    match_topology_then_time,
    run_strategy,
)
from .errors import ParseError, ResourceLimitError, SearchTimeout
from .graphs import (
    Interaction,
    QueryGraph,
    TemporalGraph,
    parse_edge_list,
    parse_query_edge_list,
    write_edge_list,
    write_query_edge_list,
)

__all__ = [
    "DeltaDistribution",
    "DSchedule",
    "Embedding",
    "Interaction",
    "ParseError",
    "QueryGraph",
    "ResourceLimitError",
    "SearchStats",
    "SearchTimeout",
    "Strategy",
    "TemporalGraph",
    "Threshold",
    "adjacent_deltas",
    "derive_schedule",
    "detect_elbow",
    "embedding_json",
    "embedding_time_respecting",
    "enumerate_bruteforce",
    "extract_max_trs",
    "match_static",
    "match_time_and_topology",
    "match_time_then_topology",
    "match_topology_then_time",
    "node_precedence_ok",
    "node_window_ok",
    "pair_time_respecting",
    "parse_edge_list",
    "parse_query_edge_list",
    "run_strategy",
    "write_edge_list",
    "write_query_edge_list",
]

__version__ = "0.1.0"
