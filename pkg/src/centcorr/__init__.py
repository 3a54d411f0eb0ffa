"""Classical and community-aware centrality measures and their correlation analysis."""

__version__ = "0.1.0"

from ._backend import BACKEND
from .classical import CLASSICAL_MEASURES, CentralityVector, ClassicalConfig
from .community import COMMUNITY_MEASURES, CommunityConfig, CommunityContext
from .graph import (
    UNREACHABLE,
    Graph,
    bfs_distances,
    core_decomposition,
    edge_filtered_graphs,
    induced_subgraph,
    largest_connected_component,
    load_edgelist,
)
from .partition import (
    DegreeSplit,
    Partition,
    degree_split,
    load_partition,
    louvain,
    modularity,
    save_partition,
)

__all__ = [
    "BACKEND",
    "CLASSICAL_MEASURES",
    "COMMUNITY_MEASURES",
    "CentralityVector",
    "ClassicalConfig",
    "CommunityConfig",
    "CommunityContext",
    "DegreeSplit",
    "Graph",
    "Partition",
    "UNREACHABLE",
    "bfs_distances",
    "core_decomposition",
    "degree_split",
    "edge_filtered_graphs",
    "induced_subgraph",
    "largest_connected_component",
    "load_edgelist",
    "load_partition",
    "louvain",
    "modularity",
    "save_partition",
]
