"""The ε-characteristic hypergraph."""

from hypergraph_coding.hypergraph.builder import (
    Edge,
    Hypergraph,
    all_hyperedges,
    build_hypergraph,
    canonical_order,
    check_enumeration_size,
    is_hyperedge,
)
from hypergraph_coding.hypergraph.clustering import Clustering, check_condition1, unique_clustering

__all__ = [
    "Clustering",
    "Edge",
    "Hypergraph",
    "all_hyperedges",
    "build_hypergraph",
    "canonical_order",
    "check_condition1",
    "check_enumeration_size",
    "is_hyperedge",
    "unique_clustering",
]
