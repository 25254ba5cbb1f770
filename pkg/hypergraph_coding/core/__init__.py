"""Core package for hypergraph-coding."""
