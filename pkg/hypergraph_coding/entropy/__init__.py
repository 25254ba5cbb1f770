"""Functional ε-entropy: solver, grid oracle, reconstruction and channel refinement."""

from hypergraph_coding.core.channel import QuantizerChannel, ReconstructionMap
from hypergraph_coding.entropy.oracle import entropy_oracle_grid
from hypergraph_coding.entropy.reconstruction import build_reconstruction, reconstruction_for_edges
from hypergraph_coding.entropy.refine import refine_channel
from hypergraph_coding.entropy.solver import (
    EntropySolution,
    achieves_zero_distortion,
    minimize_over_edges,
    solve_entropy,
)

__all__ = [
    "EntropySolution",
    "QuantizerChannel",
    "ReconstructionMap",
    "achieves_zero_distortion",
    "build_reconstruction",
    "entropy_oracle_grid",
    "minimize_over_edges",
    "reconstruction_for_edges",
    "refine_channel",
    "solve_entropy",
]
