"""Reconstruction points g(w, y) from minimum enclosing balls."""

from typing import Sequence

import numpy as np

from hypergraph_coding.core.channel import ReconstructionMap
from hypergraph_coding.core.model import ProblemInstance
from hypergraph_coding.geometry import min_enclosing_ball
from hypergraph_coding.hypergraph import Edge, Hypergraph


def reconstruction_for_edges(inst: ProblemInstance, edges: Sequence[Edge]) -> ReconstructionMap:
    """Center of the enclosing ball of {f(x, y) : x in w, p(x, y) > 0} for every edge w and y.

    Pairs (w, y) whose point set is empty stay undefined (NaN).
    """
    positive = inst.p_matrix > 0
    points = np.full((len(edges), inst.ny, inst.dim), np.nan)
    for w, edge in enumerate(edges):
        members = np.asarray(edge, dtype=int)
        for y in range(inst.ny):
            live = members[positive[members, y]]
            if live.size:
                points[w, y] = min_enclosing_ball(inst.f_table[live, y]).center
    return ReconstructionMap(edges=[tuple(e) for e in edges], points=points)


def build_reconstruction(inst: ProblemInstance, G: Hypergraph) -> ReconstructionMap:
    """Reconstruction map over the maximal edges of ``G``."""
    return reconstruction_for_edges(inst, G.maximal_edges)
