"""Condition 1 and the unique clustering of the zero-fidelity hypergraph."""

from typing import Dict, List

import numpy as np
import structlog
from pydantic import BaseModel, ConfigDict

from hypergraph_coding.core.errors import AmbiguousClustering
from hypergraph_coding.core.model import ProblemInstance
from hypergraph_coding.hypergraph.builder import Edge, Hypergraph

logger = structlog.get_logger(__name__)

SAME_POINT_TOLERANCE = 1e-12


class Clustering(BaseModel):
    """A map from positive-probability vertices to the single maximal edge containing each."""

    model_config = ConfigDict(frozen=True)

    assignment: Dict[int, int]
    edges: List[Edge]

    @property
    def used_edges(self) -> List[int]:
        """Indices of the edges that receive at least one vertex, ascending."""
        return sorted(set(self.assignment.values()))

    @property
    def alphabet_size(self) -> int:
        return len(self.used_edges)

    def symbol_of(self, x: int) -> int:
        """Compact quantizer symbol of vertex ``x`` in ``[0, alphabet_size)``."""
        return self.used_edges.index(self.assignment[x])

    def edge_of_symbol(self, symbol: int) -> int:
        return self.used_edges[symbol]


def check_condition1(inst: ProblemInstance) -> bool:
    """Check that differing function values never mix zero and positive probability.

    For every y and every pair x, x' with f(x, y) != f(x', y), either both p(x, y)
    and p(x', y) are zero or both are positive.
    """
    positive = inst.p_matrix > 0
    for y in range(inst.ny):
        points = inst.f_table[:, y]
        for x in range(inst.nx):
            for other in range(x + 1, inst.nx):
                if positive[x, y] == positive[other, y]:
                    continue
                if np.linalg.norm(points[x] - points[other]) > SAME_POINT_TOLERANCE:
                    logger.debug("condition1_violated", x=x, x_other=other, y=y)
                    return False
    return True


def unique_clustering(inst: ProblemInstance, G: Hypergraph) -> Clustering:
    """Assign every positive-probability vertex to its unique maximal edge.

    Raises:
        AmbiguousClustering: If some vertex lies in several maximal edges
    """
    px = inst.px
    assignment: Dict[int, int] = {}
    for x in range(inst.nx):
        if px[x] <= 0:
            continue
        containing = G.edges_containing(x)
        if len(containing) != 1:
            raise AmbiguousClustering(x, [G.maximal_edges[i] for i in containing])
        assignment[x] = containing[0]

    clustering = Clustering(assignment=assignment, edges=list(G.maximal_edges))
    logger.info("clustering_found", clusters=clustering.alphabet_size, vertices=len(assignment))
    return clustering
