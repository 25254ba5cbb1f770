"""Construction of the ε-characteristic hypergraph."""

import json
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Tuple

import numpy as np
import structlog
from pydantic import BaseModel, ConfigDict

from hypergraph_coding.core.errors import EnumerationLimitError, InstanceError
from hypergraph_coding.core.model import DISTANCE_TOLERANCE, ProblemInstance
from hypergraph_coding.core.settings import settings
from hypergraph_coding.geometry import min_enclosing_ball

logger = structlog.get_logger(__name__)

Edge = Tuple[int, ...]


class Hypergraph(BaseModel):
    """The maximal hyperedges of an instance at a given fidelity."""

    model_config = ConfigDict(frozen=True)

    nx: int
    maximal_edges: List[Edge]
    epsilon: float

    def edges_containing(self, x: int) -> List[int]:
        """Indices of the maximal edges that contain vertex ``x``."""
        return [i for i, edge in enumerate(self.maximal_edges) if x in edge]

    def to_json(self) -> str:
        return json.dumps({"epsilon": self.epsilon, "maximal_edges": [list(e) for e in self.maximal_edges]})


def canonical_order(edges: Iterable[Edge]) -> List[Edge]:
    """Sort edges by size descending, then lexicographically."""
    return sorted((tuple(sorted(e)) for e in edges), key=lambda e: (-len(e), e))


def check_enumeration_size(inst: ProblemInstance, limit: Optional[int] = None) -> None:
    """Refuse exhaustive enumeration on instances beyond the configured guard.

    Raises:
        EnumerationLimitError: If ``inst.nx`` exceeds the limit
    """
    limit = settings.enumeration_limit if limit is None else limit
    if inst.nx > limit:
        raise EnumerationLimitError(inst.nx, limit)


class _EdgeTester:
    """Memoized hyperedge membership for one instance."""

    def __init__(self, inst: ProblemInstance):
        self.inst = inst
        self.positive = inst.p_matrix > 0
        self.cache: Dict[FrozenSet[int], bool] = {}

    def __call__(self, vertices: Iterable[int]) -> bool:
        key = frozenset(vertices)
        result = self.cache.get(key)
        if result is None:
            result = self._test(sorted(key))
            self.cache[key] = result
        return result

    def _test(self, vertices: List[int]) -> bool:
        idx = np.asarray(vertices, dtype=int)
        for y in range(self.inst.ny):
            members = idx[self.positive[idx, y]]
            if members.size <= 1:
                continue
            radius = min_enclosing_ball(self.inst.f_table[members, y]).radius
            if radius > self.inst.epsilon + DISTANCE_TOLERANCE:
                return False
        return True


def is_hyperedge(inst: ProblemInstance, S: Iterable[int]) -> bool:
    """Decide whether a vertex set is a hyperedge at the instance's fidelity.

    For every y the values f(x, y) of the members with p(x, y) > 0 must fit in a ball
    of radius epsilon.

    Args:
        inst: The problem instance
        S: A nonempty vertex set

    Returns:
        True if ``S`` is a hyperedge

    Raises:
        InstanceError: If ``S`` is empty or holds an index outside the alphabet
    """
    vertices = sorted(set(S))
    if not vertices:
        raise InstanceError("S", "vertex set must be nonempty")
    if vertices[0] < 0 or vertices[-1] >= inst.nx:
        raise InstanceError("S", f"vertex indices must lie in [0, {inst.nx})")
    return _EdgeTester(inst)(vertices)


def _enumerate(inst: ProblemInstance, keep: Callable[[Edge, bool], bool]) -> List[Edge]:
    tester = _EdgeTester(inst)
    found: List[Edge] = []

    def visit(edge: Edge) -> None:
        for v in range(edge[-1] + 1, inst.nx):
            candidate = edge + (v,)
            if tester(candidate):
                visit(candidate)
        maximal = not any(tester(edge + (v,)) for v in range(inst.nx) if v not in edge)
        if keep(edge, maximal):
            found.append(edge)

    for x in range(inst.nx):
        visit((x,))
    logger.debug("hyperedges_enumerated", nx=inst.nx, membership_tests=len(tester.cache), kept=len(found))
    return canonical_order(found)


def build_hypergraph(inst: ProblemInstance, limit: Optional[int] = None) -> Hypergraph:
    """Enumerate the maximal hyperedges by depth-first extension in increasing vertex order.

    Hyperedges are hereditary, so a set is only extended by higher-indexed vertices
    that keep it feasible; a set is kept when no single vertex can be added to it.

    Args:
        inst: The problem instance
        limit: Largest accepted ``nx``, defaults to ``settings.enumeration_limit``

    Returns:
        The hypergraph with its maximal edges in canonical order

    Raises:
        EnumerationLimitError: If the instance is too large for exact enumeration
    """
    check_enumeration_size(inst, limit)
    edges = _enumerate(inst, lambda edge, maximal: maximal)
    logger.info("hypergraph_built", nx=inst.nx, epsilon=inst.epsilon, maximal_edges=len(edges))
    return Hypergraph(nx=inst.nx, maximal_edges=edges, epsilon=inst.epsilon)


def all_hyperedges(inst: ProblemInstance, limit: Optional[int] = None) -> List[Edge]:
    """Every hyperedge of the instance, maximal or not, in canonical order."""
    check_enumeration_size(inst, limit)
    return _enumerate(inst, lambda edge, maximal: True)
