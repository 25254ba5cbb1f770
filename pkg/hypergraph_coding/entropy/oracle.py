"""Exhaustive grid search over hyperedge channels, used to cross-check the solver."""

import itertools
from typing import List, Optional

import numpy as np
import structlog

from hypergraph_coding.core.errors import OracleLimitError, PreconditionViolated
from hypergraph_coding.core.model import ProblemInstance
from hypergraph_coding.core.settings import settings
from hypergraph_coding.hypergraph import Hypergraph

logger = structlog.get_logger(__name__)

CHUNK = 20_000


def _simplex_grid(parts: int, resolution: int) -> np.ndarray:
    """All points of the ``parts``-simplex whose coordinates are multiples of 1/resolution."""
    points = []
    for bars in itertools.combinations(range(resolution + parts - 1), parts - 1):
        cuts = (-1,) + bars + (resolution + parts - 1,)
        points.append([cuts[i + 1] - cuts[i] - 1 for i in range(parts)])
    return np.asarray(points, dtype=float) / resolution


def _batch_cmi(p: np.ndarray, rows: np.ndarray) -> np.ndarray:
    """I(W;X|Y) for a batch of channel matrices of shape (B, nx, E)."""
    py = p.sum(axis=0)
    live = py > 0
    p = p[:, live]
    r = np.einsum("xy,bxw->byw", p, rows) / py[live][None, :, None]
    weights = p[None, :, :, None] * rows[:, :, None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        logs = np.log2(rows)[:, :, None, :] - np.log2(r)[:, None, :, :]
        terms = np.where(weights > 0, weights * logs, 0.0)
    return terms.sum(axis=(1, 2, 3))


def entropy_oracle_grid(
    inst: ProblemInstance, G: Hypergraph, step: float, max_free_parameters: Optional[int] = None
) -> float:
    """Minimum of I(W;X|Y) over a regular grid of channels supported on the maximal edges.

    Every positive-probability vertex lying in k > 1 maximal edges contributes k - 1
    free parameters; all other vertices are deterministic.

    Args:
        inst: The problem instance
        G: Its hypergraph
        step: Grid resolution in (0, 0.1]
        max_free_parameters: Guard on the grid size, defaults to the configured limit

    Returns:
        The smallest conditional mutual information found, in bits

    Raises:
        PreconditionViolated: If ``step`` is out of range
        OracleLimitError: If the grid would have too many free parameters
    """
    if not 0 < step <= 0.1:
        raise PreconditionViolated(f"grid step must lie in (0, 0.1], got {step}")
    limit = settings.oracle_max_free_parameters if max_free_parameters is None else max_free_parameters

    px = inst.px
    nedges = len(G.maximal_edges)
    base = np.zeros((inst.nx, nedges))
    ambiguous: List[int] = []
    for x in range(inst.nx):
        containing = G.edges_containing(x)
        if px[x] > 0 and len(containing) > 1:
            ambiguous.append(x)
        else:
            base[x, containing[0]] = 1.0

    free = sum(len(G.edges_containing(x)) - 1 for x in ambiguous)
    if free > limit:
        raise OracleLimitError(f"{free} free channel parameters exceed the oracle limit of {limit}")

    resolution = int(round(1.0 / step))
    grids = [_simplex_grid(len(G.edges_containing(x)), resolution) for x in ambiguous]
    combos = itertools.product(*[range(len(g)) for g in grids])

    best = np.inf
    evaluated = 0
    while True:
        chunk = list(itertools.islice(combos, CHUNK))
        if not chunk:
            break
        index = np.asarray(chunk, dtype=int).reshape(len(chunk), len(ambiguous))
        rows = np.broadcast_to(base, (len(chunk),) + base.shape).copy()
        for k, x in enumerate(ambiguous):
            rows[:, x, :] = 0.0
            rows[:, x, G.edges_containing(x)] = grids[k][index[:, k]]
        best = min(best, float(_batch_cmi(inst.p_matrix, rows).min()))
        evaluated += len(chunk)

    logger.debug("oracle_grid_done", free_parameters=free, step=step, evaluated=evaluated, value=best)
    return max(best, 0.0)
