"""Functional ε-entropy by alternating minimization.

The objective J(p, r) = sum p(x, y) p(w|x) log(p(w|x) / r(w|y)) is minimized by
alternating two exact coordinate steps:

1. r(w|y) <- sum_x p(x|y) p(w|x)
2. p(w|x) proportional to prod_y r(w|y)^p(y|x), restricted to the edges containing x

Step 2 is carried out in the log domain with ``logsumexp`` normalization.
"""

from typing import List, Optional, Sequence, Tuple

import numpy as np
import structlog
from pydantic import BaseModel, ConfigDict, Field
from scipy.special import logsumexp

from hypergraph_coding.core.channel import QuantizerChannel, ReconstructionMap
from hypergraph_coding.core.errors import ChannelError, PreconditionViolated
from hypergraph_coding.core.model import DISTANCE_TOLERANCE, ProblemInstance, cmi_from_rows
from hypergraph_coding.core.settings import settings
from hypergraph_coding.entropy.reconstruction import reconstruction_for_edges
from hypergraph_coding.hypergraph import Edge, Hypergraph

logger = structlog.get_logger(__name__)

INIT_NOISE = 0.01
MONOTONICITY_SLACK = 1e-12
TINY = np.finfo(float).tiny


class EntropySolution(BaseModel):
    """Optimal channel, its reconstruction map and the functional entropy in bits."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    value: float
    channel: QuantizerChannel
    recon: ReconstructionMap
    iterations: int
    converged: bool
    history: List[float] = Field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "iterations": self.iterations,
            "converged": self.converged,
            "channel": self.channel.to_dict(),
            "recon": self.recon.to_dict(),
        }


def _membership(nx: int, edges: Sequence[Edge]) -> np.ndarray:
    mask = np.zeros((nx, len(edges)), dtype=bool)
    for w, edge in enumerate(edges):
        mask[list(edge), w] = True
    return mask


def _initial_rows(mask: np.ndarray, px: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    rows = mask / mask.sum(axis=1, keepdims=True)
    rows = rows * (1.0 + INIT_NOISE * rng.uniform(-1.0, 1.0, size=rows.shape))
    rows = np.where(mask, rows, 0.0)
    rows /= rows.sum(axis=1, keepdims=True)

    # zero-probability vertices sit deterministically on their lowest containing edge
    for x in np.flatnonzero(px <= 0):
        rows[x] = 0.0
        rows[x, int(np.argmax(mask[x]))] = 1.0
    return rows


def minimize_over_edges(
    inst: ProblemInstance,
    edges: Sequence[Edge],
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
    seed: Optional[int] = None,
) -> EntropySolution:
    """Minimize I(W;X|Y) over channels supported on the given hyperedges.

    Args:
        inst: The problem instance
        edges: Candidate hyperedges, every vertex must belong to at least one
        tol: Stop once the objective decreases by less than this
        max_iter: Iteration cap
        seed: Seed of the initial perturbation

    Returns:
        The best channel found; ``converged`` is False when ``max_iter`` was hit

    Raises:
        ChannelError: If some vertex lies in none of the edges
    """
    tol = settings.solver_tol if tol is None else tol
    max_iter = settings.solver_max_iter if max_iter is None else max_iter
    seed = settings.solver_seed if seed is None else seed
    if tol <= 0:
        raise PreconditionViolated(f"solver tolerance must be positive, got {tol}")

    edges = [tuple(sorted(e)) for e in edges]
    mask = _membership(inst.nx, edges)
    uncovered = np.flatnonzero(~mask.any(axis=1))
    if uncovered.size:
        raise ChannelError(f"vertex {int(uncovered[0])} lies in no hyperedge")

    p = inst.p_matrix
    px, py = inst.px, inst.py
    live_x = px > 0
    live_y = py > 0
    p_y_given_x = np.zeros_like(p)
    p_y_given_x[live_x] = p[live_x] / px[live_x, None]

    rows = _initial_rows(mask, px, np.random.default_rng(seed))
    history = [cmi_from_rows(p, rows)]
    converged = False
    iterations = 0

    for iterations in range(1, max_iter + 1):
        # r(w|y), only over y with positive probability
        r = np.ones((inst.ny, len(edges)))
        r[live_y] = (p[:, live_y].T @ rows) / py[live_y, None]
        log_r = np.log(np.maximum(r, TINY))

        scores = np.where(mask, p_y_given_x @ log_r, -np.inf)
        log_rows = scores - logsumexp(scores, axis=1, keepdims=True)
        rows = np.where(live_x[:, None], np.exp(log_rows), rows)

        history.append(cmi_from_rows(p, rows))
        decrease = history[-2] - history[-1]
        if decrease < -MONOTONICITY_SLACK:
            logger.warning("solver_objective_increased", iteration=iterations, increase=-decrease)
        if decrease < tol:
            converged = True
            break

    channel = QuantizerChannel(edges=edges, rows=rows)
    recon = reconstruction_for_edges(inst, edges)
    value = history[-1]
    log = logger.info if converged else logger.warning
    log("entropy_solved", value=value, iterations=iterations, converged=converged, edges=len(edges))
    return EntropySolution(
        value=value, channel=channel, recon=recon, iterations=iterations, converged=converged, history=history
    )


def solve_entropy(
    inst: ProblemInstance,
    G: Hypergraph,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
    seed: Optional[int] = None,
) -> EntropySolution:
    """Compute H_G(X|Y) over the maximal edges of ``G``.

    See :func:`minimize_over_edges` for the arguments.
    """
    return minimize_over_edges(inst, G.maximal_edges, tol=tol, max_iter=max_iter, seed=seed)


def achieves_zero_distortion(inst: ProblemInstance, solution: EntropySolution) -> List[Tuple[int, int, int]]:
    """List every (x, w, y) with positive probability whose reconstruction is farther than epsilon.

    An empty list means the channel and reconstruction pair never exceeds the fidelity.
    """
    violations = []
    p = inst.p_matrix
    rows = solution.channel.rows
    for x in range(inst.nx):
        for w in np.flatnonzero(rows[x] > 0):
            for y in np.flatnonzero(p[x] > 0):
                point = solution.recon.g(int(w), int(y))
                if point is None or np.linalg.norm(point - inst.f_table[x, y]) > inst.epsilon + DISTANCE_TOLERANCE:
                    violations.append((x, int(w), int(y)))
    return violations
