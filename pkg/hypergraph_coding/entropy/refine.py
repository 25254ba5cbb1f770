"""Refinement of an arbitrary zero-distortion auxiliary into a hyperedge channel."""

from typing import Dict, List, Tuple

import numpy as np
import structlog

from hypergraph_coding.core.channel import QuantizerChannel
from hypergraph_coding.core.errors import PreconditionViolated
from hypergraph_coding.core.model import DISTANCE_TOLERANCE, ProblemInstance

logger = structlog.get_logger(__name__)


def refine_channel(inst: ProblemInstance, u_channel: np.ndarray, u_recon: np.ndarray) -> QuantizerChannel:
    """Replace every auxiliary symbol u by the vertex set w(u) = {x : p(u, x) > 0}.

    Args:
        inst: The problem instance
        u_channel: (nx, nu) matrix p(u|x)
        u_recon: (nu, ny, dim) reconstruction points, NaN where never used

    Returns:
        A channel over the distinct sets w(u), in order of first appearance

    Raises:
        PreconditionViolated: If some (u, x, y) with positive probability is reconstructed
            farther than epsilon, or the shapes disagree with the instance
    """
    u_channel = np.asarray(u_channel, dtype=float)
    u_recon = np.asarray(u_recon, dtype=float)
    nu = u_channel.shape[1]
    if u_channel.shape[0] != inst.nx or u_recon.shape != (nu, inst.ny, inst.dim):
        raise PreconditionViolated(
            f"expected p(u|x) of shape ({inst.nx}, nu) and reconstructions of shape (nu, {inst.ny}, {inst.dim})"
        )

    p = inst.p_matrix
    px = inst.px
    for x in range(inst.nx):
        for u in np.flatnonzero(u_channel[x] > 0):
            for y in np.flatnonzero(p[x] > 0):
                distance = np.linalg.norm(u_recon[u, y] - inst.f_table[x, y])
                if not distance <= inst.epsilon + DISTANCE_TOLERANCE:
                    raise PreconditionViolated(
                        f"(u={int(u)}, x={x}, y={int(y)}) is reconstructed at distance {distance}"
                    )

    edge_index: Dict[Tuple[int, ...], int] = {}
    edges: List[Tuple[int, ...]] = []
    columns: List[int] = []
    for u in range(nu):
        members = tuple(int(x) for x in np.flatnonzero(px * u_channel[:, u] > 0))
        if not members:
            columns.append(-1)
            continue
        if members not in edge_index:
            edge_index[members] = len(edges)
            edges.append(members)
        columns.append(edge_index[members])

    rows = np.zeros((inst.nx, len(edges)))
    live = px > 0
    for u, w in enumerate(columns):
        if w >= 0:
            rows[live, w] += u_channel[live, u]

    logger.debug("channel_refined", auxiliary_symbols=nu, edges=len(edges))
    return QuantizerChannel(edges=edges, rows=rows)
