"""Achievable rate bounds when the function is only known up to a Lipschitz constant or a surrogate."""

from typing import Sequence, Union

import structlog

from hypergraph_coding.core.errors import PreconditionViolated
from hypergraph_coding.core.model import Distribution, ProblemInstance, identity_instance
from hypergraph_coding.entropy import solve_entropy
from hypergraph_coding.hypergraph import build_hypergraph

logger = structlog.get_logger(__name__)


def lipschitz_bound(
    points: Sequence[Sequence[float]],
    px: Union[Distribution, Sequence[float]],
    L: float,
    epsilon: float,
) -> float:
    """Rate that suffices for every L-Lipschitz function of X.

    The hypergraph is built for the identity function on the embedded alphabet at
    fidelity epsilon / L.

    Args:
        points: The value of each source symbol in R^k
        px: Distribution of X
        L: Lipschitz constant
        epsilon: Target fidelity

    Returns:
        The bound in bits

    Raises:
        PreconditionViolated: If ``L`` or ``epsilon`` is not positive
    """
    if L <= 0 or epsilon <= 0:
        raise PreconditionViolated(f"L and epsilon must be positive, got L={L}, epsilon={epsilon}")
    probs = px.probs if isinstance(px, Distribution) else list(px)
    inst = identity_instance(points, probs, epsilon / L)
    value = solve_entropy(inst, build_hypergraph(inst)).value
    logger.info("lipschitz_bound", L=L, epsilon=epsilon, value=value)
    return value


def approx_function_bound(inst_g: ProblemInstance, delta: float, epsilon: float) -> float:
    """Rate that suffices for any f within delta of the surrogate g.

    A ball of radius r around the surrogate values grows to at most r + 2 delta around
    the true values, so the hypergraph of g at epsilon - 2 delta is valid for f at epsilon.

    Raises:
        PreconditionViolated: If ``delta`` is negative or ``epsilon <= 2 delta``
    """
    if delta < 0:
        raise PreconditionViolated(f"delta must be nonnegative, got {delta}")
    if epsilon <= 2 * delta:
        raise PreconditionViolated(f"epsilon={epsilon} must exceed 2*delta={2 * delta}")
    shrunk = inst_g.with_epsilon(epsilon - 2 * delta)
    value = solve_entropy(shrunk, build_hypergraph(shrunk)).value
    logger.info("approx_function_bound", delta=delta, epsilon=epsilon, value=value)
    return value
