"""The rate curve R(ε) as an exact step function."""

import bisect
import csv
import io
import itertools
import math
from typing import List, Optional, Tuple

import numpy as np
import structlog
from pydantic import BaseModel, ConfigDict, model_validator

from hypergraph_coding.core.model import ProblemInstance
from hypergraph_coding.entropy import solve_entropy
from hypergraph_coding.geometry import min_enclosing_ball
from hypergraph_coding.hypergraph import Edge, build_hypergraph, check_enumeration_size

logger = structlog.get_logger(__name__)

DEDUP_TOLERANCE = 1e-9
RATE_SLACK = 1e-6


class RateCurve(BaseModel):
    """Piecewise-constant R(ε) on the intervals [b_i, b_{i+1}), right-continuous at each breakpoint.

    ``rates[0]`` holds on [0, breakpoints[0]) and ``rates[i]`` on [breakpoints[i-1], breakpoints[i]).
    """

    model_config = ConfigDict(frozen=True)

    breakpoints: List[float]
    rates: List[float]
    hypergraphs: List[List[Edge]]

    @model_validator(mode="after")
    def check_shape(self) -> "RateCurve":
        if len(self.rates) != len(self.breakpoints) + 1 or len(self.hypergraphs) != len(self.rates):
            raise ValueError("a curve with k breakpoints needs k + 1 rates and hypergraphs")
        if any(b <= a for a, b in zip(self.breakpoints, self.breakpoints[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        return self

    def evaluate(self, eps: float) -> float:
        """R(eps), taking the right-side value exactly at a breakpoint."""
        return self.rates[bisect.bisect_right(self.breakpoints, eps + DEDUP_TOLERANCE)]

    def intervals(self) -> List[Tuple[float, float, float]]:
        """(eps_lo, eps_hi, rate) for every interval; the last one ends at infinity."""
        bounds = [0.0] + list(self.breakpoints) + [math.inf]
        return [(bounds[i], bounds[i + 1], rate) for i, rate in enumerate(self.rates)]


def _dedupe(values: List[float]) -> List[float]:
    result: List[float] = []
    for value in sorted(values):
        if not result or value - result[-1] > DEDUP_TOLERANCE:
            result.append(value)
    return result


def critical_epsilons(inst: ProblemInstance, limit: Optional[int] = None) -> List[float]:
    """Every enclosing-ball radius of a per-y support subset, deduplicated.

    The hypergraph can only change at one of these values.
    """
    check_enumeration_size(inst, limit)
    positive = inst.p_matrix > 0
    radii = [0.0]
    for y in range(inst.ny):
        support = np.flatnonzero(positive[:, y])
        for size in range(2, support.size + 1):
            for subset in itertools.combinations(support, size):
                radii.append(min_enclosing_ball(inst.f_table[list(subset), y]).radius)
    return _dedupe(radii)


def rate_curve(inst: ProblemInstance, limit: Optional[int] = None) -> RateCurve:
    """Trace R(ε) by solving the entropy problem on each interval where the hypergraph is constant.

    Args:
        inst: The problem instance, its own epsilon is ignored
        limit: Enumeration guard on ``nx``

    Returns:
        The step function with its breakpoints and per-interval maximal edges
    """
    candidates = critical_epsilons(inst, limit)
    graphs = [build_hypergraph(inst.with_epsilon(0.0), limit)]
    breakpoints: List[float] = []
    for eps in candidates[1:]:
        G = build_hypergraph(inst.with_epsilon(eps), limit)
        if G.maximal_edges != graphs[-1].maximal_edges:
            breakpoints.append(eps)
            graphs.append(G)

    rates = [solve_entropy(inst.with_epsilon(G.epsilon), G).value for G in graphs]
    for i in range(1, len(rates)):
        if rates[i] > rates[i - 1] + RATE_SLACK:
            logger.warning("rate_curve_increasing", breakpoint=breakpoints[i - 1], before=rates[i - 1], after=rates[i])

    logger.info("rate_curve_traced", breakpoints=len(breakpoints), candidates=len(candidates))
    return RateCurve(breakpoints=breakpoints, rates=rates, hypergraphs=[G.maximal_edges for G in graphs])


def curve_to_csv(curve: RateCurve) -> str:
    """Plot-ready CSV with the columns eps_lo, eps_hi and rate."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["eps_lo", "eps_hi", "rate"])
    for lo, hi, rate in curve.intervals():
        writer.writerow([repr(lo), repr(hi), repr(rate)])
    return buffer.getvalue()
