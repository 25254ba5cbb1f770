"""Polar code design for randomized quantization with a binary W.

A design fixes the test channel p(x|w) and prior p(w), estimates the Bhattacharyya
parameters of every synthesized bit with and without the source, and splits the
indices into the transmitted set and the frozen set.
"""

import math
import os
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
import structlog
from pydantic import BaseModel, ConfigDict, Field, field_validator

from hypergraph_coding.codecs.polar.sc import (
    LLR_CLAMP,
    SuccessiveCancellation,
    bhattacharyya_from_llr,
    binary_entropy_from_llr,
)
from hypergraph_coding.codecs.polar.transform import polar_transform
from hypergraph_coding.core.errors import CodecPreconditionError, InfeasibleRateError, PreconditionViolated
from hypergraph_coding.core.model import ProblemInstance, mutual_information_xw
from hypergraph_coding.core.settings import settings
from hypergraph_coding.entropy import EntropySolution, solve_entropy
from hypergraph_coding.hypergraph import build_hypergraph

logger = structlog.get_logger(__name__)

MIN_SAMPLES = 100
USED_EDGE_MASS = 1e-9
RATE_TOLERANCE = 1e-9


def _joint(prior: Sequence[float], channel: np.ndarray) -> np.ndarray:
    prior = np.asarray(prior, dtype=float)
    channel = np.asarray(channel, dtype=float)
    if prior.shape != (2,) or channel.ndim != 2 or channel.shape[0] != 2:
        raise CodecPreconditionError(f"W must be binary, got prior {prior.shape} and channel {channel.shape}")
    return prior[:, None] * channel


def _clamped_log_ratio(num: np.ndarray, den: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.log(num) - np.log(den)
    ratio = np.where(np.isnan(ratio), 0.0, ratio)
    return np.clip(ratio, -LLR_CLAMP, LLR_CLAMP)


def bhattacharyya(prior: Sequence[float], channel: np.ndarray) -> float:
    """Source Bhattacharyya parameter Z(W|X) = 2 sum_x sqrt(p(x, 0) p(x, 1)).

    Args:
        prior: p(w) over {0, 1}
        channel: (2, nx) matrix p(x|w)

    Raises:
        CodecPreconditionError: If W is not binary
    """
    joint = _joint(prior, channel)
    return float(min(2.0 * np.sum(np.sqrt(joint[0] * joint[1])), 1.0))


class PolarizationEstimate(BaseModel):
    """Monte-Carlo estimates for every synthesized bit U_i."""

    n_log: int = Field(..., ge=0)
    prior: List[float]
    test_channel: List[List[float]]
    z_cond: List[float]
    z_prior: List[float]
    h_cond: List[float]
    h_prior: List[float]
    mutual_information: float
    samples: int
    seed: int

    @property
    def N(self) -> int:
        return 2**self.n_log


class PolarDesign(BaseModel):
    """Everything the encoder and the decoder share."""

    model_config = ConfigDict(frozen=True)

    n_log: int = Field(..., ge=0)
    prior: List[float]
    test_channel: List[List[float]]
    z_cond: List[float]
    z_prior: List[float]
    info_set: List[int]
    frozen_rule: str = "argmax-prior"
    mutual_information: float
    target_rate: float
    edges: Optional[List[Tuple[int, ...]]] = None
    recon_points: Optional[List[List[Optional[List[float]]]]] = None

    @field_validator("z_cond", "z_prior")
    @classmethod
    def clamp_unit(cls, values: List[float]) -> List[float]:
        return [min(max(v, 0.0), 1.0) for v in values]

    @property
    def N(self) -> int:
        return 2**self.n_log

    @property
    def rate(self) -> float:
        return len(self.info_set) / self.N

    def info_mask(self) -> np.ndarray:
        mask = np.zeros(self.N, dtype=bool)
        mask[self.info_set] = True
        return mask

    def leaf_llrs(self) -> Tuple[np.ndarray, float]:
        """Per-symbol LLR of W given X, and the prior LLR of W."""
        joint = _joint(self.prior, np.asarray(self.test_channel))
        cond = _clamped_log_ratio(joint[0], joint[1])
        prior = float(_clamped_log_ratio(np.asarray(self.prior[0]), np.asarray(self.prior[1])))
        return cond, prior

    def recon_array(self) -> Optional[np.ndarray]:
        """Reconstruction points as a (2, ny, dim) array with NaN where undefined."""
        if self.recon_points is None:
            return None
        dim = next(len(p) for per_w in self.recon_points for p in per_w if p is not None)
        return np.asarray(
            [[[math.nan] * dim if p is None else p for p in per_w] for per_w in self.recon_points], dtype=float
        )


def estimate_polarization(
    prior: Sequence[float],
    test_channel: np.ndarray,
    n_log: int,
    samples: Optional[int] = None,
    seed: Optional[int] = None,
    batch_size: Optional[int] = None,
) -> PolarizationEstimate:
    """Estimate Z(U_i | U^{i-1}, X^N) and Z(U_i | U^{i-1}) for every index by simulation.

    Each sample draws (w^N, x^N) i.i.d. from p(w) p(x|w), sets u = w G_N and runs a
    genie-aided successive-cancellation pass that follows the true u.

    Args:
        prior: p(w) over {0, 1}
        test_channel: (2, nx) matrix p(x|w)
        n_log: Blocklength exponent, N = 2**n_log
        samples: Number of simulated blocks, at least 100
        seed: Generator seed
        batch_size: Blocks simulated per vectorized pass

    Returns:
        Per-index Bhattacharyya parameters and conditional entropies
    """
    samples = settings.polar_design_samples if samples is None else samples
    seed = settings.default_seed if seed is None else seed
    batch_size = settings.polar_batch_size if batch_size is None else batch_size
    if samples < MIN_SAMPLES:
        raise PreconditionViolated(f"at least {MIN_SAMPLES} samples are needed, got {samples}")
    if n_log < 0:
        raise PreconditionViolated(f"n_log must be nonnegative, got {n_log}")

    joint = _joint(prior, test_channel)
    px = joint.sum(axis=0)
    post_zero = np.divide(joint[0], px, out=np.ones_like(px), where=px > 0)
    cond_llr = _clamped_log_ratio(joint[0], joint[1])
    prior_llr = float(_clamped_log_ratio(np.asarray(prior[0]), np.asarray(prior[1])))

    N = 2**n_log
    sums = np.zeros((4, N))
    rng = np.random.default_rng(seed)
    done = 0
    while done < samples:
        batch = min(batch_size, samples - done)
        xs = rng.choice(px.size, size=(batch, N), p=px / px.sum())
        ws = (rng.random((batch, N)) >= post_zero[xs]).astype(np.uint8)
        us = polar_transform(ws)

        llr = np.stack([cond_llr[xs], np.full((batch, N), prior_llr)])

        def follow_truth(i: int, leaf: np.ndarray) -> np.ndarray:
            sums[0, i] += bhattacharyya_from_llr(leaf[0]).sum()
            sums[1, i] += bhattacharyya_from_llr(leaf[1]).sum()
            sums[2, i] += binary_entropy_from_llr(leaf[0]).sum()
            sums[3, i] += binary_entropy_from_llr(leaf[1]).sum()
            return us[:, i]

        SuccessiveCancellation(follow_truth).run(llr)
        done += batch

    means = np.clip(sums / samples, 0.0, None)
    means[:2] = np.minimum(means[:2], 1.0)
    estimate = PolarizationEstimate(
        n_log=n_log,
        prior=[float(v) for v in prior],
        test_channel=np.asarray(test_channel, dtype=float).tolist(),
        z_cond=means[0].tolist(),
        z_prior=means[1].tolist(),
        h_cond=means[2].tolist(),
        h_prior=means[3].tolist(),
        mutual_information=mutual_information_xw(px, joint.T / np.where(px > 0, px, 1.0)[:, None]),
        samples=samples,
        seed=seed,
    )
    logger.info("polarization_estimated", N=N, samples=samples, mutual_information=estimate.mutual_information)
    return estimate


def select_sets(
    estimate: PolarizationEstimate,
    target_rate: float,
    edges: Optional[Sequence[Sequence[int]]] = None,
    recon_points: Optional[np.ndarray] = None,
) -> PolarDesign:
    """Choose the ceil(N * target_rate) indices to transmit.

    Indices are ranked by z_prior - z_cond: a bit that the past alone leaves uncertain
    but the source pins down must be sent, while a bit that stays uncertain given the
    source, or is already predictable from the past, is frozen to the prior-only
    most likely value.

    Raises:
        InfeasibleRateError: If ``target_rate`` does not exceed I(W;X)
        PreconditionViolated: If ``target_rate`` exceeds one
    """
    if target_rate <= estimate.mutual_information:
        raise InfeasibleRateError(
            f"target rate {target_rate} does not exceed I(W;X) = {estimate.mutual_information:.6f}"
        )
    if target_rate > 1.0 + RATE_TOLERANCE:
        raise PreconditionViolated(f"target rate must not exceed 1, got {target_rate}")

    N = estimate.N
    size = min(N, math.ceil(N * target_rate - RATE_TOLERANCE))
    score = np.asarray(estimate.z_prior) - np.asarray(estimate.z_cond)
    order = np.argsort(-score, kind="stable")
    info_set = sorted(int(i) for i in order[:size])

    points = None
    if recon_points is not None:
        points = [[None if np.isnan(p[0]) else [float(c) for c in p] for p in per_w] for per_w in recon_points]

    return PolarDesign(
        n_log=estimate.n_log,
        prior=estimate.prior,
        test_channel=estimate.test_channel,
        z_cond=estimate.z_cond,
        z_prior=estimate.z_prior,
        info_set=info_set,
        mutual_information=estimate.mutual_information,
        target_rate=target_rate,
        edges=None if edges is None else [tuple(int(x) for x in e) for e in edges],
        recon_points=points,
    )


def design_from_instance(
    inst: ProblemInstance,
    n_log: int,
    target_rate: Optional[float] = None,
    samples: Optional[int] = None,
    seed: Optional[int] = None,
    solution: Optional[EntropySolution] = None,
) -> PolarDesign:
    """Derive a binary-W polar design from the optimal quantizer of an instance.

    Args:
        inst: The problem instance
        n_log: Blocklength exponent
        target_rate: Rate to design for, defaults to I(W;X) plus the configured margin
        samples: Monte-Carlo samples
        seed: Generator seed
        solution: A precomputed entropy solution for ``inst``

    Returns:
        The design, carrying the two edges and their reconstruction points

    Raises:
        CodecPreconditionError: If the optimal channel uses more than two edges or X and Y are dependent
    """
    if inst.ny > 1 and not inst.is_independent():
        raise CodecPreconditionError("the polar codec needs X independent of Y")
    if solution is None:
        solution = solve_entropy(inst, build_hypergraph(inst))

    px = inst.px
    rows = solution.channel.rows
    mass = px @ rows
    used = [int(w) for w in np.flatnonzero(mass > USED_EDGE_MASS)]
    if len(used) > 2:
        raise CodecPreconditionError(
            f"the optimal channel uses {len(used)} hyperedges; the polar codec needs at most 2"
        )
    if len(used) == 1:
        used = used * 2

    q = rows[:, used].copy()
    if used[0] == used[1]:
        q[:, 1] = 0.0
    live = px > 0
    q[live] /= q[live].sum(axis=1, keepdims=True)

    prior = px @ q
    test_channel = np.empty((2, inst.nx))
    for w in range(2):
        test_channel[w] = px * q[:, w] / prior[w] if prior[w] > 0 else px

    estimate = estimate_polarization(prior, test_channel, n_log, samples=samples, seed=seed)
    if target_rate is None:
        target_rate = min(estimate.mutual_information + settings.polar_rate_margin, 1.0)

    edges = [solution.channel.edges[w] for w in used]
    recon = solution.recon.points[used]
    design = select_sets(estimate, target_rate, edges=edges, recon_points=recon)
    logger.info(
        "polar_design_ready",
        N=design.N,
        rate=design.rate,
        mutual_information=design.mutual_information,
        transmitted=len(design.info_set),
    )
    return design


def save_design(path: Union[str, os.PathLike], design: PolarDesign) -> None:
    with open(path, "w") as f:
        f.write(design.model_dump_json(indent=2))


def load_design(path: Union[str, os.PathLike]) -> PolarDesign:
    with open(path, "r") as f:
        return PolarDesign.model_validate_json(f.read())
