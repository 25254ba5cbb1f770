"""Randomized successive-cancellation encoder and deterministic decoder."""

import os
from typing import Optional, Sequence, Tuple, Union

import bitstring
import numpy as np
import structlog
from bitstring import Bits, ConstBitStream, ReadError
from pydantic import BaseModel, Field
from scipy.special import expit

from hypergraph_coding.codecs.polar.design import PolarDesign
from hypergraph_coding.codecs.polar.sc import SuccessiveCancellation
from hypergraph_coding.core.errors import CodecPreconditionError
from hypergraph_coding.core.model import ErrorReport, ProblemInstance, p_avg
from hypergraph_coding.core.settings import settings

logger = structlog.get_logger(__name__)


class PolarRunReport(BaseModel):
    """Rate and distortion of a batch of polar-coded blocks."""

    rate: float
    distortion: float = Field(..., ge=0.0, le=1.0)
    blocks: int
    error_report: ErrorReport
    w_agreement: bool


def _frozen_bits(leaf_prior: np.ndarray) -> np.ndarray:
    # most likely value under the prior-only law, ties go to 0
    return (leaf_prior < 0).astype(np.uint8)


def _as_blocks(values, N: int, name: str) -> np.ndarray:
    blocks = np.asarray(values, dtype=int)
    if blocks.ndim == 1:
        blocks = blocks[None, :]
    if blocks.ndim != 2 or blocks.shape[1] != N:
        raise CodecPreconditionError(f"{name} must hold blocks of length {N}, got shape {blocks.shape}")
    return blocks


def polar_encode_blocks(
    design: PolarDesign, xs_blocks: np.ndarray, seed: Optional[int] = None
) -> Tuple[np.ndarray, np.ndarray]:
    """Encode a batch of source blocks.

    For transmitted indices u_i is drawn from P(u_i | u^{i-1}, x^N); frozen indices take
    the prior-only most likely value.

    Args:
        design: The shared polar design
        xs_blocks: (blocks, N) source symbols
        seed: Seed of the randomized quantization

    Returns:
        The transmitted bits of shape (blocks, |I|) and the quantized words w of shape (blocks, N)
    """
    seed = settings.default_seed if seed is None else seed
    xs_blocks = _as_blocks(xs_blocks, design.N, "xs")
    cond_llr, prior_llr = design.leaf_llrs()
    info = design.info_mask()
    rng = np.random.default_rng(seed)
    batch = xs_blocks.shape[0]

    u = np.zeros((batch, design.N), dtype=np.uint8)

    def randomized(i: int, leaf: np.ndarray) -> np.ndarray:
        if info[i]:
            bits = (rng.random(batch) < expit(-leaf[0])).astype(np.uint8)
        else:
            bits = _frozen_bits(leaf[1])
        u[:, i] = bits
        return bits

    llr = np.stack([cond_llr[xs_blocks], np.full(xs_blocks.shape, prior_llr)])
    w = SuccessiveCancellation(randomized).run(llr)
    return u[:, info], w


def polar_decode_blocks(
    design: PolarDesign, u_info: np.ndarray, ys_blocks: Optional[np.ndarray] = None
) -> Tuple[np.ndarray, Optional[np.ndarray]]:
    """Rebuild the frozen bits and return the quantized words and their reconstruction points.

    Returns:
        w_hat of shape (blocks, N) and points of shape (blocks, N, dim), or None when the
        design carries no reconstruction map
    """
    u_info = np.asarray(u_info, dtype=np.uint8)
    if u_info.ndim == 1:
        u_info = u_info[None, :]
    if u_info.shape[1] != len(design.info_set):
        raise CodecPreconditionError(f"expected {len(design.info_set)} transmitted bits, got {u_info.shape[1]}")
    _, prior_llr = design.leaf_llrs()
    info = design.info_mask()
    position = np.cumsum(info) - 1
    batch = u_info.shape[0]

    def replay(i: int, leaf: np.ndarray) -> np.ndarray:
        if info[i]:
            return u_info[:, position[i]]
        return _frozen_bits(leaf[1])

    # same two-channel layout as the encoder so the prior law is computed identically
    llr = np.full((2, batch, design.N), prior_llr)
    w_hat = SuccessiveCancellation(replay).run(llr)

    recon = design.recon_array()
    if recon is None:
        return w_hat, None
    ys_blocks = np.zeros_like(w_hat, dtype=int) if ys_blocks is None else _as_blocks(ys_blocks, design.N, "ys")
    return w_hat, recon[w_hat, ys_blocks]


def polar_encode(design: PolarDesign, xs: Sequence[int], seed: Optional[int] = None) -> np.ndarray:
    """Encode one block and return the transmitted bits u_I."""
    xs = np.asarray(xs, dtype=int)
    if xs.ndim != 1 or xs.size != design.N:
        raise CodecPreconditionError(f"expected {design.N} source symbols, got {xs.size}")
    u_info, _ = polar_encode_blocks(design, xs[None, :], seed)
    return u_info[0]


def polar_decode(
    design: PolarDesign, u_I: Sequence[int], ys: Optional[Sequence[int]] = None
) -> Tuple[np.ndarray, Optional[np.ndarray]]:
    """Decode one block into w_hat and its reconstruction points."""
    u_I = np.asarray(u_I, dtype=np.uint8)
    if u_I.ndim != 1:
        raise CodecPreconditionError("expected a single block of transmitted bits")
    ys_blocks = None if ys is None else np.asarray(ys, dtype=int)[None, :]
    w_hat, points = polar_decode_blocks(design, u_I[None, :], ys_blocks)
    return w_hat[0], None if points is None else points[0]


def run_polar_blocks(
    inst: ProblemInstance,
    design: PolarDesign,
    xs_blocks: np.ndarray,
    ys_blocks: Optional[np.ndarray] = None,
    seed: Optional[int] = None,
    batch_size: Optional[int] = None,
) -> PolarRunReport:
    """Encode and decode many blocks and measure rate and distortion.

    The distortion counts symbols whose decoded edge does not contain them; the error
    report counts reconstructions farther than epsilon.
    """
    if design.edges is None or design.recon_points is None:
        raise CodecPreconditionError("the design carries no edges or reconstruction map")
    batch_size = settings.polar_batch_size if batch_size is None else batch_size
    seed = settings.default_seed if seed is None else seed
    xs_blocks = _as_blocks(xs_blocks, design.N, "xs")
    ys_blocks = np.zeros_like(xs_blocks) if ys_blocks is None else _as_blocks(ys_blocks, design.N, "ys")

    membership = np.zeros((2, inst.nx), dtype=bool)
    for w, edge in enumerate(design.edges):
        membership[w, list(edge)] = True

    rng = np.random.default_rng(seed)
    agreement = True
    outside = 0
    points = []
    for start in range(0, xs_blocks.shape[0], batch_size):
        xs = xs_blocks[start : start + batch_size]
        ys = ys_blocks[start : start + batch_size]
        u_info, w = polar_encode_blocks(design, xs, int(rng.integers(2**63)))
        w_hat, z_hat = polar_decode_blocks(design, u_info, ys)
        agreement &= bool(np.array_equal(w, w_hat))
        outside += int(np.count_nonzero(~membership[w_hat, xs]))
        points.append(z_hat.reshape(-1, z_hat.shape[-1]))

    if not agreement:
        logger.error("polar_w_mismatch", blocks=xs_blocks.shape[0])
    total = xs_blocks.size
    report = p_avg(inst, xs_blocks.ravel(), ys_blocks.ravel(), np.concatenate(points))
    run = PolarRunReport(
        rate=design.rate,
        distortion=outside / total,
        blocks=xs_blocks.shape[0],
        error_report=report,
        w_agreement=agreement,
    )
    logger.info("polar_blocks_coded", N=design.N, blocks=run.blocks, rate=run.rate, distortion=run.distortion)
    return run


TRANSMITTED_HEADER = "uint:32, uint:32"


def save_transmitted(path: Union[str, os.PathLike], u_info: np.ndarray) -> None:
    """Write transmitted bits as: 4-byte block count, 4-byte bits per block, bits padded to a byte."""
    u_info = np.atleast_2d(np.asarray(u_info, dtype=np.uint8))
    payload = bitstring.pack(TRANSMITTED_HEADER, u_info.shape[0], u_info.shape[1])
    payload.append(Bits(u_info.ravel().astype(bool).tolist()))
    with open(path, "wb") as f:
        f.write(payload.tobytes())


def load_transmitted(path: Union[str, os.PathLike]) -> np.ndarray:
    """Read bits written by :func:`save_transmitted` as a (blocks, |I|) array."""
    with open(path, "rb") as f:
        stream = ConstBitStream(f.read())
    try:
        blocks, width = stream.readlist(TRANSMITTED_HEADER)
        bits = stream.read(blocks * width)
    except ReadError as e:
        raise CodecPreconditionError(f"{path} is truncated") from e
    return np.fromiter(bits, dtype=np.uint8, count=blocks * width).reshape(blocks, width)
