"""Quantize-then-compress pipeline: map each x to its unique maximal edge and LZW the edge stream."""

from typing import List, Optional, Sequence

import numpy as np
import structlog
from pydantic import BaseModel, ConfigDict

from hypergraph_coding.codecs.lzw import EncodedBlock, lzw_decode, lzw_encode
from hypergraph_coding.core.errors import CodecPreconditionError
from hypergraph_coding.core.model import ErrorReport, ProblemInstance, entropy, p_avg
from hypergraph_coding.entropy import build_reconstruction
from hypergraph_coding.hypergraph import Clustering, build_hypergraph, unique_clustering

logger = structlog.get_logger(__name__)


class ModularResult(BaseModel):
    """Output of one run of the modular codec."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    block: EncodedBlock
    reconstructions: np.ndarray
    report: ErrorReport


def quantize_stream(inst: ProblemInstance, clustering: Clustering, xs: Sequence[int]) -> List[int]:
    """Replace every source symbol by the compact symbol of its cluster.

    Raises:
        CodecPreconditionError: If a symbol has no cluster (it has zero probability)
    """
    table = {x: clustering.symbol_of(x) for x in clustering.assignment}
    symbols = []
    for x in xs:
        symbol = table.get(int(x))
        if symbol is None:
            raise CodecPreconditionError(f"source symbol {int(x)} has zero probability and no cluster")
        symbols.append(symbol)
    return symbols


def quantized_entropy(inst: ProblemInstance, clustering: Clustering) -> float:
    """H(q(X)) in bits."""
    px = inst.px
    mass = np.zeros(clustering.alphabet_size)
    for x, edge in clustering.assignment.items():
        mass[clustering.used_edges.index(edge)] += px[x]
    return entropy(mass)


def modular_pipeline(
    inst: ProblemInstance,
    xs: Sequence[int],
    ys: Optional[Sequence[int]] = None,
    clustering: Optional[Clustering] = None,
) -> ModularResult:
    """Encode, decode and reconstruct a source block.

    Args:
        inst: The problem instance
        xs: Source symbols
        ys: Side information, all zeros when omitted
        clustering: A precomputed clustering, built from the instance when omitted

    Returns:
        The encoded block, the reconstructed points and their error report

    Raises:
        CodecPreconditionError: If X and Y are dependent
        AmbiguousClustering: If the maximal edges do not partition the alphabet
    """
    if inst.ny > 1 and not inst.is_independent():
        raise CodecPreconditionError("the modular codec needs X independent of Y")
    xs = np.asarray(xs, dtype=int)
    ys = np.zeros_like(xs) if ys is None else np.asarray(ys, dtype=int)

    G = build_hypergraph(inst)
    if clustering is None:
        clustering = unique_clustering(inst, G)
    recon = build_reconstruction(inst, G)

    block = lzw_encode(quantize_stream(inst, clustering, xs), alphabet_size=clustering.alphabet_size)
    decoded = lzw_decode(block)
    edges = np.asarray([clustering.edge_of_symbol(s) for s in decoded], dtype=int)
    reconstructions = recon.points[edges, ys]
    report = p_avg(inst, xs, ys, reconstructions)

    logger.info("modular_block_coded", n=block.n, rate=block.rate, p_avg=report.p_avg)
    return ModularResult(block=block, reconstructions=reconstructions, report=report)
