"""Quantizer channel and reconstruction map types shared by the solver and the codecs."""

from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from hypergraph_coding.core.errors import ChannelError

ROW_TOLERANCE = 1e-9


class QuantizerChannel(BaseModel):
    """A conditional pmf p(w|x) over hyperedges.

    ``edges`` holds the vertex set of every hyperedge the channel may output and
    ``rows[x, w]`` is p(w|x). Mass is only allowed on hyperedges that contain ``x``.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    edges: List[Tuple[int, ...]]
    rows: np.ndarray

    @model_validator(mode="after")
    def check_support(self) -> "QuantizerChannel":
        rows = self.rows
        if rows.ndim != 2 or rows.shape[1] != len(self.edges):
            raise ChannelError(f"rows must have shape (nx, {len(self.edges)}), got {rows.shape}")
        if np.any(rows < 0):
            raise ChannelError("channel rows contain negative probabilities")
        for w, edge in enumerate(self.edges):
            outside = np.ones(rows.shape[0], dtype=bool)
            outside[list(edge)] = False
            if np.any(rows[outside, w] > 0):
                x = int(np.flatnonzero(outside & (rows[:, w] > 0))[0])
                raise ChannelError(f"vertex {x} puts mass on hyperedge {edge} that does not contain it")
        return self

    @property
    def nx(self) -> int:
        return int(self.rows.shape[0])

    def check_rows(self, px: np.ndarray) -> None:
        """Verify that every row of a positive-probability vertex is a distribution.

        Args:
            px: Marginal p(x)

        Raises:
            ChannelError: If a row does not sum to one
        """
        if px.shape[0] != self.nx:
            raise ChannelError(f"channel has {self.nx} rows but the instance has {px.shape[0]} vertices")
        sums = self.rows.sum(axis=1)
        bad = np.flatnonzero((px > 0) & (np.abs(sums - 1.0) > ROW_TOLERANCE))
        if bad.size:
            x = int(bad[0])
            raise ChannelError(f"row {x} sums to {sums[x]!r}, expected 1")

    def to_dict(self) -> dict:
        return {"edges": [list(e) for e in self.edges], "rows": self.rows.tolist()}


class ReconstructionMap(BaseModel):
    """The decoder map g(w, y), stored as an (edges, ny, dim) array with NaN where undefined."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    edges: List[Tuple[int, ...]]
    points: np.ndarray

    @property
    def defined(self) -> np.ndarray:
        """Boolean (edges, ny) mask of the pairs where g is defined."""
        return ~np.isnan(self.points[..., 0])

    def g(self, w: int, y: int) -> Optional[np.ndarray]:
        """Return g(w, y) or None when the pair carries no probability."""
        point = self.points[w, y]
        if np.isnan(point[0]):
            return None
        return point

    def to_dict(self) -> dict:
        points = [
            [None if np.isnan(p[0]) else [float(c) for c in p] for p in per_edge] for per_edge in self.points
        ]
        return {"edges": [list(e) for e in self.edges], "points": points}
