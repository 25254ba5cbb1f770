"""Problem instances, probability utilities and distortion evaluation."""

import math
from typing import List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, model_validator
from scipy.special import entr

from hypergraph_coding.core.channel import QuantizerChannel
from hypergraph_coding.core.errors import DimensionMismatchError, InstanceError

NORMALIZATION_TOLERANCE = 1e-12
DISTANCE_TOLERANCE = 1e-9


class ProblemInstance(BaseModel):
    """Finite alphabets, a joint pmf p(x, y), a vector-valued function table and a fidelity.

    ``ny == 1`` encodes the absence of side information.
    """

    model_config = ConfigDict(frozen=True)

    nx: int
    ny: int
    dim: int
    epsilon: float
    p: List[List[float]]
    f: List[List[List[float]]]

    _p: np.ndarray = PrivateAttr()
    _f: np.ndarray = PrivateAttr()

    @model_validator(mode="after")
    def check_invariants(self) -> "ProblemInstance":
        for name in ("nx", "ny", "dim"):
            if getattr(self, name) < 1:
                raise InstanceError(name, f"must be at least 1, got {getattr(self, name)}")
        if not math.isfinite(self.epsilon) or self.epsilon < 0:
            raise InstanceError("epsilon", f"must be a finite nonnegative number, got {self.epsilon}")

        if len(self.p) != self.nx or any(len(row) != self.ny for row in self.p):
            raise InstanceError("p", f"expected {self.nx} rows of {self.ny} probabilities")
        if any(v < 0 or not math.isfinite(v) for row in self.p for v in row):
            raise InstanceError("p", "probabilities must be finite and nonnegative")
        total = math.fsum(v for row in self.p for v in row)
        if abs(total - 1.0) > NORMALIZATION_TOLERANCE:
            raise InstanceError("p", f"probabilities sum to {total!r}, expected 1")

        if len(self.f) != self.nx or any(len(row) != self.ny for row in self.f):
            raise DimensionMismatchError("f", f"expected {self.nx} rows of {self.ny} points")
        for x, row in enumerate(self.f):
            for y, point in enumerate(row):
                if len(point) != self.dim:
                    raise DimensionMismatchError(
                        "f", f"point f[{x}][{y}] has {len(point)} coordinates, expected {self.dim}"
                    )

        self._p = np.asarray(self.p, dtype=float)
        self._f = np.asarray(self.f, dtype=float).reshape(self.nx, self.ny, self.dim)
        return self

    @property
    def p_matrix(self) -> np.ndarray:
        """The joint pmf as an (nx, ny) array."""
        return self._p

    @property
    def f_table(self) -> np.ndarray:
        """The function table as an (nx, ny, dim) array."""
        return self._f

    @property
    def px(self) -> np.ndarray:
        return self._p.sum(axis=1)

    @property
    def py(self) -> np.ndarray:
        return self._p.sum(axis=0)

    def marginal_x(self) -> "Distribution":
        return Distribution(probs=self.px.tolist())

    def marginal_y(self) -> "Distribution":
        return Distribution(probs=self.py.tolist())

    def conditional_x_given_y(self, y: int) -> "Distribution":
        """Return p(x|y) for a side-information symbol with positive probability."""
        column = self._p[:, y]
        if column.sum() <= 0:
            raise InstanceError("y", f"p(y={y}) is zero")
        return Distribution(probs=(column / column.sum()).tolist())

    def conditional_y_given_x(self, x: int) -> "Distribution":
        """Return p(y|x) for a vertex with positive probability."""
        row = self._p[x]
        if row.sum() <= 0:
            raise InstanceError("x", f"p(x={x}) is zero")
        return Distribution(probs=(row / row.sum()).tolist())

    def is_independent(self) -> bool:
        """True when p(x, y) = p(x) p(y) everywhere within the normalization tolerance."""
        return bool(np.all(np.abs(self._p - np.outer(self.px, self.py)) <= NORMALIZATION_TOLERANCE))

    def with_epsilon(self, epsilon: float) -> "ProblemInstance":
        """Return a copy of this instance at another fidelity."""
        return ProblemInstance(nx=self.nx, ny=self.ny, dim=self.dim, epsilon=epsilon, p=self.p, f=self.f)

    def with_px(self, px: Sequence[float], py: Optional[Sequence[float]] = None) -> "ProblemInstance":
        """Return a copy with an independent pmf p(x) p(y).

        Args:
            px: New marginal of X
            py: New marginal of Y, defaults to the current one

        Returns:
            The re-weighted instance
        """
        py = self.py if py is None else np.asarray(py, dtype=float)
        joint = np.outer(np.asarray(px, dtype=float), py)
        return ProblemInstance(nx=self.nx, ny=self.ny, dim=self.dim, epsilon=self.epsilon, p=joint.tolist(), f=self.f)


class Distribution(BaseModel):
    """A pmf over a finite alphabet."""

    probs: List[float] = Field(..., min_length=1)

    @model_validator(mode="after")
    def check_pmf(self) -> "Distribution":
        if any(v < 0 for v in self.probs):
            raise InstanceError("probs", "probabilities must be nonnegative")
        total = math.fsum(self.probs)
        if abs(total - 1.0) > NORMALIZATION_TOLERANCE:
            raise InstanceError("probs", f"probabilities sum to {total!r}, expected 1")
        return self

    def as_array(self) -> np.ndarray:
        return np.asarray(self.probs, dtype=float)


class ErrorReport(BaseModel):
    """Empirical average symbol-error probability of a reconstruction."""

    n: int = Field(..., ge=1)
    violations: int = Field(..., ge=0)
    p_avg: float = Field(..., ge=0.0, le=1.0)


def independent_instance(
    px: Sequence[float], py: Sequence[float], f: Sequence[Sequence[Sequence[float]]], epsilon: float
) -> ProblemInstance:
    """Build an instance whose pmf factors as p(x) p(y)."""
    joint = np.outer(np.asarray(px, dtype=float), np.asarray(py, dtype=float))
    f_arr = np.asarray(f, dtype=float)
    return ProblemInstance(
        nx=joint.shape[0],
        ny=joint.shape[1],
        dim=f_arr.shape[2],
        epsilon=epsilon,
        p=joint.tolist(),
        f=f_arr.tolist(),
    )


def identity_instance(points: Sequence[Sequence[float]], probs: Sequence[float], epsilon: float) -> ProblemInstance:
    """Build the instance whose function is the identity on an embedded alphabet.

    Args:
        points: One point per source symbol
        probs: p(x)
        epsilon: Fidelity

    Returns:
        An instance without side information (ny = 1)
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    if pts.shape[0] != len(probs):
        raise DimensionMismatchError("points", f"{pts.shape[0]} points for {len(probs)} probabilities")
    return ProblemInstance(
        nx=pts.shape[0],
        ny=1,
        dim=pts.shape[1],
        epsilon=epsilon,
        p=[[float(v)] for v in probs],
        f=[[row.tolist()] for row in pts],
    )


def _check_indices(inst: ProblemInstance, xs: np.ndarray, ys: np.ndarray) -> None:
    if xs.size and (xs.min() < 0 or xs.max() >= inst.nx):
        raise InstanceError("x", f"source symbols must lie in [0, {inst.nx})")
    if ys.size and (ys.min() < 0 or ys.max() >= inst.ny):
        raise InstanceError("y", f"side-information symbols must lie in [0, {inst.ny})")


def distortion_eps(inst: ProblemInstance, x: int, y: int, z: Sequence[float]) -> int:
    """Maximal-distortion indicator: 1 iff ||z - f(x, y)|| > epsilon.

    Raises:
        DimensionMismatchError: If ``z`` does not have ``inst.dim`` coordinates
        InstanceError: If ``x`` or ``y`` is outside its alphabet
    """
    z = np.asarray(z, dtype=float)
    _check_indices(inst, np.asarray([x]), np.asarray([y]))
    if z.shape != (inst.dim,):
        raise DimensionMismatchError("z", f"expected {inst.dim} coordinates, got shape {z.shape}")
    return int(np.linalg.norm(z - inst.f_table[x, y]) > inst.epsilon + DISTANCE_TOLERANCE)


def p_avg(inst: ProblemInstance, xs: Sequence[int], ys: Sequence[int], zs: Sequence[Sequence[float]]) -> ErrorReport:
    """Average symbol-error probability of the reconstructions ``zs``.

    Raises:
        DimensionMismatchError: If the sequences are empty or their lengths or dimensions disagree
        InstanceError: If a symbol is outside its alphabet
    """
    xs = np.asarray(xs, dtype=int)
    ys = np.asarray(ys, dtype=int)
    zs = np.asarray(zs, dtype=float)
    if not (len(xs) == len(ys) == len(zs)) or len(xs) == 0:
        raise DimensionMismatchError("xs", f"sequence lengths differ or are empty: {len(xs)}, {len(ys)}, {len(zs)}")
    if zs.ndim != 2 or zs.shape[1] != inst.dim:
        raise DimensionMismatchError("zs", f"expected points of dimension {inst.dim}, got shape {zs.shape}")
    _check_indices(inst, xs, ys)

    distances = np.linalg.norm(zs - inst.f_table[xs, ys], axis=1)
    violations = int(np.count_nonzero(~(distances <= inst.epsilon + DISTANCE_TOLERANCE)))
    return ErrorReport(n=len(xs), violations=violations, p_avg=violations / len(xs))


def cmi_from_rows(p: np.ndarray, rows: np.ndarray) -> float:
    """I(W;X|Y) in bits for a joint p(x, y) and a channel matrix p(w|x).

    Zero-probability terms contribute nothing. ``rows`` may have any number of columns,
    so the same formula serves hyperedge channels and arbitrary auxiliaries.
    """
    py = p.sum(axis=0)
    live = py > 0
    p = p[:, live]
    # r[y, w] = p(w|y)
    r = (p.T @ rows) / py[live][:, None]
    weights = p[:, :, None] * rows[:, None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        logs = np.log2(rows)[:, None, :] - np.log2(r)[None, :, :]
        terms = np.where(weights > 0, weights * logs, 0.0)
    return max(float(terms.sum()), 0.0)


def conditional_mutual_information(inst: ProblemInstance, ch: QuantizerChannel) -> float:
    """I(W;X|Y) in bits for a hyperedge-supported channel.

    Raises:
        ChannelError: If a row of a positive-probability vertex is not normalized
    """
    ch.check_rows(inst.px)
    return cmi_from_rows(inst.p_matrix, ch.rows)


def entropy(dist: Distribution | Sequence[float]) -> float:
    """Shannon entropy in bits."""
    probs = dist.as_array() if isinstance(dist, Distribution) else np.asarray(dist, dtype=float)
    return float(entr(probs).sum() / math.log(2))


def mutual_information_xw(px: Sequence[float], channel: np.ndarray) -> float:
    """I(W;X) in bits for a source p(x) and a channel matrix p(w|x)."""
    px = np.asarray(px, dtype=float)
    return cmi_from_rows(px[:, None], np.asarray(channel, dtype=float))


def sample_pairs(inst: ProblemInstance, n: int, rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray]:
    """Draw ``n`` i.i.d. pairs (x, y) from p(x, y).

    Returns:
        Two integer arrays of length ``n``
    """
    flat = inst.p_matrix.ravel()
    cells = rng.choice(flat.size, size=n, p=flat / flat.sum())
    xs, ys = np.divmod(cells, inst.ny)
    return xs.astype(int), ys.astype(int)
