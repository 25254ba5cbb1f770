"""Minimum enclosing balls of finite point sets.

The main routine is Welzl's move-to-front recursion: the support set grows by one
point per recursion level, so the depth never exceeds ``dim + 1`` and long inputs
are handled by the loop rather than the call stack.
"""

import hashlib
import itertools
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np
import structlog
from pydantic import BaseModel, ConfigDict, field_validator

from hypergraph_coding.core.errors import GeometryError

logger = structlog.get_logger(__name__)

TOLERANCE = 1e-9
SUPPORT_TOLERANCE = 1e-10
DEGENERATE_RATIO = 1e-10
MAX_SUPPORTED_DIM = 8
ORACLE_MAX_POINTS = 12

_Sphere = Tuple[Optional[np.ndarray], float]


class Ball(BaseModel):
    """A closed Euclidean ball."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    center: np.ndarray
    radius: float

    @field_validator("radius")
    @classmethod
    def nonnegative(cls, value: float) -> float:
        if value < 0:
            raise ValueError("radius must be nonnegative")
        return value

    def contains(self, point: Sequence[float], tol: float = TOLERANCE) -> bool:
        return bool(np.linalg.norm(np.asarray(point, dtype=float) - self.center) <= self.radius + tol)


def _as_points(points) -> np.ndarray:
    try:
        pts = np.asarray(points, dtype=float)
    except ValueError as e:
        raise GeometryError(f"points have inconsistent dimensions: {e}") from e
    if pts.ndim != 2:
        raise GeometryError(f"expected a list of points, got an array of shape {pts.shape}")
    if pts.shape[0] == 0:
        raise GeometryError("cannot enclose an empty point set")
    if pts.shape[1] == 0:
        raise GeometryError("points must have at least one coordinate")
    if not np.all(np.isfinite(pts)):
        raise GeometryError("points must have finite coordinates")
    return pts


def _seed_for(pts: np.ndarray) -> int:
    return int.from_bytes(hashlib.sha256(pts.tobytes()).digest()[:8], "big")


def _inside(sphere: _Sphere, point: np.ndarray) -> bool:
    center, radius = sphere
    if center is None:
        return False
    return float(np.linalg.norm(point - center)) <= radius + SUPPORT_TOLERANCE


def _independence(spans: np.ndarray) -> float:
    """Volume of the spanned parallelotope over the product of its edge lengths, in [0, 1]."""
    lengths = np.linalg.norm(spans, axis=1)
    if np.any(lengths == 0.0):
        return 0.0
    gram = (spans / lengths[:, None]) @ (spans / lengths[:, None]).T
    return math.sqrt(max(float(np.linalg.det(gram)), 0.0))


def _circumsphere(support: List[np.ndarray]) -> _Sphere:
    """Smallest sphere through every support point, or the best covering sub-support if degenerate."""
    if not support:
        return None, -1.0
    if len(support) == 1:
        return support[0], 0.0

    origin = support[0]
    spans = np.stack(support[1:]) - origin
    if _independence(spans) >= DEGENERATE_RATIO:
        gram = spans @ spans.T
        coeffs = np.linalg.solve(gram, 0.5 * np.diag(gram))
        center = origin + coeffs @ spans
        radius = max(float(np.linalg.norm(p - center)) for p in support)
        return center, radius

    best: _Sphere = (None, math.inf)
    for subset in itertools.combinations(support, len(support) - 1):
        candidate = _circumsphere(list(subset))
        if candidate[1] < best[1] and all(_inside(candidate, p) for p in support):
            best = candidate
    if best[0] is None:
        center = np.mean(np.stack(support), axis=0)
        best = (center, max(float(np.linalg.norm(p - center)) for p in support))
    return best


def _move_to_front(points: List[np.ndarray], end: int, support: List[np.ndarray], dim: int) -> _Sphere:
    sphere = _circumsphere(support)
    if len(support) == dim + 1:
        return sphere

    i = 0
    while i < end:
        point = points[i]
        if not _inside(sphere, point):
            sphere = _move_to_front(points, i, support + [point], dim)
            points.insert(0, points.pop(i))
        i += 1
    return sphere


def min_enclosing_ball(points: Sequence[Sequence[float]]) -> Ball:
    """Compute the minimum enclosing ball of a nonempty point set.

    Args:
        points: Points of a common dimension

    Returns:
        The unique smallest closed ball containing every point

    Raises:
        GeometryError: If the set is empty or the points disagree on their dimension
    """
    pts = _as_points(points)
    n, dim = pts.shape
    if dim > MAX_SUPPORTED_DIM:
        logger.warning("ball_dimension_unsupported", dim=dim, supported=MAX_SUPPORTED_DIM)

    if n == 1:
        return Ball(center=pts[0].copy(), radius=0.0)
    if dim == 1:
        lo, hi = float(pts.min()), float(pts.max())
        return Ball(center=np.array([(lo + hi) / 2.0]), radius=(hi - lo) / 2.0)
    if n == 2:
        return Ball(center=(pts[0] + pts[1]) / 2.0, radius=float(np.linalg.norm(pts[0] - pts[1])) / 2.0)

    # Work in coordinates centered on the points and scaled to unit extent.
    unique = np.unique(pts, axis=0)
    shift = unique.mean(axis=0)
    scale = float(np.max(np.abs(unique - shift)))
    if scale == 0.0:
        return Ball(center=pts[0].copy(), radius=0.0)
    normalized = (unique - shift) / scale
    order = np.random.default_rng(_seed_for(pts)).permutation(len(normalized))
    shuffled = [normalized[i] for i in order]

    unit_center, _ = _move_to_front(shuffled, len(shuffled), [], dim)
    center = shift + scale * np.asarray(unit_center, dtype=float)
    radius = float(np.max(np.linalg.norm(pts - center, axis=1)))
    return Ball(center=center, radius=radius)


def _circumcircle_2d(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> Optional[Ball]:
    area2 = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    if abs(area2) < DEGENERATE_RATIO * float(np.linalg.norm(b - a) * np.linalg.norm(c - a)):
        return None
    d = 2.0 * area2
    u, v = b - a, c - a
    uu, vv = u @ u, v @ v
    offset = np.array([v[1] * uu - u[1] * vv, u[0] * vv - v[0] * uu]) / d
    center = a + offset
    return Ball(center=center, radius=float(np.linalg.norm(offset)))


def ball_oracle_bruteforce(points: Sequence[Sequence[float]]) -> Ball:
    """Exhaustive minimum enclosing circle over every pair diameter and triple circumcircle.

    Only meant as an independent check of :func:`min_enclosing_ball` on small planar sets.

    Raises:
        GeometryError: If the points are not planar or there are too many of them
    """
    pts = _as_points(points)
    if pts.shape[1] != 2:
        raise GeometryError(f"the brute-force oracle only handles planar points, got dimension {pts.shape[1]}")
    if pts.shape[0] > ORACLE_MAX_POINTS:
        raise GeometryError(f"the brute-force oracle accepts at most {ORACLE_MAX_POINTS} points")

    if np.all(pts == pts[0]):
        return Ball(center=pts[0].copy(), radius=0.0)

    candidates: List[Ball] = []
    for a, b in itertools.combinations(pts, 2):
        candidates.append(Ball(center=(a + b) / 2.0, radius=float(np.linalg.norm(a - b)) / 2.0))
    for a, b, c in itertools.combinations(pts, 3):
        circle = _circumcircle_2d(a, b, c)
        if circle is not None:
            candidates.append(circle)

    tol = TOLERANCE * min(1.0, float(np.max(np.ptp(pts, axis=0))))
    best: Optional[Ball] = None
    for ball in candidates:
        if best is not None and ball.radius >= best.radius:
            continue
        if np.all(np.linalg.norm(pts - ball.center, axis=1) <= ball.radius + tol):
            best = ball
    if best is None:
        raise GeometryError("no pair or triple circle encloses the points")
    return best
