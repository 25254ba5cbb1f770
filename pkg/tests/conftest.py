"""Common test fixtures and configurations."""

import numpy as np
import pytest

from hypergraph_coding.core.model import ProblemInstance
from hypergraph_coding.instance_io import load_fixture

FIG4_ROW1 = [1 / 15, 4 / 15, 8 / 15, 2 / 15]


@pytest.fixture
def fig5():
    """Three uniform planar points with no side information, epsilon = 0.95."""
    return load_fixture("fig5")


@pytest.fixture
def example1():
    """Dependent X, Y satisfying Condition 1 at epsilon = 0."""
    return load_fixture("example1")


@pytest.fixture
def example2():
    """Two overlapping maximal hyperedges at epsilon = sqrt(13) / 4."""
    return load_fixture("example2")


@pytest.fixture
def fig4_row1():
    """The four-symbol source of the LZW table, first pmf row, uniform side information."""
    return load_fixture("fig4").with_px(FIG4_ROW1)


def _normalized(weights: np.ndarray) -> list:
    p = weights / weights.sum()
    return p.tolist()


@pytest.fixture
def random_instance():
    """Factory for small random instances with some zero-probability cells."""

    def make(rng: np.random.Generator, max_nx: int = 5, max_ny: int = 3, max_dim: int = 2) -> ProblemInstance:
        nx = int(rng.integers(2, max_nx + 1))
        ny = int(rng.integers(1, max_ny + 1))
        dim = int(rng.integers(1, max_dim + 1))
        weights = rng.random((nx, ny)) * (rng.random((nx, ny)) > 0.2)
        if weights.sum() == 0:
            weights[0, 0] = 1.0
        f = np.round(rng.uniform(0.0, 3.0, size=(nx, ny, dim)) * 2) / 2
        return ProblemInstance(
            nx=nx,
            ny=ny,
            dim=dim,
            epsilon=float(rng.uniform(0.0, 1.5)),
            p=[_normalized(weights.ravel())[i * ny : (i + 1) * ny] for i in range(nx)],
            f=f.tolist(),
        )

    return make


@pytest.fixture
def condition1_instance():
    """Factory for random zero-fidelity instances that satisfy Condition 1.

    Each side-information column is either fully supported, empty, or has a
    constant function value, which is exactly what Condition 1 allows.
    """

    def make(rng: np.random.Generator) -> ProblemInstance:
        nx = int(rng.integers(2, 6))
        ny = int(rng.integers(1, 4))
        weights = np.zeros((nx, ny))
        f = np.zeros((nx, ny, 1))
        modes = rng.integers(0, 3, size=ny)
        modes[0] = 0
        for y, mode in enumerate(modes):
            if mode == 0:
                weights[:, y] = rng.random(nx) + 0.1
                f[:, y, 0] = rng.integers(0, 3, size=nx)
            elif mode == 2:
                weights[:, y] = rng.random(nx) * (rng.random(nx) > 0.5)
                f[:, y, 0] = float(rng.integers(0, 3))
        return ProblemInstance(
            nx=nx,
            ny=ny,
            dim=1,
            epsilon=0.0,
            p=[_normalized(weights.ravel())[i * ny : (i + 1) * ny] for i in range(nx)],
            f=f.tolist(),
        )

    return make
