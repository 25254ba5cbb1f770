"""The polar transform w = u G_N with G_N = F^{⊗n} in natural index order."""

import numpy as np

from hypergraph_coding.core.errors import PreconditionViolated


def block_exponent(length: int) -> int:
    """Return n with 2**n == length.

    Raises:
        PreconditionViolated: If ``length`` is not a power of two
    """
    if length < 1 or length & (length - 1):
        raise PreconditionViolated(f"blocklength must be a power of two, got {length}")
    return length.bit_length() - 1


def polar_transform(u: np.ndarray) -> np.ndarray:
    """Apply G_N over GF(2) along the last axis.

    The transform is its own inverse. Leading axes are treated as a batch.
    """
    w = np.array(u, dtype=np.uint8, copy=True)
    length = w.shape[-1]
    block_exponent(length)
    batch = w.shape[:-1]
    half = 1
    while half < length:
        view = w.reshape(batch + (length // (2 * half), 2, half))
        view[..., 0, :] ^= view[..., 1, :]
        half *= 2
    return w
