"""Successive cancellation over log-likelihood ratios.

LLRs are log P(bit = 0) / P(bit = 1). Arrays have shape (channels, blocks, n): the
channel axis lets one pass track several laws at once (for example the law given the
source and the prior-only law) while sharing the same bit decisions.
"""

from typing import Callable

import numpy as np

LLR_CLAMP = 30.0

Decision = Callable[[int, np.ndarray], np.ndarray]


def check_node(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """LLR of the XOR of two independent bits."""
    return np.logaddexp(0.0, a + b) - np.logaddexp(a, b)


def bit_node(a: np.ndarray, b: np.ndarray, s: np.ndarray) -> np.ndarray:
    """LLR of t given b-evidence, a-evidence on s XOR t, and the decided bit s."""
    return b + (1.0 - 2.0 * s) * a


def bhattacharyya_from_llr(llr: np.ndarray) -> np.ndarray:
    """2 sqrt(P0 P1) = sech(L / 2), computed without overflow."""
    t = np.abs(llr) / 2.0
    e = np.exp(-t)
    return 2.0 * e / (1.0 + e * e)


def binary_entropy_from_llr(llr: np.ndarray) -> np.ndarray:
    """Binary entropy in bits of the law with the given LLR."""
    t = np.abs(llr)
    # h = log2(1 + e^-t) + t e^-t / (1 + e^-t) / ln 2
    e = np.exp(-t)
    return (np.log1p(e) + t * e / (1.0 + e)) / np.log(2.0)


class SuccessiveCancellation:
    """One successive-cancellation pass, visiting u_0 ... u_{N-1} in order.

    ``decide(i, leaf_llr)`` receives the (channels, blocks) LLRs of u_i given the past
    decisions and returns the (blocks,) bits chosen for u_i.
    """

    def __init__(self, decide: Decision):
        self.decide = decide
        self.index = 0

    def run(self, llr: np.ndarray) -> np.ndarray:
        """Decode every u_i and return the re-encoded word u G_N of shape (blocks, n)."""
        self.index = 0
        return self._recurse(np.clip(llr, -LLR_CLAMP, LLR_CLAMP))

    def _recurse(self, llr: np.ndarray) -> np.ndarray:
        n = llr.shape[-1]
        if n == 1:
            bits = np.asarray(self.decide(self.index, llr[..., 0]), dtype=np.uint8)
            self.index += 1
            return bits[:, None]

        half = n // 2
        upper, lower = llr[..., :half], llr[..., half:]
        s = self._recurse(check_node(upper, lower))
        t = self._recurse(bit_node(upper, lower, s))
        return np.concatenate([s ^ t, t], axis=-1)
