"""Compensated accumulation for long float64 partial-sum sequences.

The running prefix sum is split into fixed-size blocks. Inside a block
``numpy.cumsum`` is used directly; the block totals are chained with the
error-free two-sum transformation so the carried offset keeps a separate
low-order word. Summation order is fixed, so results are bit-for-bit
reproducible.
"""
import logging
from typing import Tuple

import numpy as np

logger = logging.getLogger(__name__)

BLOCK_SIZE = 1024


def two_sum(u: float, v: float) -> Tuple[float, float]:
    """Error-free transformation: ``u + v == s + t`` exactly."""
    s = u + v
    up = s - v
    vpp = s - up
    up -= u
    vpp -= v
    return s, -(up + vpp)


class Accumulator:
    """Running sum held as a high word and a low-order correction."""

    def __init__(self, value: float = 0.0):
        self._s = float(value)
        self._t = 0.0

    def add(self, y: float):
        y, u = two_sum(float(y), self._t)
        self._s, self._t = two_sum(y, self._s)
        if self._s == 0:
            self._s = u
        else:
            self._t += u

    @property
    def high(self) -> float:
        return self._s

    @property
    def low(self) -> float:
        return self._t

    def total(self) -> float:
        return self._s + self._t


def compensated_cumsum(terms: np.ndarray) -> np.ndarray:
    """Prefix sums of ``terms`` with block-level compensated carries.

    Args:
        terms: 1-d float64 array

    Returns:
        Array of the same length whose entry ``i`` is ``sum(terms[:i+1])``
    """
    terms = np.asarray(terms, dtype=np.float64)
    n = terms.shape[0]
    if n == 0:
        return terms.copy()
    n_blocks = -(-n // BLOCK_SIZE)
    padded = np.zeros(n_blocks * BLOCK_SIZE, dtype=np.float64)
    padded[:n] = terms
    blocks = padded.reshape(n_blocks, BLOCK_SIZE)
    within = np.cumsum(blocks, axis=1)

    offsets_high = np.empty(n_blocks, dtype=np.float64)
    offsets_low = np.empty(n_blocks, dtype=np.float64)
    carry = Accumulator()
    for b in range(n_blocks):
        offsets_high[b] = carry.high
        offsets_low[b] = carry.low
        carry.add(within[b, -1])

    result = offsets_high[:, None] + (within + offsets_low[:, None])
    return result.reshape(-1)[:n]


def shifted(values: np.ndarray) -> np.ndarray:
    """``out[n] = values[n-1]`` with ``out[0] = 0``."""
    out = np.empty_like(values)
    out[0] = 0.0
    out[1:] = values[:-1]
    return out


def reciprocal_powers(n_max: int, exponent: int) -> np.ndarray:
    """Array ``x`` with ``x[n] = n**-exponent`` for ``1 <= n <= n_max`` and ``x[0] = 0``."""
    n = np.arange(n_max + 1, dtype=np.float64)
    x = np.zeros(n_max + 1, dtype=np.float64)
    with np.errstate(under='ignore'):
        x[1:] = n[1:] ** (-float(exponent))
    return x
