"""Tail extrapolation for slowly converging partial-sum sequences.

The sequences handled here have tails of the shape

    S - S_N  ~  sum_{m>=1} N^{-(w + m - 2)} * P_m(ln N),   deg P_m <= d

which covers every truncated multiple zeta value and every H-function sum
of a harmonic product. The model is fitted exactly on the largest samples
for 1, 2 and 3 orders; successive fits give the error estimate.
"""
import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from harmonic_sums.errors import SingularFitError

logger = logging.getLogger(__name__)

MAX_ORDERS = 3
SAMPLE_FLOOR = 1000


@dataclass(frozen=True)
class NumericValue:
    """Approximate real value with an error bound and the work spent on it.

    ``rigorous`` is True when the true value provably lies within
    ``error_bound``; extrapolated values carry an estimate only.
    """

    value: float
    error_bound: float
    terms_used: int
    rigorous: bool = True

    def to_dict(self):
        return {
            'value': self.value,
            'error_bound': self.error_bound,
            'terms_used': self.terms_used,
            'rigorous': self.rigorous,
        }


def sample_points(n_max: int, log_degree: int) -> List[int]:
    """Doubling grid ``N_min * 2**i`` up to ``n_max``.

    ``N_min = max(1000, 200 * d)`` keeps the smallest sample far enough out
    that powers of ln N are well separated.
    """
    n_min = max(SAMPLE_FLOOR, 200 * log_degree)
    points = []
    n = n_min
    while n <= n_max:
        points.append(n)
        n *= 2
    return points


def _fit(ns: np.ndarray, sums: np.ndarray, alpha: int, log_degree: int, orders: int) -> float:
    """Exact fit of the tail model on the given samples; returns the constant."""
    t = ns / ns[-1]
    log_shift = np.log(ns) - np.log(ns[-1])
    columns = [np.ones_like(t)]
    for m in range(orders):
        decay = t ** (-(alpha + m))
        for j in range(log_degree + 1):
            columns.append(decay * log_shift ** j)
    design = np.column_stack(columns)
    scale = np.max(np.abs(design), axis=0)
    solution, _, rank, _ = np.linalg.lstsq(design / scale, sums, rcond=None)
    if rank < design.shape[1]:
        raise SingularFitError(
            f"Tail model with {orders} order(s) and log degree {log_degree} is rank deficient "
            f"on {len(ns)} samples"
        )
    return float(solution[0] / scale[0])


def extrapolate_logfit(partial_sums: Sequence[Tuple[int, float]], w: int, log_degree: int) -> NumericValue:
    """Estimate the limit of a partial-sum sequence from samples ``(N, S_N)``.

    Args:
        partial_sums: Samples at geometrically increasing N
        w: Decay weight; the tail falls off like N^-(w-1) (w >= 2)
        log_degree: Highest power of ln N in the tail

    Returns:
        NumericValue for the candidate fit with the smallest error estimate

    Raises:
        SingularFitError: if there are too few samples or a fit is degenerate
    """
    alpha = w - 1
    ns = np.asarray([n for n, _ in partial_sums], dtype=np.float64)
    sums = np.asarray([s for _, s in partial_sums], dtype=np.float64)
    terms_used = int(ns[-1]) if len(ns) else 0
    block = log_degree + 1
    if len(ns) < block + 1:
        raise SingularFitError(f"Need at least {block + 1} samples, got {len(ns)}")
    if np.all(sums == sums[0]):
        return NumericValue(float(sums[-1]), 0.0, terms_used, rigorous=False)

    fits = {}
    max_orders = min(MAX_ORDERS, (len(ns) - 1) // block)
    for orders in range(1, max_orders + 1):
        size = 1 + orders * block
        try:
            fits[orders] = _fit(ns[-size:], sums[-size:], alpha, log_degree, orders)
        except SingularFitError:
            if orders == 1:
                raise
            logger.debug(f"Skipping {orders}-order tail fit: rank deficient")
            break
    max_orders = max(fits)

    candidates = []
    if len(ns) >= block + 2:
        shifted = _fit(ns[-block - 2:-1], sums[-block - 2:-1], alpha, log_degree, 1)
        candidates.append((abs(fits[1] - shifted), fits[1]))
    else:
        candidates.append((abs(fits[1] - float(sums[-1])), fits[1]))
    for orders in range(2, max_orders + 1):
        candidates.append((abs(fits[orders] - fits[orders - 1]), fits[orders]))

    error, value = min(candidates, key=lambda candidate: candidate[0])
    logger.debug(
        f"Extrapolated {len(ns)} samples up to N={terms_used}: {value!r} +/- {error:.3g} "
        f"(w={w}, d={log_degree})"
    )
    return NumericValue(value, error, terms_used, rigorous=False)
