"""Floating-point values of multiple zeta values and zeta expressions.

zeta_value sums the nested series with compensated prefix sums and
brackets the tail rigorously: with Hurwitz zeta tails and the inner sums
when the inner composition converges, with a logarithmic integral bound
otherwise, or by splitting off the indices above N and evaluating the
prefixes recursively. Both I and tau(I) are tried. When no bracket fits the
budget the tail is extrapolated and the result is marked non-rigorous. Results are memoised per
(composition, tolerance exponent) in an MzvCache, optionally backed by a
plain-text file.
"""
import logging
import math
import threading
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import special

from harmonic_sums.algebra.compositions import (
    Composition,
    format_composition,
    is_admissible,
    parse_composition,
    tau,
    validate_composition,
)
from harmonic_sums.algebra.mzv import MzvExpr
from harmonic_sums.algebra.qsym import monomial_qsym, specialize_array
from harmonic_sums.config import Config
from harmonic_sums.errors import (
    CacheFormatError,
    InvalidToleranceError,
    NotAdmissibleError,
    NumericalInconsistencyError,
    ToleranceUnreachableError,
)
from harmonic_sums.numeric.extrapolate import NumericValue, extrapolate_logfit, sample_points

logger = logging.getLogger(__name__)

CACHE_HEADER = "MZVCACHE 2"
# Every admissible MZV is at most zeta(2) < 1.7.
MZV_UPPER_BOUND = 1.7
FIRST_BUDGET = 16_000
SPLIT_POINTS = (1000, 4000, 16_000, 64_000)


class MzvCache:
    """Write-once store of zeta values keyed by (composition text, tolerance exponent).

    Reads are lock-free dictionary lookups; writes (including the file
    append) are serialised by a lock.
    """

    def __init__(self, path: Optional[str] = None):
        self.path = Path(path) if path else None
        self._values: Dict[Tuple[str, int], NumericValue] = {}
        self._lock = threading.Lock()
        if self.path is not None and self.path.exists():
            self._load()

    def _load(self):
        with open(self.path, 'r', encoding='utf-8') as f:
            lines = f.read().splitlines()
        if not lines:
            return
        if lines[0].strip() != CACHE_HEADER:
            raise CacheFormatError(f"{self.path}: expected header {CACHE_HEADER!r}, got {lines[0]!r}")
        for number, line in enumerate(lines[1:], start=2):
            if not line.strip():
                continue
            fields = line.split(';')
            if len(fields) != 6:
                raise CacheFormatError(f"{self.path}:{number}: expected 6 fields, got {len(fields)}")
            if fields[5] not in ('0', '1'):
                raise CacheFormatError(f"{self.path}:{number}: rigour flag must be 0 or 1, got {fields[5]!r}")
            try:
                key = (format_composition(parse_composition(fields[0])), int(fields[1]))
                value = NumericValue(float.fromhex(fields[2]), float.fromhex(fields[3]), int(fields[4]),
                                     rigorous=fields[5] == '1')
            except ValueError as e:
                raise CacheFormatError(f"{self.path}:{number}: {e}") from e
            self._values.setdefault(key, value)
        logger.info(f"Loaded {len(self._values)} cached zeta values from {self.path}")

    def get(self, composition: Composition, tol_exponent: int) -> Optional[NumericValue]:
        return self._values.get((format_composition(composition), tol_exponent))

    def put(self, composition: Composition, tol_exponent: int, value: NumericValue) -> NumericValue:
        """Store a value unless the key is already present; returns the stored value."""
        key = (format_composition(composition), tol_exponent)
        with self._lock:
            if key in self._values:
                return self._values[key]
            self._values[key] = value
            if self.path is not None:
                self._append(key, value)
        return value

    def _append(self, key: Tuple[str, int], value: NumericValue):
        self.path.parent.mkdir(parents=True, exist_ok=True)
        fresh = not self.path.exists() or self.path.stat().st_size == 0
        with open(self.path, 'a', encoding='utf-8') as f:
            if fresh:
                f.write(CACHE_HEADER + "\n")
            f.write(f"{key[0]};{key[1]};{value.value.hex()};{value.error_bound.hex()};{value.terms_used};{int(value.rigorous)}\n")

    def __len__(self):
        return len(self._values)


_default_cache: Optional[MzvCache] = None
_default_cache_lock = threading.Lock()


def get_cache() -> MzvCache:
    """Process-wide cache, created on first use from Config.MZV_CACHE_PATH."""
    global _default_cache
    with _default_cache_lock:
        if _default_cache is None:
            _default_cache = MzvCache(Config.MZV_CACHE_PATH)
        return _default_cache


def set_cache_path(path: Optional[str]) -> MzvCache:
    """Replace the process-wide cache (the CLI ``--cache`` flag)."""
    global _default_cache
    with _default_cache_lock:
        _default_cache = MzvCache(path)
        return _default_cache


def tolerance_exponent(tol: float) -> int:
    """Smallest e with 10**-e <= tol."""
    return max(0, math.ceil(-math.log10(tol) - 1e-12))


def fast_representative(composition: Composition) -> Composition:
    """Member of {I, tau(I)} with the larger first part (then the smaller depth)."""
    dual = tau(composition)
    return max(composition, dual, key=lambda c: (c[0], -len(c)))


def representatives(composition: Composition) -> Tuple[Composition, ...]:
    """I and tau(I), fast_representative first, without repeats."""
    first = fast_representative(composition)
    other = tau(first)
    return (first,) if other == first else (first, other)


def hurwitz_tail(s: int, n: int) -> float:
    """sum_{m > n} m^-s."""
    return float(special.zeta(s, n + 1))


def tail_bound(composition: Composition, n: int) -> float:
    """Upper bound on zeta(I) minus its partial sum over n_1 <= n.

    Every inner sum is at most (1 + ln n_1)^m with m = depth - 1, and the
    outer summand is decreasing, so the tail is at most the integral of
    (1 + ln x)^m x^-s over [n, inf), which has the closed form
    sum_j m!/(m-j)! (1 + ln n)^(m-j) n^(1-s) / (s-1)^(j+1).

    Raises:
        NumericalInconsistencyError: if the bound is not positive and finite
    """
    s, m = composition[0], len(composition) - 1
    log_n = 1.0 + math.log(n)
    total = sum(math.perm(m, j) * log_n ** (m - j) / (s - 1) ** (j + 1) for j in range(m + 1))
    bound = total * float(n) ** (1 - s)
    if not (math.isfinite(bound) and bound > 0):
        raise NumericalInconsistencyError(
            f"Tail bound for zeta({format_composition(composition)}) at N={n} is {bound!r}"
        )
    return bound


def zeta_partial_sums(composition: Composition, n_max: int) -> np.ndarray:
    """Array whose entry N is the truncation of zeta(I) to n_1 <= N."""
    return specialize_array(monomial_qsym(tuple(reversed(composition))), n_max)


def tail_interval(composition: Composition, n: int, suffix_sums: Sequence[float]) -> Tuple[float, float]:
    """Interval containing zeta(I) minus its truncation to n_1 <= n.

    ``suffix_sums[r]`` is the truncation at n of zeta(I[r:]). The inner sum
    of each tail term lies between its value at n and, when the inner
    composition is admissible, its own upper limit; otherwise the
    logarithmic tail_bound caps it.
    """
    z = hurwitz_tail(composition[0], n)
    if len(composition) == 1:
        return z, z
    inner = suffix_sums[1]
    low = inner * z
    high = tail_bound(composition, n)
    if composition[1] >= 2:
        _, inner_tail = tail_interval(composition[1:], n, suffix_sums[1:])
        high = min(high, (inner + inner_tail) * z)
    return low, max(low, high)


def _suffix_sums(composition: Composition, n: int) -> List[float]:
    return [float(zeta_partial_sums(composition[r:], n)[n]) for r in range(len(composition))]


def _bracket(composition: Composition, target: float, max_terms: int) -> Optional[NumericValue]:
    """Partial sum plus the midpoint of tail_interval, doubling N until the half-width fits."""
    n = min(max_terms, FIRST_BUDGET)
    previous = None
    while True:
        sums = _suffix_sums(composition, n)
        low, high = tail_interval(composition, n, sums)
        half = (high - low) / 2
        value = sums[0] + low + half
        error = half + 4 * float(np.spacing(value))
        if error <= target:
            return NumericValue(value, error, n)
        if n >= max_terms:
            return None
        if previous is not None:
            # Give up early when the observed decay cannot reach target within budget.
            rate = previous / half if half > 0 else math.inf
            if rate <= 1 or half / rate ** math.log2(max_terms / n) > target:
                return None
        previous = half
        n = min(max_terms, 2 * n)


def _split(composition: Composition, target: float, max_terms: int) -> Optional[NumericValue]:
    """zeta(I) = sum_r zeta_{>N}(I[:r]) * S_N(I[r:]), prefixes evaluated recursively.

    zeta_{>N}(P) sums only over indices above N. For r = 1 it is a Hurwitz
    tail; for 1 < r < depth it follows from zeta(P) by inverting the same
    identity; the last one lies in [0, zeta_{>N}(I[:-1]) * hurwitz_tail(i_k, N)]
    when i_k >= 2.
    """
    k = len(composition)
    if k < 3 or composition[-1] < 2:
        return None
    for n in SPLIT_POINTS:
        if n > max_terms:
            break
        segment = {(a, a): 1.0 for a in range(k + 1)}
        for a in range(k):
            for b in range(a + 1, k + 1):
                segment[a, b] = float(zeta_partial_sums(composition[a:b], n)[n])

        # Sensitivity of the result to the error of each prefix value.
        sensitivity: Dict[int, Dict[int, float]] = {0: {}, 1: {}}
        for r in range(2, k):
            row = {r: 1.0}
            for t in range(r):
                for j, c in sensitivity[t].items():
                    row[j] = row.get(j, 0.0) + c * segment[t, r]
            sensitivity[r] = row
        weights: Dict[int, float] = {}
        z_last = hurwitz_tail(composition[-1], n)
        for r in range(2, k):
            scale = segment[r, k] + (z_last if r == k - 1 else 0.0)
            for j, c in sensitivity[r].items():
                weights[j] = weights.get(j, 0.0) + c * scale

        heads = [1.0, hurwitz_tail(composition[0], n)]
        errors = [0.0, 4 * float(np.spacing(heads[1]))]
        for r in range(2, k):
            prefix_tol = target / (4 * (k - 2) * max(1.0, weights[r]))
            prefix = _rigorous_value(composition[:r], prefix_tol, max_terms)
            if prefix is None:
                return None
            heads.append(prefix.value - sum(heads[t] * segment[t, r] for t in range(r)))
            errors.append(prefix.error_bound + 4 * r * float(np.spacing(prefix.value))
                          + sum(errors[t] * segment[t, r] for t in range(r)))

        base = sum(heads[r] * segment[r, k] for r in range(k))
        last = max(0.0, (heads[k - 1] + errors[k - 1]) * z_last)
        value = base + last / 2
        error = (sum(errors[r] * segment[r, k] for r in range(k)) + last / 2
                 + 8 * k * float(np.spacing(max(1.0, abs(value)))))
        if error <= target:
            return NumericValue(value, error, n)
    return None


def _rigorous_value(composition: Composition, target: float, max_terms: int) -> Optional[NumericValue]:
    for method in (_bracket, _split):
        for candidate in representatives(composition):
            result = method(candidate, target, max_terms)
            if result is not None:
                return result
    return None


def _extrapolate_zeta(composition: Composition, target: float, max_terms: int) -> NumericValue:
    log_degree = len(composition) - 1
    budget = min(max_terms, FIRST_BUDGET)
    while True:
        ns = sample_points(budget, log_degree)
        if len(ns) < log_degree + 2:
            if budget >= max_terms:
                raise ToleranceUnreachableError(
                    f"zeta({format_composition(composition)}): budget {max_terms} is too small to extrapolate"
                )
            budget = min(max_terms, budget * 2)
            continue
        sums = zeta_partial_sums(composition, ns[-1])
        result = extrapolate_logfit([(n, float(sums[n])) for n in ns], composition[0], log_degree)
        if result.error_bound <= target or budget >= max_terms:
            break
        budget = min(max_terms, budget * 2)

    top = ns[-1]
    s_top = float(sums[top])
    low, high = tail_interval(composition, top, _suffix_sums(composition, top))
    slack = max(result.error_bound, target)
    if not s_top + low - slack <= result.value <= s_top + high + slack:
        raise NumericalInconsistencyError(
            f"zeta({format_composition(composition)}): extrapolated {result.value!r} lies outside "
            f"[{s_top + low!r}, {s_top + high!r}]"
        )
    return result


def _compute_zeta(composition: Composition, target: float, max_terms: int) -> NumericValue:
    result = _rigorous_value(composition, target, max_terms)
    if result is not None:
        return result
    logger.debug(f"zeta({format_composition(composition)}): no rigorous bracket within budget, extrapolating")
    return _extrapolate_zeta(fast_representative(composition), target, max_terms)


def zeta_value(composition, tol: float, max_terms: Optional[int] = None,
               cache: Optional[MzvCache] = None) -> NumericValue:
    """Numeric value of zeta(I) with absolute error at most ``tol``.

    The value is bracketed rigorously when the budget allows (``rigorous``
    is then True); otherwise the tail is extrapolated and ``error_bound``
    is an estimate from the spread of successive fits.

    Args:
        composition: Admissible composition, first part outermost
        tol: Requested absolute tolerance (>= 1e-12)
        max_terms: Outer-term budget (default Config.MZV_MAX_TERMS)
        cache: Value cache (default: the process-wide cache)

    Returns:
        NumericValue with 0 <= error_bound <= tol

    Raises:
        NotAdmissibleError: for an empty composition or one starting with 1
        InvalidToleranceError: for tol outside the supported range
        ToleranceUnreachableError: when the budget does not reach tol
        NumericalInconsistencyError: when a bound comes out negative or non-finite
    """
    composition = validate_composition(composition)
    if not is_admissible(composition):
        raise NotAdmissibleError(f"zeta diverges at {composition}")
    if not Config.MIN_ZETA_TOL <= tol:
        raise InvalidToleranceError(f"Tolerance must be at least {Config.MIN_ZETA_TOL:g}, got {tol:g}")
    max_terms = Config.MZV_MAX_TERMS if max_terms is None else max_terms
    cache = get_cache() if cache is None else cache

    exponent = tolerance_exponent(tol)
    cached = cache.get(composition, exponent)
    if cached is not None:
        return cached

    target = 10.0 ** -exponent
    result = _compute_zeta(composition, target, max_terms)
    if not (math.isfinite(result.error_bound) and result.error_bound >= 0):
        raise NumericalInconsistencyError(
            f"zeta({format_composition(composition)}): error bound {result.error_bound!r}"
        )
    if result.error_bound > tol:
        raise ToleranceUnreachableError(
            f"zeta({format_composition(composition)}): error {result.error_bound:.3g} exceeds {tol:g} "
            f"after {result.terms_used} terms"
        )
    logger.debug(
        f"zeta({format_composition(composition)}) = {result.value!r} +/- {result.error_bound:.3g}"
        f"{'' if result.rigorous else ' (estimated)'}"
    )
    return cache.put(composition, exponent, result)


def expr_value(e: MzvExpr, tol: float, max_terms: Optional[int] = None,
               cache: Optional[MzvCache] = None) -> NumericValue:
    """Numeric value of a zeta polynomial with total absolute error at most ``tol``.

    Each zeta factor gets tolerance tol / (2 * sum |c| * deg * B^(deg-1)),
    B bounding every MZV; the reported bound is the product bound
    prod(|v| + b) - prod(|v|) summed with the coefficients. It is rigorous
    exactly when every zeta value is, which ``rigorous`` records.
    """
    if tol <= 0:
        raise InvalidToleranceError(f"Tolerance must be positive, got {tol:g}")
    budget = sum(
        abs(c) * len(m) * MZV_UPPER_BOUND ** (len(m) - 1) for m, c in e.terms.items() if m
    )
    zeta_tol = tol if budget == 0 else max(Config.MIN_ZETA_TOL, tol / (2 * float(budget)))

    values = {c: zeta_value(c, zeta_tol, max_terms=max_terms, cache=cache) for c in e.compositions()}
    total = 0.0
    error = 0.0
    for monomial, coefficient in e.items():
        product = 1.0
        upper = 1.0
        lower = 1.0
        for composition in monomial:
            v = values[composition]
            product *= v.value
            upper *= abs(v.value) + v.error_bound
            lower *= abs(v.value)
        total += float(coefficient) * product
        error += abs(float(coefficient)) * (upper - lower)
    error += 4 * float(np.spacing(abs(total) if total else 1.0)) * max(1, len(e.terms))
    if error > tol:
        raise ToleranceUnreachableError(f"Expression {e}: error {error:.3g} exceeds {tol:g}")
    terms_used = max((v.terms_used for v in values.values()), default=0)
    return NumericValue(total, error, terms_used, rigorous=all(v.rigorous for v in values.values()))
