"""Direct numeric evaluation of H-function series of specialised products.

A descriptor names the series

    sum_{n >= start} prod_f u_f(1, ..., 1/(n + offset_f)) / denominator_spec(n)

Partial sums come from vectorised specialisation and compensated prefix
sums; the limit is extrapolated with the log-power tail model, using the
spec weight for the decay and the total degree of the product for the
log power.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from harmonic_sums.algebra.compositions import format_composition
from harmonic_sums.algebra.qsym import QSymElem, monomial_qsym, specialize_array, specialize_stream
from harmonic_sums.config import Config
from harmonic_sums.errors import (
    InvalidEtaSpecError,
    InvalidToleranceError,
    NumericalInconsistencyError,
    ToleranceUnreachableError,
)
from harmonic_sums.eta.engine import EtaResult
from harmonic_sums.eta.spec import EtaSpec
from harmonic_sums.numeric.extrapolate import NumericValue, extrapolate_logfit, sample_points
from harmonic_sums.numeric.mzv_numeric import MzvCache, expr_value
from harmonic_sums.numeric.summation import compensated_cumsum

logger = logging.getLogger(__name__)

FIRST_BUDGET = 32_000


@dataclass(frozen=True)
class LhsDescriptor:
    """One H-function series: factors with index offsets, a spec and a start index."""

    factors: Tuple[Tuple[QSymElem, int], ...]
    spec: EtaSpec
    start_n: int = 1

    def __post_init__(self):
        factors = tuple((u, int(offset)) for u, offset in self.factors)
        object.__setattr__(self, 'factors', factors)
        if not isinstance(self.spec, EtaSpec):
            object.__setattr__(self, 'spec', EtaSpec(tuple(self.spec)))
        if any(offset not in (0, 1) for _, offset in factors):
            raise InvalidEtaSpecError(f"Factor offsets must be 0 or 1: {[o for _, o in factors]}")
        if self.start_n not in (0, 1):
            raise InvalidEtaSpecError(f"Series start must be 0 or 1, got {self.start_n}")
        if self.start_n == 0 and self.spec.s[0] != 0:
            raise InvalidEtaSpecError(f"Series {self.spec.label()} has no finite n=0 term")

    @property
    def degree(self) -> int:
        return sum(u.degree() for u, _ in self.factors)

    def has_nonnegative_terms(self) -> bool:
        return all(u.has_nonnegative_coordinates() for u, _ in self.factors)

    def __str__(self):
        parts = []
        for u, offset in self.factors:
            text = f"({u})"
            parts.append(text + ("@+1" if offset else ""))
        body = "*".join(parts) if parts else "1"
        return f"{self.spec.label()}({body}; n>={self.start_n})"


@dataclass(frozen=True)
class LhsTerm:
    """A descriptor with a rational weight; an identity's LHS is a sum of these."""

    descriptor: LhsDescriptor
    coefficient: Fraction = field(default=Fraction(1))

    def __str__(self):
        if self.coefficient == 1:
            return str(self.descriptor)
        return f"{self.coefficient}*{self.descriptor}"


def series_terms(d: LhsDescriptor, n_max: int) -> np.ndarray:
    """Float64 array whose entry n is the n-th summand (zero below the start)."""
    product = np.ones(n_max + 1, dtype=np.float64)
    for u, offset in d.factors:
        values = specialize_array(u, n_max + offset)
        product *= values[offset:offset + n_max + 1]
    terms = np.zeros(n_max + 1, dtype=np.float64)
    denominators = d.spec.denominator_array(n_max)
    start = d.start_n
    terms[start:] = product[start:] / denominators[start:]
    return terms


def float_partial_sums(d: LhsDescriptor, ns: Sequence[int]) -> List[float]:
    """Compensated float partial sums up to each N in ``ns``."""
    partial = compensated_cumsum(series_terms(d, max(ns)))
    return [float(partial[n]) for n in ns]


def exact_partial_sum(d: LhsDescriptor, n: int) -> Fraction:
    """Exact rational partial sum over start <= m <= n."""
    streams = []
    for u, offset in d.factors:
        stream = specialize_stream(u)
        for _ in range(offset):
            next(stream)
        streams.append(stream)
    total = Fraction(0)
    for m in range(n + 1):
        product = Fraction(1)
        for stream in streams:
            product *= next(stream)
        if m >= d.start_n:
            total += product / d.spec.denominator(m)
    return total


def eta_numeric(d: LhsDescriptor, tol: float, max_terms: Optional[int] = None) -> NumericValue:
    """Numeric value of an H-function series with error at most ``tol``.

    The error is an extrapolation estimate, so the result has
    ``rigorous=False``.

    Raises:
        InvalidToleranceError: if tol is below 1e-10
        ToleranceUnreachableError: if the term budget does not reach tol
        NumericalInconsistencyError: if a positive series extrapolates below a partial sum
    """
    if tol < Config.MIN_TOL:
        raise InvalidToleranceError(f"Series tolerance must be at least {Config.MIN_TOL:g}, got {tol:g}")
    max_terms = Config.ETA_MAX_TERMS if max_terms is None else max_terms
    w = d.spec.weight
    log_degree = d.degree

    budget = min(max_terms, FIRST_BUDGET)
    while True:
        ns = sample_points(budget, log_degree)
        if len(ns) < log_degree + 2:
            if budget >= max_terms:
                raise ToleranceUnreachableError(f"{d}: budget {max_terms} is too small to extrapolate")
            budget = min(max_terms, budget * 2)
            continue
        partial = compensated_cumsum(series_terms(d, ns[-1]))
        result = extrapolate_logfit([(n, float(partial[n])) for n in ns], w, log_degree)
        if result.error_bound <= tol / 2 or budget >= max_terms:
            break
        budget = min(max_terms, budget * 2)

    s_top = float(partial[ns[-1]])
    if d.has_nonnegative_terms() and result.value + result.error_bound < s_top - tol:
        raise NumericalInconsistencyError(
            f"{d}: extrapolated {result.value!r} lies below the partial sum {s_top!r}"
        )
    if result.error_bound > tol:
        raise ToleranceUnreachableError(
            f"{d}: error {result.error_bound:.3g} exceeds {tol:g} after {result.terms_used} terms"
        )
    logger.debug(f"{d} = {result.value!r} +/- {result.error_bound:.3g} ({result.terms_used} terms)")
    return result


def lhs_value(terms: Sequence[LhsTerm], tol: float, max_terms: Optional[int] = None) -> NumericValue:
    """Weighted sum of series values, splitting ``tol`` across the terms."""
    scale = sum(abs(t.coefficient) for t in terms) or 1
    each = max(Config.MIN_TOL, tol / float(scale))
    value = 0.0
    error = 0.0
    used = 0
    rigorous = True
    for term in terms:
        part = eta_numeric(term.descriptor, each, max_terms=max_terms)
        value += float(term.coefficient) * part.value
        error += abs(float(term.coefficient)) * part.error_bound
        used = max(used, part.terms_used)
        rigorous = rigorous and part.rigorous
    return NumericValue(value, error, used, rigorous=rigorous)


def eta_result_value(result: EtaResult, tol: float, max_terms: Optional[int] = None,
                     cache: Optional[MzvCache] = None) -> NumericValue:
    """Numeric value of a symbolic H-function result, residual terms included."""
    residual = list(result.residual_items())
    share = tol / (1 + len(residual))
    symbolic = expr_value(result.symbolic, share, cache=cache)
    value, error, used = symbolic.value, symbolic.error_bound, symbolic.terms_used
    rigorous = symbolic.rigorous
    for spec, composition, coefficient in residual:
        logger.debug(f"Residual {coefficient}*{spec.label()}(M[{format_composition(composition)}])")
        descriptor = LhsDescriptor(((monomial_qsym(composition), 0),), spec)
        part = eta_numeric(descriptor, max(Config.MIN_TOL, share / float(abs(coefficient))),
                           max_terms=max_terms)
        value += float(coefficient) * part.value
        error += abs(float(coefficient)) * part.error_bound
        used = max(used, part.terms_used)
        rigorous = rigorous and part.rigorous
    return NumericValue(value, error, used, rigorous=rigorous)
