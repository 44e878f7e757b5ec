"""H-function exponent sequences and their partial-fraction reduction.

``EtaSpec((s1, ..., sk))`` names the functional

    u  ->  sum_{n>=1} u(1, 1/2, ..., 1/n) / (n^s1 (n+1)^s2 ... (n+k-1)^sk)

Trailing zeros carry no information and are trimmed; leading and interior
zeros shift the denominator and are significant.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Dict, Mapping, Tuple, Union

import numpy as np

from harmonic_sums.algebra.text import format_linear, parse_rational, split_factors, split_signed_terms
from harmonic_sums.errors import InvalidEtaSpecError, ParseError

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]


@dataclass(frozen=True, order=True)
class EtaSpec:
    """Canonical exponent sequence (nonnegative, total at least 2, last entry positive)."""

    s: Tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.s)
        for part in parts:
            if isinstance(part, bool) or not isinstance(part, int) or part < 0:
                raise InvalidEtaSpecError(f"Exponents must be nonnegative integers: {parts}")
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if sum(parts) < 2:
            raise InvalidEtaSpecError(f"Exponents must sum to at least 2 for convergence: {tuple(self.s)}")
        object.__setattr__(self, 's', parts)

    @classmethod
    def of(cls, *s: int) -> 'EtaSpec':
        return cls(tuple(s))

    @classmethod
    def parse(cls, text: str) -> 'EtaSpec':
        """Parse ``"0,1,1"``; brackets and an ``eta`` prefix are tolerated."""
        body = text.strip()
        if body.startswith('eta'):
            body = body[3:]
        body = body.strip('[]() ')
        try:
            parts = tuple(int(token) for token in body.split(','))
        except ValueError as e:
            raise ParseError(f"Not an H-function exponent sequence: {text!r}") from e
        try:
            return cls(parts)
        except InvalidEtaSpecError as e:
            raise ParseError(str(e)) from e

    @property
    def weight(self) -> int:
        return sum(self.s)

    @property
    def length(self) -> int:
        return len(self.s)

    def positive_positions(self) -> Tuple[int, ...]:
        return tuple(i for i, part in enumerate(self.s) if part > 0)

    def is_irreducible(self) -> bool:
        """At most one positive exponent, or total weight exactly 2."""
        return len(self.positive_positions()) <= 1 or self.weight == 2

    def denominator(self, n: int) -> int:
        result = 1
        for offset, part in enumerate(self.s):
            result *= (n + offset) ** part
        return result

    def denominator_array(self, n_max: int) -> np.ndarray:
        """Float64 array with entry n equal to the denominator at n (entry 0 unused)."""
        n = np.arange(n_max + 1, dtype=np.float64)
        out = np.ones(n_max + 1, dtype=np.float64)
        for offset, part in enumerate(self.s):
            if part:
                out *= (n + offset) ** part
        return out

    def label(self) -> str:
        return f"eta[{self}]"

    def __str__(self):
        return ",".join(str(part) for part in self.s)

    def __repr__(self):
        return f"<EtaSpec({self})>"


class EtaCombo:
    """Rational linear combination of H-functions."""

    __slots__ = ('_coefficients',)

    def __init__(self, coefficients: Mapping[EtaSpec, Scalar] = None):
        clean: Dict[EtaSpec, Fraction] = {}
        for spec, coefficient in (coefficients or {}).items():
            if not isinstance(spec, EtaSpec):
                spec = EtaSpec(tuple(spec))
            clean[spec] = clean.get(spec, Fraction(0)) + Fraction(coefficient)
        self._coefficients = {k: v for k, v in clean.items() if v != 0}

    @property
    def coefficients(self) -> Mapping[EtaSpec, Fraction]:
        return MappingProxyType(self._coefficients)

    def items(self):
        """Terms in descending order of the exponent tuple."""
        return sorted(self._coefficients.items(), key=lambda item: item[0].s, reverse=True)

    def coefficient(self, spec: EtaSpec) -> Fraction:
        return self._coefficients.get(spec, Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, EtaCombo):
            return NotImplemented
        return self._coefficients == other._coefficients

    def __hash__(self):
        return hash(frozenset(self._coefficients.items()))

    def __add__(self, other: 'EtaCombo') -> 'EtaCombo':
        merged = dict(self._coefficients)
        for spec, coefficient in other._coefficients.items():
            merged[spec] = merged.get(spec, Fraction(0)) + coefficient
        return EtaCombo(merged)

    def __sub__(self, other: 'EtaCombo') -> 'EtaCombo':
        return self + other * -1

    def __mul__(self, scalar: Scalar) -> 'EtaCombo':
        return EtaCombo({spec: c * scalar for spec, c in self._coefficients.items()})

    __rmul__ = __mul__

    def __str__(self):
        return format_linear((c, spec.label()) for spec, c in self.items())

    def __repr__(self):
        return f"<EtaCombo({self})>"

    @classmethod
    def parse(cls, text: str) -> 'EtaCombo':
        """Parse ``"1/2*eta[1,1] - 1/2*eta[0,1,1]"``."""
        total: Dict[EtaSpec, Fraction] = {}
        for sign, term in split_signed_terms(text):
            coefficient = Fraction(sign)
            spec = None
            for factor in split_factors(term):
                if factor.startswith('eta['):
                    if spec is not None:
                        raise ParseError(f"Products of H-functions are not linear: {term!r}")
                    spec = EtaSpec.parse(factor)
                else:
                    coefficient *= parse_rational(factor)
            if spec is None:
                raise ParseError(f"Constant term in H-function combination: {term!r}")
            total[spec] = total.get(spec, Fraction(0)) + coefficient
        return cls(total)


def _lowered(s: Tuple[int, ...], position: int) -> Tuple[int, ...]:
    return s[:position] + (s[position] - 1,) + s[position + 1:]


@lru_cache(maxsize=None)
def _reduce(s: Tuple[int, ...]) -> Tuple[Tuple[Tuple[int, ...], Fraction], ...]:
    spec = EtaSpec(s)
    if spec.is_irreducible():
        return ((spec.s, Fraction(1)),)
    positive = spec.positive_positions()
    i, j = positive[0], positive[-1]
    # 1/((n+i)(n+j)) = (1/(n+i) - 1/(n+j)) / (j-i)
    scale = Fraction(1, j - i)
    total: Dict[Tuple[int, ...], Fraction] = {}
    for lowered, sign in ((_lowered(spec.s, j), 1), (_lowered(spec.s, i), -1)):
        for part, coefficient in _reduce(EtaSpec(lowered).s):
            total[part] = total.get(part, Fraction(0)) + sign * scale * coefficient
    return tuple(sorted(total.items()))


def partial_fraction_reduce(spec: EtaSpec) -> EtaCombo:
    """Rewrite an H-function as a combination of irreducible ones.

    The outermost pair of positive exponents (first and last) is split
    repeatedly until every spec has one positive entry or weight 2.
    """
    if not isinstance(spec, EtaSpec):
        spec = EtaSpec(tuple(spec))
    return EtaCombo({EtaSpec(s): c for s, c in _reduce(spec.s)})

