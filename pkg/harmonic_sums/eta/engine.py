"""Symbolic evaluation of H-functions on monomial quasi-symmetric functions.

For I = (i_1, ..., i_j) the functional eta_spec(M_I) is rewritten into
multiple zeta values by splitting the outer sum at the largest index n_j
and telescoping the shifted denominators. Rules exist for the specs

    (p), (0,p)  p >= 2;   (1,1);   (0,1,1);   (0,0,2)

plus everything that partial fractions or the weight-two telescoping
reduce to them. Any other (spec, composition) pair is returned as a
residual with its rational coefficient, for numeric evaluation downstream.
"""
import logging
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, Mapping, Optional, Tuple, Union

from harmonic_sums.algebra.compositions import Composition, format_composition, validate_composition
from harmonic_sums.algebra.mzv import MzvExpr
from harmonic_sums.algebra.qsym import QSymElem
from harmonic_sums.eta.spec import EtaSpec, partial_fraction_reduce

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]
ResidualKey = Tuple[EtaSpec, Composition]


class EtaResult:
    """Symbolic part plus the (spec, composition) pairs no rule covers."""

    __slots__ = ('symbolic', '_residual')

    def __init__(self, symbolic: Optional[MzvExpr] = None,
                 residual: Optional[Mapping[ResidualKey, Scalar]] = None):
        self.symbolic = symbolic if symbolic is not None else MzvExpr()
        clean: Dict[ResidualKey, Fraction] = {}
        for key, coefficient in (residual or {}).items():
            clean[key] = clean.get(key, Fraction(0)) + Fraction(coefficient)
        self._residual = {k: v for k, v in clean.items() if v != 0}

    @property
    def residual(self) -> Dict[ResidualKey, Fraction]:
        return dict(self._residual)

    def residual_items(self) -> Iterator[Tuple[EtaSpec, Composition, Fraction]]:
        for (spec, composition), coefficient in sorted(
                self._residual.items(), key=lambda item: (item[0][0].s, item[0][1])):
            yield spec, composition, coefficient

    def is_complete(self) -> bool:
        """True when the whole value is symbolic."""
        return not self._residual

    def __add__(self, other: 'EtaResult') -> 'EtaResult':
        merged = dict(self._residual)
        for key, coefficient in other._residual.items():
            merged[key] = merged.get(key, Fraction(0)) + coefficient
        return EtaResult(self.symbolic + other.symbolic, merged)

    def __mul__(self, scalar: Scalar) -> 'EtaResult':
        return EtaResult(self.symbolic * Fraction(scalar),
                         {k: v * scalar for k, v in self._residual.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, EtaResult):
            return NotImplemented
        return self.symbolic == other.symbolic and self._residual == other._residual

    def __repr__(self):
        return f"<EtaResult({self})>"

    def __str__(self):
        text = str(self.symbolic)
        for spec, composition, coefficient in self.residual_items():
            sign = "-" if coefficient < 0 else "+"
            text += f" {sign} {abs(coefficient)}*{spec.label()}(M[{format_composition(composition)}])"
        return text

    def to_dict(self):
        return {
            'symbolic': str(self.symbolic),
            'residual': [
                {'spec': str(spec), 'composition': format_composition(c), 'coefficient': str(v)}
                for spec, c, v in self.residual_items()
            ],
        }


def _zeta(*parts: int) -> MzvExpr:
    return MzvExpr.zeta_of(parts)


def _reversed(composition: Composition) -> Composition:
    return tuple(reversed(composition))


def eta_p(p: int, composition: Composition) -> MzvExpr:
    """eta_(p)(M_I) = z(p, i_j..i_1) + z(p + i_j, i_{j-1}..i_1); eta_(p)(1) = z(p)."""
    if not composition:
        return _zeta(p)
    inner = _reversed(composition)
    return _zeta(p, *inner) + _zeta(p + inner[0], *inner[1:])


def eta_0p(p: int, composition: Composition) -> MzvExpr:
    """eta_(0,p)(M_I) = z(p, i_j..i_1); eta_(0,p)(1) = z(p) - 1."""
    if not composition:
        return _zeta(p) - 1
    return _zeta(p, *_reversed(composition))


def eta_11(composition: Composition) -> MzvExpr:
    """eta_(1,1)(M_I) = z(i_j + 1, i_{j-1}..i_1); eta_(1,1)(1) = 1."""
    if not composition:
        return MzvExpr.constant(1)
    inner = _reversed(composition)
    return _zeta(inner[0] + 1, *inner[1:])


@lru_cache(maxsize=None)
def eta_011(composition: Composition) -> MzvExpr:
    """eta_(0,1,1)(M_I) by recursion on the last part."""
    if not composition:
        return MzvExpr.constant(Fraction(1, 2))
    if composition == (1,):
        return MzvExpr.constant(1)
    head, last = composition[:-1], composition[-1]
    if last == 1:
        return eta_011(head)
    return _zeta(*_reversed(composition)) - eta_011(head + (last - 1,))


@lru_cache(maxsize=None)
def eta_shift_difference(composition: Composition) -> MzvExpr:
    """T(M_I) = eta_(0,2)(M_I) - eta_(0,0,2)(M_I), by recursion on the last part."""
    if not composition:
        return MzvExpr.constant(Fraction(1, 4))
    if composition == (1,):
        return 2 - _zeta(2)
    head, last = composition[:-1], composition[-1]
    if last == 1:
        return eta_011(head) - _zeta(2, *_reversed(head)) + eta_shift_difference(head)
    lowered = head + (last - 1,)
    return _zeta(*_reversed(composition)) - eta_011(lowered) - eta_shift_difference(lowered)


def eta_002(composition: Composition) -> MzvExpr:
    return eta_0p(2, composition) - eta_shift_difference(composition)


def _symbolic_rule(spec: EtaSpec, composition: Composition) -> Optional[MzvExpr]:
    s = spec.s
    if len(s) == 1:
        return eta_p(s[0], composition)
    if len(s) == 2 and s[0] == 0:
        return eta_0p(s[1], composition)
    if s == (1, 1):
        return eta_11(composition)
    if s == (0, 1, 1):
        return eta_011(composition)
    if s == (0, 0, 2):
        return eta_002(composition)
    return None


def _telescoped(spec: EtaSpec) -> Optional[Dict[EtaSpec, Fraction]]:
    """Weight-two spec with 1's at positions i < j as adjacent (1,1) pairs."""
    positions = spec.positive_positions()
    if spec.weight != 2 or len(positions) != 2 or positions[1] - positions[0] < 2:
        return None
    i, j = positions
    scale = Fraction(1, j - i)
    return {EtaSpec((0,) * r + (1, 1)): scale for r in range(i, j)}


def eta_on_M(spec: EtaSpec, composition) -> EtaResult:
    """eta_spec(M_I) as zeta values plus any uncovered residual.

    Args:
        spec: Canonical H-function exponent sequence
        composition: Composition I (the empty composition is the unit)

    Returns:
        EtaResult whose symbolic part is free of residual pairs
    """
    if not isinstance(spec, EtaSpec):
        spec = EtaSpec(tuple(spec))
    composition = validate_composition(composition)

    rule = _symbolic_rule(spec, composition)
    if rule is not None:
        return EtaResult(rule)

    telescoped = _telescoped(spec)
    if telescoped is not None:
        result = EtaResult()
        for part, coefficient in telescoped.items():
            result = result + eta_on_M(part, composition) * coefficient
        return result

    if not spec.is_irreducible():
        result = EtaResult()
        for part, coefficient in partial_fraction_reduce(spec).items():
            result = result + eta_on_M(part, composition) * coefficient
        return result

    logger.debug(f"No symbolic rule for {spec.label()} on M[{format_composition(composition)}]")
    return EtaResult(residual={(spec, composition): 1})


def eta_on_qsym(spec: EtaSpec, u: QSymElem) -> EtaResult:
    """Linear extension of :func:`eta_on_M` over the M-basis coordinates of ``u``."""
    if not isinstance(spec, EtaSpec):
        spec = EtaSpec(tuple(spec))
    result = EtaResult()
    for composition, coefficient in u.items():
        result = result + eta_on_M(spec, composition) * coefficient
    return result
