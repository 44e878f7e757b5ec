"""Registry of identity families: LHS series builders paired with closed forms.

Each family names its parameters, builds the left-hand side as a weighted
sum of series descriptors, and takes its right-hand side and validity range
from :mod:`harmonic_sums.eta.closed_forms`. Registry order is report order.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from harmonic_sums.algebra.mzv import MzvExpr
from harmonic_sums.algebra.qsym import QSymElem, complete, elementary, powersum
from harmonic_sums.errors import OutOfRangeError, UnknownFamilyError
from harmonic_sums.eta.closed_forms import CLOSED_FORMS, ClosedForm, normalize_params
from harmonic_sums.eta.spec import EtaSpec
from harmonic_sums.numeric.series import LhsDescriptor, LhsTerm

logger = logging.getLogger(__name__)

LhsBuilder = Callable[..., Tuple[LhsTerm, ...]]

# Term cap for grid points of total degree five (log power five in the tail).
DEEP_GRID_TERMS = 4_000_000


def series(spec: Sequence[int], *factors, start: int = 1, coefficient=1) -> LhsTerm:
    """One weighted series; a factor is a QSymElem or a ``(QSymElem, offset)`` pair."""
    pairs = tuple(f if isinstance(f, tuple) else (f, 0) for f in factors)
    return LhsTerm(LhsDescriptor(pairs, EtaSpec(tuple(spec)), start), Fraction(coefficient))


def ones(q: int) -> Tuple[int, ...]:
    return (1,) * q


@dataclass(frozen=True)
class Identity:
    """A concrete identity instance: LHS series terms and RHS zeta expression."""

    family: str
    params: Mapping[str, int]
    lhs: Tuple[LhsTerm, ...]
    rhs: MzvExpr
    tol: float
    max_terms: Optional[int] = None

    @property
    def identity_id(self) -> str:
        if not self.params:
            return self.family
        inner = ",".join(f"{name}={value}" for name, value in self.params.items())
        return f"{self.family}({inner})"

    def __str__(self):
        return f"{self.identity_id}: {' + '.join(map(str, self.lhs))} = {self.rhs}"


@dataclass(frozen=True)
class IdentityFamily:
    """Registered family: closed form, LHS builder, tolerance and default grid."""

    name: str
    lhs: LhsBuilder
    grid: Tuple[Mapping[str, int], ...]
    tol: float = 1e-6
    max_terms: Optional[int] = None
    form: ClosedForm = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, 'form', CLOSED_FORMS[self.name])

    @property
    def params(self) -> Tuple[str, ...]:
        return self.form.params

    @property
    def anchor(self) -> str:
        return self.form.anchor


def _grid(**ranges) -> Tuple[Dict[str, int], ...]:
    """Cartesian product of parameter ranges, in the order given."""
    points: List[Dict[str, int]] = [{}]
    for name, values in ranges.items():
        points = [dict(p, **{name: v}) for p in points for v in values]
    return tuple(points)


def _bounded(points, limit: int, *names: str) -> Tuple[Dict[str, int], ...]:
    return tuple(p for p in points if sum(p[n] for n in names) <= limit)


# ----------------------------------------------------------------------
# LHS builders
# ----------------------------------------------------------------------

def _eulers(eq):
    return (series((2,) if eq == 1 else (3,), powersum(1)),)


def _off_proof(k, l):
    return tuple(series((0, j), elementary(k), complete(2 + l - j), start=0) for j in range(3, l + 3))


_HSQ_NUMERATORS: Dict[int, Tuple[QSymElem, ...]] = {
    1: (powersum(1),),
    2: (powersum(2),),
    3: (elementary(2) * 2,),
    4: (powersum(1), powersum(1)),
    5: (elementary(3) * 6,),
}


def _eta3peh(eq, k):
    numerator = {1: powersum, 2: elementary, 3: complete}[eq](k)
    return (series((3,), numerator),)


def _eta02sc(eq, k):
    if eq == 1:
        return (series((0, 2), powersum(1), elementary(k), start=0),)
    return (series((0, 2), complete(2), elementary(k)),)


FAMILIES: Dict[str, IdentityFamily] = {}


def _register(family: IdentityFamily):
    if family.name not in CLOSED_FORMS:
        raise UnknownFamilyError(f"No closed form registered for {family.name!r}")
    FAMILIES[family.name] = family


_register(IdentityFamily('eulers', _eulers, _grid(eq=(1, 2))))
_register(IdentityFamily(
    'cho-P', lambda k: (series((0, 1, 1), elementary(k), start=0),), _grid(k=range(0, 5))))
_register(IdentityFamily(
    'cho-Q', lambda k: (series((0, 1, 1), powersum(1), elementary(k), start=0),), _grid(k=range(1, 4))))
_register(IdentityFamily(
    'ch2', lambda k, l: (series((0, 1, 1), complete(l), elementary(k), start=0),),
    _bounded(_grid(k=range(0, 6), l=range(0, 6)), 5, 'k', 'l'), max_terms=DEEP_GRID_TERMS))
_register(IdentityFamily(
    'qpnn1', lambda k, l: (series((1, 1), complete(l), elementary(k)),),
    _bounded(_grid(k=range(1, 6), l=range(0, 5)), 5, 'k', 'l'), max_terms=DEEP_GRID_TERMS))
_register(IdentityFamily(
    'qn2', lambda k: (series((2,), complete(k)),), _grid(k=range(0, 6)), max_terms=DEEP_GRID_TERMS))
_register(IdentityFamily(
    'pn2', lambda k: (series((2,), elementary(k)),), _grid(k=range(1, 6)), max_terms=DEEP_GRID_TERMS))
_register(IdentityFamily(
    'off', lambda k, l: (series((0, 2), (elementary(k), 0), (complete(l), 1), start=0),),
    _bounded(_grid(k=range(0, 5), l=range(0, 5)), 4, 'k', 'l'), max_terms=DEEP_GRID_TERMS))
_register(IdentityFamily(
    'eta111', lambda k, l: (series((1, 1, 1), complete(l), elementary(k)),),
    _bounded(_grid(k=range(1, 5), l=range(0, 4)), 4, 'k', 'l'), max_terms=DEEP_GRID_TERMS))
_register(IdentityFamily(
    'spiess', lambda k, q: (series((0,) + ones(q), elementary(k), start=0),),
    _grid(k=range(0, 5), q=(2, 3, 4, 5)), tol=1e-8, max_terms=8_000_000))
_register(IdentityFamily(
    'tail', lambda k, q: (series(ones(q), elementary(k)),), _grid(k=(1, 2, 3), q=(2, 3, 4))))
_register(IdentityFamily(
    'so-cor', lambda k: (series((0, 1, 1), powersum(k)),), _grid(k=range(2, 6))))
_register(IdentityFamily(
    'omp', lambda k: (series((0, 1, 1), powersum(k), start=0),), _grid(k=range(1, 6))))
_register(IdentityFamily('eta3peh', _eta3peh, _grid(eq=(1, 2, 3), k=(1, 2))))
_register(IdentityFamily(
    'eta02pe', lambda eq, k: (series((0, 2), (powersum if eq == 1 else elementary)(k)),),
    _grid(eq=(1, 2), k=(1, 2, 3))))
_register(IdentityFamily(
    'hsq', lambda eq: (series((0, 2), *_HSQ_NUMERATORS[eq]),), _grid(eq=(1, 2, 3, 4, 5)), tol=1e-5))
_register(IdentityFamily(
    'h-pair', lambda k: (series((0, 2), complete(k + 1)), series((3,), complete(k))),
    _grid(k=range(0, 3))))
_register(IdentityFamily(
    'eta02eh', lambda k, l: (series((0, 2), complete(l), elementary(k), start=0),),
    _bounded(_grid(k=range(0, 3), l=range(0, 3)), 3, 'k', 'l')))
_register(IdentityFamily('eta02sc', _eta02sc, _grid(eq=(1, 2), k=(1, 2))))
_register(IdentityFamily(
    'cof-remark', lambda: (series((0, 2), *(powersum(1),) * 4),), ({},),
    tol=1e-5, max_terms=8_000_000))
_register(IdentityFamily(
    'en1h1', lambda n: (series((2,), elementary(n - 1), complete(1)),), _grid(n=(2, 3))))
_register(IdentityFamily(
    'eta002', lambda eq, k: (series((0, 0, 2), (elementary if eq == 1 else powersum)(k)),),
    _grid(eq=(1, 2), k=(1, 2, 3))))
_register(IdentityFamily(
    'length2-example', lambda: (series((2, 1), powersum(1), powersum(1)),), ({},), tol=1e-5))
_register(IdentityFamily(
    'eta2eh', lambda j, n: (series((2,), elementary(j), complete(n - j)),),
    tuple(p for p in _grid(n=(1, 2, 3, 4), j=range(0, 5)) if p['j'] <= p['n']), tol=1e-5))
_register(IdentityFamily('off-proof', _off_proof, _bounded(_grid(k=(0, 1), l=(1, 2)), 3, 'k', 'l')))
_register(IdentityFamily(
    'spiess-base', lambda q: (series(ones(q)),), _grid(q=(2, 3, 4, 5)), tol=1e-8))


def get_family(name: str) -> IdentityFamily:
    try:
        return FAMILIES[name]
    except KeyError:
        raise UnknownFamilyError(
            f"No identity family named {name!r}; known: {', '.join(FAMILIES)}"
        ) from None


def instantiate(family: str, params: Optional[Mapping[str, int]] = None) -> Identity:
    """Concrete (LHS, RHS) pair of a family at in-range parameters.

    Args:
        family: Registered family name
        params: Parameter values; extra keys are ignored

    Returns:
        Identity

    Raises:
        UnknownFamilyError: if the family is not registered
        OutOfRangeError: if parameters are missing or outside the validity range
    """
    spec = get_family(family)
    values = normalize_params(spec.form, params or {})
    message = spec.form.boundary_message(values)
    if message:
        raise OutOfRangeError(f"{family} at {values}: {message}")
    return Identity(
        family=family,
        params=values,
        lhs=tuple(spec.lhs(**values)),
        rhs=spec.form.rhs(**values),
        tol=spec.tol,
        max_terms=spec.max_terms,
    )


def default_identities(families: Optional[Sequence[str]] = None) -> List[Identity]:
    """Every grid point of the selected families, in registry order."""
    names = list(FAMILIES) if not families else [get_family(n).name for n in families]
    selected = [n for n in FAMILIES if n in names]
    identities = [instantiate(name, params) for name in selected for params in FAMILIES[name].grid]
    logger.info(f"Instantiated {len(identities)} identities from {len(selected)} families")
    return identities
