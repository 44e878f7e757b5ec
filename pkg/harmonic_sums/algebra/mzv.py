"""Polynomial expressions in formal multiple zeta symbols, with rewrite rules.

Index convention: z[i1,...,ik] is the sum over n1 > n2 > ... > nk >= 1 of
prod n_j^{-i_j}, so the first exponent belongs to the outermost (largest)
index and must be at least 2. A monomial is a sorted tuple of admissible
compositions; the empty monomial is the constant term.

Rewrites provided here (each preserves the numeric value and the weight):
expansion of weight/depth aggregates, duality canonicalisation, the
derivation relation, Euler's depth-two reduction, height-one reduction via
the two-variable generating function, stuffle expansion of products, and
collapsing complete weight/depth aggregates by the sum theorem.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from types import MappingProxyType
from typing import Callable, Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

from harmonic_sums.algebra.compositions import (
    Composition,
    enumerate_compositions,
    format_composition,
    is_admissible,
    parse_composition,
    tau,
    validate_composition,
    weight,
)
from harmonic_sums.algebra.qsym import quasi_shuffle_compositions
from harmonic_sums.algebra.text import format_linear, parse_rational, split_factors, split_signed_terms
from harmonic_sums.config import Config
from harmonic_sums.errors import HarmonicSumsError, NotAdmissibleError, ParseError, TruncationBoundError

logger = logging.getLogger(__name__)

Monomial = Tuple[Composition, ...]
Scalar = Union[int, Fraction]

# Sign in front of the half-sum of products in zeta(n,1); fixed by numeric
# evaluation (zeta(3,1) = zeta(4)/4). PRINTED_EULER_SIGN is the sign as it
# is usually quoted and is kept for the errata audit.
EULER_SIGN = -1
PRINTED_EULER_SIGN = +1


def _monomial(compositions: Iterable[Sequence[int]]) -> Monomial:
    result = []
    for composition in compositions:
        composition = validate_composition(composition)
        if not is_admissible(composition):
            raise NotAdmissibleError(f"Zeta symbols need admissible compositions: {composition}")
        result.append(composition)
    return tuple(sorted(result))


def _monomial_weight(monomial: Monomial) -> int:
    return sum(weight(c) for c in monomial)


def _monomial_order(monomial: Monomial):
    return (
        _monomial_weight(monomial),
        len(monomial),
        tuple(tuple(-p for p in c) for c in monomial),
    )


class MzvExpr:
    """Rational polynomial in zeta symbols."""

    __slots__ = ('_terms', '_hash')

    def __init__(self, terms: Optional[Mapping[Iterable[Sequence[int]], Scalar]] = None):
        clean: Dict[Monomial, Fraction] = {}
        for monomial, coefficient in (terms or {}).items():
            key = _monomial(monomial)
            clean[key] = clean.get(key, Fraction(0)) + Fraction(coefficient)
        self._terms = {k: v for k, v in clean.items() if v != 0}
        self._hash = None

    @classmethod
    def constant(cls, value: Scalar) -> 'MzvExpr':
        return cls({(): value})

    @classmethod
    def zeta(cls, *parts: int, coefficient: Scalar = 1) -> 'MzvExpr':
        """Single symbol, e.g. ``MzvExpr.zeta(3, 1)`` for z[3,1]."""
        return cls({(tuple(parts),): coefficient})

    @classmethod
    def zeta_of(cls, composition: Sequence[int], coefficient: Scalar = 1) -> 'MzvExpr':
        return cls({(tuple(composition),): coefficient})

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda item: _monomial_order(item[0]))

    def coefficient(self, monomial: Iterable[Sequence[int]]) -> Fraction:
        return self._terms.get(_monomial(monomial), Fraction(0))

    def constant_term(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    def compositions(self) -> Tuple[Composition, ...]:
        """Distinct compositions appearing anywhere in the expression."""
        return tuple(sorted({c for monomial in self._terms for c in monomial}))

    def is_linear(self) -> bool:
        return all(len(monomial) <= 1 for monomial in self._terms)

    def weights(self) -> Tuple[int, ...]:
        return tuple(sorted({_monomial_weight(m) for m in self._terms}))

    def is_homogeneous(self) -> bool:
        return len({_monomial_weight(m) for m in self._terms if m}) <= 1

    def map_compositions(self, rewrite: Callable[[Composition], 'MzvExpr']) -> 'MzvExpr':
        """Replace every symbol z[I] by ``rewrite(I)`` and multiply out."""
        result = MzvExpr()
        for monomial, coefficient in self._terms.items():
            term = MzvExpr.constant(coefficient)
            for composition in monomial:
                term = term * rewrite(composition)
            result = result + term
        return result

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MzvExpr.constant(other)
        if not isinstance(other, MzvExpr):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MzvExpr.constant(other)
        if not isinstance(other, MzvExpr):
            return NotImplemented
        merged = dict(self._terms)
        for m, v in other._terms.items():
            merged[m] = merged.get(m, Fraction(0)) + v
        return MzvExpr(merged)

    __radd__ = __add__

    def __neg__(self):
        return MzvExpr({m: -v for m, v in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MzvExpr.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MzvExpr({m: v * other for m, v in self._terms.items()})
        if not isinstance(other, MzvExpr):
            return NotImplemented
        product: Dict[Monomial, Fraction] = {}
        for m1, v1 in self._terms.items():
            for m2, v2 in other._terms.items():
                key = tuple(sorted(m1 + m2))
                product[key] = product.get(key, Fraction(0)) + v1 * v2
        return MzvExpr(product)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        result = MzvExpr.constant(1)
        for _ in range(exponent):
            result = result * self
        return result

    def __repr__(self):
        return f"<MzvExpr({self})>"

    def __str__(self):
        return format_linear(
            (v, "*".join(f"z[{format_composition(c)}]" for c in m)) for m, v in self.items()
        )

    @classmethod
    def parse(cls, text: str) -> 'MzvExpr':
        """Parse ``"z[3,1] - 1/2*z[2]*z[2] + 5/4"``."""
        total: Dict[Monomial, Fraction] = {}
        for sign, term in split_signed_terms(text):
            coefficient = Fraction(sign)
            symbols = []
            for factor in split_factors(term):
                if factor.startswith('z[') and factor.endswith(']'):
                    symbols.append(parse_composition(factor[2:-1]))
                else:
                    coefficient *= parse_rational(factor)
            try:
                key = _monomial(symbols)
            except HarmonicSumsError as e:
                raise ParseError(str(e)) from e
            total[key] = total.get(key, Fraction(0)) + coefficient
        return cls(total)


# ----------------------------------------------------------------------
# Aggregates
# ----------------------------------------------------------------------

AGGREGATE_FLAVORS = ('all', 'T', 'R', 'startswith')


@dataclass(frozen=True)
class AggregateSpec:
    """Sum of all zeta values of weight n and depth k, optionally filtered.

    Flavors: 'all'; 'T' (first part is not 2); 'R' (last part is 1);
    'startswith' (first part equals ``start``).
    """

    n: int
    k: int
    flavor: str = 'all'
    start: Optional[int] = None

    def __post_init__(self):
        if not 1 <= self.k <= self.n - 1:
            raise HarmonicSumsError(f"Aggregate needs 1 <= k <= n-1, got n={self.n}, k={self.k}")
        if self.flavor not in AGGREGATE_FLAVORS:
            raise HarmonicSumsError(f"Unknown aggregate flavor: {self.flavor}")
        if (self.flavor == 'startswith') != (self.start is not None):
            raise HarmonicSumsError("The 'startswith' flavor takes a start part, the others do not")

    def accepts(self, composition: Composition) -> bool:
        if not is_admissible(composition):
            return False
        if self.flavor == 'T':
            return composition[0] != 2
        if self.flavor == 'R':
            return composition[-1] == 1
        if self.flavor == 'startswith':
            return composition[0] == self.start
        return True


def expand_aggregate(spec: AggregateSpec) -> MzvExpr:
    """Explicit sum of the zeta terms an aggregate stands for."""
    return MzvExpr({(c,): 1 for c in enumerate_compositions(spec.n, spec.k) if spec.accepts(c)})


def aggregate(n: int, k: int, flavor: str = 'all', start: Optional[int] = None) -> MzvExpr:
    return expand_aggregate(AggregateSpec(n, k, flavor, start))


# ----------------------------------------------------------------------
# Rewrites
# ----------------------------------------------------------------------

def dual_representative(composition: Composition) -> Composition:
    """The member of {I, tau(I)} with fewer parts (ties: lexicographically smaller)."""
    dual = tau(composition)
    return min(composition, dual, key=lambda c: (len(c), c))


def dual_canonicalize(e: MzvExpr) -> MzvExpr:
    """Replace each symbol by its duality representative; idempotent."""
    return e.map_compositions(lambda c: MzvExpr.zeta_of(dual_representative(c)))


def derivation_relation(composition: Sequence[int]) -> Tuple[MzvExpr, MzvExpr]:
    """Both sides of the derivation relation at an admissible composition.

    Left: sum over j of z[I with i_j raised by 1].
    Right: sum over j and 1 <= p < i_j of z[I with i_j split into (i_j-p+1, p)].
    """
    composition = validate_composition(composition)
    if not is_admissible(composition):
        raise NotAdmissibleError(f"Derivation relation needs an admissible composition: {composition}")
    lhs = MzvExpr()
    rhs = MzvExpr()
    for j, part in enumerate(composition):
        head, tail = composition[:j], composition[j + 1:]
        lhs = lhs + MzvExpr.zeta_of(head + (part + 1,) + tail)
        for p in range(1, part):
            rhs = rhs + MzvExpr.zeta_of(head + (part - p + 1, p) + tail)
    return lhs, rhs


def euler_formula(n: int, sign: int = EULER_SIGN) -> MzvExpr:
    """Single-zeta expression for z[n,1], n >= 2."""
    if n < 2:
        raise HarmonicSumsError(f"Euler's formula needs n >= 2, got {n}")
    result = MzvExpr.zeta(n + 1, coefficient=Fraction(n, 2))
    for i in range(1, n - 1):
        result = result + MzvExpr.zeta(n - i) * MzvExpr.zeta(i + 1) * Fraction(sign, 2)
    return result


def euler_reduce(e: MzvExpr, sign: int = EULER_SIGN) -> MzvExpr:
    """Rewrite every depth-two symbol ending in 1 by Euler's formula."""
    def rewrite(c: Composition) -> MzvExpr:
        if len(c) == 2 and c[1] == 1:
            return euler_formula(c[0], sign)
        return MzvExpr.zeta_of(c)

    return e.map_compositions(rewrite)


def height_one_reduce(m: int, n: int, bound: Optional[int] = None) -> MzvExpr:
    """z[m+1, 1, ..., 1] (n-1 ones) as a polynomial in single zeta values.

    Coefficient of s^m t^n in 1 - exp(sum_{j>=2} z[j]/j (s^j + t^j - (s+t)^j)),
    computed on a truncated two-variable series with zeta-polynomial
    coefficients.
    """
    bound = Config.HEIGHT_ONE_BOUND if bound is None else bound
    if m < 1 or n < 1:
        raise HarmonicSumsError(f"height_one_reduce needs m, n >= 1, got ({m}, {n})")
    if m + n > bound:
        raise TruncationBoundError(f"m + n = {m + n} exceeds the truncation bound {bound}")

    # s^j + t^j - (s+t)^j = -sum_{0<i<j} C(j,i) s^i t^(j-i)
    exponent: Dict[Tuple[int, int], MzvExpr] = {}
    for j in range(2, m + n + 1):
        for i in range(1, j):
            if i <= m and j - i <= n:
                exponent[(i, j - i)] = MzvExpr.zeta(j, coefficient=Fraction(-comb(j, i), j))

    def multiply(x: Dict, y: Dict) -> Dict:
        out: Dict[Tuple[int, int], MzvExpr] = {}
        for (a1, b1), v1 in x.items():
            for (a2, b2), v2 in y.items():
                a, b = a1 + a2, b1 + b2
                if a <= m and b <= n:
                    out[(a, b)] = out.get((a, b), MzvExpr()) + v1 * v2
        return out

    coefficient = MzvExpr()
    power: Dict[Tuple[int, int], MzvExpr] = {(0, 0): MzvExpr.constant(1)}
    factorial = 1
    for r in range(1, (m + n) // 2 + 1):
        power = multiply(power, exponent)
        factorial *= r
        coefficient = coefficient + power.get((m, n), MzvExpr()) * Fraction(1, factorial)
    return -coefficient


def _stuffle_symbols(a: Composition, b: Composition) -> MzvExpr:
    # The M-basis product runs on reversed exponent strings.
    return MzvExpr({
        (tuple(reversed(w)),): mult
        for w, mult in quasi_shuffle_compositions(tuple(reversed(a)), tuple(reversed(b)))
    })


def expand_products(e: MzvExpr) -> MzvExpr:
    """Linearise every product of zeta symbols with the stuffle product."""
    result = MzvExpr()
    for monomial, coefficient in e.terms.items():
        if len(monomial) <= 1:
            result = result + MzvExpr({monomial: coefficient})
            continue
        linear = MzvExpr.zeta_of(monomial[0])
        for composition in monomial[1:]:
            expanded = MzvExpr()
            for (word,), c in linear.terms.items():
                expanded = expanded + _stuffle_symbols(word, composition) * c
            linear = expanded
        result = result + linear * coefficient
    return result


def sum_theorem_reduce(e: MzvExpr) -> MzvExpr:
    """Collapse complete weight/depth aggregates into single zeta values.

    When every admissible composition of weight n and depth k (2 <= k < n)
    carries a coefficient of the same sign, c * S_{n,k} is replaced by
    c * z[n], where c is the coefficient of smallest magnitude.
    """
    groups = sorted({(weight(m[0]), len(m[0])) for m in e.terms if len(m) == 1 and len(m[0]) >= 2})
    for n, k in groups:
        if k > n - 1:
            continue
        members = [c for c in enumerate_compositions(n, k) if is_admissible(c)]
        coefficients = [e.coefficient((c,)) for c in members]
        if any(c == 0 for c in coefficients):
            continue
        if not (all(c > 0 for c in coefficients) or all(c < 0 for c in coefficients)):
            continue
        common = min(coefficients, key=abs)
        e = e - aggregate(n, k) * common + MzvExpr.zeta(n, coefficient=common)
    return e


def simplify(e: MzvExpr) -> MzvExpr:
    """Best-effort reduction toward single zeta values.

    Applies duality, Euler's reduction and height-one reduction where they
    apply, then the sum theorem; symbols none of these reach are kept.
    """
    def rewrite(c: Composition) -> MzvExpr:
        rep = dual_representative(c)
        if len(rep) == 2 and rep[1] == 1:
            return euler_formula(rep[0])
        if len(rep) >= 2 and all(part == 1 for part in rep[1:]) and weight(rep) <= Config.HEIGHT_ONE_BOUND:
            return height_one_reduce(rep[0] - 1, len(rep))
        return MzvExpr.zeta_of(rep)

    return sum_theorem_reduce(e).map_compositions(rewrite)
