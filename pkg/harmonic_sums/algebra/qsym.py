"""Quasi-symmetric functions in the monomial basis, over exact rationals.

Every element is a finitely supported map from compositions to
``Fraction`` coefficients on the basis M_I. Symmetric generators
(e_k, h_k, p_k, m_lambda, N_{n,m}) are materialised into this basis, so
there is one product routine (the quasi-shuffle) and one specialization
routine. Power-sum polynomials such as P_k and Q_k are ``sympy.Poly``
objects over QQ in the variables y1, y2, ... where y_r stands for p_r.
"""
import logging
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, count
from math import factorial
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
import sympy

from harmonic_sums.algebra.compositions import (
    Composition,
    enumerate_compositions,
    enumerate_partitions,
    format_composition,
    parse_composition,
    rearrangements,
    sort_partition,
    validate_composition,
    validate_partition,
    weight,
)
from harmonic_sums.algebra.text import format_linear, parse_rational, split_factors, split_signed_terms
from harmonic_sums.errors import HarmonicSumsError, NotSymmetricError, ParseError
from harmonic_sums.numeric.summation import compensated_cumsum, reciprocal_powers, shifted

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]


@lru_cache(maxsize=None)
def quasi_shuffle_compositions(a: Composition, b: Composition) -> Tuple[Tuple[Composition, int], ...]:
    """Quasi-shuffle (stuffle) of two compositions as ``(composition, multiplicity)`` pairs."""
    if not a:
        return ((b, 1),)
    if not b:
        return ((a, 1),)
    result: Dict[Composition, int] = {}
    head_a, rest_a = a[0], a[1:]
    head_b, rest_b = b[0], b[1:]
    for comp, mult in quasi_shuffle_compositions(rest_a, b):
        key = (head_a,) + comp
        result[key] = result.get(key, 0) + mult
    for comp, mult in quasi_shuffle_compositions(a, rest_b):
        key = (head_b,) + comp
        result[key] = result.get(key, 0) + mult
    for comp, mult in quasi_shuffle_compositions(rest_a, rest_b):
        key = (head_a + head_b,) + comp
        result[key] = result.get(key, 0) + mult
    return tuple(result.items())


def _basis_order(composition: Composition):
    return weight(composition), tuple(-part for part in composition)


class QSymElem:
    """Element of QSym: coordinates in the monomial quasi-symmetric basis."""

    __slots__ = ('_coords', '_hash')

    def __init__(self, coords: Optional[Mapping[Sequence[int], Scalar]] = None):
        clean: Dict[Composition, Fraction] = {}
        for composition, coefficient in (coords or {}).items():
            key = validate_composition(composition)
            clean[key] = clean.get(key, Fraction(0)) + Fraction(coefficient)
        self._coords = {k: v for k, v in clean.items() if v != 0}
        self._hash = None

    @classmethod
    def scalar(cls, value: Scalar) -> 'QSymElem':
        return cls({(): value})

    @property
    def coords(self) -> Mapping[Composition, Fraction]:
        return MappingProxyType(self._coords)

    def items(self):
        return sorted(self._coords.items(), key=lambda item: _basis_order(item[0]))

    def support(self) -> Tuple[Composition, ...]:
        return tuple(c for c, _ in self.items())

    def coefficient(self, composition: Sequence[int]) -> Fraction:
        return self._coords.get(tuple(composition), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient(())

    def degree(self) -> int:
        return max((weight(c) for c in self._coords), default=0)

    def is_homogeneous(self) -> bool:
        return len({weight(c) for c in self._coords}) <= 1

    def homogeneous_component(self, k: int) -> 'QSymElem':
        return QSymElem({c: v for c, v in self._coords.items() if weight(c) == k})

    def has_nonnegative_coordinates(self) -> bool:
        return all(v >= 0 for v in self._coords.values())

    def __bool__(self):
        return bool(self._coords)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QSymElem.scalar(other)
        if not isinstance(other, QSymElem):
            return NotImplemented
        return self._coords == other._coords

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._coords.items()))
        return self._hash

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QSymElem.scalar(other)
        if not isinstance(other, QSymElem):
            return NotImplemented
        merged = dict(self._coords)
        for c, v in other._coords.items():
            merged[c] = merged.get(c, Fraction(0)) + v
        return QSymElem(merged)

    __radd__ = __add__

    def __neg__(self):
        return QSymElem({c: -v for c, v in self._coords.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QSymElem.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QSymElem({c: v * other for c, v in self._coords.items()})
        if isinstance(other, QSymElem):
            return quasi_shuffle(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        result = QSymElem.scalar(1)
        for _ in range(exponent):
            result = result * self
        return result

    def __repr__(self):
        return f"<QSymElem({self})>"

    def __str__(self):
        return format_linear(
            (v, f"M[{format_composition(c)}]" if c else "") for c, v in self.items()
        )

    @classmethod
    def parse(cls, text: str) -> 'QSymElem':
        """Parse the text form ``"c*M[i1,...] + ..."`` produced by ``str``."""
        total: Dict[Composition, Fraction] = {}
        for sign, term in split_signed_terms(text):
            coefficient = Fraction(sign)
            composition: Optional[Composition] = None
            for factor in split_factors(term):
                if factor.startswith('M[') and factor.endswith(']'):
                    if composition is not None:
                        raise ParseError(f"Products of basis elements are not linear text: {term!r}")
                    composition = parse_composition(factor[2:-1])
                else:
                    coefficient *= parse_rational(factor)
            key = composition if composition is not None else ()
            total[key] = total.get(key, Fraction(0)) + coefficient
        return cls(total)


def monomial_qsym(composition: Sequence[int]) -> QSymElem:
    """Basis element M_I (the empty composition gives the scalar 1)."""
    return QSymElem({tuple(composition): 1})


def quasi_shuffle(u: QSymElem, v: QSymElem) -> QSymElem:
    """Product in QSym, bilinear extension of the composition stuffle."""
    result: Dict[Composition, Fraction] = {}
    for a, ca in u.coords.items():
        for b, cb in v.coords.items():
            for c, mult in quasi_shuffle_compositions(a, b):
                result[c] = result.get(c, Fraction(0)) + ca * cb * mult
    return QSymElem(result)


def elementary(k: int) -> QSymElem:
    if k < 0:
        raise HarmonicSumsError(f"e_k needs k >= 0, got {k}")
    return monomial_qsym((1,) * k)


def complete(k: int) -> QSymElem:
    if k < 0:
        raise HarmonicSumsError(f"h_k needs k >= 0, got {k}")
    return QSymElem({c: 1 for c in enumerate_compositions(k)})


def powersum(k: int) -> QSymElem:
    if k < 1:
        raise HarmonicSumsError(f"p_k needs k >= 1, got {k}")
    return monomial_qsym((k,))


def monomial_symmetric(partition: Sequence[int]) -> QSymElem:
    partition = validate_partition(partition)
    return QSymElem({c: 1 for c in rearrangements(partition)})


def n_sum(n: int, m: int) -> QSymElem:
    """N_{n,m}: sum of M_I over compositions of n with m parts.

    N_{0,0} is 1 and N_{n,0} is 0 for n >= 1.
    """
    if n < 0 or m < 0 or m > n:
        raise HarmonicSumsError(f"N[n,m] needs n >= m >= 0, got N[{n},{m}]")
    if m == 0:
        return QSymElem.scalar(1 if n == 0 else 0)
    return QSymElem({c: 1 for c in enumerate_compositions(n, m)})


def generator(kind: str, arg) -> QSymElem:
    """Materialise a named generator in the monomial basis.

    Args:
        kind: One of 'elementary', 'complete', 'powersum',
            'monomial_partition', 'N'
        arg: The index k, a partition tuple, or an ``(n, m)`` pair for N

    Returns:
        QSymElem
    """
    builders = {
        'elementary': elementary,
        'complete': complete,
        'powersum': powersum,
        'monomial_partition': monomial_symmetric,
    }
    if kind == 'N':
        n, m = arg
        return n_sum(n, m)
    if kind not in builders:
        raise HarmonicSumsError(f"Unknown generator kind: {kind}")
    return builders[kind](arg)


# ----------------------------------------------------------------------
# Power-sum polynomials
# ----------------------------------------------------------------------

def power_sum_symbols(n: int) -> Tuple[sympy.Symbol, ...]:
    """Variables y1..yn (y_r stands for the power sum p_r)."""
    return tuple(sympy.symbols(f'y1:{max(n, 1) + 1}'))


def _to_sympy(value: Fraction) -> sympy.Rational:
    return sympy.Rational(value.numerator, value.denominator)


def _from_sympy(value) -> Fraction:
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


@lru_cache(maxsize=None)
def pq_poly(kind: str, n: int) -> sympy.Poly:
    """P_n (kind 'P') or Q_n (kind 'Q') as a polynomial in y1..yn.

    Sums over m_1 + 2 m_2 + ... = n of
    sign * prod_r (y_r / r)^{m_r} / m_r!, where the sign is
    (-1)^{m_2 + m_4 + ...} for P and +1 for Q.
    """
    if kind not in ('P', 'Q'):
        raise HarmonicSumsError(f"pq_poly kind must be 'P' or 'Q', got {kind!r}")
    if n < 1:
        raise HarmonicSumsError(f"pq_poly needs n >= 1, got {n}")
    ys = power_sum_symbols(n)
    expr = sympy.Integer(0)
    for partition in enumerate_partitions(n):
        multiplicities = {r: partition.count(r) for r in set(partition)}
        coefficient = sympy.Integer(1)
        term = sympy.Integer(1)
        even_parts = 0
        for r, m_r in multiplicities.items():
            coefficient /= sympy.factorial(m_r) * sympy.Integer(r) ** m_r
            term *= ys[r - 1] ** m_r
            if r % 2 == 0:
                even_parts += m_r
        if kind == 'P' and even_parts % 2 == 1:
            coefficient = -coefficient
        expr += coefficient * term
    return sympy.Poly(expr, *ys, domain='QQ')


def determinant_poly(kind: str, n: int) -> sympy.Poly:
    """Determinant form of n! P_n (kind 'P') or n! Q_n (kind 'Q').

    The n x n matrix carries y_{i-j+1} on and below the diagonal and
    +i (for P) or -i (for Q) in position (i, i+1) of the superdiagonal.
    """
    if kind not in ('P', 'Q'):
        raise HarmonicSumsError(f"determinant_poly kind must be 'P' or 'Q', got {kind!r}")
    ys = power_sum_symbols(n)
    sign = 1 if kind == 'P' else -1

    def entry(i, j):
        if j <= i:
            return ys[i - j]
        if j == i + 1:
            return sign * (i + 1)
        return 0

    matrix = sympy.Matrix(n, n, entry)
    return sympy.Poly(sympy.expand(matrix.det(method='berkowitz')), *ys, domain='QQ')


def evaluate_poly(poly: sympy.Poly) -> QSymElem:
    """Substitute y_r := p_r in a power-sum polynomial, giving a QSym element."""
    result = QSymElem()
    for exponents, coefficient in poly.terms():
        term = QSymElem.scalar(_from_sympy(coefficient))
        for r, e in enumerate(exponents, start=1):
            if e:
                term = term * powersum(r) ** e
        result = result + term
    return result


def is_symmetric(u: QSymElem) -> bool:
    """True iff every rearrangement of a supported composition has the same coefficient."""
    for composition, value in u.coords.items():
        for other in rearrangements(sort_partition(composition)):
            if u.coefficient(other) != value:
                return False
    return True


@lru_cache(maxsize=None)
def _powersum_change_of_basis(k: int) -> Tuple[Tuple[Tuple[int, ...], ...], sympy.ImmutableMatrix]:
    """Rows: p_lambda expanded in m_mu, over partitions of k."""
    partitions = tuple(enumerate_partitions(k))
    rows = []
    for lam in partitions:
        product = QSymElem.scalar(1)
        for part in lam:
            product = product * powersum(part)
        rows.append([_to_sympy(product.coefficient(mu)) for mu in partitions])
    return partitions, sympy.ImmutableMatrix(rows)


def to_powersum_poly(u: QSymElem) -> sympy.Poly:
    """Express a symmetric element as a polynomial in the power sums.

    Raises:
        NotSymmetricError: if ``u`` is not symmetric
    """
    if not is_symmetric(u):
        raise NotSymmetricError(f"Element is not symmetric: {u}")
    d = u.degree()
    ys = power_sum_symbols(d)
    expr = _to_sympy(u.constant_term())
    for k in range(1, d + 1):
        component = u.homogeneous_component(k)
        if not component:
            continue
        partitions, change = _powersum_change_of_basis(k)
        target = sympy.Matrix([_to_sympy(component.coefficient(mu)) for mu in partitions])
        solution = change.T.LUsolve(target)
        for lam, c in zip(partitions, solution):
            if c != 0:
                expr += c * sympy.Mul(*[ys[part - 1] for part in lam])
    return sympy.Poly(expr, *ys, domain='QQ')


# ----------------------------------------------------------------------
# Specialization x_i -> a_i
# ----------------------------------------------------------------------

def _accumulate(u: QSymElem, values: Iterable[Scalar]) -> Iterator[Fraction]:
    """Yield u(a_1..a_n) for n = 0, 1, 2, ... over the given values.

    For each basis term M_I of depth j the prefix accumulators obey
    V_t(n) = V_t(n-1) + a_n^{i_t} V_{t-1}(n-1), with V_0 = 1.
    """
    terms = [(composition, coefficient, [Fraction(1)] + [Fraction(0)] * len(composition))
             for composition, coefficient in u.items()]
    yield sum((c * acc[-1] for _, c, acc in terms), Fraction(0))
    for a in values:
        a = Fraction(a)
        for composition, _, acc in terms:
            for t in range(len(composition), 0, -1):
                acc[t] += a ** composition[t - 1] * acc[t - 1]
        yield sum((c * acc[-1] for _, c, acc in terms), Fraction(0))


def specialize_stream(u: QSymElem) -> Iterator[Fraction]:
    """Infinite stream of u(1, 1/2, ..., 1/n) for n = 0, 1, 2, ...

    Element 0 is the constant term (all harmonic numbers H_0 vanish).
    Each stream is a single-consumer iterator.
    """
    return _accumulate(u, (Fraction(1, n) for n in count(1)))


def specialize(u: QSymElem, values: Sequence[Scalar]) -> Fraction:
    """Exact value u(a_1, ..., a_n) for a finite sequence of rationals."""
    result = Fraction(0)
    for result in _accumulate(u, values):
        pass
    return result


def specialize_array(u: QSymElem, n_max: int) -> np.ndarray:
    """Float64 array whose entry n is u(1, 1/2, ..., 1/n), for n = 0..n_max.

    Compositions are walked as a prefix trie so shared prefixes are summed
    once and only one array per trie level is alive at a time.
    """
    trie: Dict = {}
    for composition, coefficient in u.coords.items():
        node = trie
        for part in composition:
            node = node.setdefault(part, {})
        node[None] = float(coefficient)

    powers: Dict[int, np.ndarray] = {}

    def power(p: int) -> np.ndarray:
        if p not in powers:
            powers[p] = reciprocal_powers(n_max, p)
        return powers[p]

    total = np.zeros(n_max + 1, dtype=np.float64)
    if None in trie:
        total += trie[None]

    def walk(node: Dict, previous: np.ndarray):
        for part, child in node.items():
            if part is None:
                continue
            level = compensated_cumsum(power(part) * shifted(previous))
            if None in child:
                total[:] += child[None] * level
            walk(child, level)

    walk(trie, np.ones(n_max + 1, dtype=np.float64))
    return total


def expand_in_variables(u: QSymElem, m: int) -> sympy.Expr:
    """Polynomial u(x_1, ..., x_m) as a sympy expression."""
    xs = sympy.symbols(f'x1:{m + 1}')
    expr = sympy.Integer(0)
    for composition, coefficient in u.coords.items():
        inner = sympy.Integer(0)
        for indices in combinations(range(m), len(composition)):
            inner += sympy.Mul(*[xs[i] ** e for i, e in zip(indices, composition)])
        expr += _to_sympy(coefficient) * inner
    return sympy.expand(expr)


def shift_identity_sides(k: int, n: int, printed: bool = False) -> Tuple[Fraction, Fraction]:
    """Both sides of the complete-function shift identity at a_i = 1/i.

    Left: h_k(a_1..a_{n+1}). Right: sum_j h_{k-j}(a_1..a_n) a^j where a is
    a_{n+1}, or a_n when ``printed`` is set (the misprinted subscript).
    """
    values = [Fraction(1, i) for i in range(1, n + 2)]
    lhs = specialize(complete(k), values)
    a = values[n - 1] if printed else values[n]
    rhs = sum((specialize(complete(k - j), values[:n]) * a ** j for j in range(k + 1)), Fraction(0))
    return lhs, rhs


def shift_identity_holds(k: int, n: int, printed: bool = False) -> bool:
    lhs, rhs = shift_identity_sides(k, n, printed=printed)
    return lhs == rhs


def scaled_pq_poly(kind: str, n: int) -> sympy.Poly:
    """n! times P_n or Q_n; all coefficients are integers."""
    return pq_poly(kind, n) * factorial(n)
