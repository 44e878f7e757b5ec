"""Tests for the quasi-symmetric function algebra."""
from fractions import Fraction
from math import comb

import numpy as np
import pytest
import sympy

from harmonic_sums.algebra.qsym import (
    QSymElem,
    complete,
    determinant_poly,
    elementary,
    evaluate_poly,
    expand_in_variables,
    generator,
    is_symmetric,
    monomial_qsym,
    monomial_symmetric,
    n_sum,
    powersum,
    pq_poly,
    scaled_pq_poly,
    shift_identity_holds,
    shift_identity_sides,
    specialize,
    specialize_array,
    specialize_stream,
    to_powersum_poly,
)
from harmonic_sums.errors import HarmonicSumsError, NotSymmetricError, ParseError

HARMONIC_VALUES = [Fraction(1, i) for i in range(1, 8)]


def test_quasi_shuffle_small_products():
    """M[1]^2 = 2 M[1,1] + M[2]; M[1] M[2] = M[1,2] + M[2,1] + M[3]."""
    m1 = monomial_qsym((1,))
    assert m1 * m1 == QSymElem({(1, 1): 2, (2,): 1})
    assert m1 * monomial_qsym((2,)) == QSymElem({(1, 2): 1, (2, 1): 1, (3,): 1})


def test_unit_and_scalars():
    u = complete(2)
    assert u * QSymElem.scalar(1) == u
    assert (u * 3 - u * 3) == 0
    assert QSymElem.scalar(5).constant_term() == 5


def test_newton_identity():
    """p1^2 = 2 e2 + p2."""
    assert powersum(1) * powersum(1) == elementary(2) * 2 + powersum(2)


def test_generators():
    assert elementary(2) == monomial_qsym((1, 1))
    assert complete(2) == QSymElem({(2,): 1, (1, 1): 1})
    assert monomial_symmetric((2, 1)) == QSymElem({(2, 1): 1, (1, 2): 1})
    assert generator('N', (3, 2)) == QSymElem({(2, 1): 1, (1, 2): 1})
    assert n_sum(0, 0) == 1
    assert n_sum(3, 0) == 0
    with pytest.raises(HarmonicSumsError):
        generator('schur', 2)


@pytest.mark.parametrize('k', range(0, 6))
def test_e_h_n_sum_lemma(k):
    """e_j h_(k-j) = sum_{p=j}^k C(p, j) N_{k,p}."""
    for j in range(k + 1):
        rhs = QSymElem()
        for p in range(j, k + 1):
            rhs = rhs + n_sum(k, p) * comb(p, j)
        assert elementary(j) * complete(k - j) == rhs


@pytest.mark.parametrize('k', range(1, 6))
def test_pq_polynomials_give_e_and_h(k):
    assert evaluate_poly(pq_poly('P', k)) == elementary(k)
    assert evaluate_poly(pq_poly('Q', k)) == complete(k)


@pytest.mark.parametrize('kind', ['P', 'Q'])
@pytest.mark.parametrize('n', range(1, 6))
def test_determinant_form(kind, n):
    """n! P_n and n! Q_n as determinants match the partition sums."""
    assert determinant_poly(kind, n) == scaled_pq_poly(kind, n)


def test_determinant_small_case():
    y1, y2 = sympy.symbols('y1:3')
    assert determinant_poly('P', 2).as_expr() == sympy.expand(y1 ** 2 - y2)


@pytest.mark.parametrize('n', range(1, 6))
def test_falling_and_rising_factorials(n):
    """e_k(1..1) = C(n, k) and h_k(1..1) = C(n+k-1, k): P_k(n,..,n) and Q_k(n,..,n)."""
    ones = [1] * n
    for k in range(0, 5):
        assert specialize(elementary(k), ones) == comb(n, k)
        assert specialize(complete(k), ones) == comb(n + k - 1, k)


def test_specialize_values():
    assert specialize(powersum(1), HARMONIC_VALUES[:3]) == Fraction(11, 6)
    assert specialize(elementary(2), HARMONIC_VALUES[:3]) == 1
    assert specialize(complete(3), []) == 0
    assert specialize(QSymElem.scalar(2), []) == 2


def test_specialization_is_a_homomorphism():
    u = complete(2) + monomial_qsym((2, 1))
    v = elementary(2) - powersum(3) * Fraction(1, 2)
    values = HARMONIC_VALUES[:5]
    assert specialize(u * v, values) == specialize(u, values) * specialize(v, values)


def test_specialize_matches_brute_force_expansion():
    u = monomial_qsym((2, 1)) * 3 + complete(2)
    xs = sympy.symbols('x1:5')
    expr = expand_in_variables(u, 4)
    values = HARMONIC_VALUES[:4]
    expected = expr.subs({x: sympy.Rational(v.numerator, v.denominator) for x, v in zip(xs, values)})
    assert specialize(u, values) == Fraction(int(expected.p), int(expected.q))


def test_specialize_stream_prefix():
    stream = specialize_stream(powersum(1))
    assert [next(stream) for _ in range(4)] == [0, 1, Fraction(3, 2), Fraction(11, 6)]


def test_specialize_array_matches_exact():
    u = complete(3) + elementary(2) * 2
    exact = specialize_stream(u)
    array = specialize_array(u, 50)
    for n in range(51):
        value = float(next(exact))
        assert array[n] == pytest.approx(value, rel=1e-12, abs=1e-15)


def test_specialize_array_harmonic_number():
    assert specialize_array(powersum(1), 10)[10] == pytest.approx(7381 / 2520, rel=1e-15)
    assert isinstance(specialize_array(powersum(1), 3), np.ndarray)


def test_is_symmetric():
    assert is_symmetric(complete(3))
    assert is_symmetric(elementary(2) * powersum(1))
    assert not is_symmetric(monomial_qsym((2, 1)))


def test_to_powersum_poly():
    assert to_powersum_poly(elementary(2)) == pq_poly('P', 2)
    assert to_powersum_poly(complete(3)) == pq_poly('Q', 3)
    with pytest.raises(NotSymmetricError):
        to_powersum_poly(monomial_qsym((2, 1)))


@pytest.mark.parametrize('k, n', [(2, 3), (3, 2), (3, 4), (1, 1)])
def test_shift_identity_corrected_index(k, n):
    """h_k(a_1..a_(n+1)) = sum_j h_(k-j)(a_1..a_n) a_(n+1)^j holds exactly."""
    lhs, rhs = shift_identity_sides(k, n)
    assert lhs == rhs
    assert shift_identity_holds(k, n)


def test_shift_identity_printed_index_fails():
    assert not shift_identity_holds(2, 3, printed=True)


def test_text_round_trip():
    u = complete(3) * 2 - powersum(1) + Fraction(1, 2)
    assert QSymElem.parse(str(u)) == u
    assert str(monomial_qsym((1, 1)) * Fraction(-1, 2)) == "-1/2*M[1,1]"


def test_parse_rejects_products():
    with pytest.raises(ParseError):
        QSymElem.parse("M[1]*M[2]")


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
