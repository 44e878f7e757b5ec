"""Tests for the command-line expression grammar."""
from fractions import Fraction

import pytest

from harmonic_sums.algebra.qsym import QSymElem, complete, elementary, monomial_qsym, n_sum, powersum
from harmonic_sums.errors import ParseError
from harmonic_sums.eta.spec import EtaSpec
from harmonic_sums.expressions import parse_qsym, parse_series


def test_generators_and_products():
    assert parse_qsym("h2*e1") == complete(2) * elementary(1)
    assert parse_qsym("N[3,2]") == n_sum(3, 2)
    assert parse_qsym("M[2,1]") == monomial_qsym((2, 1))


def test_newton_identity_in_text():
    assert parse_qsym("p1^2 - 2*e2") == powersum(2)


def test_rationals_and_leading_sign():
    expected = monomial_qsym((2, 1)) * Fraction(-1, 2) + 3
    assert parse_qsym("-1/2*M[2,1] + 3") == expected
    assert parse_qsym("h0") == QSymElem.scalar(1)


def test_parenthesised_power():
    s = elementary(1) + complete(1)
    assert parse_qsym("(e1 + h1)^2") == s * s


@pytest.mark.parametrize('text', ["p1@+1", "x2", "e1*", "(e1", "e1)", "", "e1 +", "M[0]", "p0", "N[2,3]"])
def test_rejects_malformed(text):
    with pytest.raises(ParseError):
        parse_qsym(text)


def test_series_keeps_offset_factors():
    (term,) = parse_series("p1*p1@+1", EtaSpec.of(0, 2), start_n=0)
    assert term.coefficient == 1
    assert term.descriptor.factors == ((powersum(1), 0), (powersum(1), 1))
    assert term.descriptor.start_n == 0


def test_series_one_term_per_summand():
    terms = parse_series("2*e1 - h2 + 0*p3", EtaSpec.of(2))
    assert [t.coefficient for t in terms] == [2, -1]
    assert terms[1].descriptor.factors == ((complete(2), 0),)


def test_series_powers_repeat_factors():
    (term,) = parse_series("p1^3", EtaSpec.of(0, 2))
    assert term.descriptor.degree == 3
    assert len(term.descriptor.factors) == 3


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
