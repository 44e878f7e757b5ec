"""Tests for symbolic zeta-value expressions and their rewrites."""
from fractions import Fraction

import pytest

from harmonic_sums.algebra.mzv import (
    EULER_SIGN,
    PRINTED_EULER_SIGN,
    AggregateSpec,
    MzvExpr,
    aggregate,
    derivation_relation,
    dual_canonicalize,
    dual_representative,
    euler_formula,
    euler_reduce,
    expand_products,
    height_one_reduce,
    simplify,
    sum_theorem_reduce,
)
from harmonic_sums.errors import HarmonicSumsError, NotAdmissibleError, ParseError, TruncationBoundError

z = MzvExpr.zeta


def test_arithmetic():
    e = z(3, 1) * 2 + z(2) * z(2) - 1
    assert e.coefficient([(3, 1)]) == 2
    assert e.coefficient([(2,), (2,)]) == 1
    assert e.constant_term() == -1
    assert (e - e) == 0
    assert z(2) ** 2 == z(2) * z(2)


def test_non_admissible_symbol_rejected():
    with pytest.raises(NotAdmissibleError):
        z(1, 2)


def test_text_round_trip():
    e = MzvExpr.parse("z[3,1] - 1/2*z[2]*z[2] + 5/4")
    assert e == z(3, 1) - z(2) * z(2) * Fraction(1, 2) + Fraction(5, 4)
    assert MzvExpr.parse(str(e)) == e


def test_parse_rejects_divergent_symbol():
    with pytest.raises(ParseError):
        MzvExpr.parse("z[1,2]")


def test_weights_and_homogeneity():
    assert (z(3, 1) + z(2) * z(2)).is_homogeneous()
    assert not (z(3) + z(2)).is_homogeneous()
    assert (z(3) + z(2)).weights() == (2, 3)
    assert not (z(2) * z(3)).is_linear()


def test_aggregates():
    assert aggregate(4, 2) == z(3, 1) + z(2, 2)
    assert aggregate(4, 2, 'T') == z(3, 1)
    assert aggregate(4, 2, 'R') == z(3, 1)
    assert aggregate(5, 2, 'startswith', start=3) == z(3, 2)
    assert aggregate(5, 1) == z(5)


def test_aggregate_spec_validation():
    with pytest.raises(HarmonicSumsError):
        AggregateSpec(3, 3)
    with pytest.raises(HarmonicSumsError):
        AggregateSpec(4, 2, 'startswith')
    with pytest.raises(HarmonicSumsError):
        AggregateSpec(4, 2, 'other')


@pytest.mark.parametrize('n, k', [(4, 2), (5, 3), (6, 2), (6, 4)])
def test_sum_theorem_reduce_complete_aggregate(n, k):
    assert sum_theorem_reduce(aggregate(n, k)) == z(n)
    assert sum_theorem_reduce(aggregate(n, k) * 3 + z(2)) == z(n) * 3 + z(2)


def test_sum_theorem_leaves_partial_aggregates():
    partial = aggregate(5, 2, 'T')
    assert sum_theorem_reduce(partial) == partial


def test_dual_canonicalize():
    assert dual_representative((2, 1)) == (3,)
    assert dual_canonicalize(z(2, 1)) == z(3)
    assert dual_canonicalize(z(2, 1, 1) + z(3, 1)) == z(4) + z(3, 1)
    e = z(2, 1, 1) * z(2, 1) + z(4, 1)
    once = dual_canonicalize(e)
    assert dual_canonicalize(once) == once


def test_derivation_relation():
    lhs, rhs = derivation_relation((2, 1))
    assert lhs == z(3, 1) + z(2, 2)
    assert rhs == z(2, 1, 1)
    lhs, rhs = derivation_relation((2,))
    assert lhs == z(3)
    assert rhs == z(2, 1)


def test_derivation_relation_is_weight_raising():
    for composition in [(3,), (2, 2), (3, 1), (2, 1, 1)]:
        lhs, rhs = derivation_relation(composition)
        assert lhs.weights() == rhs.weights() == (sum(composition) + 1,)


def test_euler_formula():
    assert euler_formula(2) == z(3)
    assert euler_formula(3) == z(4) * Fraction(3, 2) - z(2) * z(2) * Fraction(1, 2)
    assert euler_formula(3, PRINTED_EULER_SIGN) == z(4) * Fraction(3, 2) + z(2) * z(2) * Fraction(1, 2)
    with pytest.raises(HarmonicSumsError):
        euler_formula(1)


def test_euler_reduce():
    e = z(4) * 3 - z(3, 1)
    assert euler_reduce(e, EULER_SIGN) == z(4) * 3 - euler_formula(3)
    assert euler_reduce(z(2, 2)) == z(2, 2)


@pytest.mark.parametrize('m, n, expected', [
    (1, 1, z(2)),
    (2, 1, z(3)),
    (1, 2, z(3)),
])
def test_height_one_small_cases(m, n, expected):
    assert height_one_reduce(m, n) == expected


def test_height_one_matches_euler():
    """z[3,1] from the generating function agrees with Euler's formula."""
    assert height_one_reduce(2, 2) == euler_formula(3)
    assert height_one_reduce(3, 2) == euler_formula(4)


def test_height_one_bound():
    with pytest.raises(TruncationBoundError):
        height_one_reduce(6, 6, bound=10)


def test_expand_products():
    assert expand_products(z(2) * z(2)) == z(2, 2) * 2 + z(4)
    assert expand_products(z(2) * z(3)) == z(2, 3) + z(3, 2) + z(5)
    assert expand_products(z(3, 1)) == z(3, 1)


def test_simplify():
    assert simplify(z(2, 1)) == z(3)
    assert simplify(z(3, 1)) == euler_formula(3)
    assert simplify(z(2, 1, 1)) == z(4)
    assert simplify(aggregate(5, 2) * 2) == z(5) * 2


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
