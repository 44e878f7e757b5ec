"""Tests for direct numeric evaluation of H-function series."""
from fractions import Fraction

import mpmath
import pytest

from harmonic_sums.algebra.compositions import enumerate_compositions
from harmonic_sums.algebra.qsym import complete, elementary, monomial_qsym, powersum
from harmonic_sums.errors import InvalidEtaSpecError, InvalidToleranceError, ToleranceUnreachableError
from harmonic_sums.eta.engine import eta_on_M, eta_on_qsym
from harmonic_sums.eta.spec import EtaSpec
from harmonic_sums.numeric.series import (
    LhsDescriptor,
    LhsTerm,
    eta_numeric,
    eta_result_value,
    exact_partial_sum,
    float_partial_sums,
    lhs_value,
    series_terms,
)

ZETA2 = float(mpmath.zeta(2))
ZETA3 = float(mpmath.zeta(3))
ZETA4 = float(mpmath.zeta(4))


def test_descriptor_validation():
    with pytest.raises(InvalidEtaSpecError):
        LhsDescriptor(((powersum(1), 2),), EtaSpec.of(2))
    with pytest.raises(InvalidEtaSpecError):
        LhsDescriptor(((powersum(1), 0),), EtaSpec.of(2), start_n=0)
    with pytest.raises(InvalidEtaSpecError):
        LhsDescriptor((), EtaSpec.of(0, 2), start_n=2)


def test_descriptor_accepts_plain_tuples():
    d = LhsDescriptor(((powersum(1), 1),), (2,))
    assert d.spec == EtaSpec.of(2)
    assert d.degree == 1
    assert str(d) == "eta[2]((M[1])@+1; n>=1)"


def test_series_terms_start_and_offset():
    """Terms of sum_{n>=0} H_(n+1) / ((n+1)(n+2))."""
    d = LhsDescriptor(((powersum(1), 1),), EtaSpec.of(0, 1, 1), start_n=0)
    terms = series_terms(d, 2)
    assert terms[0] == pytest.approx(1 / 2)
    assert terms[1] == pytest.approx(1.5 / 6)
    assert terms[2] == pytest.approx((11 / 6) / 12)


def test_float_sums_match_exact_sums():
    d = LhsDescriptor(((complete(2), 0), (elementary(1), 1)), EtaSpec.of(0, 1, 1), start_n=0)
    exact = exact_partial_sum(d, 100)
    assert isinstance(exact, Fraction)
    assert float_partial_sums(d, [100])[0] == pytest.approx(float(exact), rel=1e-13)


def test_euler_sums():
    first = eta_numeric(LhsDescriptor(((powersum(1), 0),), EtaSpec.of(2)), 1e-8)
    assert abs(first.value - 2 * ZETA3) < 1e-8
    second = eta_numeric(LhsDescriptor(((powersum(1), 0),), EtaSpec.of(3)), 1e-8)
    assert abs(second.value - 1.25 * ZETA4) < 1e-8


def test_telescoping_sum_without_factors():
    d = LhsDescriptor((), EtaSpec.of(0, 1, 1), start_n=0)
    assert abs(eta_numeric(d, 1e-9).value - 1.0) < 1e-9


def test_tolerance_limits():
    d = LhsDescriptor(((powersum(1), 0),), EtaSpec.of(2))
    with pytest.raises(InvalidToleranceError):
        eta_numeric(d, 1e-11)
    with pytest.raises(ToleranceUnreachableError):
        eta_numeric(d, 1e-8, max_terms=500)


def test_lhs_value_sums_weighted_terms():
    d = LhsDescriptor((), EtaSpec.of(2))
    terms = [LhsTerm(d, Fraction(2)), LhsTerm(d, Fraction(-1, 2))]
    result = lhs_value(terms, 1e-8)
    assert abs(result.value - 1.5 * ZETA2) < 1e-8
    assert str(terms[1]) == "-1/2*eta[2](1; n>=1)"


def test_symbolic_and_numeric_agree(mzv_cache):
    """eta_(0,1,1)(M[2]) = z(2) - 1 symbolically; the series gives the same number."""
    symbolic = eta_result_value(eta_on_qsym(EtaSpec.of(0, 1, 1), monomial_qsym((2,))), 1e-8, cache=mzv_cache)
    series = eta_numeric(LhsDescriptor(((monomial_qsym((2,)), 0),), EtaSpec.of(0, 1, 1)), 1e-8)
    assert abs(symbolic.value - (ZETA2 - 1)) < 1e-8
    assert abs(symbolic.value - series.value) <= symbolic.error_bound + series.error_bound
    assert symbolic.rigorous
    assert not series.rigorous


def test_eta2_of_e2_h2(mzv_cache):
    """eta_2(e_2 h_2) = 10 z(6) + 1/2 z(3)^2, symbolically and as a series."""
    expected = 10 * float(mpmath.zeta(6)) + 0.5 * float(mpmath.zeta(3)) ** 2
    u = elementary(2) * complete(2)
    symbolic = eta_result_value(eta_on_qsym(EtaSpec.of(2), u), 1e-7, cache=mzv_cache)
    assert abs(symbolic.value - expected) < 1e-7
    series = eta_numeric(LhsDescriptor(((elementary(2), 0), (complete(2), 0)), EtaSpec.of(2)), 1e-5)
    assert abs(series.value - expected) < 1e-5


def test_residual_terms_are_summed_numerically(mzv_cache):
    result = eta_on_M(EtaSpec.of(0, 0, 1, 1), (2,)) * 3
    value = eta_result_value(result, 1e-7, cache=mzv_cache)
    direct = eta_numeric(LhsDescriptor(((monomial_qsym((2,)), 0),), EtaSpec.of(0, 0, 1, 1)), 1e-8)
    assert abs(value.value - 3 * direct.value) <= value.error_bound + 3 * direct.error_bound


@pytest.mark.slow
@pytest.mark.parametrize('parts', [(2,), (3,), (1, 1), (0, 1, 1), (1, 1, 1)])
def test_symbolic_and_numeric_agree_on_monomials(parts, mzv_cache):
    spec = EtaSpec.of(*parts)
    for n in range(1, 4):
        for composition in enumerate_compositions(n):
            u = monomial_qsym(composition)
            symbolic = eta_result_value(eta_on_qsym(spec, u), 1e-6, cache=mzv_cache)
            series = eta_numeric(LhsDescriptor(((u, 0),), spec), 1e-6)
            assert abs(symbolic.value - series.value) <= symbolic.error_bound + series.error_bound, composition


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
