"""Tests for the closed-form right-hand sides."""
from fractions import Fraction

import pytest

from harmonic_sums.algebra.mzv import PRINTED_EULER_SIGN, MzvExpr, aggregate
from harmonic_sums.errors import OutOfRangeError, UnknownFamilyError
from harmonic_sums.eta.closed_forms import (
    CLOSED_FORMS,
    alternating_zeta_sum,
    ch2_rhs,
    closed_form,
    eta111_rhs,
    get_closed_form,
    off_proof_rhs,
    pn2_rhs,
    qpnn1_rhs,
    tail_rhs,
)

z = MzvExpr.zeta
one = MzvExpr.constant(1)


def test_qn2():
    assert closed_form('qn2', {'k': 4}) == z(6) * 5
    assert closed_form('qn2', {'k': 0}) == z(2)


@pytest.mark.parametrize('k, l, expected', [
    (0, 0, one),
    (3, 0, one),
    (1, 1, one + z(2)),
    (2, 1, one + z(3) + z(2)),
    (0, 2, z(2)),
    (1, 2, z(3) * 3 + z(2)),
])
def test_ch2_cases(k, l, expected):
    assert ch2_rhs(k, l) == expected


def test_qpnn1_and_eta111():
    assert qpnn1_rhs(1, 1) == z(3) * 3
    assert eta111_rhs(1, 2) == (z(4) * 6 - z(3) * 3 - z(2)) * Fraction(1, 2)


def test_alternating_zeta_sum():
    assert alternating_zeta_sum(1) == one
    assert alternating_zeta_sum(2) == z(2) - 1
    assert alternating_zeta_sum(3) == z(3) - z(2) + 1


def test_pn2_sign():
    """sum e_2/n^2 = z(4) + z(3,1) = 5/4 z(4), which needs the minus sign."""
    assert pn2_rhs(1) == z(3) * 2
    assert pn2_rhs(2) == z(4) * Fraction(5, 2) - z(2) * z(2) * Fraction(1, 2)
    assert pn2_rhs(2, PRINTED_EULER_SIGN) == z(4) * Fraction(5, 2) + z(2) * z(2) * Fraction(1, 2)


def test_tail():
    assert tail_rhs(1, 2) == z(2)
    assert tail_rhs(2, 3) == (z(3) - 1) * Fraction(1, 2)


def test_off_proof():
    assert off_proof_rhs(0, 1) == z(3)
    assert off_proof_rhs(1, 1) == aggregate(4, 2, 'T') == z(3, 1)


def test_parameterless_families():
    assert closed_form('cof-remark') == z(6) * Fraction(859, 24) + z(3) * z(3) * 3
    assert closed_form('length2-example', {}) == z(4) * Fraction(17, 4) - z(3) * 3


def test_qpnn1_boundary_names_the_gap():
    with pytest.raises(OutOfRangeError, match=r"zeta\(l\+1\)"):
        closed_form('qpnn1', {'k': 0, 'l': 1})
    assert 'k must be at least 1' in get_closed_form('qpnn1').boundary_message({'k': 0, 'l': 2})
    assert get_closed_form('qpnn1').boundary_message({'k': 1, 'l': 2}) is None


@pytest.mark.parametrize('family, params', [
    ('eulers', {'eq': 3}),
    ('eta2eh', {'j': 3, 'n': 2}),
    ('tail', {'k': 1, 'q': 1}),
    ('hsq', {'eq': 6}),
])
def test_out_of_range(family, params):
    with pytest.raises(OutOfRangeError):
        closed_form(family, params)


def test_missing_parameter():
    with pytest.raises(OutOfRangeError, match='needs parameter'):
        closed_form('ch2', {'k': 1})


def test_unknown_family():
    with pytest.raises(UnknownFamilyError):
        closed_form('no-such-family', {})


def test_every_form_has_an_anchor():
    assert all(form.anchor for form in CLOSED_FORMS.values())


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
