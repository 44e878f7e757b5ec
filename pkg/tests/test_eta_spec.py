"""Tests for H-function exponent sequences and partial fractions."""
from fractions import Fraction

import pytest

from harmonic_sums.errors import InvalidEtaSpecError, ParseError
from harmonic_sums.eta.spec import EtaCombo, EtaSpec, partial_fraction_reduce


def test_trailing_zeros_are_trimmed():
    assert EtaSpec((2, 0, 0)).s == (2,)
    assert EtaSpec((0, 1, 1, 0)) == EtaSpec.of(0, 1, 1)
    assert EtaSpec((0, 2)).s == (0, 2)


@pytest.mark.parametrize('s', [(1,), (0, 1), (-1, 3), ()])
def test_rejects_invalid_sequences(s):
    with pytest.raises(InvalidEtaSpecError):
        EtaSpec(s)


def test_parse():
    assert EtaSpec.parse("eta[0,1,1]") == EtaSpec.of(0, 1, 1)
    assert EtaSpec.parse("2") == EtaSpec.of(2)
    assert EtaSpec.parse(" (1, 1) ") == EtaSpec.of(1, 1)
    with pytest.raises(ParseError):
        EtaSpec.parse("a,b")
    with pytest.raises(ParseError):
        EtaSpec.parse("1")


def test_weight_and_denominator():
    spec = EtaSpec.of(0, 1, 1)
    assert spec.weight == 2
    assert spec.length == 3
    assert spec.denominator(2) == 12
    assert spec.denominator_array(3)[3] == 20.0
    assert spec.label() == "eta[0,1,1]"


@pytest.mark.parametrize('s, irreducible', [
    ((2,), True),
    ((1, 1), True),
    ((0, 0, 3), True),
    ((0, 1, 0, 1), True),
    ((1, 2), False),
    ((1, 1, 1), False),
])
def test_is_irreducible(s, irreducible):
    assert EtaSpec(s).is_irreducible() is irreducible


def test_reduce_one_one_one():
    combo = partial_fraction_reduce(EtaSpec.of(1, 1, 1))
    assert str(combo) == "1/2*eta[1,1] - 1/2*eta[0,1,1]"


@pytest.mark.parametrize('s', [(1, 1, 1), (1, 2), (2, 1, 1), (1, 0, 2), (2, 2), (1, 1, 1, 1)])
def test_reduction_preserves_every_summand(s):
    """The reduced combination agrees with 1/denominator at each n."""
    spec = EtaSpec(s)
    combo = partial_fraction_reduce(spec)
    for part, _ in combo.items():
        assert part.is_irreducible()
    for n in range(1, 8):
        total = sum(c * Fraction(1, part.denominator(n)) for part, c in combo.items())
        assert total == Fraction(1, spec.denominator(n))


def test_irreducible_is_fixed():
    spec = EtaSpec.of(0, 3)
    assert partial_fraction_reduce(spec) == EtaCombo({spec: 1})


def test_combo_parse_round_trip():
    combo = EtaCombo.parse("1/2*eta[1,1] - 1/2*eta[0,1,1]")
    assert combo.coefficient(EtaSpec.of(1, 1)) == Fraction(1, 2)
    assert EtaCombo.parse(str(combo)) == combo
    assert combo - combo == EtaCombo()
    assert str(EtaCombo()) == "0"


@pytest.mark.parametrize('text', ["eta[1,1]*eta[2]", "3", "2*"])
def test_combo_parse_rejects(text):
    with pytest.raises(ParseError):
        EtaCombo.parse(text)


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
