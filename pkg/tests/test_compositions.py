"""Tests for compositions, partitions and the duality map."""
import pytest

from harmonic_sums.algebra.compositions import (
    concat,
    enumerate_compositions,
    enumerate_partitions,
    format_composition,
    is_admissible,
    parse_composition,
    rearrangements,
    sigma,
    sigma_inverse,
    tau,
    validate_composition,
    weight,
)
from harmonic_sums.errors import InvalidCompositionError, NotAdmissibleError, ParseError


def test_enumerate_compositions_order():
    """Compositions come out lexicographic descending."""
    assert enumerate_compositions(3) == [(3,), (2, 1), (1, 2), (1, 1, 1)]
    assert enumerate_compositions(0) == [()]


@pytest.mark.parametrize('n', range(1, 9))
def test_composition_count(n):
    """There are 2^(n-1) compositions of n, all distinct and of weight n."""
    comps = enumerate_compositions(n)
    assert len(comps) == 2 ** (n - 1)
    assert len(set(comps)) == len(comps)
    assert all(weight(c) == n for c in comps)


def test_enumerate_compositions_with_parts():
    assert enumerate_compositions(4, 2) == [(3, 1), (2, 2), (1, 3)]
    assert enumerate_compositions(0, 0) == [()]


@pytest.mark.parametrize('n, parts', [(4, 5), (3, 0), (2, -1)])
def test_enumerate_compositions_rejects_impossible_part_count(n, parts):
    with pytest.raises(InvalidCompositionError):
        enumerate_compositions(n, parts)


def test_enumerate_partitions():
    assert enumerate_partitions(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert enumerate_partitions(5, 2) == [(4, 1), (3, 2)]


def test_rearrangements():
    assert rearrangements((2, 1, 1)) == ((2, 1, 1), (1, 2, 1), (1, 1, 2))
    assert rearrangements((2, 2)) == ((2, 2),)


def test_negative_weight_rejected():
    with pytest.raises(InvalidCompositionError):
        enumerate_compositions(-1)


def test_validate_composition_rejects_zero():
    with pytest.raises(InvalidCompositionError):
        validate_composition((2, 0))


def test_sigma_round_trip():
    assert sigma((2, 1, 3)) == (2, 3, 6)
    assert sigma_inverse((2, 3, 6)) == (2, 1, 3)
    with pytest.raises(InvalidCompositionError):
        sigma_inverse((2, 2))


def test_concat():
    assert concat((1,), (2, 3), ()) == (1, 2, 3)


@pytest.mark.parametrize('composition, dual', [
    ((2,), (2,)),
    ((3,), (2, 1)),
    ((2, 1), (3,)),
    ((4,), (2, 1, 1)),
    ((3, 1), (3, 1)),
    ((2, 2), (2, 2)),
])
def test_tau_known_values(composition, dual):
    assert tau(composition) == dual


def _admissible(max_weight):
    return [c for n in range(2, max_weight + 1) for c in enumerate_compositions(n) if is_admissible(c)]


def test_tau_is_weight_preserving_involution():
    """tau(tau(I)) = I for every admissible composition of weight <= 9."""
    for n in range(2, 10):
        for c in enumerate_compositions(n):
            if not is_admissible(c):
                continue
            d = tau(c)
            assert is_admissible(d)
            assert weight(d) == n
            assert tau(d) == c


def test_tau_reverses_concatenation():
    """tau(IJ) = tau(J) tau(I) for admissible I, J with total weight <= 9."""
    pieces = _admissible(7)
    for i in pieces:
        for j in pieces:
            if weight(i) + weight(j) > 9:
                continue
            assert tau(concat(i, j)) == concat(tau(j), tau(i))


def test_tau_rejects_non_admissible():
    with pytest.raises(NotAdmissibleError):
        tau((1, 2))
    with pytest.raises(NotAdmissibleError):
        tau(())


def test_parse_and_format():
    assert parse_composition("3,1") == (3, 1)
    assert parse_composition("[2, 1, 1]") == (2, 1, 1)
    assert parse_composition("") == ()
    assert format_composition((3, 1)) == "3,1"
    assert parse_composition(format_composition((4, 1, 2))) == (4, 1, 2)


@pytest.mark.parametrize('text', ["3,0", "a", "3,,1", "-1"])
def test_parse_rejects_garbage(text):
    with pytest.raises(ParseError):
        parse_composition(text)


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
