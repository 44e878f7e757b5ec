"""Compositions, partitions and the duality map on admissible compositions.

A composition is stored as a plain tuple of positive ints. The empty tuple
is a valid composition (weight 0, depth 0); it indexes the unit of the
quasi-symmetric algebra and the constant term of zeta expressions.

Enumeration order is lexicographic descending everywhere so that every
downstream expression, report and cache key is reproducible.
"""
import logging
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple

from sympy.utilities.iterables import multiset_permutations

from harmonic_sums.errors import InvalidCompositionError, NotAdmissibleError, ParseError

logger = logging.getLogger(__name__)

Composition = Tuple[int, ...]
Partition = Tuple[int, ...]


def validate_composition(parts: Iterable[int]) -> Composition:
    """Return ``parts`` as a composition tuple.

    Raises:
        InvalidCompositionError: if any part is not a positive integer
    """
    result = tuple(parts)
    for part in result:
        if isinstance(part, bool) or not isinstance(part, int) or part < 1:
            raise InvalidCompositionError(f"Composition parts must be positive integers: {result}")
    return result


def validate_partition(parts: Iterable[int]) -> Partition:
    """Return ``parts`` as a partition tuple (weakly decreasing)."""
    result = validate_composition(parts)
    if any(a < b for a, b in zip(result, result[1:])):
        raise InvalidCompositionError(f"Partition parts must be weakly decreasing: {result}")
    return result


def weight(composition: Sequence[int]) -> int:
    return sum(composition)


def depth(composition: Sequence[int]) -> int:
    return len(composition)


def is_admissible(composition: Sequence[int]) -> bool:
    """True iff the composition is nonempty and its first part is at least 2."""
    return len(composition) > 0 and composition[0] >= 2


@lru_cache(maxsize=None)
def _compositions(n: int) -> Tuple[Composition, ...]:
    if n == 0:
        return ((),)
    result = []
    for first in range(n, 0, -1):
        for rest in _compositions(n - first):
            result.append((first,) + rest)
    return tuple(result)


def enumerate_compositions(n: int, parts: Optional[int] = None) -> List[Composition]:
    """All compositions of ``n``, lexicographic descending.

    Args:
        n: Weight of the compositions (n >= 0)
        parts: If given, keep only compositions with exactly this many parts
            (1 <= parts <= n; 0 only for n = 0)

    Returns:
        List of composition tuples

    Raises:
        InvalidCompositionError: for negative n or a part count outside that range
    """
    if n < 0:
        raise InvalidCompositionError(f"Cannot enumerate compositions of negative weight {n}")
    if parts is not None and not (1 <= parts <= n or parts == n == 0):
        raise InvalidCompositionError(f"A composition of {n} cannot have {parts} parts")
    everything = _compositions(n)
    if parts is None:
        return list(everything)
    return [c for c in everything if len(c) == parts]


@lru_cache(maxsize=None)
def _partitions(n: int, largest: int) -> Tuple[Partition, ...]:
    if n == 0:
        return ((),)
    result = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            result.append((first,) + rest)
    return tuple(result)


def enumerate_partitions(n: int, parts: Optional[int] = None) -> List[Partition]:
    """All partitions of ``n`` (weakly decreasing tuples), lexicographic descending."""
    if n < 0:
        raise InvalidCompositionError(f"Cannot enumerate partitions of negative weight {n}")
    everything = _partitions(n, n)
    if parts is None:
        return list(everything)
    return [p for p in everything if len(p) == parts]


def sort_partition(composition: Sequence[int]) -> Partition:
    """The partition obtained by sorting a composition's parts."""
    return tuple(sorted(composition, reverse=True))


@lru_cache(maxsize=None)
def rearrangements(partition: Partition) -> Tuple[Composition, ...]:
    """Distinct compositions rearranging ``partition``, lexicographic descending."""
    perms = [tuple(p) for p in multiset_permutations(list(partition))]
    return tuple(sorted(perms, reverse=True))


def concat(*compositions: Sequence[int]) -> Composition:
    """Juxtaposition of compositions."""
    result: Tuple[int, ...] = ()
    for composition in compositions:
        result += tuple(composition)
    return result


def sigma(composition: Sequence[int]) -> Tuple[int, ...]:
    """Sequence of partial sums of a nonempty composition."""
    if not composition:
        raise InvalidCompositionError("sigma is undefined on the empty composition")
    validate_composition(composition)
    sums = []
    total = 0
    for part in composition:
        total += part
        sums.append(total)
    return tuple(sums)


def sigma_inverse(sums: Sequence[int]) -> Composition:
    """Consecutive differences of a strictly increasing positive sequence."""
    previous = 0
    parts = []
    for value in sums:
        if value <= previous:
            raise InvalidCompositionError(f"Partial sums must be strictly increasing: {tuple(sums)}")
        parts.append(value - previous)
        previous = value
    return tuple(parts)


def _complement(subset: Sequence[int], n: int) -> Tuple[int, ...]:
    members = set(subset)
    return tuple(i for i in range(1, n + 1) if i not in members)


def _reflect(subset: Sequence[int], n: int) -> Tuple[int, ...]:
    return tuple(n + 1 - s for s in reversed(subset))


@lru_cache(maxsize=None)
def _tau(composition: Composition) -> Composition:
    n = weight(composition)
    return sigma_inverse(_reflect(_complement(sigma(composition), n), n))


def tau(composition: Sequence[int]) -> Composition:
    """Dual of an admissible composition: inverse partial sums of the
    reflected complement of its partial sums inside {1, ..., weight}.

    Raises:
        NotAdmissibleError: if the composition is empty or starts with 1
    """
    composition = validate_composition(composition)
    if not is_admissible(composition):
        raise NotAdmissibleError(f"Duality is defined on admissible compositions only: {composition}")
    return _tau(composition)


def format_composition(composition: Sequence[int]) -> str:
    """Canonical text form, e.g. ``"3,1"``; the empty composition is ``""``."""
    return ",".join(str(part) for part in composition)


def parse_composition(text: str) -> Composition:
    """Parse the canonical text form produced by :func:`format_composition`."""
    text = text.strip()
    if text in ("", "()", "[]"):
        return ()
    text = text.strip("()[]")
    try:
        parts = tuple(int(token) for token in text.split(","))
    except ValueError as e:
        raise ParseError(f"Not a composition: {text!r}") from e
    try:
        return validate_composition(parts)
    except InvalidCompositionError as e:
        raise ParseError(str(e)) from e
