"""Printing and parsing of rational linear combinations.

Shared by the three printable expression types (quasi-symmetric elements,
zeta expressions, H-function combinations) which all use the same shape:
``c*label`` terms joined by `` + `` / `` - ``, with a bare rational for the
constant term.
"""
import re
from fractions import Fraction
from typing import Iterable, List, Tuple

from harmonic_sums.errors import ParseError

_TERM_SPLIT = re.compile(r"([+-])")


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"Not a rational number: {text!r}") from e


def format_linear(terms: Iterable[Tuple[Fraction, str]]) -> str:
    """Render ``(coefficient, label)`` pairs; an empty label is a constant."""
    pieces: List[str] = []
    for coefficient, label in terms:
        if coefficient == 0:
            continue
        sign = "-" if coefficient < 0 else "+"
        magnitude = abs(coefficient)
        if not label:
            body = format_rational(magnitude)
        elif magnitude == 1:
            body = label
        else:
            body = f"{format_rational(magnitude)}*{label}"
        if not pieces:
            pieces.append(body if sign == "+" else f"-{body}")
        else:
            pieces.append(f" {sign} {body}")
    return "".join(pieces) if pieces else "0"


def split_signed_terms(text: str) -> List[Tuple[int, str]]:
    """Split ``a - b + c`` into ``[(+1, 'a'), (-1, 'b'), (+1, 'c')]``.

    Signs inside brackets or parentheses are not expected by any of the
    grammars; rational literals never carry an inner sign.
    """
    compact = text.replace(" ", "")
    if not compact:
        raise ParseError("Empty expression")
    tokens = _TERM_SPLIT.split(compact)
    result = []
    sign = 1
    for token in tokens:
        if token == "+":
            continue
        if token == "-":
            sign = -sign
            continue
        if token:
            result.append((sign, token))
            sign = 1
    if not result:
        raise ParseError(f"No terms in expression: {text!r}")
    return result


def split_factors(term: str) -> List[str]:
    factors = term.split("*")
    if any(not factor for factor in factors):
        raise ParseError(f"Dangling '*' in term: {term!r}")
    return factors
