"""The ``--u`` expression grammar of the command line.

    expr    := term (('+' | '-') term)*
    term    := factor ('*' factor)*
    factor  := atom ['^' int] ['@+1']
    atom    := e<k> | h<k> | p<k> | N[n,m] | M[i1,...] | '(' expr ')' | rational

``@+1`` marks a factor specialised at H_{n+1} instead of H_n; such factors
only make sense for numeric series, so :func:`parse_qsym` rejects them.
"""
import logging
import re
from fractions import Fraction
from typing import List, Tuple

from harmonic_sums.algebra.compositions import parse_composition
from harmonic_sums.algebra.qsym import QSymElem, generator, monomial_qsym
from harmonic_sums.algebra.text import parse_rational
from harmonic_sums.errors import HarmonicSumsError, ParseError
from harmonic_sums.eta.spec import EtaSpec
from harmonic_sums.numeric.series import LhsDescriptor, LhsTerm

logger = logging.getLogger(__name__)

_GENERATORS = {'e': 'elementary', 'h': 'complete', 'p': 'powersum'}
_GENERATOR = re.compile(r"^([ehp])(\d+)$")
_N_SUM = re.compile(r"^N\[(\d+),(\d+)\]$")
_POWER = re.compile(r"^(.*)\^(\d+)$")
_OFFSET = "@+1"

# A parsed term: rational coefficient and (element, offset) factors
Term = Tuple[Fraction, List[Tuple[QSymElem, int]]]


def _split_top_level(text: str, separators: str) -> List[Tuple[str, str]]:
    """Split at separators outside brackets; each piece carries the separator before it."""
    pieces: List[Tuple[str, str]] = []
    depth = 0
    current = []
    leading = ""
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise ParseError(f"Unbalanced brackets in {text!r}")
        is_offset_sign = ch == "+" and i > 0 and text[i - 1] == "@"
        if depth == 0 and ch in separators and not is_offset_sign:
            pieces.append((leading, "".join(current)))
            leading = ch
            current = []
        else:
            current.append(ch)
    if depth != 0:
        raise ParseError(f"Unbalanced brackets in {text!r}")
    pieces.append((leading, "".join(current)))
    return pieces


def _atom(text: str) -> QSymElem:
    try:
        match = _GENERATOR.match(text)
        if match:
            return generator(_GENERATORS[match.group(1)], int(match.group(2)))
        match = _N_SUM.match(text)
        if match:
            return generator('N', (int(match.group(1)), int(match.group(2))))
    except HarmonicSumsError as e:
        raise ParseError(f"Bad generator {text!r}: {e}") from e
    if text.startswith("M[") and text.endswith("]"):
        return monomial_qsym(parse_composition(text[2:-1]))
    if text.startswith("(") and text.endswith(")"):
        return parse_qsym(text[1:-1])
    if re.match(r"^[A-Za-z]", text):
        raise ParseError(f"Unknown generator {text!r}; expected e<k>, h<k>, p<k>, N[n,m] or M[...]")
    return QSymElem.scalar(parse_rational(text))


def _terms(text: str) -> List[Term]:
    compact = text.replace(" ", "")
    if not compact:
        raise ParseError("Empty expression")
    terms: List[Term] = []
    for sign, body in _split_top_level(compact, "+-"):
        if not body:
            if not sign and not terms:
                continue  # leading unary sign
            raise ParseError(f"Dangling sign in {text!r}")
        coefficient = Fraction(-1 if sign == "-" else 1)
        factors: List[Tuple[QSymElem, int]] = []
        for _, factor in _split_top_level(body, "*"):
            if not factor:
                raise ParseError(f"Dangling '*' in {body!r}")
            offset = 0
            if factor.endswith(_OFFSET):
                offset = 1
                factor = factor[:-len(_OFFSET)]
            exponent = 1
            match = _POWER.match(factor)
            if match:
                factor, exponent = match.group(1), int(match.group(2))
            element = _atom(factor)
            if offset == 0 and set(element.coords) <= {()}:
                coefficient *= element.constant_term() ** exponent
                continue
            factors.extend([(element, offset)] * exponent)
        terms.append((coefficient, factors))
    if not terms:
        raise ParseError(f"No terms in expression: {text!r}")
    return terms


def parse_qsym(text: str) -> QSymElem:
    """Parse an expression into a single QSym element (products expanded).

    Raises:
        ParseError: on malformed input or an ``@+1`` factor
    """
    total = QSymElem()
    for coefficient, factors in _terms(text):
        product = QSymElem.scalar(coefficient)
        for element, offset in factors:
            if offset:
                raise ParseError(f"Offset factors ('@+1') need numeric evaluation: {text!r}")
            product = product * element
        total = total + product
    return total


def parse_series(text: str, spec: EtaSpec, start_n: int = 1) -> List[LhsTerm]:
    """Parse an expression into weighted series descriptors, one per term.

    Factors stay unexpanded so the numeric specialisation multiplies arrays
    instead of expanding quasi-shuffle products.
    """
    return [
        LhsTerm(LhsDescriptor(tuple(factors), spec, start_n), coefficient)
        for coefficient, factors in _terms(text)
        if coefficient != 0
    ]
