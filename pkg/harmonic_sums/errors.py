"""Exception hierarchy for the harmonic-sum verifier.

Every error raised on purpose by the package derives from
``HarmonicSumsError``, which is itself a ``ValueError`` so callers that
only care about bad input can keep catching the builtin.
"""


class HarmonicSumsError(ValueError):
    """Base class for all package errors."""


class InvalidCompositionError(HarmonicSumsError):
    """A composition or partition has a non-positive or non-integer part."""


class NotAdmissibleError(HarmonicSumsError):
    """A composition that must start with a part >= 2 does not."""


class NotSymmetricError(HarmonicSumsError):
    """A quasi-symmetric element is not symmetric."""


class InvalidEtaSpecError(HarmonicSumsError):
    """An H-function exponent sequence or series descriptor is malformed."""


class TruncationBoundError(HarmonicSumsError):
    """A generating-function coefficient lies beyond the truncation bound."""


class InvalidToleranceError(HarmonicSumsError):
    """A requested tolerance is outside the supported range."""


class ToleranceUnreachableError(HarmonicSumsError):
    """The requested tolerance cannot be met within the term budget."""


class NumericalInconsistencyError(HarmonicSumsError):
    """Extrapolated limit and rigorous tail bound disagree."""


class SingularFitError(HarmonicSumsError):
    """The extrapolation design matrix is rank deficient."""


class UnknownFamilyError(HarmonicSumsError):
    """No identity family is registered under the given name."""


class OutOfRangeError(HarmonicSumsError):
    """Parameters lie outside a family's validity range."""


class ParseError(HarmonicSumsError):
    """Text could not be parsed into a composition, spec or expression."""


class CacheFormatError(HarmonicSumsError):
    """The zeta-value cache file is not in the expected format."""
