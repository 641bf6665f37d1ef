"""Exception hierarchy.

Everything derives from :class:`NustError` (itself a ``ValueError``) so callers
can catch data problems in one place. The CLI maps these to exit code 2.
"""


class NustError(ValueError):
    pass


class ValidationError(NustError):
    """Input data violates a documented invariant."""


class EmptyInput(ValidationError):
    pass


class NonFinite(ValidationError):
    pass


class NonPositiveUncertainty(ValidationError):
    pass


class NonMonotonic(ValidationError):
    pass


class LengthMismatch(ValidationError):
    pass


class BadRange(ValidationError):
    pass


class CountTooSmall(ValidationError):
    pass


class AllZeroWeights(ValidationError):
    pass


class NonPositiveFrequency(ValidationError):
    pass


class NonPositiveBandwidth(ValidationError):
    pass


class BadConfig(ValidationError):
    pass


class UnknownMode(ValidationError):
    pass


class NonUniformInput(ValidationError):
    pass


class NonPositiveSnr(ValidationError):
    pass


class BadSwitchTimes(ValidationError):
    pass


class ParseError(NustError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class FormatVersionMismatch(NustError):
    pass
