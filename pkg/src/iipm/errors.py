"""Exception types raised across the package.

Everything derives from :class:`IIPMError`, itself a ``ValueError``, so callers
that only care about "bad input" can catch one thing.
"""

from __future__ import annotations


class IIPMError(ValueError):
    """Base class for all validation errors in this package."""


class BadLength(IIPMError):
    pass


class NotNormalized(IIPMError):
    pass


class NotNormalizedMass(NotNormalized):
    pass


class NotMonotone(IIPMError):
    """A set function decreases along an inclusion ``A ⊂ B``.

    ``witness`` holds the bitmask pair ``(A, B)``.
    """

    def __init__(self, message: str, witness: tuple[int, int]):
        super().__init__(message)
        self.witness = witness


class NotDominated(IIPMError):
    pass


class SpaceTooLarge(IIPMError):
    pass


class SpaceMismatch(IIPMError):
    pass


class EmptyFamily(IIPMError):
    pass


class PointsNotSorted(IIPMError):
    pass


class DimMismatch(IIPMError):
    pass


class TooFewSamples(IIPMError):
    pass


class BadRate(IIPMError):
    pass


# harness-level errors


class ParseError(IIPMError):
    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class InconsistentShape(IIPMError):
    pass


class LengthMismatch(IIPMError):
    pass


class EmptyInput(IIPMError):
    pass
