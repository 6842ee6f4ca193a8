"""Errors raised by the families package."""


class FamilyError(Exception):
    """Base class for every error raised on set families."""


class ParameterError(FamilyError, ValueError):
    """A parameter lies outside the range an operation accepts."""


class EmptyFamilyError(FamilyError):
    """An operation that needs at least one member got an empty family."""

    def __init__(self, message="empty family"):
        super().__init__(message)


class NotIntersectingError(FamilyError):
    """An operation that needs an intersecting family got a disjoint pair."""

    def __init__(self, message="family not intersecting"):
        super().__init__(message)


class MergeTargetError(FamilyError):
    """The label chosen for a vertex merge already occurs in the family."""

    def __init__(self, message="merge target not fresh"):
        super().__init__(message)


class CanonicalizationLimitError(FamilyError):
    """Canonical forms are only computed up to a fixed ground-set size."""

    def __init__(self, n, limit):
        self.n = n
        self.limit = limit
        super().__init__(f"canonicalization limit: n={n} exceeds {limit}")


class FamilyFormatError(FamilyError):
    """A family file could not be parsed."""

    def __init__(self, line, message):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}")


class SearchError(FamilyError):
    """A search produced a witness that fails its own post-hoc check."""
