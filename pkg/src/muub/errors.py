"""Exception hierarchy shared by all modules."""


class MuubError(Exception):
    pass


class InvalidArgumentError(MuubError, ValueError):
    pass


class UnsupportedDimensionError(InvalidArgumentError):
    pass


class DegenerateInputError(InvalidArgumentError):
    pass


class NotUnbiasedError(MuubError):
    """Cross-basis overlaps are not constant."""

    def __init__(self, message, min_overlap, max_overlap):
        super().__init__(message)
        self.min_overlap = min_overlap
        self.max_overlap = max_overlap


class DegenerateConstantError(MuubError):
    pass


class BoundViolationError(MuubError):
    pass


class SearchSpaceTooLargeError(MuubError):
    pass


class DocumentError(MuubError):
    """Malformed or schema-violating collection document."""
