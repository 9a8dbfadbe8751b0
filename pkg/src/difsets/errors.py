"""Exception hierarchy shared by the library and the command-line tool."""


class DifsetsError(Exception):
    """Base class for all errors raised by this package."""


class InvalidArgumentError(DifsetsError, ValueError):
    """An argument violates a documented precondition."""


class CapacityError(DifsetsError):
    """A configured size or search limit was exceeded."""


class NotFoundError(DifsetsError, LookupError):
    """A catalog lookup failed."""


class ParseError(DifsetsError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ResultsFormatError(DifsetsError):
    """A results file could not be read back."""


class VersionMismatchError(ResultsFormatError):
    pass


class ChecksumMismatchError(ResultsFormatError):
    pass


class VerificationError(ResultsFormatError):
    """A stored set is not a difference set with the stored parameters."""
