"""Exception types shared by the library and the CLI."""


class SignrankError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class BoundsError(SignrankError, IndexError):
    """An index lies outside the ambient matrix or tensor."""

    exit_code = 4


class DimensionError(SignrankError, ValueError):
    """Two objects that must share dimensions do not."""

    exit_code = 4


class ValidationError(SignrankError, ValueError):
    """Input violates a documented precondition."""

    exit_code = 4


class ResourceLimitError(SignrankError, RuntimeError):
    """A configured size cap was exceeded."""

    exit_code = 3


class MaximalityError(SignrankError, RuntimeError):
    """A column set assumed to be maximal independent is not."""

    exit_code = 1


class UsageError(SignrankError, ValueError):
    """Bad command-line or configuration parameters."""

    exit_code = 2
