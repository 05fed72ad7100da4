"""Exception types shared across drckit."""


class DrcError(Exception):
    """Base class for every error raised by drckit."""


class MalformedInputError(DrcError, ValueError):
    """A table, file or argument does not have the required shape."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ResourceLimitError(DrcError, RuntimeError):
    """An exhaustive computation was requested beyond its configured guard."""


class PreconditionError(DrcError, ValueError):
    """An operation was called outside its domain of definition."""


class UndefinedCompositionError(PreconditionError):
    """Two arrows or paths were composed with mismatched endpoints."""


class StructuralError(DrcError, ValueError):
    """The input is well formed but not the kind of structure required,
    for instance a multiplication table that is not associative."""


class ContractViolation(DrcError, ValueError):
    """An input that passed shape checks fails a mathematical contract,
    for instance a partition that is not a congruence."""
