"""Exception hierarchy shared by the library and the command-line driver."""


class LocountError(Exception):
    """Base class; ``exit_code`` is what the CLI returns for this failure."""

    exit_code = 1


class GraphFormatError(LocountError):
    exit_code = 4

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PatternError(LocountError):
    """A graph with sides (S, T) that violates the pattern conditions.

    ``code`` is one of ``not_connected``, ``t_not_independent``,
    ``t_not_covered``, ``overlap``, ``sides_size``, ``sides_incomplete``.
    """

    exit_code = 5

    def __init__(self, code, message):
        self.code = code
        super().__init__(f"{code}: {message}")


class BudgetExceeded(LocountError):
    exit_code = 6


class AnchorMismatch(LocountError, ValueError):
    exit_code = 7


class ParameterError(LocountError, ValueError):
    """A run parameter that is well-formed but not allowed (treated as usage)."""

    exit_code = 2
