"""
Providing exceptions.
"""


class RecyclerError(Exception):
    """
    Base of all errors raised by `recycler`.
    """


class GraphParseError(RecyclerError, ValueError):
    """
    Raise on a malformed edge-list line.
    """

    line_number: int
    """
    The 1-based number of the offending line.
    """

    def __init__(self, line_number: int, message: str) -> None:
        super().__init__(f"Line {line_number}: {message}")
        self.line_number = line_number


class GraphValidationError(RecyclerError, ValueError):
    """
    Raise when a graph or subgraph violates the simple-graph contract.
    """


class ParameterError(RecyclerError, ValueError):
    """
    Raise on invalid model or formula parameters.
    """


class SamplerStateError(RecyclerError, RuntimeError):
    """
    Raise when a sampler is driven from a state it cannot step from.
    """


class InvariantViolation(RecyclerError, AssertionError):
    """
    Raise when an internal consistency condition fails.
    """


class OracleGuardError(RecyclerError, ValueError):
    """
    Raise when an instance is too large to enumerate or has no feasible configuration.
    """
