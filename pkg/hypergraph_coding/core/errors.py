"""Exception hierarchy for hypergraph-coding.

Every error raised on purpose by the package derives from ``HypergraphCodingError``
so that callers (and the CLI) can separate domain failures from programming errors.
"""

from typing import Sequence, Tuple


class HypergraphCodingError(Exception):
    """Base class for all errors raised by hypergraph-coding."""

    pass


class ConfigurationError(HypergraphCodingError):
    """Exception raised for configuration errors."""

    pass


class InstanceError(HypergraphCodingError):
    """Raised when a problem instance violates its structural invariants.

    Attributes:
        field: Name of the offending field (``p``, ``f``, ``epsilon``, ...)
        message: Human readable description
    """

    def __init__(self, field: str, message: str):
        self.field = field
        self.message = message
        super().__init__(f"{field}: {message}")


class DimensionMismatchError(InstanceError):
    """Raised when the output table ``f`` has an inconsistent shape."""

    pass


class GeometryError(HypergraphCodingError):
    """Raised for empty, ragged or otherwise unusable point sets."""

    pass


class EnumerationLimitError(HypergraphCodingError):
    """Raised when an exponential enumeration is requested beyond its guard."""

    def __init__(self, nx: int, limit: int):
        self.nx = nx
        self.limit = limit
        super().__init__(f"nx={nx} exceeds the enumeration limit of {limit}")


class ChannelError(HypergraphCodingError):
    """Raised when a test channel is not a valid conditional pmf on its hyperedges."""

    pass


class OracleLimitError(HypergraphCodingError):
    """Raised when the grid oracle would need too many free parameters."""

    pass


class PreconditionViolated(HypergraphCodingError):
    """Raised when an operation is called outside its documented domain."""

    pass


class CodecPreconditionError(HypergraphCodingError):
    """Raised when a codec cannot run on the given instance or data."""

    pass


class AmbiguousClustering(CodecPreconditionError):
    """Raised when a positive-probability vertex lies in zero or several maximal hyperedges.

    Attributes:
        vertex: The ambiguous vertex
        edges: The maximal hyperedges that contain it
    """

    def __init__(self, vertex: int, edges: Sequence[Tuple[int, ...]]):
        self.vertex = vertex
        self.edges = [tuple(e) for e in edges]
        super().__init__(f"vertex {vertex} lies in {len(self.edges)} maximal hyperedges: {self.edges}")


class InfeasibleRateError(CodecPreconditionError):
    """Raised when a polar design is asked for a rate it cannot reach."""

    pass


# CLI exit codes
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INSTANCE = 2
EXIT_CODEC = 3


def exit_code_for(error: BaseException) -> int:
    """Map an exception onto the CLI exit code convention.

    Args:
        error: The exception that stopped a command

    Returns:
        Process exit code
    """
    if isinstance(error, (CodecPreconditionError, ChannelError, OracleLimitError)):
        return EXIT_CODEC
    if isinstance(error, (InstanceError, GeometryError, PreconditionViolated, EnumerationLimitError)):
        return EXIT_INSTANCE
    return EXIT_USAGE
