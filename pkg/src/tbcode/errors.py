"""Exception types shared across the package."""


class TbcodeError(Exception):
    """Base class for all package errors."""


class CapExceeded(TbcodeError, ValueError):
    """An exact search was asked to run beyond its configured feasibility cap."""


class DimensionMismatch(TbcodeError, ValueError):
    """Operand shapes are incompatible."""


class IsolatedVertexError(TbcodeError, ValueError):
    """The graph has an isolated vertex, so no embedded code can exist."""


class PatternViolation(TbcodeError, ValueError):
    """A matrix does not fit the zero pattern of the graph it claims to represent."""


class GraphFormatError(TbcodeError, ValueError):
    """Malformed graph or code file."""
