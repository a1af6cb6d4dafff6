"""Exception types shared across the package."""


class UnsupportedError(ValueError):
    """Parameters outside the supported range (rank, degree, weight, parity)."""


class BoundError(ValueError):
    """A trace bound is too small for the requested operation."""


class DegenerateInputError(ValueError):
    """Input lacks the structure an operation needs (e.g. no unit coefficient)."""


class CompletenessError(RuntimeError):
    """A class list or linear system turned out to be incomplete or singular."""


class ConsistencyError(RuntimeError):
    """An internal cross-check failed; indicates a bug rather than bad input."""
