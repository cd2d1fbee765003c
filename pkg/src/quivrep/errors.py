class QuivrepError(Exception):
    """Base class for errors raised by quivrep."""


class PathSetInfinite(QuivrepError):
    """A path set Q(i, j) is infinite (the quiver has an oriented cycle)."""


class BoundExceeded(QuivrepError):
    """An enumeration would exceed the configured size bound."""


class HypothesisFailed(QuivrepError):
    """The hypothesis of a check does not hold, so the check does not apply."""


class InducedMapFailure(QuivrepError):
    """No induced map exists; the input morphism violates its contract."""


class MalformedFiltration(QuivrepError):
    """A (co)filtration has a non-monic/non-epic link or wrong endpoints."""


class ParseError(QuivrepError):
    """An input file does not match the expected JSON format."""
