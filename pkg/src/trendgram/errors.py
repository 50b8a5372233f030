"""Exception types shared across the toolkit."""


class TrendgramError(Exception):
    """Base class for data-level failures raised by this package."""


class IngestError(TrendgramError):
    """Unrecoverable problem with an input export or corpus file."""


class RecordsError(TrendgramError):
    """Corrupt n-gram records file."""


class QueryError(TrendgramError):
    """Malformed trend query string."""


class SlopeError(TrendgramError):
    """Slope requested for a series with fewer than two data points."""
