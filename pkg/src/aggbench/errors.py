"""Exception types shared across the package."""


class AggbenchError(Exception):
    """Base class for all errors raised by aggbench."""


class ParseError(AggbenchError):
    """A CSV file could not be parsed as delimited text."""


class EmptyDatasetError(AggbenchError):
    """Preprocessing left no usable data (n = 0 or fewer than 2 input columns)."""


class EmptyColumnError(AggbenchError):
    """A score function was requested for an empty column."""


class LengthMismatchError(AggbenchError):
    """Two vectors that must align have different lengths."""


class ArityMismatchError(AggbenchError):
    """A model was applied to rows of the wrong width."""


class MissingResponseError(AggbenchError):
    """A supervised fit was requested on a dataset without a response column."""


class NonFiniteInputError(AggbenchError):
    """NaN or infinity appeared where finite values are required."""


class ModelFormatError(AggbenchError):
    """A model file is unreadable or has an unsupported version."""


class NoUsableDatasetsError(AggbenchError):
    """Every dataset in a benchmark configuration failed ingestion."""


class EmptyReportError(AggbenchError):
    """A summary was requested over a report with no cells."""


class InsufficientDataError(AggbenchError):
    """A correlation matrix needs at least 2 approaches and 3 complete datasets."""
