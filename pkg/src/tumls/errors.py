"""Exception hierarchy shared across the pipeline.

The CLI maps these onto exit codes: ConfigError -> 2, DataError -> 3,
NumericError -> 4.
"""


class TumlsError(Exception):
    """Base class for all package errors."""


class ConfigError(TumlsError):
    """Invalid or inconsistent configuration."""


class DataError(TumlsError):
    """Missing, malformed or unusable input data."""


class NumericError(TumlsError):
    """Numerical failure (divergence, degenerate input to an estimator)."""


class StainEstimationError(NumericError):
    """Stain vectors could not be estimated from a patch.

    Callers are expected to fall back to the reference stain model.
    """
