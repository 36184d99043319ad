"""Exception types shared across the pipeline, mapped to CLI exit codes."""


class PipelineError(Exception):
    """Base class; exit_code is what the CLI returns for this failure."""

    exit_code = 2


class ConfigError(PipelineError):
    """Bad configuration or usage (exit 1)."""

    exit_code = 1


class DataError(PipelineError):
    """Unreadable, malformed, or missing input data / artifact (exit 2)."""

    exit_code = 2


class NumericError(PipelineError):
    """Numeric failure: divergence, undefined metric (exit 3)."""

    exit_code = 3


class UndefinedMetricError(NumericError):
    """A metric has no defined value for the given inputs."""
