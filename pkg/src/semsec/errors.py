"""Shared exception types."""


class ConfigError(ValueError):
    """Experiment configuration rejected; the message names the offending field."""


class ConvergenceError(RuntimeError):
    """An iterative solve failed to reach its tolerance."""


class SweepError(RuntimeError):
    """A sweep cell failed; the message names the scheme and budget."""
