class ParameterError(ValueError):
    """A parameter is outside its domain (theta, lengths, digits...)."""


class InfeasibleSizeError(ValueError):
    """Exhaustive work would exceed the configured desk-scale cap."""


class UnsupportedPairError(ValueError):
    """The (ensemble, bit) combination has no run statistic defined."""
