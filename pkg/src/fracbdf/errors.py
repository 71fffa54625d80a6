"""Exception types shared across the package."""


class ParameterDomainError(ValueError):
    """A parameter lies outside its documented domain."""


class InternalConsistencyError(RuntimeError):
    """Two redundant computation paths disagree beyond tolerance.

    This signals a transcription or implementation bug rather than a bad
    input, so it is deliberately not a ValueError.
    """


class GridTooCoarseError(RuntimeError):
    """A sweep grid is too coarse to trace the quantity continuously."""
