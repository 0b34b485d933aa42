"""Shared exception types."""


class ResourceLimitError(RuntimeError):
    """A computation exceeded a documented feasibility envelope.

    The optional ``advice`` string suggests a larger cap or an alternative
    strategy when one exists.
    """

    def __init__(self, message, advice=None):
        super().__init__(message)
        self.advice = advice


class PreconditionError(ValueError):
    """An operation was called outside its documented domain."""
