"""Exception types shared across the package."""


class SizeLimitError(Exception):
    """An operation was asked to materialize or enumerate past its stated gate."""


class SearchExhaustedError(Exception):
    """Randomized search hit its rejection budget before completing.

    Carries the partial size reached so callers can report how close the
    search got.
    """

    def __init__(self, message, partial_size):
        super().__init__(message)
        self.partial_size = partial_size


class NonConvergenceError(Exception):
    """An iterative solver hit its iteration cap before reaching tolerance."""


class VerificationError(Exception):
    """An internal invariant that should hold by construction was violated."""
