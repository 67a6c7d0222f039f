"""Exception types shared across modules."""


class GuardError(RuntimeError):
    """A computation would enumerate more elements than the configured limit."""


class OutOfScope(ValueError):
    """Algebra, node or tile kind that this package does not handle."""


class AmbiguousSigma(RuntimeError):
    """More than one candidate flip automorphism survived the constraints."""

    def __init__(self, message, candidates):
        super().__init__(message)
        self.candidates = candidates


class NoSigma(RuntimeError):
    """No candidate flip automorphism satisfies the constraints."""


# Hard cap on the number of tensor elements materialized or enumerated.
ENUMERATION_LIMIT = 10**6
