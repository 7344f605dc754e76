"""Exception types raised by infomat."""

import numpy as np


class InfomatError(ValueError):
    """Base class for data and argument errors."""


class DuplicateOutcome(InfomatError):
    pass


class OutcomeOutOfRange(InfomatError):
    pass


class NegativeProbability(InfomatError):
    pass


class ProbabilityNotNormalized(InfomatError):
    def __init__(self, total):
        self.deviation = total - 1.0
        super().__init__(f"probabilities sum to {total!r} (deviation {self.deviation:.3e})")


class EmptyVariableSet(InfomatError):
    pass


class UnmappedOutcome(InfomatError):
    pass


class IndexOutOfRange(InfomatError):
    pass


class IndicesNotDistinct(InfomatError):
    pass


class TooManyVariables(InfomatError):
    pass


class WrongArity(InfomatError):
    pass


class OutOfRange(InfomatError):
    pass


class ShapeMismatch(InfomatError):
    pass


class InvalidSampleCount(InfomatError):
    pass


class NoConvergence(np.linalg.LinAlgError):
    """Jacobi sweeps exhausted before the off-diagonal mass fell below tolerance."""

    def __init__(self, off_norm, sweeps):
        self.off_norm = off_norm
        self.sweeps = sweeps
        super().__init__(f"no convergence after {sweeps} sweeps (off-diagonal norm {off_norm:.3e})")
