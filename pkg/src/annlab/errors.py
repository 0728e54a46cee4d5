"""Exception hierarchy shared by all annlab modules."""


class AnnLabError(Exception):
    """Base class for all annlab errors."""


class DimensionMismatch(AnnLabError):
    pass


class IndexOutOfRange(AnnLabError):
    pass


class InvalidApproximation(AnnLabError):
    pass


class InvalidParams(AnnLabError):
    pass


class Infeasible(AnnLabError):
    """Randomized construction exhausted its retry budget."""

    def __init__(self, message, best_min_distance=None):
        super().__init__(message)
        self.best_min_distance = best_min_distance


class LengthMismatch(AnnLabError):
    pass


class ApproxOutOfRange(AnnLabError):
    pass


class DomainError(AnnLabError):
    pass


class InvalidState(AnnLabError):
    pass


class InvalidPovm(AnnLabError):
    pass


class InvalidEnsemble(AnnLabError):
    pass


class UnsupportedPrior(AnnLabError):
    pass


class InvalidScheme(AnnLabError):
    pass


class SubRandomDecoder(AnnLabError):
    pass


class IncompatibleSketch(AnnLabError):
    pass


class TooLarge(AnnLabError):
    pass


class NoMarked(AnnLabError):
    pass


class RegimeViolation(AnnLabError):
    pass


class UsageError(AnnLabError):
    pass
