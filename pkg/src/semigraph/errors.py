"""Exception hierarchy shared by every module."""


class SemigraphError(ValueError):
    """Base class for user-facing errors."""


class UnknownAlgebraError(SemigraphError):
    pass


class MalformedAlgebraError(SemigraphError):
    """An identity law fails; the message names the offending element."""


class AlgebraMismatchError(SemigraphError):
    pass


class KeyDomainError(SemigraphError, LookupError):
    pass


class ShapeError(SemigraphError):
    pass


class SelectorError(SemigraphError):
    pass


class SparseModeError(SemigraphError):
    """Sparse evaluation requested for an algebra whose zero does not annihilate."""


class InvalidWeightError(SemigraphError):
    pass


class InvalidWitnessError(SemigraphError):
    pass


class HyperedgeError(SemigraphError):
    pass


class AmbiguousKeyError(SemigraphError):
    pass
