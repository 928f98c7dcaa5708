"""Exception hierarchy shared by all modules."""


class MorseError(ValueError):
    """Base class for domain errors raised by this package."""


class MalformedFacetError(MorseError):
    pass


class UnknownSimplexError(MorseError):
    pass


class LabelError(MorseError, KeyError):
    """A matrix label was not found on the expected axis."""

    def __str__(self):
        return ValueError.__str__(self)


class InvalidVectorFieldError(MorseError):
    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class NotGradientError(MorseError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class TrajectoryOverflowError(MorseError):
    def __init__(self, limit):
        super().__init__(f"more than {limit} trajectories")
        self.limit = limit


class NotCancellableError(MorseError):
    pass


class InvalidPairError(MorseError):
    def __init__(self, message, path_count=None):
        super().__init__(message)
        self.path_count = path_count


class SequencingError(MorseError):
    def __init__(self, message, index, pair):
        super().__init__(message)
        self.index = index
        self.pair = pair


class ChainLawError(MorseError):
    pass
