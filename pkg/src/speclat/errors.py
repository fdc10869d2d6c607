"""Exception hierarchy for speclat."""


class SpeclatError(Exception):
    """Base class for every error raised by this package."""


class NotPointedError(SpeclatError, ValueError):
    """The cone contains a line."""


class InfeasibleError(SpeclatError):
    pass


class UnboundedError(SpeclatError):
    pass


class UnitNotOrderUnitError(SpeclatError, ValueError):
    pass


class AlgebraMismatchError(SpeclatError, ValueError):
    pass


class InvalidEffectError(SpeclatError, ValueError):
    """Coordinates do not lie in the interval [0, u]."""


class ScalarOutOfRangeError(SpeclatError, ValueError):
    pass


class SpanMismatchError(SpeclatError, ValueError):
    pass


class NotSharpError(SpeclatError, ValueError):
    pass


class UnsupportedKindError(SpeclatError, ValueError):
    pass


class NoSuitableElementError(SpeclatError, ValueError):
    pass


class UnknownNameError(SpeclatError, KeyError):
    pass


class EmptyStateSpaceError(SpeclatError):
    pass


class DecompositionMismatchError(SpeclatError, ValueError):
    pass


class ParseError(SpeclatError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ScopeLimitError(SpeclatError):
    """A computation falls outside what the exact engine handles."""


class SymbolicNormRequiredError(ScopeLimitError):
    """A spin-factor computation needs an irrational Euclidean norm."""


class SizeLimitExceededError(ScopeLimitError):
    pass


class NotSpectralError(SpeclatError):
    """Raised by operations that need a spectral decomposition which does not exist."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__(witness.reason)


class PropositionFailure(SpeclatError, AssertionError):
    """A mechanically checked theorem was falsified. Indicates a bug."""


class ClassificationFailure(PropositionFailure):
    pass
