"""Exception hierarchy shared by every module of the package."""


class QuinticMirrorError(Exception):
    """Base class for all errors raised by quintic_mirror."""


class DomainOverflowError(QuinticMirrorError):
    """A result left the finite domain the package works in.

    Raised for products producing zeta(3)**2 and for log powers above 3.
    """


class UnsupportedOperationError(QuinticMirrorError):
    """The operation is not defined for the given operand (e.g. inverting a
    constant that is not a single invertible monomial)."""


class TruncationError(QuinticMirrorError):
    """Not enough series precision is available for the request."""


class NormalizationError(QuinticMirrorError):
    """A series violates the normalization an algorithm requires."""


class AmbiguityError(QuinticMirrorError):
    """A linear solve has no unique answer on the requested support."""


class ConsistencyError(QuinticMirrorError):
    """Two routes to the same quantity disagree."""


class FlatnessError(ConsistencyError):
    """A quantity that must be independent of u is not."""


class DerivationError(ConsistencyError):
    """A linear system arising from a derivation is inconsistent."""


class AdmissibilityError(QuinticMirrorError):
    """No relative weight filtration exists for the given (N, W)."""
