"""Exception hierarchy shared by all nltrace modules."""


class NltraceError(Exception):
    """Base class for every error raised by this package."""


class DomainError(NltraceError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class BadParam(NltraceError, ValueError):
    """A parameter value is malformed or out of the accepted range."""


class MonotonicityViolation(NltraceError, ValueError):
    """A capacity fails monotonicity; the message names the offending pair."""


class NonzeroEmptySet(NltraceError, ValueError):
    """A capacity assigns a non-zero value to the empty set."""


class NegativeFunction(NltraceError, ValueError):
    """A plain Choquet integral was asked for a function with negative values."""


class SizeMismatch(NltraceError, ValueError):
    """Two objects defined on ground sets of different sizes were combined."""


class UnknownName(NltraceError, ValueError):
    """No built-in weight is registered under the requested name."""


class DiscontinuousWeight(NltraceError, ValueError):
    """The operation requires a continuous weight function."""


class UnnormalizedWeight(NltraceError, ValueError):
    """The operation requires a weight with total mass one."""


class ConvergenceFailure(NltraceError, RuntimeError):
    """The eigenvalue solver did not converge on the given matrix."""


class DimensionOverflow(NltraceError, ValueError):
    """A matrix dimension or model size exceeds the supported cap."""


class DimensionMismatch(NltraceError, ValueError):
    """Operators of unequal dimension were combined."""


class NegativeSpectrum(NltraceError, ValueError):
    """A positive-cone operation received an operator with negative spectrum."""


class BadExponent(NltraceError, ValueError):
    """Norm exponent must satisfy p >= 1."""


class BadThreshold(NltraceError, ValueError):
    """Chebyshev threshold must have a strictly positive image under f."""


class ShapeError(NltraceError, ValueError):
    """The weight does not have the concavity/convexity the operation needs."""


class BadOrder(NltraceError, ValueError):
    """Moment order k exceeds the number of summands n."""


class EmptySequence(NltraceError, ValueError):
    """An empty sequence has no tail statistics."""


class NegativeCoefficient(NltraceError, ValueError):
    """Absolutely monotone series need non-negative coefficients."""
