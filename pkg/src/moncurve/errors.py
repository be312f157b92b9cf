"""Exception hierarchy.

``MoncurveError`` subclasses split into user errors (bad input, bad bounds)
and :class:`InvariantViolation`, which always signals a bug in this package.
"""


class MoncurveError(Exception):
    """Base class for every error raised by moncurve."""


class UserError(MoncurveError):
    """Invalid input supplied by the caller."""


class ParseError(UserError):
    pass


class NonCoprime(UserError):
    pass


class OutOfRange(UserError):
    pass


class DegenerateDegree(UserError):
    pass


class NotGraded(UserError):
    pass


class BoundExceeded(UserError):
    pass


class BoundTooSmall(UserError):
    pass


class CurveMismatch(UserError):
    pass


class ParamsOutOfRange(UserError):
    pass


class LUndefined(UserError):
    pass


class HypothesisNotVerified(UserError):
    pass


class NotStabilized(MoncurveError):
    pass


class InvariantViolation(MoncurveError):
    """A proven structural property failed to hold on computed data."""


class StabilizationViolated(InvariantViolation):
    pass
