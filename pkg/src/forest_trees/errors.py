"""Exception hierarchy shared by every module.

``ValidationError`` subclasses signal bad input (CLI exit code 1).
``DivisibilityViolation`` signals a broken internal invariant (exit code 2).
"""


class ForestTreesError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(ForestTreesError, ValueError):
    pass


class EdgeError(ValidationError):
    """An instance edge is malformed; ``edge`` holds the offending pair."""

    def __init__(self, message, edge=None):
        super().__init__(message)
        self.edge = edge


class EdgeOutOfRange(EdgeError):
    pass


class SamePartEdge(EdgeError):
    pass


class DuplicateEdge(EdgeError):
    pass


class CycleDetected(EdgeError):
    pass


class InvalidHost(ValidationError):
    pass


class HostTooLarge(ValidationError):
    pass


class InfeasibleTarget(ValidationError):
    pass


class TooLarge(ValidationError):
    pass


class ProfileSumMismatch(ValidationError):
    pass


class OrderSumMismatch(ValidationError):
    pass


class MatchingTooLarge(ValidationError):
    pass


class ShapeOutOfRange(ValidationError):
    pass


class SingularPoint(ValidationError):
    """A direct-evaluation guard failed; ``guard`` names which one."""

    def __init__(self, message, guard=None):
        super().__init__(message)
        self.guard = guard


class GuardViolated(SingularPoint):
    pass


class SamplingExhausted(ForestTreesError):
    pass


class NonIntegerWeights(ValidationError):
    pass


class IndexOutOfRange(ValidationError):
    pass


class DegenerateDenominator(ValidationError):
    pass


class DivisibilityViolation(ForestTreesError, AssertionError):
    """The pre-division integer was not divisible as the theory guarantees."""
