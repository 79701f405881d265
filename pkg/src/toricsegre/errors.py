"""Exception hierarchy.  Each CLI-visible failure class maps to an exit code."""


class ToricSegreError(Exception):
    exit_code = 1


class ParseError(ToricSegreError, ValueError):
    exit_code = 2


class NotHomogeneous(ToricSegreError, ValueError):
    exit_code = 2


class ZeroPolynomial(ToricSegreError, ValueError):
    exit_code = 2


class EmptyDegree(ToricSegreError, ValueError):
    exit_code = 2


class FanError(ToricSegreError, ValueError):
    exit_code = 3


class NonPrimitiveRay(FanError):
    pass


class DuplicateRay(FanError):
    pass


class FanNotSmoothComplete(FanError):
    pass


class TorsionClassGroup(FanError):
    pass


class ConditionFailed(ToricSegreError):
    """The fan fails the affine codimension condition."""

    exit_code = 4


class NefError(ToricSegreError):
    exit_code = 5


class NefBasisNotFound(NefError):
    pass


class DegreeNotNef(NefError):
    pass


class ChowError(ToricSegreError):
    exit_code = 3


class IntegralityViolation(ChowError):
    pass


class OrthogonalityFailure(ChowError):
    pass


class PointClassNotMonomial(ChowError):
    pass


class NotAUnit(ChowError, ValueError):
    pass


class NotZeroDimensional(ToricSegreError):
    """A quotient that should be finite-dimensional was not (non-generic draw)."""

    exit_code = 6


class NotCompleteIntersection(ToricSegreError, ValueError):
    exit_code = 2


class SubsetBlowup(UserWarning):
    """Inclusion/exclusion would visit more subsets than the configured cap."""
