"""Exception hierarchy.

Every error raised on purpose by the package derives from ``ConvexHarmError``
so callers (the CLI in particular) can separate mathematical findings from
programming errors.
"""


class ConvexHarmError(Exception):
    """Base class for all package errors."""


# series
class NearZeroConstantTerm(ConvexHarmError, ZeroDivisionError):
    pass


class NonzeroInnerConstant(ConvexHarmError, ValueError):
    pass


class OutsideEvaluationDisk(ConvexHarmError, ValueError):
    pass


class AliasingTooLarge(ConvexHarmError, ArithmeticError):
    pass


# mappings
class NotUnimodular(ConvexHarmError, ValueError):
    pass


class NotNormalized(ConvexHarmError, ValueError):
    pass


class VanishingDerivative(ConvexHarmError, ArithmeticError):
    pass


class DenominatorVanishes(ConvexHarmError, ArithmeticError):
    pass


class InconsistentMap(ConvexHarmError, ValueError):
    """Closed-form evaluator and cached series disagree."""


# transforms
class MembershipNotCertified(ConvexHarmError, ValueError):
    pass


class IllConditioned(ConvexHarmError, ArithmeticError):
    pass


class ACapExceeded(ConvexHarmError, ValueError):
    pass


# analysis
class RadiusOutOfRange(ConvexHarmError, ValueError):
    pass


class DegenerateCurve(ConvexHarmError, ValueError):
    pass


class NoAdmissiblePair(ConvexHarmError, ArithmeticError):
    pass


class NotHerglotz(ConvexHarmError, ValueError):
    pass


class DegenerateAlpha(ConvexHarmError, ValueError):
    pass


class UnknownMap(ConvexHarmError, KeyError):
    pass
