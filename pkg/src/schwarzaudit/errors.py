"""Exception hierarchy.

Every error raised by the package derives from :class:`SchwarzAuditError`.
The CLI maps :class:`BadParameter` to exit code 2 and
:class:`NumericalFailure` to exit code 4.
"""


class SchwarzAuditError(Exception):
    pass


class BadParameter(SchwarzAuditError, ValueError):
    """A parameter lies outside its documented range."""


class NumericalFailure(SchwarzAuditError, ArithmeticError):
    """Base class for failures of a numerical procedure."""


class DivisionByNonUnit(NumericalFailure, ZeroDivisionError):
    """Series division by a series whose constant term is zero."""


class DegenerateMobius(BadParameter):
    """Mobius coefficients with ad - bc = 0."""


class PoleInDomain(NumericalFailure):
    pass


class VanishingDerivative(NumericalFailure):
    pass


class DegenerateDilatation(NumericalFailure):
    pass


class DegenerateDenominator(NumericalFailure):
    pass


class EmptyGrid(BadParameter):
    pass


class QuadratureFailure(NumericalFailure):
    pass
