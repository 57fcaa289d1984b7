"""Exception hierarchy shared by every module of the engine."""


class QVerifyError(Exception):
    """Base class for engine errors (CLI maps these to exit code 3)."""


class ZeroConstantTerm(QVerifyError, ZeroDivisionError):
    pass


class NotAPolynomial(QVerifyError):
    pass


class NonIntegerCoefficient(QVerifyError):
    pass


class NonIntegerExponent(QVerifyError):
    pass


class DivergentSpec(QVerifyError):
    pass


class InvalidParams(QVerifyError, ValueError):
    pass


class NotFound(QVerifyError, KeyError):
    pass


class InvalidTag(QVerifyError, ValueError):
    pass
