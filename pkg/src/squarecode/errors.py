"""Exception types raised across the package."""


class SquareCodeError(ValueError):
    """Base class for all errors raised by squarecode."""


class NotPrime(SquareCodeError):
    pass


class ReducibleModulus(SquareCodeError):
    pass


class DegreeMismatch(SquareCodeError):
    pass


class CtxMismatch(SquareCodeError):
    """Operands belong to different fields."""


class InvalidSubfield(SquareCodeError):
    pass


class ShapeMismatch(SquareCodeError):
    pass


class DivisionByZeroPoly(SquareCodeError, ZeroDivisionError):
    pass


class RepeatedSupport(SquareCodeError):
    pass


class ParamDomain(SquareCodeError):
    """Parameters outside the domain where a construction or bound is defined."""


class BadDegree(ParamDomain):
    pass


class GammaVanishesOnSupport(ParamDomain):
    pass


class NotSystematizable(SquareCodeError):
    pass


class UnknownSuite(SquareCodeError):
    pass
