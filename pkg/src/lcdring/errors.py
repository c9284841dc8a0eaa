"""Exception hierarchy shared by every module."""


class LcdError(Exception):
    """Base class for all errors raised by lcdring."""


class ParseError(LcdError):
    pass


class PreconditionError(LcdError):
    """An operation was called with inputs outside its domain."""


class InternalError(LcdError):
    """Two independent computations disagreed. Always a bug."""


class OracleDisagreement(InternalError):
    pass


class CoefficientNotInBaseField(InternalError):
    pass


# field
class NonPrimeCharacteristic(PreconditionError):
    pass


class ReducibleModulus(PreconditionError):
    pass


class MissingModulus(PreconditionError):
    pass


class DivisionByZero(PreconditionError, ZeroDivisionError):
    pass


class MixedFields(PreconditionError):
    pass


class EvenCharacteristic(PreconditionError):
    pass


class OrderDoesNotDivide(PreconditionError):
    pass


# ring / matrix
class MixedRings(PreconditionError):
    pass


class NonSquare(PreconditionError):
    pass


class NonUnitLambda(PreconditionError):
    pass


# codes
class EmptyCode(PreconditionError):
    pass


class BudgetExceeded(PreconditionError):
    pass


class NonIntegralResult(PreconditionError):
    pass


class LengthMismatch(PreconditionError):
    pass


# polynomials
class DivisionByZeroPoly(PreconditionError, ZeroDivisionError):
    pass


class ZeroPolynomial(PreconditionError):
    pass


class NotADivisor(PreconditionError):
    pass


class MuOutOfRange(PreconditionError):
    pass


# weighing matrices and constructions
class NotWeighing(PreconditionError):
    pass


class WrongResidueClass(PreconditionError):
    pass


class NotSkew(PreconditionError):
    pass


class NotFound(LcdError):
    pass


class ZeroAlpha(PreconditionError):
    pass


class NotSymmetric(PreconditionError):
    pass


class NotSelfDual(PreconditionError):
    pass
