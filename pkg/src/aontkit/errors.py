"""Exception types shared across the toolkit."""


class AontError(Exception):
    """Base class for all toolkit errors."""


# field construction / arithmetic

class NonPrimeCharacteristic(AontError):
    pass


class ReducibleModulus(AontError):
    pass


class UnsupportedSize(AontError):
    pass


class DivisionByZero(AontError, ZeroDivisionError):
    pass


class FieldMismatch(AontError):
    pass


class LogOfZero(AontError):
    pass


class NonPrimitiveBase(AontError):
    pass


# matrices

class NotSquare(AontError):
    pass


class SingularMatrix(AontError):
    pass


class BadSize(AontError):
    pass


class ZeroInFrame(AontError):
    pass


class BadIndex(AontError):
    pass


# arrays / verification

class BadColumnSet(AontError):
    pass


class SizeCapExceeded(AontError):
    pass


class NotSquareTransform(AontError):
    pass


class BadRestriction(AontError):
    pass


class NotBijective(AontError):
    pass


# constructions

class RepeatedPoint(AontError):
    pass


class ZeroPoint(AontError):
    pass


class TooManyColumns(AontError):
    pass


class ZeroEntry(AontError):
    pass


class Not2Regular(AontError):
    pass


class NotDifferenceMatrix(AontError):
    pass


class SizeMismatch(AontError):
    pass


class BadT(AontError):
    pass


class BadDegree(AontError):
    pass


# search

class BadOrder(AontError):
    pass


# cli / file formats

class FormatError(AontError):
    pass


class MethodMismatch(AontError):
    pass
