"""Exception hierarchy shared by every gl2lab module."""


class Gl2LabError(ValueError):
    """Base class for all library errors."""


class NotAUnit(Gl2LabError):
    pass


class InvalidModulus(Gl2LabError):
    pass


class NotPrime(Gl2LabError):
    pass


class ZeroInverse(Gl2LabError):
    pass


class MismatchedField(Gl2LabError):
    pass


class MismatchedModulus(Gl2LabError):
    pass


class SingularMatrix(Gl2LabError):
    pass


class ZeroVector(Gl2LabError):
    pass


class InvalidDivisor(Gl2LabError):
    pass


class ClosureOverflow(Gl2LabError):
    pass


class UnsupportedFamily(Gl2LabError):
    pass


class NotASubgroup(Gl2LabError):
    pass


class NotInBorel(Gl2LabError):
    pass


class WrongOrder(Gl2LabError):
    pass


class UnknownCheck(Gl2LabError):
    pass


class RangeTooLarge(Gl2LabError):
    pass


class CacheCorrupt(Gl2LabError):
    pass


class SpecSyntaxError(Gl2LabError):
    """Malformed group-spec or matrix literal."""
