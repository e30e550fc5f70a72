"""Exception types raised across the package."""


class HessianError(Exception):
    """Base class for all package errors."""


class NonPrime(HessianError, ValueError):
    pass


class SmallCharacteristic(HessianError, ValueError):
    pass


class UnsupportedDegree(HessianError, ValueError):
    pass


class CapExceeded(HessianError, ValueError):
    pass


class NoCubicCharacter(HessianError, ValueError):
    """Raised when 3 does not divide q - 1."""


class LiftOutOfRange(HessianError, ArithmeticError):
    """No integer inside the Hasse window matches an embedded residue.

    This indicates an internal arithmetic bug, never a user error.
    """


class SingularCurve(HessianError, ValueError):
    pass


class OracleScaleExceeded(HessianError, ValueError):
    pass


class BadDiscriminant(HessianError, ValueError):
    pass


class CaseNotCovered(HessianError, ValueError):
    pass


class MissingR(HessianError, ValueError):
    pass


class Inconsistent(HessianError, ArithmeticError):
    pass


class DomainError(HessianError, ValueError):
    pass


class PoleError(HessianError, ArithmeticError):
    pass


class UnsupportedArguments(HessianError, ValueError):
    pass


class UnsupportedExponent(HessianError, ValueError):
    pass


class TruncationMismatch(HessianError, ValueError):
    pass


class BadRange(HessianError, ValueError):
    pass
