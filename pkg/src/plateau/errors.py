"""Exception types raised across the package."""

from __future__ import annotations


class PlateauError(Exception):
    """Base class for every error raised by :mod:`plateau`."""


# field
class CompositeP(PlateauError, ValueError):
    pass


class ReduciblePolynomial(PlateauError, ValueError):
    pass


class DivisionByZero(PlateauError, ZeroDivisionError):
    pass


# cyclo
class MixedRoots(PlateauError, ValueError):
    pass


# pfunc
class BadLength(PlateauError, ValueError):
    pass


class BadEntry(PlateauError, ValueError):
    pass


class NotQuadratic(PlateauError, ValueError):
    pass


# spectrum
class OverflowGuard(PlateauError, OverflowError):
    pass


class ClassificationError(PlateauError):
    """Carries the list of offending frequencies (encodings)."""

    def __init__(self, message: str, omegas=()):
        super().__init__(message)
        self.omegas = list(omegas)


class NotPlateaued(ClassificationError):
    pass


class NotWeaklyRegular(ClassificationError):
    pass


class ZeroFrequency(PlateauError, ValueError):
    pass


class NonIntegerResult(PlateauError, ArithmeticError):
    pass


# code
class NotBalanced(PlateauError, ValueError):
    pass


class NotOrbitClosed(PlateauError, ValueError):
    pass


class UncoveredBranch(PlateauError, LookupError):
    pass


class RankDeficient(PlateauError, ArithmeticError):
    pass


# analysis
class TooLarge(PlateauError, ValueError):
    pass


class InexactDivision(PlateauError, ArithmeticError):
    pass


class NotMinimal(PlateauError, ValueError):
    pass


class OutOfRange(PlateauError, ValueError):
    pass


# search
class NoWitnessFound(PlateauError, LookupError):
    pass
