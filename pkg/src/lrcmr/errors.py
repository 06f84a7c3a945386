"""Exception hierarchy shared by every module."""

from __future__ import annotations


class LrcMrError(Exception):
    """Base class for all package errors."""


class NotPrime(LrcMrError, ValueError):
    pass


class ReducibleModulus(LrcMrError, ValueError):
    pass


class NonPrimitiveDefault(LrcMrError):
    pass


class DivisionByZero(LrcMrError, ZeroDivisionError):
    pass


class FieldMismatch(LrcMrError, ValueError):
    pass


class ZeroElement(LrcMrError, ValueError):
    pass


class NoSolution(LrcMrError):
    pass


class DuplicatePoint(LrcMrError, ValueError):
    pass


class OrderMismatch(LrcMrError, ValueError):
    pass


class EmptySet(LrcMrError, ValueError):
    pass


class ZeroDimensional(LrcMrError, ValueError):
    pass


class Unrecoverable(LrcMrError):
    def __init__(self, message: str, erased: tuple[int, ...] = ()):
        super().__init__(message)
        self.erased = erased


class NotACodeword(LrcMrError):
    pass


class UnverifiedProfile(LrcMrError, ValueError):
    pass


class NotCyclic(LrcMrError, ValueError):
    pass


class TooLarge(LrcMrError):
    pass


class ParamViolation(LrcMrError, ValueError):
    pass


class BadIndex(LrcMrError, ValueError):
    pass


class ModeUnsupported(LrcMrError, ValueError):
    pass


class NotUnit(LrcMrError, ValueError):
    pass


class NotResiduePermutation(LrcMrError, ValueError):
    pass


class LengthMismatch(LrcMrError, ValueError):
    pass


class HypothesisViolation(LrcMrError, ValueError):
    pass


class CaseViolation(LrcMrError, ValueError):
    pass


class OutOfRange(LrcMrError, ValueError):
    pass


class OddR(LrcMrError, ValueError):
    pass


class EvenR(LrcMrError, ValueError):
    pass


class EpsilonTooLarge(LrcMrError, ValueError):
    pass


class DistanceTooSmall(LrcMrError, ValueError):
    pass


class SchemaError(LrcMrError, ValueError):
    pass


class FieldReconstructionMismatch(LrcMrError, ValueError):
    pass
