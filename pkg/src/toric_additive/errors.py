"""Exception types shared across the package."""

from __future__ import annotations


class ToricError(Exception):
    """Base class for every error raised by this package."""


class LengthMismatch(ToricError):
    pass


class ZeroVector(ToricError):
    pass


class NotABasis(ToricError):
    pass


class FanValidationError(ToricError):
    """Base class for errors rejecting a fan description."""


class NotPrimitive(FanValidationError):
    def __init__(self, index: int, vector=None):
        self.index = index
        self.vector = vector
        super().__init__(f"ray {index + 1} is not primitive: {vector}")


class DuplicateRay(FanValidationError):
    def __init__(self, first: int, second: int):
        self.indices = (first, second)
        super().__init__(f"rays {first + 1} and {second + 1} coincide")


class TooFewRays(FanValidationError):
    def __init__(self, count: int):
        self.count = count
        super().__init__(f"a complete fan needs at least 3 rays, got {count}")


class NotComplete(FanValidationError):
    def __init__(self, first: int, second: int):
        self.gap = (first, second)
        super().__init__(
            f"angular gap of at least half a turn between rays "
            f"{first + 1} and {second + 1}"
        )


class IndexOutOfRange(ToricError):
    pass


class NotRegular(ToricError):
    pass


class UnsupportedDimension(ToricError):
    pass


class NegativeExponent(ToricError):
    pass


class NotCommuting(ToricError):
    pass


class NotLocallyNilpotent(ToricError):
    pass


class VariableMismatch(ToricError):
    pass


class NotHomogeneous(ToricError):
    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class ZeroTorusEntry(ToricError):
    pass


class ZeroCoordinate(ToricError):
    pass


class NotApplicable(ToricError):
    pass


class Inconclusive(ToricError):
    pass


class InternalInconsistency(ToricError):
    """Two provably equivalent computations disagreed: an implementation bug."""
