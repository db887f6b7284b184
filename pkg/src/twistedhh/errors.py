"""Exception types shared across the package.

Every failure mode that callers are expected to catch gets its own class;
anything else surfaces as a plain ValueError/ArithmeticError.
"""


class DivisionByZero(ZeroDivisionError):
    pass


class FieldMismatch(ValueError):
    pass


class ZeroInput(ValueError):
    pass


class ShapeMismatch(ValueError):
    pass


class NotASubspace(ValueError):
    pass


class GroupMismatch(ValueError):
    pass


class TorsionIncompatible(ValueError):
    """A bicharacter value on a torsion generator pair is not a root of unity
    of the required order.  Carries the offending generator indices."""

    def __init__(self, i, j, message=None):
        self.i = i
        self.j = j
        super().__init__(message or f"generator pair ({i}, {j}) violates torsion compatibility")


class NotAssociative(ValueError):
    def __init__(self, i, j, k):
        self.triple = (i, j, k)
        super().__init__(f"associativity fails on basis triple ({i}, {j}, {k})")


class UnitFails(ValueError):
    def __init__(self, i):
        self.index = i
        super().__init__(f"unit is not neutral on basis element {i}")


class GradingViolation(ValueError):
    def __init__(self, i, j, message=None):
        self.pair = (i, j)
        super().__init__(message or f"product of basis elements ({i}, {j}) lands outside its degree")


class AlgebraMismatch(ValueError):
    pass


class NotDiagonalizable(ValueError):
    def __init__(self, generator_index, message=None):
        self.generator_index = generator_index
        super().__init__(message or f"action of generator {generator_index} is not diagonalizable over the field")


class TruncationExceeded(ValueError):
    pass


class NotACocycle(ValueError):
    pass


class WrongDegree(ValueError):
    pass


class DegreeMismatch(ValueError):
    pass


class ComplexMismatch(ValueError):
    pass


class NotInImage(ValueError):
    """A cohomology class of the twisted-product complex is not hit by the
    decomposition map.  This signals a violated theorem, not a user error."""


class VerificationFailed(AssertionError):
    def __init__(self, assertion, detail=""):
        self.assertion = assertion
        super().__init__(f"{assertion}: {detail}" if detail else assertion)


class UnsupportedFieldConfiguration(ValueError):
    pass


class BadExponent(ValueError):
    pass


class ParseError(ValueError):
    pass


class ValidationError(ValueError):
    pass
