"""Exception hierarchy shared by every module of the package."""


class BiHomError(Exception):
    """Base class for all errors raised by this package."""


class DivisionByZero(BiHomError, ZeroDivisionError):
    pass


class PoleAtPoint(BiHomError, ZeroDivisionError):
    """A denominator vanishes at the requested evaluation point."""


class MissingAssignment(BiHomError, KeyError):
    def __init__(self, name):
        super().__init__(name)
        self.name = name

    def __str__(self):
        return f"no value assigned to parameter {self.name!r}"


class ExprSyntaxError(BiHomError, ValueError):
    """Malformed scalar expression; ``offset`` is the byte offset of the fault."""

    def __init__(self, message, text, offset):
        super().__init__(f"{message} at offset {offset} in {text!r}")
        self.text = text
        self.offset = offset


class UnknownIdentifier(BiHomError, ValueError):
    def __init__(self, name, offset=None):
        super().__init__(f"unknown identifier {name!r}")
        self.name = name
        self.offset = offset


class DocumentError(BiHomError, ValueError):
    """A document field failed to parse; ``path`` names the offending field."""

    def __init__(self, path, cause):
        super().__init__(f"{path}: {cause}")
        self.path = path
        self.cause = cause


class DimensionMismatch(BiHomError, ValueError):
    pass


class ShapeMismatch(DimensionMismatch):
    pass


class KindMismatch(BiHomError, ValueError):
    pass


class Singular(BiHomError, ArithmeticError):
    """A linear map that must be inverted has zero determinant."""


class NotAMorphism(BiHomError, ValueError):
    pass


class NonCommutingMaps(BiHomError, ValueError):
    pass


class CommutativityRequired(BiHomError, ValueError):
    pass


class HypothesisFailed(BiHomError, ValueError):
    pass


class UnknownId(BiHomError, KeyError):
    def __str__(self):
        return f"unknown catalog id {self.args[0]!r}"


class BudgetExceeded(BiHomError, RuntimeError):
    def __init__(self, slots, budget):
        super().__init__(f"search space has {slots} raw candidates, budget is {budget}")
        self.slots = slots
        self.budget = budget


class NotNumeric(BiHomError, ValueError):
    pass
