"""Exception hierarchy shared by all pcw modules."""


class PcwError(Exception):
    """Base class for every error raised by this package."""


class UserInputError(PcwError):
    """Bad input from the user (CLI exit code 2)."""


class ParseError(UserInputError):
    """Malformed manifest or form expression; carries line/column."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", col {column}" if column is not None else "") + ")"
        super().__init__(message + loc)


class DuplicateDeclaration(ParseError):
    pass


class UnknownGenerator(ParseError):
    pass


class UnknownBuiltin(UserInputError):
    pass


class UndeclaredSymbol(PcwError):
    """A symbol (or a required symbol differential) is not declared."""


class DivisionByZero(PcwError):
    pass


class DimensionMismatch(PcwError):
    pass


class MixedDegree(PcwError):
    """Operation needs a homogeneous form but got an inhomogeneous sum."""


class WrongDegree(PcwError):
    pass


class DegreeTooHigh(PcwError):
    """Primitivity is only defined for degree k <= n."""


class NotPrimitive(PcwError):
    pass


class AmbientMismatch(PcwError):
    """Subspace operation on subspaces of different ambient degree."""


class FunctionCoefficientModel(PcwError):
    """Matrix-level computation requested on a model whose differential is
    not linear over the coefficient field; only pointwise verification is
    available for such models."""


class DimensionTooLarge(PcwError):
    pass


class UnsupportedMetric(PcwError):
    """det(g) is not a perfect square in the coefficient field, so no
    volume form exists over the field."""


class MathInvariantViolation(PcwError):
    """A proven identity failed to hold; indicates a bug, not bad input
    (CLI exit code 3)."""


class SplitFailure(MathInvariantViolation):
    """The kernel of the primitivity-defect operator did not split into
    eigenpieces as it must."""
