class ModeMismatch(ValueError):
    """Raised when Integers and Mod2 objects are combined."""


class NotDivisible(ArithmeticError):
    """Raised by exact division when a term lacks the divisor.

    The offending monomial is kept in :attr:`monomial`.
    """

    def __init__(self, message, monomial=None):
        super().__init__(message)
        self.monomial = monomial


class ForeignGenerator(ValueError):
    """Raised when a polynomial mentions a generator its ring does not own."""


class ScenarioError(ValueError):
    """Malformed or inconsistent scenario input.

    ``line`` and ``column`` locate syntax errors in scenario text when known.
    """

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class WhitneyViolation(ScenarioError):
    """i*c(M) differs from c(N)c(E); ``degree`` is the lowest degree where they differ."""

    def __init__(self, message, degree=None):
        super().__init__(message)
        self.degree = degree


class DimensionMismatch(ScenarioError):
    pass


class TableInconsistency(ScenarioError):
    pass
