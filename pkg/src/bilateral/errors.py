from __future__ import annotations


class BilateralError(Exception):
    """Base class for errors raised by this package."""


class ParseError(BilateralError, ValueError):
    """Bad DSL or derivation text.  ``kind`` names the failure class."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None,
                 kind: str = "syntax"):
        self.message = message
        self.line = line
        self.col = col
        self.kind = kind
        where = f"{line}:{col}: " if line is not None else ""
        super().__init__(f"{where}{kind}: {message}")


class WrongType(BilateralError, ValueError):
    """A rule handed to inversion or conversion does not have the required type."""


class WrongShape(BilateralError, ValueError):
    pass


class MismatchedMajors(WrongShape):
    pass


class MismatchedConclusions(WrongShape):
    pass


class RestrictionViolation(BilateralError, ValueError):
    def __init__(self, violation):
        self.violation = violation
        super().__init__(str(violation))


class IllFormedFamily(BilateralError, ValueError):
    """The family handed to completion cannot be classified as required."""
