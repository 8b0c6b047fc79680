"""Exception types shared across the engine."""


class RinglabError(Exception):
    """Base class for every error raised by ringlab."""


class SizeExceeded(RinglabError):
    """A construction would exceed the resource guard."""

    def __init__(self, projected, limit, what="ring"):
        super().__init__(f"projected {what} size {projected} exceeds guard limit {limit}")
        self.projected = projected
        self.limit = limit


class NotAPrimePower(RinglabError):
    """The requested field order is not a prime power."""


class NotIdempotent(RinglabError):
    """A corner construction was given a non-idempotent element."""


class NotAnIdeal(RinglabError):
    """A quotient was requested over a subset that is not a two-sided ideal."""


class AxiomViolation(RinglabError):
    """A ring table breaks one of the ring axioms (construction bug)."""


class CrossRingError(RinglabError):
    """Arithmetic was attempted between elements of different rings."""


class UnsupportedPredicate(RinglabError):
    """The integers oracle was fed to an operation that must enumerate elements."""


class WrongRingKind(RinglabError):
    """An operation specific to one construction kind was applied elsewhere."""


class UnsupportedConstruction(RinglabError):
    """The construction is not defined for the given arguments."""


class ParseError(RinglabError):
    """Syntax error in a ring/group expression."""

    def __init__(self, message, line, column, expected=()):
        detail = f"{message} at line {line}, column {column}"
        if expected:
            detail += " (expected " + " | ".join(sorted(expected)) + ")"
        super().__init__(detail)
        self.line = line
        self.column = column
        self.expected = tuple(sorted(expected))


class RangeCheckError(RinglabError):
    """A parameter is outside the range its construction allows."""
