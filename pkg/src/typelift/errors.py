"""Exception hierarchy shared by every module of the package."""


class TypeliftError(Exception):
    """Base class for all errors raised by typelift."""


class UnknownGenerator(TypeliftError):
    pass


class CycleInSubtyping(TypeliftError):
    pass


class MissingDistinguished(TypeliftError):
    pass


class InvalidName(TypeliftError):
    pass


class SystemMismatch(TypeliftError):
    pass


class UnsupportedSystem(TypeliftError):
    pass


class UnsupportedDirection(TypeliftError):
    pass


class NotFunctional(TypeliftError):
    pass


class ParseError(TypeliftError, SyntaxError):
    """Malformed text input. Carries the 1-based line and column when known."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class NotThreeSat(ParseError):
    pass


class RigidityViolation(TypeliftError):
    """A lexicon key was bound to two different syntactic types."""


class DegenerateInstance(TypeliftError):
    pass


class EmptyFormula(TypeliftError):
    pass


class MalformedSolution(TypeliftError):
    pass


class OrderInvalid(TypeliftError):
    pass


class AssignmentInvalid(TypeliftError):
    pass


class WitnessRejected(TypeliftError):
    pass


class KeyAbsent(TypeliftError):
    pass


class SubtypedGenerator(TypeliftError):
    pass


class ForcingFailed(TypeliftError):
    pass


class TooLarge(TypeliftError):
    pass


class BudgetExceeded(TypeliftError):
    """A search hit its node budget before reaching a verdict."""
